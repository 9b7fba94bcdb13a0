"""Merge tree over per-element streams, and the top-level selection calls.

Each element of a formula gets a subisotopologue stream; a balanced binary
tree of pairwise X+Y selectors combines them into whole-molecule peaks.
Leaves sit in formula order and are paired left to right level by level, the
odd one out moving up a level unpaired. A single-element formula is served by
its leaf directly.

Everything below the root is pulled lazily, so selecting k peaks from a large
molecule touches only a small, k-proportional slice of each element's
subisotopologue universe.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .formula import Composition, parse_formula
from .isotopes import IsotopeTable, load_default
from .loh import LayerSchedule
from .multinomial import MultinomialConfig, SubisotopologueGenerator
from .pairwise import PairwiseSelector, _PeakBuffer


@dataclass
class TreeNode:
    stream: object  # anything with next_layer() -> (mass, logp)
    label: str
    children: tuple["TreeNode", ...] = ()


def build_tree(
    comp: Composition,
    table: IsotopeTable,
    alpha: float = 1.05,
    instrument: bool = False,
) -> TreeNode:
    """Build the selection tree for a composition. Raises
    :class:`~isoselect.isotopes.UnknownElementError` for missing elements."""
    schedule = LayerSchedule(alpha)
    if len(comp) == 0:
        raise ValueError("empty composition")
    nodes = []
    for symbol, count in comp:
        config = MultinomialConfig.from_isotopes(count, table.get(symbol))
        gen = SubisotopologueGenerator(config, schedule)
        nodes.append(TreeNode(stream=gen, label=f"{symbol}{count}"))
    while len(nodes) > 1:
        paired = []
        for i in range(0, len(nodes) - 1, 2):
            left, right = nodes[i], nodes[i + 1]
            selector = PairwiseSelector(
                left.stream, right.stream, schedule, instrument=instrument
            )
            paired.append(
                TreeNode(
                    stream=selector,
                    label=f"({left.label}+{right.label})",
                    children=(left, right),
                )
            )
        if len(nodes) % 2:
            paired.append(nodes[-1])
        nodes = paired
    return nodes[0]


@dataclass
class Selection:
    """Selected peaks. Unordered unless :meth:`sorted` is applied."""

    mass: np.ndarray
    logp: np.ndarray
    truncated: bool = False
    layers_pulled: int = 0

    def __len__(self) -> int:
        return int(self.mass.size)

    @property
    def cumulative(self) -> float:
        """Total probability mass of the selected peaks."""
        return float(np.exp(self.logp).sum())

    def sorted(self) -> "Selection":
        """Copy ordered by descending probability, ties by ascending mass."""
        order = np.lexsort((self.mass, -self.logp))
        return Selection(
            self.mass[order], self.logp[order], self.truncated, self.layers_pulled
        )


def select_top_k(root: TreeNode, k: int) -> Selection:
    """The k most probable peaks of the tree's molecule.

    If fewer than k isotopologues exist, returns them all and warns.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    acc = _PeakBuffer()
    layers = 0
    truncated = False
    while acc.n < k:
        mass, logp = root.stream.next_layer()
        layers += 1
        if mass.size == 0:
            truncated = True
            warnings.warn(
                f"only {acc.n} isotopologue peaks exist, fewer than the "
                f"requested {k}",
                stacklevel=2,
            )
            break
        acc.extend(mass, logp)
    mass, logp = acc.mass[: acc.n], acc.logp[: acc.n]
    if acc.n > k:
        # layers overshoot; keep the k most probable of what was pulled
        idx = np.argpartition(-logp, k - 1)[:k]
        mass, logp = mass[idx], logp[idx]
    return Selection(mass, logp, truncated=truncated, layers_pulled=layers)


def select_until_cumulative(root: TreeNode, p: float) -> Selection:
    """The smallest set of most probable peaks with total probability >= p."""
    if not (0 < p <= 1):
        raise ValueError(f"p must be in (0, 1], got {p}")
    acc = _PeakBuffer()
    last: tuple[np.ndarray, np.ndarray] | None = None
    running = 0.0
    before_last = 0.0
    layers = 0
    truncated = False
    while running < p:
        mass, logp = root.stream.next_layer()
        layers += 1
        if mass.size == 0:
            truncated = True
            break
        if last is not None:
            acc.extend(*last)
        last = (mass, logp)
        before_last = running
        running += float(np.exp(logp).sum())
    if last is not None:
        mass, logp = last
        if not truncated:
            # trim the overshooting layer to the minimal prefix of its peaks
            # in probability order
            order = np.argsort(-logp, kind="stable")
            csum = np.cumsum(np.exp(logp[order]))
            need = p - before_last
            cut = min(int(np.searchsorted(csum, need)), logp.size - 1)
            mass, logp = mass[order[: cut + 1]], logp[order[: cut + 1]]
        acc.extend(mass, logp)
    return Selection(
        acc.mass[: acc.n], acc.logp[: acc.n], truncated=truncated, layers_pulled=layers
    )


def isotopologues(
    formula: str | Composition,
    *,
    k: int | None = None,
    p: float | None = None,
    alpha: float = 1.05,
    table: IsotopeTable | None = None,
) -> Selection:
    """One-call API: peaks of ``formula`` by count (``k``) or coverage (``p``).

    Exactly one of ``k`` and ``p`` must be given.
    """
    if (k is None) == (p is None):
        raise ValueError("exactly one of k and p is required")
    comp = parse_formula(formula) if isinstance(formula, str) else formula
    if table is None:
        table = load_default()
    root = build_tree(comp, table, alpha)
    if k is not None:
        return select_top_k(root, k)
    return select_until_cumulative(root, p)


def tree_stats(root: TreeNode) -> list[dict]:
    """Per-node work counters, root first: layer pulls, peaks emitted, and
    for merge nodes the materialized total and child pull counts."""
    rows: list[dict] = []

    def visit(node: TreeNode, depth: int):
        stream = node.stream
        row = {"label": node.label, "depth": depth}
        if isinstance(stream, PairwiseSelector):
            row.update(
                kind="merge",
                layers=stream.layers_emitted,
                emitted=stream.emitted,
                materialized=stream.materialized_total,
                x_pulls=stream.x_pulls,
                y_pulls=stream.y_pulls,
                resident=stream.peak_resident,
            )
        else:
            row.update(
                kind="element",
                layers=stream.layers_emitted,
                emitted=stream.emitted,
            )
        rows.append(row)
        for child in node.children:
            visit(child, depth + 1)

    visit(root, 0)
    return rows
