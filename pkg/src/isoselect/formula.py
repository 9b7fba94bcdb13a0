"""Molecular formula parsing.

Grammar::

    Formula := (Element Count? | '(' Formula ')' Count?)+
    Element := uppercase letter followed by 0-2 lowercase letters
    Count   := positive decimal integer (default 1)

Group counts multiply through, duplicate element mentions merge by summing,
and element order is first appearance in the formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN = re.compile(r"([A-Z][a-z]{0,2})|(\d+)|([()])|(.)")


class FormulaError(ValueError):
    """Raised when a molecular formula string does not match the grammar."""


@dataclass(frozen=True)
class Composition:
    """Element counts in first-appearance order, e.g. (("H", 2), ("O", 1))."""

    items: tuple[tuple[str, int], ...]

    def __post_init__(self):
        symbols = [s for s, _ in self.items]
        if len(set(symbols)) != len(symbols):
            raise ValueError("duplicate element symbols in composition")
        if any(n < 1 for _, n in self.items):
            raise ValueError("element counts must be >= 1")

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def count(self, symbol: str) -> int:
        for s, n in self.items:
            if s == symbol:
                return n
        return 0


def canonical_string(comp: Composition) -> str:
    """Formula string that parses back to the same composition."""
    return "".join(s if n == 1 else f"{s}{n}" for s, n in comp)


def parse_formula(text: str) -> Composition:
    """Parse a molecular formula string into a Composition."""
    if not text or not text.strip():
        raise FormulaError("empty formula")
    tokens = _tokenize(text.strip())
    counts, pos = _parse_group(tokens, 0, depth=0)
    if pos != len(tokens):
        raise FormulaError(f"unbalanced ')' at token {tokens[pos][1]!r}")
    if not counts:
        raise FormulaError("formula contains no elements")
    return Composition(tuple(counts.items()))


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        element, count, paren, bad = m.groups()
        if element:
            tokens.append(("element", element))
        elif count:
            tokens.append(("count", count))
        elif paren:
            tokens.append((paren, paren))
        else:
            raise FormulaError(f"unexpected character {bad!r} in formula")
    return tokens


def _parse_group(tokens, pos: int, depth: int) -> tuple[dict[str, int], int]:
    # dicts preserve insertion order, which defines element order
    counts: dict[str, int] = {}
    saw_item = False
    while pos < len(tokens):
        kind, value = tokens[pos]
        if kind == "element":
            pos += 1
            n, pos = _maybe_count(tokens, pos, value)
            counts[value] = counts.get(value, 0) + n
            saw_item = True
        elif kind == "(":
            inner, pos = _parse_group(tokens, pos + 1, depth + 1)
            if pos >= len(tokens) or tokens[pos][0] != ")":
                raise FormulaError("missing ')'")
            pos += 1
            n, pos = _maybe_count(tokens, pos, "group")
            for symbol, count in inner.items():
                counts[symbol] = counts.get(symbol, 0) + count * n
            saw_item = True
        elif kind == ")":
            if depth == 0:
                raise FormulaError("unbalanced ')'")
            break
        else:
            raise FormulaError(f"unexpected count {value!r} with nothing to repeat")
    if not saw_item:
        raise FormulaError("empty group")
    return counts, pos


def _maybe_count(tokens, pos: int, subject: str) -> tuple[int, int]:
    if pos < len(tokens) and tokens[pos][0] == "count":
        n = int(tokens[pos][1])
        if n == 0:
            raise FormulaError(f"zero count after {subject}")
        return n, pos + 1
    return 1, pos
