"""Command line interface: formula in, peak table out.

Exit codes: 0 success, 2 formula parse error, 3 unknown element or bad
isotope table, 4 invalid parameters.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from .formula import FormulaError, parse_formula
from .isotopes import IsotopeTableError, UnknownElementError, load_default, load_table
from .oracle import EnumerationLimitError, enumerate_all
from .tree import Selection, build_tree, select_top_k, select_until_cumulative

EXIT_FORMULA = 2
EXIT_TABLE = 3
EXIT_PARAMS = 4

_LOG10E = math.log10(math.e)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoselect",
        description="Select the most abundant isotopologue peaks of a "
        "chemical formula, as exact masses with log probabilities.",
    )
    parser.add_argument(
        "--formula",
        required=True,
        help="chemical formula, e.g. C2H5OH or Cu(NO3)2",
    )
    parser.add_argument("--k", type=int, help="number of peaks to select")
    parser.add_argument(
        "--p",
        type=float,
        help="select the smallest peak set with cumulative probability >= p",
    )
    parser.add_argument(
        "--alpha",
        type=float,
        default=1.05,
        help="layer growth rate, >= 1 (default 1.05)",
    )
    parser.add_argument(
        "--isotopes",
        metavar="PATH",
        help="isotope table file (default: embedded NIST table)",
    )
    parser.add_argument(
        "--sorted",
        action="store_true",
        help="order rows by descending probability (ties by ascending mass)",
    )
    parser.add_argument(
        "--output", metavar="PATH", help="write to this file instead of stdout"
    )
    parser.add_argument("--format", choices=("tsv", "csv"), default="tsv")
    parser.add_argument(
        "--time", action="store_true", help="print selection wall time to stderr"
    )
    parser.add_argument(
        "--oracle",
        action="store_true",
        help="use the exhaustive reference implementation (small formulas only)",
    )
    parser.add_argument(
        "--log10",
        action="store_true",
        help="report base-10 instead of natural log probabilities",
    )
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if (args.k is None) == (args.p is None):
        print("error: exactly one of --k and --p is required", file=sys.stderr)
        return EXIT_PARAMS
    if args.k is not None and args.k < 1:
        print(f"error: --k must be >= 1, got {args.k}", file=sys.stderr)
        return EXIT_PARAMS
    if args.p is not None and not (0 < args.p <= 1):
        print(f"error: --p must be in (0, 1], got {args.p}", file=sys.stderr)
        return EXIT_PARAMS
    if not (args.alpha >= 1 and math.isfinite(args.alpha)):
        print(f"error: --alpha must be a finite value >= 1, got {args.alpha}",
              file=sys.stderr)
        return EXIT_PARAMS

    try:
        comp = parse_formula(args.formula)
    except FormulaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMULA

    try:
        table = load_table(args.isotopes) if args.isotopes else load_default()
    except (IsotopeTableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TABLE

    start = time.perf_counter()
    try:
        if args.oracle:
            selection = _oracle_selection(comp, table, args.k, args.p)
        else:
            root = build_tree(comp, table, args.alpha)
            if args.k is not None:
                selection = select_top_k(root, args.k)
            else:
                selection = select_until_cumulative(root, args.p)
    except UnknownElementError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_TABLE
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    elapsed = time.perf_counter() - start

    if args.sorted:
        selection = selection.sorted()
    if args.time:
        print(f"selection time: {elapsed:.6f} s", file=sys.stderr)
    _write(selection, args)
    return 0


def _oracle_selection(comp, table, k, p) -> Selection:
    mass, logp = enumerate_all(comp, table)
    order = np.argsort(-logp, kind="stable")
    mass, logp = mass[order], logp[order]
    if k is not None:
        if k >= logp.size:
            if k > logp.size:
                warnings.warn(
                    f"only {logp.size} isotopologue peaks exist, fewer than "
                    f"the requested {k}",
                    stacklevel=2,
                )
            return Selection(mass, logp, truncated=k > logp.size)
        return Selection(mass[:k], logp[:k])
    csum = np.cumsum(np.exp(logp))
    cut = min(int(np.searchsorted(csum, p)), logp.size - 1)
    return Selection(mass[: cut + 1], logp[: cut + 1])


def _write(selection: Selection, args):
    sep = "\t" if args.format == "tsv" else ","
    prob = np.exp(selection.logp)
    logcol = selection.logp * _LOG10E if args.log10 else selection.logp
    lines = [sep.join(("mass", "log_prob", "prob"))]
    for m, lp, pr in zip(selection.mass, logcol, prob):
        lines.append(f"{m:.17g}{sep}{lp:.17g}{sep}{pr:.17g}")
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None):
    sys.exit(run(argv))
