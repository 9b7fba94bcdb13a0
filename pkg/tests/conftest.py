"""Shared helpers: random isotope tables, random small molecules, logsumexp."""

from __future__ import annotations

import numpy as np

from isoselect.formula import Composition
from isoselect.isotopes import Isotope, IsotopeTable
from isoselect.oracle import isotopologue_count

# grammar-valid fake element symbols for synthetic tables
FAKE_SYMBOLS = ("Aa", "Bb", "Cc", "Dd", "Ee", "Ff", "Gg", "Hh", "Ii", "Jj")


def logsumexp(logp):
    logp = np.asarray(logp, dtype=float)
    if logp.size == 0:
        return -np.inf
    m = logp.max()
    return float(m + np.log(np.exp(logp - m).sum()))


def random_table(rng: np.random.Generator, n_elements: int, max_isotopes: int = 4):
    """A synthetic isotope table with dirichlet abundances, elements named
    from FAKE_SYMBOLS."""
    entries = {}
    for sym in FAKE_SYMBOLS[:n_elements]:
        m = int(rng.integers(1, max_isotopes + 1))
        probs = rng.dirichlet(np.full(m, float(rng.uniform(0.5, 3.0))))
        probs = np.clip(probs, 1e-6, None)
        probs /= probs.sum()
        base = float(rng.uniform(1.0, 240.0))
        masses = base + np.cumsum(rng.uniform(0.5, 1.5, size=m))
        entries[sym] = [Isotope(float(x), float(p)) for x, p in zip(masses, probs)]
    return IsotopeTable(entries)


def random_molecule(
    rng: np.random.Generator,
    max_elements: int = 5,
    max_total: int = 10**5,
    max_isotopes: int = 4,
):
    """(Composition, IsotopeTable) pair with at most max_total isotopologues."""
    while True:
        n_elements = int(rng.integers(1, max_elements + 1))
        table = random_table(rng, n_elements, max_isotopes)
        items = tuple(
            (sym, int(rng.integers(1, 13))) for sym in table.elements()
        )
        comp = Composition(items)
        if isotopologue_count(comp, table) <= max_total:
            return comp, table
