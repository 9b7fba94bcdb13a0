"""
Fine structure of water
=======================

Every combination of hydrogen and oxygen isotopes produces its own
isotopologue peak. Water has two hydrogen atoms drawn from (1H, 2H) and one
oxygen drawn from (16O, 17O, 18O), giving 3 * 3 = 9 distinct peaks. This
script lists all of them, in order of abundance, and checks that their
probabilities account for the whole distribution.
"""

import math

from isoselect import isotopologues

# Nine isotopologues in total, so k=9 enumerates the full fine structure.
sel = isotopologues("H2O", k=9)

print("rank      mass (Da)        probability")
for rank, (mass, logp) in enumerate(zip(sel.mass, sel.logp), start=1):
    print(f"{rank:4d}  {mass:15.9f}  {math.exp(logp):17.12g}")

# The probabilities of a complete enumeration must sum to one. Work in log
# space the same way the library does, then exponentiate once at the end.
total = sel.cumulative
print(f"\nsum of probabilities: {total:.15f}")
assert abs(total - 1.0) < 1e-9

# The principal peak is the all-light-isotope molecule: 1H 1H 16O.
print(f"principal peak: {sel.mass[sel.logp.argmax()]:.9f} Da")
