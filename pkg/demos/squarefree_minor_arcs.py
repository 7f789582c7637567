"""
Minor-arc energy of the squarefree numbers
==========================================

The squarefree numbers are extremal: as the Farey arcs M(x, Q) grow, the
share of the energy of S(theta) left on the minor arcs goes to zero.
"""

import numpy as np

from apsets import autocorrelation, farey_major_arcs, gen_kfree, minor_arc_ratio

x = 10**5
squarefree = gen_kfree(2, x)
print(f"{squarefree.count} squarefree numbers up to {x}")

# the autocorrelation carries the whole arc-energy computation; build it once
c = autocorrelation(squarefree)

# for each Q: minor-arc energy divided by x, and the measure of the major arcs.
# Past Q ~ 40 the arcs cover much of the circle at this x, and the ratio
# falls for that reason alone; larger x pushes that point out.
print(f"{'Q':>4} {'major measure':>14} {'minor ratio':>12}")
for Q in (1, 2, 5, 10, 20, 40, 80):
    major = farey_major_arcs(x, Q)
    print(f"{Q:>4} {major.total_measure:>14.5f} {minor_arc_ratio(c, major):>12.5f}")

# for comparison, the total energy divided by x is the density
print(f"density {squarefree.count / x:.6f}  (6/pi^2 = {6 / np.pi**2:.6f})")
