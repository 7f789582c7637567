"""
How fast does the extremality sum converge?
===========================================

For the squarefree numbers the limiting arc coefficients are known in
closed form, so the partial sums can be pushed far beyond what a sieve
allows.  The remaining gap to pi^2/6 shrinks only like 1/sqrt(Q): square
denominators q = s^2 carry mass of order 1/q each.
"""

import math

from apsets import extremality_curve, gen_kfree, kfree_extremality_curve

curve = kfree_extremality_curve(2, 10**6)
print(f"target 1/rho = {curve.target:.7f}")
print(f"{'Q':>8} {'partial':>10} {'gap':>10} {'gap*sqrt(Q)':>12}")
for Q in (10, 100, 1000, 10**4, 10**5, 10**6):
    gap = curve.target - curve.partial[Q - 1]
    print(f"{Q:>8} {curve.partial[Q - 1]:>10.6f} {gap:>10.6f} {gap * math.sqrt(Q):>12.4f}")

# the empirical curve from residue-class counts tracks the limit closely
emp = extremality_curve(gen_kfree(2, 10**6), 30)
print(f"empirical Q=30 at x=1e6: {emp.value:.6f}  limit {curve.partial[29]:.6f}")
