"""
Sums of two Beatty sequences
============================

How many ways can n be written as [a sqrt 2] + [b sqrt 3]?  The circle
method predicts n / sqrt 6, the product of the two densities times n.
"""

import numpy as np

from apsets import asymptotic_report, beatty_main_term, gen_beatty, rep_count

x = 10**5
a, b = gen_beatty(2, x), gen_beatty(3, x)
table = rep_count(a, b)

# a small case by hand: 12 = 2+10 = 4+8 = 7+5 = 9+3 = 11+1
print(f"r(12) = {table[12]}, predicted {beatty_main_term(12):.4f}")

# windows below x, where neither summand is cut off by the truncation
for lo, hi in [(10**3, 2 * 10**3), (10**4, 2 * 10**4), (9 * 10**4, 10**5)]:
    rep = asymptotic_report(a, b, beatty_main_term, (lo, hi), table=table)
    print(f"[{lo}, {hi}]: mean {rep.mean:.5f}  min {rep.min:.5f}  max {rep.max:.5f}")

# the relative fluctuation shrinks roughly like 1/sqrt(n)
ns = np.array([10**3, 10**4, 10**5])
print("ratios at", ns.tolist(), [round(table[int(n)] / beatty_main_term(int(n)), 5) for n in ns])
