"""
A Beatty set is not extremal over the rationals
===============================================

The Beatty set {[a sqrt 2]} has density rho = 1/sqrt 2 but its Fourier mass
sits on the irrational frequencies k/sqrt 2.  Rational arcs only see the
mean, leaving rho - rho^2 on the minor arcs; arcs placed at k/sqrt 2 capture
nearly everything.
"""

import math

from apsets import (autocorrelation, beatty_major_arcs, extremality_curve,
                    farey_major_arcs, fourier_coefficient, gen_beatty, minor_arc_ratio)

x = 10**5
beatty = gen_beatty(2, x)
rho = beatty.count / x
c = autocorrelation(beatty)

print(f"rho - rho^2 = {rho - rho * rho:.5f}")
print(f"{'Q':>4} {'Farey minor':>12} {'k/sqrt2 minor':>14}")
for Q in (5, 10, 20, 40):
    farey = minor_arc_ratio(c, farey_major_arcs(x, Q))
    seq = minor_arc_ratio(c, beatty_major_arcs(2, x, Q))
    print(f"{Q:>4} {farey:>12.5f} {seq:>14.5f}")

# rational side: only q = 1 contributes, so the extremality sum stalls at 1 < 1/rho
curve = extremality_curve(gen_beatty(2, 10**6), 30)
print(f"extremality sum at Q=30: {curve.value:.6f}, 1/rho = {curve.target:.6f}")

# irrational side: |<f, e_{k/sqrt2}>| = |sin(pi k/sqrt2)| / (pi k)
for k in (1, 2, 3):
    beta = (k / math.sqrt(2)) % 1
    got = abs(fourier_coefficient(beatty, beta))
    print(f"k={k}: |coefficient| {got:.5f}  closed form {abs(math.sin(math.pi * k / math.sqrt(2))) / (math.pi * k):.5f}")
