"""Quick checks of exact identities; run by ``apsets selftest``."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import additive, arcs, expsum, setgen, spectrum


def _elements(s):
    return s.elements().tolist()


def _checks():
    yield "kfree(2,3) = {1,2,3}", lambda: _elements(setgen.gen_kfree(2, 3)) == [1, 2, 3]
    yield "beatty(2,1) = {1}", lambda: _elements(setgen.gen_beatty(2, 1)) == [1]
    yield "periodic(1,{0},5) = {1..5}", lambda: _elements(setgen.gen_periodic(1, [0], 5)) == [1, 2, 3, 4, 5]
    yield "periodic(2,{1},6) = odds", lambda: _elements(setgen.gen_periodic(2, [1], 6)) == [1, 3, 5]
    yield "periodic(3,{1,2},9)", lambda: _elements(setgen.gen_periodic(3, [1, 2], 9)) == [1, 2, 4, 5, 7, 8]
    yield "multiplicative(always 1,10) = {1..10}", lambda: _elements(
        setgen.gen_multiplicative(setgen.MultiplicativeSpec(lambda p, e: True), 10)) == list(range(1, 11))
    yield "multiplicative(no 2,10) = odds", lambda: _elements(
        setgen.gen_multiplicative(setgen.MultiplicativeSpec(lambda p, e: p != 2), 10)) == [1, 3, 5, 7, 9]

    def idempotent():
        a = setgen.gen_kfree(2, 50)
        return setgen.combine("intersect", a, a) == a
    yield "A & A = A", idempotent
    yield "complement(odds to 6) = evens", lambda: _elements(
        setgen.combine("complement", setgen.gen_periodic(2, [1], 6))) == [2, 4, 6]
    yield "density(odds, 1e6) = 1/2", lambda: setgen.density(setgen.gen_periodic(2, [1], 10**6)) == 0.5

    def farey_100_2():
        m = arcs.farey_major_arcs(100, 2)
        return abs(m.total_measure - 0.08) < 1e-12
    yield "measure M(100,2) = 0.08", farey_100_2
    yield "measure M(100,1) = 0.02", lambda: abs(arcs.farey_major_arcs(100, 1).total_measure - 0.02) < 1e-12
    yield "beatty_spectrum(2,0) = {0}", lambda: arcs.beatty_spectrum(2, 0) == [0.0]
    yield "complement(full) = empty", lambda: len(arcs.complement(arcs.ArcSystem.full())) == 0
    yield "complement([0.1,0.3))", lambda: arcs.complement(arcs.normalize([(0.1, 0.3)])).approx_equal(
        arcs.ArcSystem([[0.0, 0.1], [0.3, 1.0]]))

    def intersect_full():
        a = arcs.farey_major_arcs(1000, 3)
        return arcs.intersect_arcs(a, arcs.ArcSystem.full()).approx_equal(a)
    yield "A & circle = A", intersect_full
    yield "disjoint arcs intersect to empty", lambda: len(arcs.intersect_arcs(
        arcs.normalize([(0.1, 0.2)]), arcs.normalize([(0.3, 0.4)]))) == 0

    sf = setgen.gen_kfree(2, 1000)
    yield "S(0) = count", lambda: expsum.eval_s(sf, 0.0) == sf.count
    yield "S(1/2) on {1..4} = 0", lambda: abs(expsum.eval_s(setgen.gen_periodic(1, [0], 4), 0.5)) < 1e-12
    yield "autocorrelation({1}) = (1)", lambda: expsum.autocorrelation(
        setgen.IntegerSet.from_elements([1], 1)).c.tolist() == [1]

    def ac_interval():
        c = expsum.autocorrelation(setgen.gen_periodic(1, [0], 300)).c
        return np.array_equal(c, 300 - np.arange(300))
    yield "autocorrelation(1..x) = x - h", ac_interval
    yield "Parseval on full circle", lambda: expsum.energy_on_arcs(
        expsum.autocorrelation(sf), arcs.ArcSystem.full()) == sf.count

    def single_point_energy():
        c = expsum.autocorrelation(setgen.IntegerSet.from_elements([1], 1))
        a = arcs.farey_major_arcs(100, 3)
        return abs(expsum.energy_on_arcs(c, a) - a.total_measure) < 1e-12
    yield "|S| = 1 for A = {1}", single_point_energy
    yield "empty set minor ratio 0", lambda: expsum.minor_arc_ratio(
        setgen.gen_periodic(2, [], 100), arcs.farey_major_arcs(100, 3)) == 0.0

    def odds_table():
        t = spectrum.local_densities(setgen.gen_periodic(2, [1], 1000), 2)
        return t[1] == 0.5 and t[0] == 0.0
    yield "odd local densities", odds_table
    yield "arc coefficient q=1 is rho", lambda: abs(
        spectrum.arc_coefficient(spectrum.local_densities(sf, 1), 1) - setgen.density(sf)) < 1e-15
    yield "coefficient at 0 is density", lambda: abs(
        spectrum.fourier_coefficient(sf, Fraction(0)) - setgen.density(sf)) < 1e-15

    def build_fq_constant():
        est = spectrum.spectrum_scan(sf, [Fraction(0), Fraction(1, 2)], 1e-6)
        g = spectrum.build_fq(est, 1)
        return np.allclose(g(np.arange(1, 20)), setgen.density(sf))
    yield "build_fq(Q=1) is the density", build_fq_constant

    def periodic_exact():
        a = setgen.gen_periodic(3, [1, 2], 600)
        est = spectrum.spectrum_scan(a, [Fraction(j, 3) for j in range(3)], 1e-9)
        return spectrum.besicovitch_distance(a, spectrum.build_fq(est, 3)) < 1e-9
    yield "periodic set reconstructed exactly", periodic_exact

    def wirsing():
        odd = spectrum.wirsing_series(setgen.MultiplicativeSpec(lambda p, e: p != 2), 1000)
        sq = spectrum.wirsing_series(setgen.squarefree_rule, 1000)
        return (odd.S1, odd.S2) == (-0.5, 0.5) and (sq.S1, sq.S2) == (0.0, 0.0)
    yield "Wirsing series: odds (-1/2, 1/2), squarefree (0, 0)", wirsing

    def rep_point():
        one = setgen.IntegerSet.from_elements([1], 1)
        t = additive.rep_count(one, one)
        return t[2] == 1 and int(t.r.sum()) == 1
    yield "r(2) = 1 for {1} + {1}", rep_point
    yield "main term n/sqrt6 at 0", lambda: additive.beatty_main_term(0) == 0

    def interval_main():
        full = setgen.gen_periodic(1, [0], 50)
        t = spectrum.arc_coefficient_table(full, 1)
        return math.isclose(additive.rational_main_term(t, t, 40).real, 40.0)
    yield "interval main term = n", interval_main


def run(out=print) -> bool:
    ok = True
    for name, check in _checks():
        try:
            passed = bool(check())
        except Exception as exc:  # report and keep going
            passed = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        ok &= passed
        out(f"{'PASS' if passed else 'FAIL'}  {name}")
    return ok
