"""Binary representation counts ``r(n) = #{(a, b) in A x B : a + b = n}``."""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .expsum import convolve_exact
from .setgen import IntegerSet

__all__ = [
    "RepCountTable",
    "AsymptoticReport",
    "MainTerm",
    "RationalMainTerm",
    "rep_count",
    "rep_count_direct",
    "beatty_main_term",
    "rational_main_term",
    "asymptotic_report",
]


@dataclass(frozen=True, eq=False)
class RepCountTable:
    """Ordered-pair counts ``r[n]`` for ``n = 0 .. limit_a + limit_b``."""

    limit_a: int
    limit_b: int
    r: np.ndarray = field(repr=False)

    @property
    def n_max(self) -> int:
        return self.limit_a + self.limit_b

    def __getitem__(self, n: int) -> int:
        if 0 <= n <= self.n_max:
            return int(self.r[n])
        return 0

    def to_csv(self, ns, main_term: Callable[[int], float] | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "r", "main_term", "ratio"])
        for n in ns:
            n = int(n)
            if main_term is None:
                w.writerow([n, self[n], "", ""])
            else:
                m = float(main_term(n))
                ratio = self[n] / m if m else float("nan")
                w.writerow([n, self[n], f"{m:.17g}", f"{ratio:.17g}"])
        return buf.getvalue()


def rep_count(a: IntegerSet, b: IntegerSet) -> RepCountTable:
    """Exact ``r(n)`` by convolving the two indicators."""
    conv = convolve_exact(a.bits.astype(np.float64), b.bits.astype(np.float64))
    r = np.zeros(a.limit + b.limit + 1, dtype=np.int64)
    # bit i of each vector is the integer i + 1
    r[2:] = conv
    return RepCountTable(a.limit, b.limit, r)


def rep_count_direct(a: IntegerSet, b: IntegerSet) -> RepCountTable:
    """``r(n)`` by enumerating all pairs; quadratic, for checking."""
    r = np.zeros(a.limit + b.limit + 1, dtype=np.int64)
    eb = b.elements()
    for m in a.elements().tolist():
        np.add.at(r, m + eb, 1)
    return RepCountTable(a.limit, b.limit, r)


def beatty_main_term(n: float) -> float:
    """``n / sqrt(6)``: the predicted count of ``n = [a sqrt 2] + [b sqrt 3]``."""
    return n / math.sqrt(6)


@dataclass(frozen=True)
class MainTerm:
    """Major-arc prediction; ``imag`` is the residual left after taking the real part."""

    real: float
    imag: float

    def __float__(self):
        return self.real


class RationalMainTerm:
    """``n * sum_{a/q} A(a/q) B(a/q) e(-n a/q)`` over the shared Farey centres.

    ``coef_*`` map each centre ``a/q`` to ``sum_b f(q, b) e(a b / q)``, as
    built by :func:`~apsets.spectrum.arc_coefficient_table`.  The inner sum
    over ``a`` depends only on ``n mod q`` and is tabulated once per ``q``.
    """

    def __init__(self, coef_a: dict[Fraction, complex], coef_b: dict[Fraction, complex]):
        if set(coef_a) != set(coef_b):
            raise ValueError("coefficient tables cover different centres")
        by_q: dict[int, list[tuple[int, complex]]] = {}
        for c in sorted(coef_a):
            by_q.setdefault(c.denominator, []).append((c.numerator, coef_a[c] * coef_b[c]))
        self._tables = {}
        for q, terms in sorted(by_q.items()):
            rows = []
            for m in range(q):
                vals = [w * cmath.exp(-2j * math.pi * ((m * a) % q) / q) for a, w in terms]
                rows.append((math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals)))
            self._tables[q] = rows

    def __call__(self, n: int) -> MainTerm:
        parts = [t[n % q] for q, t in self._tables.items()]
        return MainTerm(n * math.fsum(p[0] for p in parts), n * math.fsum(p[1] for p in parts))


def rational_main_term(coef_a: dict[Fraction, complex], coef_b: dict[Fraction, complex],
                       n: int) -> MainTerm:
    """Single evaluation of :class:`RationalMainTerm`."""
    return RationalMainTerm(coef_a, coef_b)(n)


@dataclass(frozen=True)
class AsymptoticReport:
    ns: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)
    main: np.ndarray = field(repr=False)

    @property
    def ratios(self) -> np.ndarray:
        return self.r / self.main

    @property
    def mean(self) -> float:
        return float(np.mean(self.ratios))

    @property
    def min(self) -> float:
        return float(np.min(self.ratios))

    @property
    def max(self) -> float:
        return float(np.max(self.ratios))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "r", "main_term", "ratio"])
        for n, r, m in zip(self.ns.tolist(), self.r.tolist(), self.main.tolist()):
            w.writerow([n, r, f"{m:.17g}", f"{r / m:.17g}"])
        return buf.getvalue()


def asymptotic_report(a: IntegerSet, b: IntegerSet, main_term: Callable[[int], float],
                      window: range | tuple[int, int],
                      table: RepCountTable | None = None) -> AsymptoticReport:
    """Ratios ``r(n) / main_term(n)`` over ``window`` (inclusive ``(lo, hi)`` or a range).

    The window must stay below ``min(limit_a, limit_b)``, where truncation
    does not yet restrict either summand.
    """
    ns = np.arange(window[0], window[1] + 1) if isinstance(window, tuple) else np.asarray(window)
    if not ns.size:
        raise ValueError("empty window")
    if ns.min() < 1 or ns.max() > min(a.limit, b.limit):
        raise ValueError(f"window must lie in [1, {min(a.limit, b.limit)}]")
    table = table or rep_count(a, b)
    main = np.array([float(main_term(int(n))) for n in ns])
    if np.any(main == 0):
        raise ValueError("main term vanishes inside the window")
    return AsymptoticReport(ns, table.r[ns], main)
