"""Local densities, Fourier coefficients and almost-periodic approximation.

Conventions:

* ``fourier_coefficient(A, beta) = (1/x) sum_{n in A} e(-beta n)``, an
  estimate of the mean ``<f, e_beta>``; at ``beta = 0`` it is the density.
* A :class:`TrigPolynomial` evaluates to ``sum a e(beta n)``, so feeding it
  the coefficients above reconstructs ``f``.
* ``arc_coefficient(T, a) = sum_b f(q, b) e(a b / q)``, which equals
  ``fourier_coefficient(A, -a/q)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.special import zeta

from .arcs import farey_centers
from .expsum import eval_s
from .setgen import IntegerSet, MultiplicativeSpec, density, primes_upto

__all__ = [
    "FREQ_TOL",
    "LocalDensityTable",
    "TrigPolynomial",
    "SpectrumEstimate",
    "ExtremalityCurve",
    "WirsingSeries",
    "local_densities",
    "arc_coefficient",
    "arc_coefficient_table",
    "kfree_coefficient_oracle",
    "kfree_coefficient_table",
    "extremality_sum",
    "extremality_curve",
    "extremality_from_table",
    "kfree_extremality_curve",
    "totients_upto",
    "fourier_coefficient",
    "spectrum_scan",
    "build_fq",
    "besicovitch_distance",
    "wirsing_series",
]

FREQ_TOL = 1e-12


def _reduce(beta):
    if isinstance(beta, Fraction):
        return beta - math.floor(beta)
    if isinstance(beta, int):
        return Fraction(0)
    b = float(beta) % 1.0
    return 0.0 if b >= 1.0 - FREQ_TOL else b


def _same_freq(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    d = abs(float(a) - float(b))
    return min(d, 1.0 - d) < FREQ_TOL


def _phase(beta, n: np.ndarray) -> np.ndarray:
    """``beta * n mod 1``, exactly for rational ``beta``."""
    if isinstance(beta, Fraction):
        return (beta.numerator * n % beta.denominator) / beta.denominator
    return np.mod(float(beta) * n, 1.0)


@dataclass(frozen=True)
class LocalDensityTable:
    """``values[b] = #{n <= x in A : n = b mod q} / x`` for ``b = 0 .. q-1``.

    Residue ``q`` of the 1-based indexing is stored at ``b = 0``.
    """

    q: int
    x: int
    values: np.ndarray = field(repr=False)
    rho: float

    def __getitem__(self, a: int) -> float:
        return float(self.values[a % self.q])


@dataclass(frozen=True)
class TrigPolynomial:
    terms: tuple

    def __post_init__(self):
        terms = tuple((_reduce(b), complex(a)) for b, a in self.terms)
        for i, (b, _) in enumerate(terms):
            for b2, _ in terms[:i]:
                if _same_freq(b, b2):
                    raise ValueError(f"duplicate frequency {b}")
        object.__setattr__(self, "terms", terms)

    @property
    def frequencies(self) -> list:
        return [b for b, _ in self.terms]

    def __call__(self, n) -> np.ndarray:
        n = np.atleast_1d(np.asarray(n, dtype=np.int64))
        out = np.zeros(n.shape, dtype=np.complex128)
        for beta, a in self.terms:
            out += a * np.exp(2j * np.pi * _phase(beta, n))
        return out


@dataclass(frozen=True)
class SpectrumEstimate:
    """Scanned frequencies, strongest first: ``(beta, coefficient, modulus)``."""

    x: int
    entries: tuple

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["beta", "re", "im", "modulus"])
        for beta, coef, mod in self.entries:
            w.writerow([f"{float(beta):.17g}", f"{coef.real:.17g}",
                        f"{coef.imag:.17g}", f"{mod:.17g}"])
        return buf.getvalue()


def local_densities(a: IntegerSet, q: int) -> LocalDensityTable:
    if q < 1 or q > a.limit:
        raise ValueError(f"modulus q = {q} must lie in [1, x = {a.limit}]")
    counts = np.bincount(a.elements() % q, minlength=q)
    return LocalDensityTable(q, a.limit, counts / a.limit, density(a))


def arc_coefficient(table: LocalDensityTable, a: int) -> complex:
    """``sum_{b mod q} f(q, b) e(a b / q)`` for ``gcd(a, q) = 1``."""
    q = table.q
    if math.gcd(a, q) != 1:
        raise ValueError(f"gcd({a}, {q}) != 1")
    b = np.arange(q)
    phases = np.exp(2j * np.pi * ((a * b) % q) / q)
    terms = table.values * phases
    return complex(math.fsum(terms.real.tolist()), math.fsum(terms.imag.tolist()))


def arc_coefficient_table(a: IntegerSet, Q: int) -> dict[Fraction, complex]:
    """Empirical arc coefficients at every Farey centre ``a/q``, ``q <= Q``."""
    out = {}
    for q in range(1, Q + 1):
        table = local_densities(a, q)
        for r in range(1, q + 1):
            if math.gcd(r, q) == 1:
                out[Fraction(r % q, q)] = arc_coefficient(table, r)
    return out


def kfree_coefficient_oracle(k: int, q: int) -> float:
    """Limit arc coefficient of the k-free integers at any ``a/q`` in lowest terms.

    This is ``sum_{q | d^k} mu(d) / d^k``.  Only squarefree ``d`` count, so
    ``d = rad(q) m`` with ``gcd(m, rad(q)) = 1``, which sums to
    ``mu(rad q) rad(q)^-k / zeta(k) * prod_{p | q} (1 - p^-k)^-1``, and to
    0 if some prime divides ``q`` more than ``k`` times.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    rad, sign, euler = 1, 1, 1.0
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e > k:
                return 0.0
            rad *= p
            sign = -sign
            euler /= 1.0 - float(p) ** -k
        p += 1
    if m > 1:
        rad *= m
        sign = -sign
        euler /= 1.0 - float(m) ** -k
    return sign * euler / (float(rad) ** k * float(zeta(k)))


def kfree_coefficient_table(k: int, Q: int) -> dict[Fraction, complex]:
    return {
        c: complex(kfree_coefficient_oracle(k, c.denominator))
        for c in farey_centers(Q)
    }


@dataclass(frozen=True)
class ExtremalityCurve:
    """Partial sums of ``sum_q sum_{(a,q)=1} |coef(a/q) / rho|^2``.

    ``partial[i]`` is the sum over ``q <= i + 1``.
    """

    rho: float
    partial: np.ndarray = field(repr=False)

    @property
    def Q(self) -> int:
        return len(self.partial)

    @property
    def value(self) -> float:
        return float(self.partial[-1])

    @property
    def target(self) -> float:
        return 1.0 / self.rho

    @property
    def gap(self) -> float:
        return self.target - self.value

    @property
    def last_increment(self) -> float:
        """Cauchy diagnostic: contribution of ``q`` in ``(Q/2, Q]``."""
        half = self.Q // 2
        lower = self.partial[half - 1] if half else 0.0
        return float(self.partial[-1] - lower)


def extremality_from_table(coefs: dict[Fraction, complex], rho: float,
                           Q: int | None = None) -> ExtremalityCurve:
    if rho <= 0:
        raise ValueError("extremality sum needs positive density")
    Q = Q or max(c.denominator for c in coefs)
    per_q = np.zeros(Q)
    by_q: dict[int, list[float]] = {}
    for c, val in coefs.items():
        if c.denominator <= Q:
            by_q.setdefault(c.denominator, []).append(abs(val / rho) ** 2)
    for q, terms in by_q.items():
        per_q[q - 1] = math.fsum(terms)
    return ExtremalityCurve(rho, np.cumsum(per_q))


def totients_upto(n: int) -> np.ndarray:
    phi = np.arange(n + 1, dtype=np.int64)
    for p in primes_upto(n).tolist():
        phi[p::p] -= phi[p::p] // p
    return phi


def kfree_extremality_curve(k: int, Q: int) -> ExtremalityCurve:
    """Partial sums for the k-free set from the limiting coefficients.

    The coefficient does not depend on ``a``, so each ``q`` contributes
    ``phi(q) * (coef(q) / rho)^2`` with ``rho = 1 / zeta(k)``.
    """
    rho = 1.0 / float(zeta(k))
    phi = totients_upto(Q)
    per_q = np.array([
        phi[q] * (kfree_coefficient_oracle(k, q) / rho) ** 2 for q in range(1, Q + 1)
    ])
    return ExtremalityCurve(rho, np.cumsum(per_q))


def extremality_curve(a: IntegerSet, Q: int) -> ExtremalityCurve:
    """Empirical partial-sum curve from local densities; ``Q <= sqrt(x)``."""
    if a.count == 0:
        raise ValueError("extremality sum needs positive density (set is empty)")
    if Q < 1 or Q * Q > a.limit:
        raise ValueError(f"Q = {Q} must satisfy 1 <= Q <= sqrt(x) = {math.isqrt(a.limit)}")
    return extremality_from_table(arc_coefficient_table(a, Q), density(a), Q)


def extremality_sum(a: IntegerSet, Q: int) -> float:
    return extremality_curve(a, Q).value


def fourier_coefficient(a: IntegerSet, beta) -> complex:
    """``(1/x) sum_{n in A} e(-beta n)``; rational ``beta`` (Fraction) is exact-phase."""
    b = _reduce(beta)
    neg = (-b) % 1 if isinstance(b, Fraction) else (-b) % 1.0
    return eval_s(a, neg) / a.limit


def spectrum_scan(a: IntegerSet, candidates: Iterable, threshold: float,
                  bessel_tol: float = 1e-3) -> SpectrumEstimate:
    """Coefficients at ``candidates`` with modulus ``>= threshold``, largest first.

    Duplicate candidates are scanned once.  Raises if the retained squared
    moduli exceed the density by more than ``bessel_tol`` (Bessel).
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    seen: list = []
    for beta in candidates:
        b = _reduce(beta)
        if not any(_same_freq(b, s) for s in seen):
            seen.append(b)
    entries = []
    for b in seen:
        coef = fourier_coefficient(a, b)
        if abs(coef) >= threshold:
            entries.append((b, coef, abs(coef)))
    entries.sort(key=lambda t: -t[2])
    mass = math.fsum(m * m for _, _, m in entries)
    if mass > density(a) + bessel_tol:
        raise ArithmeticError(f"Bessel violated: mass {mass} > density {density(a)}")
    return SpectrumEstimate(a.limit, tuple(entries))


def build_fq(coeffs: SpectrumEstimate, Q: int) -> TrigPolynomial:
    """The trigonometric polynomial on the ``Q`` strongest scanned frequencies."""
    if not coeffs.entries:
        raise ValueError("empty spectrum estimate")
    return TrigPolynomial(tuple((b, c) for b, c, _ in coeffs.entries[:Q]))


def besicovitch_distance(a: IntegerSet, g: TrigPolynomial) -> float:
    """``sqrt((1/x) sum_{n <= x} |f(n) - g(n)|^2)``."""
    n = np.arange(1, a.limit + 1, dtype=np.int64)
    diff = a.indicator() - g(n)
    return math.sqrt(math.fsum((diff.real**2 + diff.imag**2).tolist()) / a.limit)


@dataclass(frozen=True)
class WirsingSeries:
    P: int
    S1: float
    S2: float
    last_decade: float
    """Contribution of primes in ``(P/10, P]`` to ``S2``."""


def wirsing_series(spec: MultiplicativeSpec, P: int) -> WirsingSeries:
    """Partial sums over ``p <= P`` of ``(f(p) - 1)/p`` and ``|f(p) - 1|^2 / p``."""
    if P < 2:
        raise ValueError(f"P must be >= 2, got {P}")
    s1, s2, tail = [], [], []
    for p in primes_upto(P).tolist():
        d = (1.0 if spec(p, 1) else 0.0) - 1.0
        s1.append(d / p)
        s2.append(d * d / p)
        if 10 * p > P:
            tail.append(d * d / p)
    return WirsingSeries(P, math.fsum(s1), math.fsum(s2), math.fsum(tail))
