"""Exponential sums ``S(theta) = sum_{n in A} e(theta n)`` and their arc energies.

The energy ``int_A |S|^2`` is computed in closed form from the
autocorrelation ``c(h) = #{(m, n) : m - n = h}``::

    |S(theta)|^2 = c(0) + 2 sum_{h >= 1} c(h) cos(2 pi h theta)

so nothing is sampled on a grid.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arcs import ArcSystem, complement
from .setgen import IntegerSet

__all__ = [
    "FFT_MAX",
    "BITSET_CHECK_MAX",
    "PrecisionError",
    "Autocorrelation",
    "e",
    "eval_s",
    "trig_sum",
    "eval_s_many",
    "autocorrelation",
    "autocorrelation_bitset",
    "convolve_exact",
    "ntt_convolve",
    "energy_on_arcs",
    "minor_arc_ratio",
]

FFT_MAX = 2**20
BITSET_CHECK_MAX = 2**14
ROUNDING_TOL = 0.25


class PrecisionError(ArithmeticError):
    """Floating transform output was not close enough to an integer."""


@dataclass(frozen=True, eq=False)
class Autocorrelation:
    x: int
    c: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.int64)
        if c.shape != (self.x,):
            raise ValueError(f"autocorrelation must have length x = {self.x}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def count(self) -> int:
        return int(self.c[0])


def e(t):
    """``exp(2 pi i t)`` after reducing ``t`` mod 1."""
    return np.exp(2j * np.pi * np.mod(t, 1.0))


def _phases(n: np.ndarray, theta) -> np.ndarray:
    if isinstance(theta, Fraction):
        num = (theta.numerator % theta.denominator) * n % theta.denominator
        return num / theta.denominator
    return np.mod(float(theta) * n, 1.0)


def eval_s(a: IntegerSet, theta) -> complex:
    """``S(theta)`` with the phase taken from the fractional part of ``theta n``.

    Real and imaginary parts are accumulated with :func:`math.fsum`.
    ``theta`` may be a :class:`~fractions.Fraction` for exact phases.
    """
    n = a.elements()
    if not n.size:
        return 0j
    arg = 2 * np.pi * _phases(n, theta)
    return complex(math.fsum(np.cos(arg).tolist()), math.fsum(np.sin(arg).tolist()))


def trig_sum(coeffs: np.ndarray, thetas, block: int | None = None) -> np.ndarray:
    """``sum_h coeffs[h] e(h theta)`` at every ``theta``, by blocked direct summation.

    Writing ``h = B j + i`` gives
    ``sum_j e(theta B j) sum_i coeffs[B j + i] e(theta i)``: the inner sums
    are one matrix product and only ``O(sqrt H)`` exponentials are needed
    per point.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    coeffs = np.asarray(coeffs)
    H = coeffs.size
    B = block or max(1, math.isqrt(H))
    J = -(-H // B)
    padded = np.zeros(J * B, dtype=np.result_type(coeffs, np.float64))
    padded[:H] = coeffs
    W = padded.reshape(J, B)
    out = np.empty(thetas.shape, dtype=np.complex128)
    for s in range(0, thetas.size, 256):
        t = thetas[s : s + 256]
        inner = W @ e(np.outer(np.arange(B), t))
        outer = e(np.outer(np.arange(J) * B, t))
        out[s : s + 256] = np.sum(inner * outer, axis=0)
    return out


def eval_s_many(a: IntegerSet, thetas) -> np.ndarray:
    """``S`` at many points via :func:`trig_sum`; no autocorrelation involved."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    return e(thetas) * trig_sum(a.indicator(), thetas)


def _fft_len(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def _round_checked(values: np.ndarray) -> np.ndarray:
    rounded = np.rint(values)
    if values.size:
        worst = float(np.max(np.abs(values - rounded)))
        if worst > ROUNDING_TOL:
            raise PrecisionError(f"transform residue {worst:.3g} exceeds {ROUNDING_TOL}")
    return rounded.astype(np.int64)


# Number-theoretic transform over Z/pZ, p = 119 * 2^23 + 1, primitive root 3.
_NTT_P = 998244353
_NTT_G = 3


def _ntt(a: np.ndarray, invert: bool = False) -> np.ndarray:
    p = _NTT_P
    n = a.size
    levels = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.int64)
    for b in range(levels):
        rev |= ((np.arange(n) >> b) & 1) << (levels - 1 - b)
    a = a[rev].copy()
    length = 2
    while length <= n:
        w = pow(_NTT_G, (p - 1) // length, p)
        if invert:
            w = pow(w, p - 2, p)
        half = length // 2
        tw = np.ones(1, dtype=np.int64)
        while tw.size < half:
            tw = np.concatenate([tw, tw * pow(w, tw.size, p) % p])
        blocks = a.reshape(-1, length)
        lo = blocks[:, :half].copy()
        hi = blocks[:, half:] * tw % p
        blocks[:, :half] = (lo + hi) % p
        blocks[:, half:] = (lo - hi) % p
        length <<= 1
    if invert:
        a = a * pow(n, p - 2, p) % p
    return a


def ntt_convolve(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Exact linear convolution of nonnegative integer vectors modulo 998244353.

    Exact as long as every output entry is below the modulus and the
    padded length divides ``2^23``.
    """
    m = u.size + v.size - 1
    n = _fft_len(m)
    if n > 2**23:
        raise ValueError("convolution too long for the NTT modulus")
    fu = np.zeros(n, dtype=np.int64)
    fv = np.zeros(n, dtype=np.int64)
    fu[: u.size] = u
    fv[: v.size] = v
    prod = _ntt(fu) * _ntt(fv) % _NTT_P
    return _ntt(prod, invert=True)[:m]


def convolve_exact(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Integer convolution of 0/1 (or small integer) vectors.

    Real FFT with nearest-integer rounding when both inputs are at most
    :data:`FFT_MAX` long, otherwise the exact NTT.
    """
    if max(u.size, v.size) > FFT_MAX:
        return ntt_convolve(u.astype(np.int64), v.astype(np.int64))
    m = u.size + v.size - 1
    n = _fft_len(m)
    prod = np.fft.rfft(u, n) * np.fft.rfft(v, n)
    return _round_checked(np.fft.irfft(prod, n)[:m])


def autocorrelation_bitset(a: IntegerSet) -> Autocorrelation:
    """``c(h) = popcount(B & (B >> h))`` on the set packed into one integer.

    ``O(x^2 / w)`` word operations; the reference for small ``x``.
    """
    packed = np.packbits(a.bits, bitorder="little").tobytes()
    word = int.from_bytes(packed, "little")
    c = np.fromiter(
        ((word & (word >> h)).bit_count() for h in range(a.limit)),
        dtype=np.int64,
        count=a.limit,
    )
    return Autocorrelation(a.limit, c)


def autocorrelation(a: IntegerSet, verify: bool | None = None) -> Autocorrelation:
    """Exact ``c(h)``, ``h = 0 .. x-1``, by self-correlation through a fast transform.

    For ``x <= BITSET_CHECK_MAX`` the result is checked against
    :func:`autocorrelation_bitset` unless ``verify=False``.
    """
    f = a.bits.astype(np.float64 if a.limit <= FFT_MAX else np.int64)
    full = convolve_exact(f, f[::-1])
    c = full[a.limit - 1 :]
    result = Autocorrelation(a.limit, c)
    if verify is None:
        verify = a.limit <= BITSET_CHECK_MAX
    if verify:
        ref = autocorrelation_bitset(a)
        if not np.array_equal(ref.c, result.c):
            raise PrecisionError("fast-transform autocorrelation disagrees with bitset count")
    return result


def energy_on_arcs(c: Autocorrelation, arcs: ArcSystem, threads: int = 1) -> float:
    """``int_arcs |S(theta)|^2 d theta`` from the autocorrelation.

    Each arc ``[u, v)`` contributes ``c(0)(v - u)`` plus
    ``sum_{h >= 1} c(h) (sin 2 pi v h - sin 2 pi u h) / (pi h)``; the
    ``h``-sums are the imaginary part of one trigonometric polynomial
    evaluated at every endpoint.  With ``threads > 1`` the endpoints are
    split into fixed slices and the partial sums added in slice order.
    """
    if not isinstance(arcs, ArcSystem) or not arcs.is_normalized:
        raise ValueError("energy_on_arcs needs a normalized ArcSystem")
    if not len(arcs) or c.count == 0:
        return 0.0
    iv = arcs.intervals
    ends = np.concatenate([iv[:, 1], iv[:, 0]])
    signs = np.concatenate([np.ones(len(iv)), -np.ones(len(iv))])
    h = np.arange(c.x)
    weights = np.zeros(c.x)
    weights[1:] = c.c[1:] / (np.pi * h[1:])

    def part(idx):
        if not idx.size:
            return 0.0
        vals = trig_sum(weights, ends[idx]).imag
        return math.fsum((signs[idx] * vals).tolist())

    slices = np.array_split(np.arange(ends.size), max(1, threads))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(part, slices))
    else:
        parts = [part(s) for s in slices]
    total = c.count * arcs.total_measure + math.fsum(parts)
    if total < 0:
        if total < -1e-9 * c.count:
            raise PrecisionError(f"negative arc energy {total}")
        total = 0.0
    if total > c.count * (1 + 1e-9):
        raise PrecisionError(f"arc energy {total} exceeds c(0) = {c.count}")
    return total


def minor_arc_ratio(a: IntegerSet | Autocorrelation, major: ArcSystem,
                    threads: int = 1) -> float:
    """Minor-arc energy ``int_{complement(major)} |S|^2`` divided by ``x``."""
    c = a if isinstance(a, Autocorrelation) else autocorrelation(a)
    return energy_on_arcs(c, complement(major), threads=threads) / c.x
