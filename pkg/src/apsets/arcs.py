"""Major and minor arc systems on the circle ``R/Z``.

Arcs are half-open ``[u, v)`` with ``0 <= u < v <= 1``.  An arc that
crosses 0 is stored as two pieces, ``[u, 1)`` and ``[0, v)``.  A normalized
system is sorted, pairwise disjoint, and has no two pieces closer than
:data:`MERGE_TOL`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MERGE_TOL",
    "ArcSystem",
    "normalize",
    "arcs_from_centers",
    "farey_centers",
    "farey_major_arcs",
    "sequence_major_arcs",
    "beatty_spectrum",
    "beatty_major_arcs",
    "complement",
    "intersect_arcs",
    "reflect",
]

MERGE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ArcSystem:
    intervals: np.ndarray = field(repr=False)

    def __post_init__(self):
        iv = np.array(self.intervals, dtype=np.float64).reshape(-1, 2)
        iv.setflags(write=False)
        object.__setattr__(self, "intervals", iv)

    @property
    def total_measure(self) -> float:
        return math.fsum((self.intervals[:, 1] - self.intervals[:, 0]).tolist())

    measure = total_measure

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(map(tuple, self.intervals.tolist()))

    @property
    def is_normalized(self) -> bool:
        iv = self.intervals
        if not len(iv):
            return True
        if iv[0, 0] < 0 or iv[-1, 1] > 1 or np.any(iv[:, 1] <= iv[:, 0]):
            return False
        return bool(np.all(iv[1:, 0] - iv[:-1, 1] >= MERGE_TOL))

    def contains(self, theta) -> np.ndarray | bool:
        t = np.mod(np.asarray(theta, dtype=np.float64), 1.0)
        k = np.searchsorted(self.intervals[:, 0], t, side="right") - 1
        ok = k >= 0
        inside = np.zeros(t.shape, dtype=bool)
        inside[ok] = t[ok] < self.intervals[k[ok], 1]
        return bool(inside) if inside.ndim == 0 else inside

    def approx_equal(self, other: ArcSystem, tol: float = 1e-12) -> bool:
        a, b = self.intervals, other.intervals
        return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))

    @classmethod
    def full(cls) -> ArcSystem:
        return cls([[0.0, 1.0]])

    @classmethod
    def empty(cls) -> ArcSystem:
        return cls(np.zeros((0, 2)))

    def to_text(self) -> str:
        """One ``u v`` pair per line, 17 significant digits."""
        return "".join(f"{u:.17g} {v:.17g}\n" for u, v in self)

    @classmethod
    def from_text(cls, text: str) -> ArcSystem:
        rows = [line.split() for line in text.splitlines() if line.strip()]
        return normalize([(float(u), float(v)) for u, v in rows])


def normalize(arcs: Iterable[tuple[float, float]] | ArcSystem) -> ArcSystem:
    """Reduce arbitrary arcs ``[u, v)`` on the real line to a normalized system.

    Arcs of length >= 1 cover the circle.  Pieces whose gap is below
    :data:`MERGE_TOL` are merged; pieces shorter than it are dropped.
    """
    if isinstance(arcs, ArcSystem):
        arcs = arcs.intervals
    raw = np.array(list(arcs) if not isinstance(arcs, np.ndarray) else arcs,
                   dtype=np.float64).reshape(-1, 2)
    raw = raw[raw[:, 1] > raw[:, 0]]
    if not len(raw):
        return ArcSystem.empty()
    if np.any(raw[:, 1] - raw[:, 0] >= 1.0):
        return ArcSystem.full()

    shift = np.floor(raw[:, 0])
    u = raw[:, 0] - shift
    v = raw[:, 1] - shift
    wraps = v > 1.0
    pieces = np.concatenate([
        np.column_stack([u, np.minimum(v, 1.0)]),
        np.column_stack([np.zeros(wraps.sum()), v[wraps] - 1.0]),
    ])
    pieces = pieces[pieces[:, 1] - pieces[:, 0] >= MERGE_TOL]
    if not len(pieces):
        return ArcSystem.empty()
    pieces = pieces[np.argsort(pieces[:, 0], kind="stable")]

    merged = []
    cur_u, cur_v = pieces[0]
    for a, b in pieces[1:].tolist():
        if a - cur_v < MERGE_TOL:
            cur_v = max(cur_v, b)
        else:
            merged.append((cur_u, cur_v))
            cur_u, cur_v = a, b
    merged.append((cur_u, cur_v))
    out = np.array(merged)
    # snap to the circle's ends so [0,1) detection survives round-off
    if out[0, 0] < MERGE_TOL:
        out[0, 0] = 0.0
    if out[-1, 1] > 1.0 - MERGE_TOL:
        out[-1, 1] = 1.0
    return ArcSystem(out)


def arcs_from_centers(centers: Sequence[float], half_width: float) -> ArcSystem:
    c = np.asarray([float(t) for t in centers], dtype=np.float64)
    return normalize(np.column_stack([c - half_width, c + half_width]))


def farey_centers(Q: float) -> list[Fraction]:
    """Reduced fractions ``a/q`` with ``q <= Q`` and ``1 <= a <= q``, as points of ``R/Z``.

    ``1/1`` is returned as ``Fraction(0)``.  Sorted by denominator, then
    numerator.
    """
    out = []
    for q in range(1, int(math.floor(Q)) + 1):
        for a in range(1, q + 1):
            if math.gcd(a, q) == 1:
                out.append(Fraction(a % q, q))
    return out


def farey_major_arcs(x: int, Q: float) -> ArcSystem:
    """``M(x, Q)``: arcs of half-width ``Q/x`` about every ``a/q`` with ``q <= Q``."""
    if Q < 1:
        raise ValueError(f"Q must be >= 1, got {Q}")
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if Q / x >= 0.5:
        raise ValueError(f"half-width Q/x = {Q / x} >= 1/2 covers the circle")
    return arcs_from_centers(farey_centers(Q), Q / x)


def sequence_major_arcs(alpha: Sequence[float], x: int, Q: float,
                        half_width: float | None = None) -> ArcSystem:
    """``M_alpha(x, Q)``: arcs about the first ``floor(Q)`` entries of ``alpha``.

    The half-width defaults to ``Q/x``; pass ``half_width`` to decouple the
    two.
    """
    n = int(math.floor(Q))
    if len(alpha) < math.ceil(Q):
        raise ValueError(f"need at least {math.ceil(Q)} frequencies, got {len(alpha)}")
    w = Q / x if half_width is None else half_width
    if w >= 0.5:
        raise ValueError(f"half-width {w} >= 1/2 covers the circle")
    return arcs_from_centers(list(alpha[:n]), w)


def beatty_spectrum(r: int, Q: float) -> list[float]:
    """``k / sqrt(r) mod 1`` for ``k = 0, 1, -1, 2, -2, ...`` with ``|k| <= Q``."""
    if Q < 0:
        raise ValueError(f"Q must be >= 0, got {Q}")
    inv = 1.0 / math.sqrt(r)
    out = [0.0]
    for k in range(1, int(math.floor(Q)) + 1):
        out.append((k * inv) % 1.0)
        out.append((-k * inv) % 1.0)
    return out


def beatty_major_arcs(r: int, x: int, Q: float) -> ArcSystem:
    """``M_{sqrt r}(x, Q)``: half-width ``Q/x`` about ``k/sqrt(r)`` for all ``|k| <= Q``."""
    if Q / x >= 0.5:
        raise ValueError(f"half-width Q/x = {Q / x} >= 1/2 covers the circle")
    return arcs_from_centers(beatty_spectrum(r, Q), Q / x)


def complement(a: ArcSystem) -> ArcSystem:
    iv = a.intervals
    if not len(iv):
        return ArcSystem.full()
    edges = np.concatenate([[0.0], iv.ravel(), [1.0]]).reshape(-1, 2)
    edges = edges[edges[:, 1] - edges[:, 0] >= MERGE_TOL]
    return ArcSystem(edges)


def intersect_arcs(a: ArcSystem, b: ArcSystem) -> ArcSystem:
    out = []
    i = j = 0
    A, B = a.intervals.tolist(), b.intervals.tolist()
    while i < len(A) and j < len(B):
        lo = max(A[i][0], B[j][0])
        hi = min(A[i][1], B[j][1])
        if hi - lo >= MERGE_TOL:
            out.append((lo, hi))
        if A[i][1] < B[j][1]:
            i += 1
        else:
            j += 1
    return normalize(out)


def reflect(a: ArcSystem) -> ArcSystem:
    """Image under ``theta -> 1 - theta``."""
    iv = a.intervals
    return normalize(np.column_stack([1.0 - iv[:, 1], 1.0 - iv[:, 0]]))
