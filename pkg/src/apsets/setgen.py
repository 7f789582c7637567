"""Finite truncations of structured integer sets.

Every generator returns an :class:`IntegerSet`, the set intersected with
``[1, x]``.  Generators are prefix consistent: generating at ``x`` and
truncating to ``x' <= x`` gives the same set as generating at ``x'``.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

__all__ = [
    "IntegerSet",
    "MultiplicativeSpec",
    "primes_upto",
    "gen_kfree",
    "gen_beatty",
    "gen_periodic",
    "gen_multiplicative",
    "combine",
    "density",
    "squarefree_rule",
    "kfree_rule",
]

MAGIC = b"APSET\x00"
VERSION = 1
_HEADER = struct.Struct("<6sHQ")


@dataclass(frozen=True, eq=False)
class IntegerSet:
    """Membership bit vector for ``N ∩ [1, limit]``.

    ``bits[i]`` is the membership of ``n = i + 1``; nothing outside
    ``[1, limit]`` is stored.
    """

    limit: int
    bits: np.ndarray = field(repr=False)
    count: int = field(init=False)

    def __post_init__(self):
        if self.limit < 1:
            raise ValueError(f"limit must be >= 1, got {self.limit}")
        bits = np.ascontiguousarray(self.bits, dtype=bool)
        if bits.shape != (self.limit,):
            raise ValueError(
                f"bit vector has shape {bits.shape}, expected ({self.limit},)"
            )
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "count", int(np.count_nonzero(bits)))

    @classmethod
    def from_elements(cls, elements: Iterable[int], limit: int) -> IntegerSet:
        bits = np.zeros(limit, dtype=bool)
        idx = np.fromiter(elements, dtype=np.int64)
        if idx.size and (idx.min() < 1 or idx.max() > limit):
            raise ValueError("elements must lie in [1, limit]")
        bits[idx - 1] = True
        return cls(limit, bits)

    def elements(self) -> np.ndarray:
        """Sorted array of the members (1-based integers)."""
        return np.flatnonzero(self.bits) + 1

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.limit and bool(self.bits[n - 1])

    def __len__(self) -> int:
        return self.count

    def __eq__(self, other):
        if not isinstance(other, IntegerSet):
            return NotImplemented
        return self.limit == other.limit and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.limit, self.bits.tobytes()))

    def truncate(self, x: int) -> IntegerSet:
        if not 1 <= x <= self.limit:
            raise ValueError(f"cannot truncate limit {self.limit} to {x}")
        return IntegerSet(x, self.bits[:x].copy())

    def indicator(self, dtype=np.float64) -> np.ndarray:
        """0/1 vector indexed by ``n - 1``."""
        return self.bits.astype(dtype)

    # serialization

    def to_bytes(self) -> bytes:
        packed = np.packbits(self.bits, bitorder="little")
        return _HEADER.pack(MAGIC, VERSION, self.limit) + packed.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> IntegerSet:
        if len(data) < _HEADER.size:
            raise ValueError("truncated set file")
        magic, version, limit = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ValueError("not an integer-set file (bad magic)")
        if version != VERSION:
            raise ValueError(f"unsupported set file version {version}")
        payload = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
        if payload.size != (limit + 7) // 8:
            raise ValueError("set file payload length does not match header")
        bits = np.unpackbits(payload, count=limit, bitorder="little").astype(bool)
        return cls(limit, bits)

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path) -> IntegerSet:
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())

    def to_text(self) -> str:
        """``x=<limit>`` on the first line, then the members separated by spaces."""
        return f"x={self.limit}\n" + " ".join(map(str, self.elements().tolist())) + "\n"

    @classmethod
    def from_text(cls, text: str) -> IntegerSet:
        head, _, body = text.partition("\n")
        if not head.startswith("x="):
            raise ValueError("text set must start with 'x=<limit>'")
        return cls.from_elements((int(t) for t in body.split()), int(head[2:]))


@dataclass(frozen=True)
class MultiplicativeSpec:
    """0/1 values on prime powers; ``rule(p, e)`` for ``e >= 1``.

    The induced indicator is ``f(n) = prod rule(p, e)`` over ``p^e || n``,
    with ``f(1) = 1``.
    """

    rule: Callable[[int, int], bool]
    name: str = "custom"

    def __call__(self, p: int, e: int) -> bool:
        if e == 0:
            return True
        return bool(self.rule(p, e))


def kfree_rule(k: int) -> MultiplicativeSpec:
    return MultiplicativeSpec(lambda p, e: e < k, name=f"{k}-free")


squarefree_rule = kfree_rule(2)


def primes_upto(n: int) -> np.ndarray:
    """Primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


def _check_limit(x: int) -> None:
    if int(x) != x or x < 1:
        raise ValueError(f"x must be a positive integer, got {x!r}")


def gen_kfree(k: int, x: int) -> IntegerSet:
    """Integers in ``[1, x]`` not divisible by ``p**k`` for any prime ``p``."""
    if int(k) != k or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k!r}")
    _check_limit(x)
    bits = np.ones(x + 1, dtype=bool)
    # largest p with p**k <= x
    pmax = int(round(x ** (1.0 / k))) + 1
    while pmax**k > x:
        pmax -= 1
    for p in primes_upto(pmax).tolist():
        bits[p**k :: p**k] = False
    return IntegerSet(x, bits[1:])


def gen_beatty(r: int, x: int) -> IntegerSet:
    """The Beatty set ``{floor(a * sqrt(r)) : a >= 1}`` truncated at ``x``.

    ``floor(a * sqrt(r))`` is ``isqrt(r * a * a)``, evaluated in exact
    integer arithmetic.
    """
    if int(r) != r or r < 2:
        raise ValueError(f"r must be an integer >= 2, got {r!r}")
    if math.isqrt(r) ** 2 == r:
        raise ValueError(f"r = {r} is a perfect square; sqrt(r) must be irrational")
    _check_limit(x)
    # floor(a sqrt r) <= x  <=>  r a^2 < (x+1)^2
    amax = math.isqrt(((x + 1) ** 2 - 1) // r)
    values = np.fromiter(
        (math.isqrt(r * a * a) for a in range(1, amax + 1)),
        dtype=np.int64,
        count=amax,
    )
    bits = np.zeros(x, dtype=bool)
    bits[values - 1] = True
    return IntegerSet(x, bits)


def gen_periodic(q: int, residues: Iterable[int], x: int) -> IntegerSet:
    if int(q) != q or q < 1:
        raise ValueError(f"q must be a positive integer, got {q!r}")
    _check_limit(x)
    residues = sorted(set(int(a) for a in residues))
    if any(not 0 <= a < q for a in residues):
        raise ValueError(f"residues must lie in [0, {q - 1}]")
    table = np.zeros(q, dtype=bool)
    table[residues] = True
    return IntegerSet(x, table[np.arange(1, x + 1) % q])


def _smallest_prime_factor(x: int) -> np.ndarray:
    spf = np.zeros(x + 1, dtype=np.int64)
    for p in range(2, math.isqrt(x) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    unset = spf == 0
    spf[unset] = np.arange(x + 1)[unset]
    return spf


def gen_multiplicative(spec: MultiplicativeSpec, x: int) -> IntegerSet:
    """Set whose indicator is the multiplicative 0/1 function given by ``spec``.

    A smallest-prime-factor sieve drives a vectorised factorisation: every
    pass strips the full power of the current smallest prime from all
    unfinished ``n`` and multiplies in ``rule(p, e)``, so each ``n`` takes
    ``O(log n)`` passes.
    """
    _check_limit(x)
    spf = _smallest_prime_factor(x)
    primes = primes_upto(x)
    small = math.isqrt(x)
    max_e = max(1, int(math.log2(x)) + 1)

    # rule(p, 1) for every prime, rule(p, e >= 2) only where p**e <= x
    first = np.ones(x + 1, dtype=bool)
    first[primes] = [spec(p, 1) for p in primes.tolist()]
    higher = np.ones((small + 1, max_e + 1), dtype=bool)
    for p in primes[primes <= small].tolist():
        e, pe = 2, p * p
        while pe <= x:
            higher[p, e] = spec(p, e)
            e += 1
            pe *= p

    rem = np.arange(1, x + 1, dtype=np.int64)
    member = np.ones(x, dtype=bool)
    active = np.flatnonzero(rem > 1)
    while active.size:
        r = rem[active]
        p = spf[r]
        e = np.zeros_like(r)
        divisible = np.ones(r.shape, dtype=bool)
        while divisible.any():
            r[divisible] //= p[divisible]
            e[divisible] += 1
            divisible = r % p == 0
        value = first[p]
        hi = e >= 2
        value[hi] = higher[p[hi], e[hi]]
        member[active] &= value
        rem[active] = r
        active = active[r > 1]
    return IntegerSet(x, member)


def combine(op: str, a: IntegerSet, b: IntegerSet | None = None) -> IntegerSet:
    """Pointwise ``intersect``, ``union`` or ``complement``."""
    if op == "complement":
        if b is not None:
            raise ValueError("complement takes a single set")
        return IntegerSet(a.limit, ~a.bits)
    if op not in ("intersect", "union"):
        raise ValueError(f"unknown set operation {op!r}")
    if b is None:
        raise ValueError(f"{op} needs two sets")
    if a.limit != b.limit:
        raise ValueError(f"limits differ: {a.limit} != {b.limit}")
    bits = a.bits & b.bits if op == "intersect" else a.bits | b.bits
    return IntegerSet(a.limit, bits)


def density(a: IntegerSet) -> float:
    return a.count / a.limit
