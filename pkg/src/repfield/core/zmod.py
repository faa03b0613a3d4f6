"""The truncated valuation ring Z/p^M and canonical forms of its row modules.

Submodules of (Z/p^M)^n are kept in Howell form: the unique echelon generating
set in which

* every pivot is a power ``p^k`` (``k < M``),
* entries above a pivot ``p^k`` lie in ``[0, p^k)``,
* for a pivot row ``r`` with pivot ``p^k``, the row ``p^(M-k) * r`` (which
  vanishes in the pivot column) lies in the span of the rows below it.

The last condition is what makes greedy reduction a correct membership test.
Rows are plain tuples of ints; the public functions wrap them in :class:`Mat`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from ..errors import PreconditionError, RingMismatchError

Row = tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ModulusRing:
    """Z/p^M, the valuation ring of an unramified p-adic field mod p^M."""

    p: int
    M: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"p = {self.p} is not prime")
        if self.M < 1:
            raise PreconditionError(f"precision M = {self.M} must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p ** self.M

    @property
    def size(self) -> int:
        return self.modulus

    def reduce(self, x: int) -> int:
        return x % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def neg(self, a: int) -> int:
        return (-a) % self.modulus

    def valuation(self, x: int) -> int:
        """p-adic valuation of ``x`` read mod p^M; zero has valuation M."""
        x %= self.modulus
        if x == 0:
            return self.M
        k = 0
        while x % self.p == 0:
            x //= self.p
            k += 1
        return k

    def is_unit(self, x: int) -> bool:
        return x % self.p != 0

    def units(self) -> list[int]:
        return [u for u in range(self.modulus) if u % self.p]

    def with_precision(self, M: int) -> "ModulusRing":
        return ModulusRing(self.p, M)

    def __str__(self):
        return f"Z/{self.p}^{self.M}"


# ---------------------------------------------------------------------------
# Howell form on raw rows


def _valuation(x: int, p: int) -> int:
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def howell_rows(rows: Iterable[Sequence[int]], p: int, M: int, ncols: int) -> tuple[Row, ...]:
    """Howell form of the row span of ``rows`` over Z/p^M, zero rows dropped."""
    N = p ** M
    work = []
    for r in rows:
        r = [x % N for x in r]
        if len(r) != ncols:
            raise RingMismatchError(f"row of length {len(r)} in a module of rank {ncols}")
        if any(r):
            work.append(r)

    pivots: list[tuple[int, int, list[int]]] = []
    for c in range(ncols):
        best, best_v = -1, M
        for i, r in enumerate(work):
            x = r[c]
            if x:
                v = _valuation(x, p)
                if v < best_v:
                    best, best_v = i, v
                    if v == 0:
                        break
        if best < 0:
            continue
        piv = work.pop(best)
        pk = p ** best_v
        u_inv = pow(piv[c] // pk, -1, N)
        piv = [(x * u_inv) % N for x in piv]

        rest = []
        for r in work:
            x = r[c]
            if x:
                q = x // pk
                r = [(a - q * b) % N for a, b in zip(r, piv)]
            if any(r):
                rest.append(r)
        if best_v:
            # annihilator multiple of the pivot row; keeps the Howell property
            scale = p ** (M - best_v)
            ann = [(x * scale) % N for x in piv]
            if any(ann):
                rest.append(ann)
        work = rest
        pivots.append((c, pk, piv))

    for i in range(1, len(pivots)):
        c, pk, row = pivots[i]
        for j in range(i):
            cj, pkj, rj = pivots[j]
            x = rj[c]
            if x >= pk:
                q = x // pk
                pivots[j] = (cj, pkj, [(a - q * b) % N for a, b in zip(rj, row)])
    return tuple(tuple(r) for _, _, r in pivots)


def _pivot(row: Row) -> int:
    for c, x in enumerate(row):
        if x:
            return c
    return -1


def reduce_row(h: Sequence[Row], v: Sequence[int], p: int, M: int) -> Row:
    """Residue of ``v`` after greedy reduction against Howell rows ``h``.

    The residue is zero exactly when ``v`` lies in the span of ``h``.
    """
    N = p ** M
    v = [x % N for x in v]
    for row in h:
        c = _pivot(row)
        x = v[c]
        if x:
            pk = row[c]
            if x % pk:
                return tuple(v)
            q = x // pk
            v = [(a - q * b) % N for a, b in zip(v, row)]
    return tuple(v)


def contains_row(h: Sequence[Row], v: Sequence[int], p: int, M: int) -> bool:
    return not any(reduce_row(h, v, p, M))


def log_span_size(h: Sequence[Row], p: int, M: int) -> int:
    """log_p of the number of elements in the span of Howell rows ``h``."""
    return sum(M - _valuation(row[_pivot(row)], p) for row in h)


def is_howell(rows: Sequence[Row], p: int, M: int) -> bool:
    ncols = len(rows[0]) if rows else 0
    return tuple(tuple(r) for r in rows) == howell_rows(rows, p, M, ncols)


# ---------------------------------------------------------------------------
# vectors of (Z/p^M)^n


def all_vectors(p: int, M: int, n: int) -> Iterator[Row]:
    return product(range(p ** M), repeat=n)


@lru_cache(maxsize=64)
def primitive_representatives(p: int, M: int, n: int) -> tuple[Row, ...]:
    """One vector per unit-scaling class of primitive vectors in (Z/p^M)^n.

    A vector is primitive when some coordinate is a unit; the representative
    has its first unit coordinate equal to 1.
    """
    N = p ** M
    reps = []
    for lead in range(n):
        # coordinates before the lead are non-units, the lead is 1
        non_units = [x for x in range(N) if x % p == 0]
        for head in product(non_units, repeat=lead):
            for tail in product(range(N), repeat=n - lead - 1):
                reps.append(head + (1,) + tail)
    return tuple(reps)


def count_primitive_representatives(p: int, M: int, n: int) -> int:
    return (p ** (M * n) - p ** ((M - 1) * n)) // ((p - 1) * p ** (M - 1))


def mat_vec(m: Sequence[Row], v: Sequence[int], N: int) -> Row:
    return tuple(sum(a * b for a, b in zip(r, v)) % N for r in m)
