"""Lattices between p^M O^n and O^n, seen as submodules of (Z/p^M)^n.

A lattice ``L`` with ``p^M O^n <= L <= O^n`` is stored through its image
``L / p^M O^n`` in Howell form. Its colength ``[O^n : L]`` (as a power of p)
read mod n is the distance class of the maximal order ``End(L)`` from
``M_n(O)``. Scaling a lattice by p shifts the colength by n, so the class is a
homothety invariant.

Matrices act on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .core.matrix import Mat
from .core.zmod import (
    ModulusRing,
    Row,
    contains_row,
    count_primitive_representatives,
    howell_rows,
    log_span_size,
    mat_vec,
    primitive_representatives,
)
from .errors import PreconditionError, ResourceError, RingMismatchError

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class Submodule:
    """A submodule of (Z/p^M)^n, canonical by construction."""

    ring: ModulusRing
    n: int
    rows: tuple[Row, ...]

    @classmethod
    def span(cls, ring: ModulusRing, n: int, vectors: Iterable[Sequence[int]]) -> "Submodule":
        return cls(ring, n, howell_rows(vectors, ring.p, ring.M, n))

    @classmethod
    def zero(cls, ring: ModulusRing, n: int) -> "Submodule":
        return cls(ring, n, ())

    @classmethod
    def full(cls, ring: ModulusRing, n: int) -> "Submodule":
        return cls.span(ring, n, [tuple(int(i == j) for j in range(n)) for i in range(n)])

    @property
    def basis(self) -> Mat:
        return Mat(self.ring, len(self.rows), self.n, tuple(x for r in self.rows for x in r))

    def __contains__(self, v: Sequence[int]) -> bool:
        return contains_row(self.rows, v, self.ring.p, self.ring.M)

    def log_size(self) -> int:
        return log_span_size(self.rows, self.ring.p, self.ring.M)

    def size(self) -> int:
        return self.ring.p ** self.log_size()

    def colength(self) -> int:
        """log_p of the index of the lattice in O^n."""
        return self.n * self.ring.M - self.log_size()

    def is_subset(self, other: "Submodule") -> bool:
        _check_ambient(self, other)
        return all(r in other for r in self.rows)

    def scaled(self, k: int = 1) -> "Submodule":
        """The image of p^k L."""
        c = self.ring.p ** k
        return Submodule.span(self.ring, self.n, [[c * x for x in r] for r in self.rows])

    def elements(self) -> set[Row]:
        """All elements, by breadth-first closure; only for tiny modules."""
        N = self.ring.modulus
        seen = {(0,) * self.n}
        frontier = list(seen)
        while frontier:
            nxt = []
            for v in frontier:
                for r in self.rows:
                    w = tuple((a + b) % N for a, b in zip(v, r))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return seen

    def __repr__(self):
        return f"Submodule({self.ring}, n={self.n}, rows={list(self.rows)})"


@dataclass(frozen=True)
class DistanceClass:
    n: int
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.n:
            raise PreconditionError(f"class {self.value} outside Z/{self.n}")


def _check_ambient(a: Submodule, b: Submodule):
    if a.ring != b.ring or a.n != b.n:
        raise RingMismatchError(f"submodules of ({a.ring})^{a.n} and ({b.ring})^{b.n}")


def colength_class(L: Submodule) -> DistanceClass:
    return DistanceClass(L.n, L.colength() % L.n)


def join(a: Submodule, b: Submodule) -> Submodule:
    _check_ambient(a, b)
    return Submodule.span(a.ring, a.n, a.rows + b.rows)


def meet(a: Submodule, b: Submodule) -> Submodule:
    """Intersection, read off the Howell form of [[A, A], [B, 0]]."""
    _check_ambient(a, b)
    n = a.n
    stacked = [r + r for r in a.rows] + [r + (0,) * n for r in b.rows]
    h = howell_rows(stacked, a.ring.p, a.ring.M, 2 * n)
    inter = [r[n:] for r in h if not any(r[:n])]
    return Submodule.span(a.ring, n, inter)


# ---------------------------------------------------------------------------
# invariant submodules


def _action_rows(gens: Sequence[Mat], ring: ModulusRing, n: int) -> list[tuple[Row, ...]]:
    out = []
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError(f"generator over {g.ring}, expected {ring}")
        if g.rows != n or g.cols != n:
            raise RingMismatchError(f"{g.rows}x{g.cols} generator acting on rank {n}")
        out.append(g.to_rows())
    return out


def _spin_rows(acts, ring: ModulusRing, n: int, seeds: Iterable[Sequence[int]],
               stop: Callable[[tuple[Row, ...]], bool] | None = None) -> tuple[Row, ...]:
    p, M, N = ring.p, ring.M, ring.modulus
    rows: tuple[Row, ...] = ()
    queue = [tuple(x % N for x in s) for s in seeds]
    while queue:
        v = queue.pop()
        if not any(v) or contains_row(rows, v, p, M):
            continue
        rows = howell_rows(rows + (v,), p, M, n)
        if stop is not None and stop(rows):
            return rows
        for g in acts:
            queue.append(mat_vec(g, v, N))
    return rows


def spin(gens: Sequence[Mat], v: Sequence[int]) -> Submodule:
    """Least submodule containing ``v`` and stable under every generator."""
    if not gens:
        raise PreconditionError("spin needs at least one generator to fix the ring")
    ring, n = gens[0].ring, gens[0].rows
    if len(v) != n:
        raise RingMismatchError(f"vector of length {len(v)} in rank {n}")
    acts = _action_rows(gens, ring, n)
    return Submodule(ring, n, _spin_rows(acts, ring, n, [v]))


def is_invariant(gens: Sequence[Mat], L: Submodule) -> bool:
    N = L.ring.modulus
    return all(mat_vec(g.to_rows(), r, N) in L for g in gens for r in L.rows)


def _check_cap(ring: ModulusRing, n: int, cap: int):
    total = ring.modulus ** n
    if total > cap:
        raise ResourceError(
            f"ambient module ({ring})^{n} has {total} elements, above the enumeration cap {cap}",
            cap=cap, required=total)


def cyclic_invariant_submodules(gens: Sequence[Mat], ring: ModulusRing, n: int,
                                cap: int = DEFAULT_CAP) -> list[Submodule]:
    """All spins of nonzero vectors, deduplicated.

    Every nonzero vector is a unit times p^j times a primitive vector, and
    spin(p^j v) = p^j spin(v), so spinning the primitive representatives and
    scaling covers every nonzero seed.
    """
    _check_cap(ring, n, cap)
    acts = _action_rows(gens, ring, n)
    seen: dict[tuple[Row, ...], Submodule] = {}
    for v in primitive_representatives(ring.p, ring.M, n):
        rows = _spin_rows(acts, ring, n, [v])
        if rows in seen:
            continue
        L = Submodule(ring, n, rows)
        for j in range(ring.M):
            S = L.scaled(j) if j else L
            seen.setdefault(S.rows, S)
    return [seen[k] for k in sorted(seen)]


def iter_invariant_submodules(gens: Sequence[Mat], ring: ModulusRing, n: int,
                              cap: int = DEFAULT_CAP) -> Iterator[Submodule]:
    """Yield every gens-invariant submodule of (Z/p^M)^n exactly once.

    Breadth-first closure of the cyclic invariant submodules under joins,
    starting from the zero module.
    """
    cyclic = cyclic_invariant_submodules(gens, ring, n, cap)
    zero = Submodule.zero(ring, n)
    seen = {zero.rows}
    yield zero
    frontier = [zero]
    while frontier:
        nxt = []
        for L in frontier:
            for C in cyclic:
                if all(r in L for r in C.rows):
                    continue
                J = join(L, C)
                if J.rows not in seen:
                    seen.add(J.rows)
                    nxt.append(J)
                    yield J
        frontier = nxt


def invariant_submodules(gens: Sequence[Mat], ring: ModulusRing | None = None, n: int | None = None,
                         cap: int = DEFAULT_CAP) -> set[Submodule]:
    """The set of all submodules L with g L <= L for every generator g.

    ``ring`` and ``n`` default to those of the first generator; they are
    required when ``gens`` is empty (then every submodule is returned).
    """
    if ring is None or n is None:
        if not gens:
            raise PreconditionError("ring and n are required when no generators are given")
        ring, n = gens[0].ring, gens[0].rows
    return set(iter_invariant_submodules(gens, ring, n, cap))


def spin_contains_scaled_full(acts, ring: ModulusRing, n: int, v: Sequence[int], k: int) -> bool:
    """Does the spin of ``v`` contain p^k (Z/p^M)^n?"""
    target = [tuple(ring.p ** k if i == j else 0 for j in range(n)) for i in range(n)]

    def done(rows):
        return all(contains_row(rows, t, ring.p, ring.M) for t in target)

    return done(_spin_rows(acts, ring, n, [v], stop=done))


def primitive_count(ring: ModulusRing, n: int) -> int:
    return count_primitive_representatives(ring.p, ring.M, n)
