"""Residual algebras of orders and the dimensions of their irreducibles.

The residual algebra of H is its image in M_n(F_p). Its irreducible
representations are found by chopping a module into composition factors with
a randomized MeatAxe: a random algebra element ``a`` is drawn, an irreducible
factor ``f`` of its characteristic polynomial gives a kernel ``ker f(a)``,
and spinning a kernel vector either exposes a proper submodule or, together
with the dual check, proves irreducibility (Norton's criterion, valid when
``dim ker f(a) == deg f``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from functools import reduce
from typing import Sequence

from .core import linalg as la
from .core.fq import FiniteField, scalar_extend
from .core.matrix import Mat
from .errors import PreconditionError
from .orders import LocalOrder

MAX_MODULE_DIM = 64
MAX_TRIES = 500


@dataclass(frozen=True)
class ResidualAlgebra:
    """A unital subalgebra of M_n(F_q), stored by an RREF basis of flattenings."""

    field: FiniteField
    n: int
    basis: tuple[Mat, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.m

    @classmethod
    def from_matrices(cls, mats: Sequence[Mat]) -> "ResidualAlgebra":
        """Span of ``mats`` (which must already be closed and unital)."""
        F = mats[0].ring
        n = mats[0].rows
        red, _ = la.rref(F, [m.entries for m in mats])
        return cls(F, n, tuple(Mat(F, n, n, tuple(r)) for r in red))

    def _pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(b.entries) if x) for b in self.basis]

    def coordinates(self, m: Mat) -> list[int] | None:
        rows = [list(b.entries) for b in self.basis]
        return la.coordinates(self.field, rows, self._pivots(), m.entries)

    def contains(self, m: Mat) -> bool:
        return self.coordinates(m) is not None

    def is_closed(self) -> bool:
        return all(self.contains(a @ b) for a in self.basis for b in self.basis)

    def is_unital(self) -> bool:
        return self.contains(Mat.identity(self.field, self.n))

    def natural_action(self) -> list[la.Rows]:
        return [[list(b.row(i)) for i in range(self.n)] for b in self.basis]

    def regular_action(self) -> list[la.Rows]:
        """Left multiplication by each basis element, in basis coordinates."""
        out = []
        for x in self.basis:
            cols = [self.coordinates(x @ b) for b in self.basis]
            if any(c is None for c in cols):
                raise PreconditionError("residual basis is not multiplicatively closed")
            out.append(la.transpose(cols))
        return out

    def extend(self, d: int, target: FiniteField | None = None) -> "ResidualAlgebra":
        """Scalar extension to the degree-d extension of the base field."""
        mats = scalar_extend(list(self.basis), d, target)
        if not mats:
            return self
        return ResidualAlgebra(mats[0].ring, self.n, tuple(mats))


def residual_algebra(H: LocalOrder) -> ResidualAlgebra:
    """Image of H in M_n(F_p): the span of its generators reduced mod p."""
    H1 = H.at_precision(1)
    F = FiniteField(H.p)
    return ResidualAlgebra(F, H.n, tuple(Mat(F, H.n, H.n, r) for r in H1.basis))


# ---------------------------------------------------------------------------
# MeatAxe


@dataclass(frozen=True)
class CompositionFactor:
    """An irreducible constituent: its dimension, the action of the algebra
    basis on it, and how often it occurs."""

    dim: int
    action: tuple[tuple[tuple[int, ...], ...], ...]
    multiplicity: int = 1


def _random_element(F: FiniteField, gens: Sequence[la.Rows], rng: random.Random) -> la.Rows:
    dim = len(gens[0])
    acc = [[0] * dim for _ in range(dim)]
    for g in gens:
        c = rng.randrange(F.q)
        if c:
            acc = [[F.add(x, F.mul(c, y)) for x, y in zip(ra, rg)] for ra, rg in zip(acc, g)]
    return acc


def find_submodule(F: FiniteField, gens: Sequence[la.Rows], rng: random.Random) -> la.Rows | None:
    """RREF basis of a proper nonzero invariant subspace, or None if irreducible.

    ``gens`` must span the acting algebra (not merely generate it), so that a
    random combination is a uniformly random algebra element.
    """
    dim = len(gens[0]) if gens else 0
    if dim <= 1:
        return None
    gens_t = [la.transpose(g) for g in gens]
    for _ in range(MAX_TRIES):
        a = _random_element(F, gens, rng)
        factors = la.small_irreducible_factors(F, la.charpoly(F, a), max_degree=6)
        for f in sorted(factors, key=len):
            fa = la.peval_matrix(F, f, a)
            kernel = la.nullspace(F, fa, dim)
            sub = la.spin(F, gens, [kernel[0]])
            if len(sub) < dim:
                return sub
            if len(kernel) != len(f) - 1:
                continue
            kernel_t = la.nullspace(F, la.transpose(fa), dim)
            sub_t = la.spin(F, gens_t, [kernel_t[0]])
            if len(sub_t) < dim:
                return la.rref(F, la.nullspace(F, sub_t, dim))[0]
            return None
    raise RuntimeError(f"MeatAxe found neither a split nor a certificate in {MAX_TRIES} tries")


def _split(F: FiniteField, gens: Sequence[la.Rows], sub: la.Rows):
    """Actions on a submodule (given by RREF rows) and on the quotient."""
    dim = len(gens[0])
    k = len(sub)
    _, pivots = la.rref(F, sub)
    comp = [[int(i == c) for i in range(dim)] for c in range(dim) if c not in pivots]
    P = la.transpose(list(sub) + comp)
    Pinv = la.inverse(F, P)
    sub_act, quo_act = [], []
    for g in gens:
        h = la.mat_mul(F, Pinv, la.mat_mul(F, g, P))
        sub_act.append([row[:k] for row in h[:k]])
        quo_act.append([row[k:] for row in h[k:]])
    return sub_act, quo_act


def _composition_series(F: FiniteField, gens: Sequence[la.Rows], rng: random.Random) -> list[la.Rows]:
    if not gens or not gens[0]:
        return []
    sub = find_submodule(F, gens, rng)
    if sub is None:
        return [gens]
    lower, upper = _split(F, gens, sub)
    return _composition_series(F, lower, rng) + _composition_series(F, upper, rng)


def are_isomorphic(F: FiniteField, a: Sequence[la.Rows], b: Sequence[la.Rows]) -> bool:
    """Is there a nonzero X with X a_i = b_i X for all i?

    For irreducible modules any nonzero intertwiner is an isomorphism.
    """
    k = len(a[0])
    if len(b[0]) != k:
        return False
    eqs = []
    for ai, bi in zip(a, b):
        for r in range(k):
            for c in range(k):
                row = [0] * (k * k)
                for s in range(k):
                    row[r * k + s] = F.add(row[r * k + s], ai[s][c])
                    row[s * k + c] = F.sub(row[s * k + c], bi[r][s])
                eqs.append(row)
    return bool(la.nullspace(F, eqs, k * k))


def chop(A: ResidualAlgebra, module: str = "regular", seed: int = 0) -> list[CompositionFactor]:
    """Distinct composition factors of the natural or regular module of A.

    Factors are listed in order of first appearance in the composition series
    found, each with its multiplicity. The result is a function of ``seed``.
    """
    if module == "regular":
        gens = A.regular_action()
    elif module == "natural":
        gens = A.natural_action()
    else:
        raise PreconditionError(f"unknown module {module!r}; use 'natural' or 'regular'")
    if gens and len(gens[0]) > MAX_MODULE_DIM:
        raise PreconditionError(f"module dimension {len(gens[0])} above {MAX_MODULE_DIM}")
    rng = random.Random(seed)
    series = _composition_series(A.field, gens, rng)
    distinct: list[list] = []  # [action, count]
    for fac in series:
        for entry in distinct:
            if are_isomorphic(A.field, entry[0], fac):
                entry[1] += 1
                break
        else:
            distinct.append([fac, 1])
    return [
        CompositionFactor(len(act[0]), tuple(tuple(tuple(r) for r in g) for g in act), mult)
        for act, mult in distinct
    ]


@dataclass(frozen=True)
class IrreducibleProfile:
    dims: tuple[int, ...]
    t: int
    uniform: bool


def profile_from_dims(dims) -> IrreducibleProfile:
    dims = tuple(sorted(set(dims)))
    return IrreducibleProfile(dims, reduce(gcd, dims, 0), len(dims) == 1)


def algebra_profile(A: ResidualAlgebra, d: int = 1, seed: int = 0) -> IrreducibleProfile:
    if d < 1:
        raise PreconditionError(f"extension degree d = {d} must be >= 1")
    B = A.extend(d) if d > 1 else A
    return profile_from_dims(f.dim for f in chop(B, "regular", seed))


def irreducible_profile(H: LocalOrder, d: int = 1, seed: int = 0) -> IrreducibleProfile:
    """Distinct irreducible dimensions of the residual algebra over F_{p^d}, and their gcd."""
    return algebra_profile(residual_algebra(H), d, seed)


# ---------------------------------------------------------------------------
# enumeration of small algebras


def _flat_mul(F: FiniteField, a, b, n: int) -> tuple[int, ...]:
    out = []
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                x, y = a[i * n + k], b[k * n + j]
                if x and y:
                    s = F.add(s, F.mul(x, y))
            out.append(s)
    return tuple(out)


def algebra_closure(F: FiniteField, n: int, mats, max_dim: int | None = None):
    """RREF basis (flattened) of the unital algebra generated by ``mats``.

    Returns None as soon as the dimension exceeds ``max_dim``.
    """
    eye = tuple(int(i == j) for i in range(n) for j in range(n))
    basis, piv = la.rref(F, [eye] + [list(m) for m in mats])
    if max_dim is not None and len(basis) > max_dim:
        return None
    queue = [(a, b) for a in basis for b in basis]
    while queue:
        a, b = queue.pop()
        c = la.reduce_vector(F, basis, piv, _flat_mul(F, a, b, n))
        if not any(c):
            continue
        basis, piv = la.rref(F, basis + [c])
        if max_dim is not None and len(basis) > max_dim:
            return None
        queue = [(x, y) for x in basis for y in basis]
    return tuple(tuple(r) for r in basis)


def unital_subalgebras(n: int, p: int, max_dim: int | None = None) -> list[ResidualAlgebra]:
    """Every unital subalgebra of M_n(F_p) of dimension <= max_dim.

    Breadth-first: each algebra is enlarged by one matrix outside it and
    re-closed. Only practical for p^(n^2) in the hundreds.
    """
    from itertools import product as _product

    F = FiniteField(p)
    limit = n * n if max_dim is None else max_dim
    mats = list(_product(range(p), repeat=n * n))
    start = algebra_closure(F, n, [])
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for A in frontier:
            piv = [next(i for i, x in enumerate(r) if x) for r in A]
            rows = [list(r) for r in A]
            cosets: set = set()
            for x in mats:
                r = tuple(la.reduce_vector(F, rows, piv, x))
                if not any(r) or r in cosets:
                    continue
                cosets.add(r)
                B = algebra_closure(F, n, list(A) + [r], limit)
                if B is not None and B not in seen:
                    seen.add(B)
                    nxt.append(B)
        frontier = nxt
    return [ResidualAlgebra(F, n, tuple(Mat(F, n, n, r) for r in A))
            for A in sorted(seen, key=lambda a: (len(a), a))]
