"""Seeded random orders for the sampling checks.

Orders are assembled from block upper triangular blueprints (small diagonal
blocks plus scaled off-diagonal pieces), then conjugated by a random integral
unimodular matrix, which leaves every lattice colength unchanged but hides
the block shape from the algorithms.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Sequence

from .orders import IntMatrix, LocalOrder, close, embed_unramified

# ---------------------------------------------------------------------------
# integer matrix helpers


def _mul(a: Sequence[int], b: Sequence[int], n: int) -> IntMatrix:
    return tuple(sum(a[i * n + k] * b[k * n + j] for k in range(n)) for i in range(n) for j in range(n))


def _place(block: Sequence[int], k: int, n: int, off_r: int, off_c: int) -> list[int]:
    out = [0] * (n * n)
    rows = len(block) // k
    for a in range(rows):
        for b in range(k):
            out[(off_r + a) * n + off_c + b] = block[a * k + b]
    return out


def rational_rank(gens: Sequence[Sequence[int]], n: int) -> int:
    """Dimension over Q of the unital algebra generated by integer matrices."""
    basis: list[list[Fraction]] = []
    pivots: list[int] = []

    def reduce(v):
        v = [Fraction(x) for x in v]
        for row, c in zip(basis, pivots):
            if v[c]:
                f = v[c]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(v) -> bool:
        w = reduce(v)
        c = next((i for i, x in enumerate(w) if x), None)
        if c is None:
            return False
        w = [x / w[c] for x in w]
        for i, row in enumerate(basis):
            if row[c]:
                f = row[c]
                basis[i] = [x - f * y for x, y in zip(row, w)]
        basis.append(w)
        pivots.append(c)
        return True

    elems = [tuple(int(i == j) for i in range(n) for j in range(n))] + [tuple(g) for g in gens]
    elems = [e for e in elems if add(e)]
    grew = True
    while grew:
        grew = False
        for a in list(elems):
            for b in list(elems):
                c = _mul(a, b, n)
                if add(c):
                    elems.append(c)
                    grew = True
    return len(basis)


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> tuple[IntMatrix, IntMatrix]:
    """A random U in SL_n(Z) as a product of elementary matrices, and its inverse."""
    eye = tuple(int(i == j) for i in range(n) for j in range(n))
    U = V = eye
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        E, Einv = list(eye), list(eye)
        E[i * n + j] = c
        Einv[i * n + j] = -c
        U = _mul(U, E, n)
        V = _mul(Einv, V, n)
    return U, V


def conjugate(gens: Sequence[Sequence[int]], U: Sequence[int], V: Sequence[int], n: int) -> list[IntMatrix]:
    return [_mul(_mul(U, g, n), V, n) for g in gens]


# ---------------------------------------------------------------------------
# blueprints


def _diag_block(rng: random.Random, kind: str, k: int, p: int) -> list[IntMatrix]:
    """Generators (beyond the block identity) of a k x k diagonal block."""
    eye = tuple(int(i == j) for i in range(k) for j in range(k))
    if kind == "scalar":
        return [eye]
    if kind == "unramified":
        return [embed_unramified(1, p).omega]
    if kind == "poly":
        x = tuple(rng.randrange(-2, 3) * p ** rng.choice((0, 0, 1)) for _ in range(k * k))
        return [eye, x]
    if kind == "eichler":
        lvl = rng.choice((1, 2))
        return [tuple(int(a == i and b == j) * (p ** lvl if i > j else 1) for a in range(k) for b in range(k))
                for i in range(k) for j in range(k)]
    if kind == "full":
        return [tuple(int(a == i and b == j) for a in range(k) for b in range(k)) for i in range(k) for j in range(k)]
    raise ValueError(kind)


def _partition(rng: random.Random, n: int, sizes=(1, 2)) -> list[int]:
    parts = []
    left = n
    while left:
        k = rng.choice([s for s in sizes if s <= left])
        parts.append(k)
        left -= k
    return parts


def blueprint_generators(rng: random.Random, n: int, p: int, commutative_diagonal: bool = False,
                         lower: bool = False) -> list[IntMatrix]:
    """Integral generators of a random block upper triangular order in M_n."""
    parts = _partition(rng, n, (1, 2, 3) if commutative_diagonal else (1, 2))
    offs = [sum(parts[:i]) for i in range(len(parts))]
    gens: list[IntMatrix] = []
    # tied blocks: one block algebra embedded diagonally into several blocks
    tied = rng.random() < 0.4
    shared: dict[int, list[IntMatrix]] = {}
    placed: dict[int, list[list[int]]] = {}
    for k, o in zip(parts, offs):
        if tied and k in shared:
            for acc, g in zip(placed[k], shared[k]):
                for idx, v in enumerate(_place(g, k, n, o, o)):
                    acc[idx] += v
            continue
        if k == 1:
            kind = "scalar"
        elif commutative_diagonal:
            kind = rng.choice(("scalar", "unramified", "poly") if k == 2 else ("scalar", "poly"))
        else:
            kind = rng.choice(("scalar", "unramified", "poly", "eichler", "full"))
        shared[k] = _diag_block(rng, kind, k, p)
        placed[k] = [_place(g, k, n, o, o) for g in shared[k]]
    for k in placed:
        gens.extend(tuple(m) for m in placed[k])
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            style = rng.choice(("zero", "zero", "unit", "full"))
            if style == "zero":
                continue
            s = p ** rng.choice((0, 1, 2))
            cells = list(product(range(parts[a]), range(parts[b])))
            if style == "unit":
                cells = [rng.choice(cells)]
            for r, c in cells:
                m = [0] * (n * n)
                m[(offs[a] + r) * n + offs[b] + c] = s
                gens.append(tuple(m))
    if lower and len(parts) > 1:
        i = rng.randrange(parts[0], n)
        j = rng.randrange(parts[0])
        m = [0] * (n * n)
        m[i * n + j] = p ** rng.choice((1, 2))
        gens.append(tuple(m))
    if commutative_diagonal:
        # nilpotent perturbation: a p-multiple strictly above the block diagonal
        if len(parts) > 1:
            m = [0] * (n * n)
            i = rng.randrange(parts[0])
            j = rng.randrange(parts[0], n)
            m[i * n + j] = p * rng.randrange(1, p + 1)
            gens.append(tuple(m))
    return gens


def random_rank7_order(rng: random.Random, n: int, p: int, M: int = 4, max_rank: int = 7,
                       tries: int = 200) -> tuple[LocalOrder, int] | None:
    """A conjugated blueprint order of rational rank <= max_rank, with its rank."""
    for _ in range(tries):
        gens = blueprint_generators(rng, n, p, lower=rng.random() < 0.3)
        rk = rational_rank(gens, n)
        if rk <= max_rank:
            U, V = random_unimodular(rng, n)
            return close(conjugate(gens, U, V, n), n, p, M, label=f"rank{rk}"), rk
    return None


def random_commutative_quotient_order(rng: random.Random, n: int, p: int, M: int = 4) -> LocalOrder:
    """Block upper triangular order whose diagonal blocks are commutative."""
    gens = blueprint_generators(rng, n, p, commutative_diagonal=True)
    U, V = random_unimodular(rng, n)
    return close(conjugate(gens, U, V, n), n, p, M, label="commutative quotient")


def random_order_mod(rng: random.Random, n: int, p: int, M: int, ngens: int | None = None) -> LocalOrder:
    """Order generated by random matrices mod p^M together with p^M M_n(O)."""
    k = ngens if ngens is not None else rng.randint(1, 3)
    N = p ** M
    gens = [tuple(rng.randrange(N) for _ in range(n * n)) for _ in range(k)]
    gens += [tuple(N * int(a == i * n + j) for a in range(n * n)) for i in range(n) for j in range(n)]
    return close(gens, n, p, M + 1, label="random")
