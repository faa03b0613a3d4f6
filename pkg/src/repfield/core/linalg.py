"""Linear algebra and polynomial arithmetic over a :class:`FiniteField`.

Matrices here are lists of row lists of field elements (ints). The column
vector convention is used for actions: a matrix ``g`` sends ``v`` to ``g v``.
"""

from __future__ import annotations

from typing import Sequence

from .fq import FiniteField

Rows = list[list[int]]


def mat_mul(F: FiniteField, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Rows:
    add, mul = F.add, F.mul
    bt = list(zip(*b))
    out = []
    for r in a:
        row = []
        for c in bt:
            s = 0
            for x, y in zip(r, c):
                if x and y:
                    s = add(s, mul(x, y))
            row.append(s)
        out.append(row)
    return out


def mat_vec(F: FiniteField, a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    add, mul = F.add, F.mul
    out = []
    for r in a:
        s = 0
        for x, y in zip(r, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return out


def transpose(a: Sequence[Sequence[int]]) -> Rows:
    return [list(c) for c in zip(*a)]


def identity(n: int) -> Rows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def rref(F: FiniteField, rows: Sequence[Sequence[int]]) -> tuple[Rows, list[int]]:
    """Reduced row echelon form (zero rows dropped) and its pivot columns."""
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    work = [list(r) for r in rows if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        s = inv(work[r][c])
        work[r] = [mul(s, x) for x in work[r]]
        piv = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = neg(work[i][c])
                work[i] = [add(x, mul(f, y)) for x, y in zip(work[i], piv)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(F: FiniteField, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[0])


def reduce_vector(F: FiniteField, basis: Rows, pivots: list[int], v: Sequence[int]) -> list[int]:
    """Residue of ``v`` modulo the row space of an RREF ``basis``."""
    add, mul, neg = F.add, F.mul, F.neg
    v = list(v)
    for row, c in zip(basis, pivots):
        if v[c]:
            f = neg(v[c])
            v = [add(x, mul(f, y)) for x, y in zip(v, row)]
    return v


def coordinates(F: FiniteField, basis: Rows, pivots: list[int], v: Sequence[int]) -> list[int] | None:
    """Coordinates of ``v`` in an RREF basis, or None when ``v`` is outside."""
    coords = [v[c] for c in pivots]
    if any(reduce_vector(F, basis, pivots, v)):
        return None
    return coords


def nullspace(F: FiniteField, a: Sequence[Sequence[int]], ncols: int | None = None) -> Rows:
    """Basis of {x : a x = 0}, returned as a list of vectors."""
    if ncols is None:
        ncols = len(a[0])
    red, pivots = rref(F, a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, c in zip(red, pivots):
            if row[f]:
                x[c] = F.neg(row[f])
        basis.append(x)
    return basis


def inverse(F: FiniteField, a: Sequence[Sequence[int]]) -> Rows:
    n = len(a)
    aug = [list(r) + e for r, e in zip(a, identity(n))]
    red, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red[:n]]


def spin(F: FiniteField, gens: Sequence[Sequence[Sequence[int]]], seeds: Sequence[Sequence[int]]) -> Rows:
    """RREF basis of the smallest gens-invariant subspace containing ``seeds``."""
    basis: Rows = []
    pivots: list[int] = []
    queue = [list(s) for s in seeds]
    while queue:
        v = queue.pop()
        w = reduce_vector(F, basis, pivots, v)
        if not any(w):
            continue
        basis, pivots = rref(F, basis + [w])
        queue.extend(mat_vec(F, g, v) for g in gens)
    return basis


# ---------------------------------------------------------------------------
# polynomials over F (coefficient lists, lowest degree first, trimmed)


def ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def pmul(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(out)


def pdivmod(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    a = ptrim(list(a))
    b = ptrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = F.inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = F.mul(a[-1], inv)
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, y))
        ptrim(a)
    return ptrim(q), a


def pmod(F: FiniteField, a, b) -> list[int]:
    return pdivmod(F, a, b)[1]


def pmonic(F: FiniteField, a: Sequence[int]) -> list[int]:
    inv = F.inv(a[-1])
    return [F.mul(inv, x) for x in a]


def pgcd(F: FiniteField, a, b) -> list[int]:
    a, b = ptrim(list(a)), ptrim(list(b))
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a) if a else []


def ppowmod(F: FiniteField, base, e: int, m) -> list[int]:
    result = [1]
    base = pmod(F, base, m)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        e >>= 1
    return result


def psub(F: FiniteField, a, b) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return ptrim([F.sub(x, y) for x, y in zip(a, b)])


def peval_matrix(F: FiniteField, coeffs: Sequence[int], a: Sequence[Sequence[int]]) -> Rows:
    """f(a) for a square matrix ``a`` by Horner's rule."""
    n = len(a)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(coeffs):
        acc = mat_mul(F, acc, a)
        if c:
            for i in range(n):
                acc[i][i] = F.add(acc[i][i], c)
    return acc


def charpoly(F: FiniteField, a: Sequence[Sequence[int]]) -> list[int]:
    """Characteristic polynomial det(xI - a), via reduction to Hessenberg form."""
    n = len(a)
    h = [list(r) for r in a]
    add, sub, mul, inv = F.add, F.sub, F.mul, F.inv
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in h:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        s = inv(h[j + 1][j])
        for i in range(j + 2, n):
            if h[i][j]:
                f = mul(h[i][j], s)
                h[i] = [sub(x, mul(f, y)) for x, y in zip(h[i], h[j + 1])]
                for r in h:
                    r[j + 1] = add(r[j + 1], mul(f, r[i]))
    # p_k = (x - h_kk) p_{k-1} - sum_i h_{k-i,k} (prod subdiag) p_{k-i-1}
    polys = [[1]]
    for k in range(n):
        pk = pmul(F, [F.neg(h[k][k]), 1], polys[k])
        prod = 1
        for i in range(1, k + 1):
            prod = mul(prod, h[k - i + 1][k - i])
            if not prod:
                break
            c = mul(prod, h[k - i][k])
            if c:
                pk = psub(F, pk, [mul(c, x) for x in polys[k - i]])
        polys.append(pk)
    return polys[n]


def roots(F: FiniteField, f: Sequence[int]) -> list[int]:
    return [x for x in F.elements() if F.eval_poly(f, x) == 0]


def small_irreducible_factors(F: FiniteField, f: Sequence[int], max_degree: int = 4) -> list[list[int]]:
    """Some monic irreducible factors of ``f`` of degree <= max_degree.

    Linear factors come from exhaustive root search. For higher degree d, the
    distinct-degree part gcd(f, x^(q^d) - x) is returned only when it is
    itself irreducible (its degree equals d).
    """
    f = pmonic(F, ptrim(list(f)))
    out = [[F.neg(r), 1] for r in roots(F, f)]
    rest = f
    for r in roots(F, f):
        while True:
            quo, rem = pdivmod(F, rest, [F.neg(r), 1])
            if rem:
                break
            rest = quo
    for d in range(2, max_degree + 1):
        if len(rest) - 1 < d:
            break
        xq = ppowmod(F, [0, 1], F.q ** d, rest)
        g = pgcd(F, rest, psub(F, xq, [0, 1]))
        if len(g) - 1 == d:
            out.append(g)
        # strip every factor of g completely so later stages see only
        # factors of larger degree
        while len(g) > 1:
            rest = pdivmod(F, rest, g)[0]
            g = pgcd(F, rest, g)
    return out
