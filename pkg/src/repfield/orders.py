"""Local orders in M_n(O) for O the integers of an unramified p-adic field.

An order is presented by integral generator matrices (plain ints, not
reduced). It is the O-algebra they generate together with the identity; the
working precision M only fixes where its span is truncated. Keeping the
presentation integral lets :meth:`LocalOrder.at_precision` re-close the same
order at any precision, which the lattice windows and certificates need.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .core.fq import least_irreducible
from .core.matrix import Mat
from .core.zmod import ModulusRing, Row, contains_row, howell_rows
from .errors import PreconditionError, ResourceError, RingMismatchError
from .lattices import DEFAULT_CAP, primitive_count, spin_contains_scaled_full
from .core.zmod import primitive_representatives

IntMatrix = tuple[int, ...]  # row-major n*n integers


def _identity_flat(n: int) -> IntMatrix:
    return tuple(int(i == j) for i in range(n) for j in range(n))


def _unit_flat(n: int, i: int, j: int, scale: int = 1) -> IntMatrix:
    e = [0] * (n * n)
    e[i * n + j] = scale
    return tuple(e)


def _mul_flat(a: Sequence[int], b: Sequence[int], n: int, N: int) -> Row:
    out = []
    for i in range(n):
        ai = a[i * n:(i + 1) * n]
        for j in range(n):
            out.append(sum(ai[k] * b[k * n + j] for k in range(n)) % N)
    return tuple(out)


@lru_cache(maxsize=512)
def _closed_span(p: int, M: int, n: int, presentation: tuple[IntMatrix, ...]) -> tuple[Row, ...]:
    """Howell rows of the multiplicative closure of the span mod p^M."""
    N = p ** M
    span = howell_rows([_identity_flat(n)] + list(presentation), p, M, n * n)
    while True:
        new = []
        for a in span:
            for b in span:
                prod = _mul_flat(a, b, n, N)
                if not contains_row(span, prod, p, M) and not contains_row(tuple(new), prod, p, M):
                    new.append(prod)
        if not new:
            return span
        span = howell_rows(span + tuple(new), p, M, n * n)


@dataclass(frozen=True)
class LocalOrder:
    """An order H in M_n(O), truncated at precision p^M.

    ``basis`` holds the Howell rows of the n^2-column flattening of H mod p^M;
    ``presentation`` the integral generators it was built from.
    """

    n: int
    p: int
    M: int
    presentation: tuple[IntMatrix, ...]
    basis: tuple[Row, ...] = field(compare=False, repr=False)
    closed: bool = field(default=True, compare=False)
    label: str = field(default="", compare=False)

    @property
    def ring(self) -> ModulusRing:
        return ModulusRing(self.p, self.M)

    @property
    def generators(self) -> list[Mat]:
        """Presentation reduced mod p^M, zero matrices dropped, identity first."""
        R = self.ring
        out = [Mat.identity(R, self.n)]
        seen = {out[0].entries}
        for g in self.presentation:
            m = Mat(R, self.n, self.n, tuple(x % R.modulus for x in g))
            if not m.is_zero() and m.entries not in seen:
                seen.add(m.entries)
                out.append(m)
        return out

    def basis_matrices(self) -> list[Mat]:
        R = self.ring
        return [Mat(R, self.n, self.n, r) for r in self.basis]

    def acting_matrices(self) -> list[Mat]:
        """A small set of matrices whose invariant submodules are H's."""
        gens = [g for g in self.generators[1:]]
        return gens if len(gens) <= len(self.basis) else self.basis_matrices()

    def at_precision(self, M: int) -> "LocalOrder":
        if M == self.M:
            return self
        return close(self.presentation, self.n, self.p, M, label=self.label)

    def contains(self, m: Mat | Sequence[int]) -> bool:
        flat = m.entries if isinstance(m, Mat) else tuple(m)
        return contains_row(self.basis, flat, self.p, self.M)

    def module_rank(self) -> int:
        """Number of Howell rows of the flattened span."""
        return len(self.basis)

    def log_index(self) -> int:
        """log_p of [M_n(Z/p^M) : H mod p^M]."""
        from .core.zmod import log_span_size
        return self.n * self.n * self.M - log_span_size(self.basis, self.p, self.M)

    def same_span(self, other: "LocalOrder") -> bool:
        """Equal as orders, compared at the larger of the two precisions."""
        if (self.n, self.p) != (other.n, other.p):
            return False
        M = max(self.M, other.M)
        return self.at_precision(M).basis == other.at_precision(M).basis

    def __str__(self):
        name = self.label or "order"
        return f"{name} in M_{self.n}(Z_{self.p}) mod {self.p}^{self.M}"


def _as_int_matrix(g, n: int) -> IntMatrix:
    if isinstance(g, Mat):
        if g.rows != n or g.cols != n:
            raise RingMismatchError(f"{g.rows}x{g.cols} generator for M_{n}")
        return tuple(g.entries)
    flat = [x for row in g for x in row] if g and isinstance(g[0], (list, tuple)) else list(g)
    if len(flat) != n * n:
        raise RingMismatchError(f"generator with {len(flat)} entries for M_{n}")
    return tuple(int(x) for x in flat)


def close(gens: Iterable, n: int | None = None, p: int | None = None, M: int | None = None,
          label: str = "") -> LocalOrder:
    """The order generated by ``gens`` (and the identity).

    ``gens`` may be :class:`Mat` objects over Z/p^M (their entries are read as
    integral lifts) or integer matrices, in which case n, p and M are needed.
    """
    gens = list(gens)
    mats = [g for g in gens if isinstance(g, Mat)]
    if mats:
        R = mats[0].ring
        if not isinstance(R, ModulusRing):
            raise RingMismatchError(f"order generators must be over Z/p^M, got {R}")
        for g in mats:
            if g.ring != R:
                raise RingMismatchError("generators over different rings")
        n = mats[0].rows if n is None else n
        p = R.p if p is None else p
        M = R.M if M is None else M
    if n is None or p is None or M is None:
        raise PreconditionError("n, p and M are required for integer generators")
    ModulusRing(p, M)
    presentation = tuple(dict.fromkeys(_as_int_matrix(g, n) for g in gens))
    basis = _closed_span(p, M, n, presentation)
    return LocalOrder(n, p, M, presentation, basis, True, label)


# ---------------------------------------------------------------------------
# named constructions


def maximal_order(n: int, p: int, M: int = 1) -> LocalOrder:
    gens = [_unit_flat(n, i, j) for i in range(n) for j in range(n)]
    return close(gens, n, p, M, label="maximal")


def scalar_order(n: int, p: int, M: int = 1) -> LocalOrder:
    return close([], n, p, M, label="scalar")


@dataclass(frozen=True)
class UnramifiedEmbedding:
    """The integral representation M_n(O_E) -> M_2n(O) for E/k unramified quadratic.

    O_E = O[w] with w a root of the monic quadratic ``x^2 + a1 x + a0``
    lifted from the least irreducible quadratic over F_p. An element
    ``x + y w`` is written as the pair ``(x, y)`` and acts on the O-basis
    (1, w) of O_E; O_E^n is identified with O^2n blockwise.
    """

    n: int
    p: int
    poly: tuple[int, int, int]

    @property
    def omega(self) -> IntMatrix:
        a0, a1, _ = self.poly
        return (0, -a0, 1, -a1)

    def scalar(self, x: int, y: int) -> IntMatrix:
        a0, a1, _ = self.poly
        return (x, -a0 * y, y, x - a1 * y)

    def embed(self, entries: Sequence[Sequence[tuple[int, int]]]) -> IntMatrix:
        """Image of an n x n matrix of O_E pairs as a flat 2n x 2n int matrix."""
        n = self.n
        out = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                x, y = entries[i][j]
                b = self.scalar(x, y)
                out[2 * i][2 * j], out[2 * i][2 * j + 1] = b[0], b[1]
                out[2 * i + 1][2 * j], out[2 * i + 1][2 * j + 1] = b[2], b[3]
        return tuple(v for row in out for v in row)

    def unit(self, i: int, j: int, x: int = 1, y: int = 0) -> IntMatrix:
        """Image of (x + y w) E_ij."""
        entries = [[(0, 0)] * self.n for _ in range(self.n)]
        entries[i][j] = (x, y)
        return self.embed(entries)

    def basis(self) -> list[IntMatrix]:
        """Images of the O-basis {E_ij, w E_ij} of M_n(O_E)."""
        return [self.unit(i, j, x, y) for i in range(self.n) for j in range(self.n)
                for x, y in ((1, 0), (0, 1))]

    def multiply(self, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        """Product in O_E of pairs, using w^2 = -a1 w - a0."""
        a0, a1, _ = self.poly
        x1, y1 = u
        x2, y2 = v
        yy = y1 * y2
        return (x1 * x2 - a0 * yy, x1 * y2 + y1 * x2 - a1 * yy)


def embed_unramified(n: int, p: int, M: int | None = None) -> UnramifiedEmbedding:
    """Integral embedding M_n(O_E) -> M_2n(O); ``M`` is accepted for symmetry."""
    a0, a1, one = least_irreducible(p, 2)
    return UnramifiedEmbedding(n, p, (a0, a1, one))


def build_mord(p: int, M: int = 2) -> LocalOrder:
    """The rank-8 order ( O 1_E  O_E ; 0  O_E ) + p M_2(O_E) inside M_4(O)."""
    phi = embed_unramified(2, p)
    gens = [
        phi.unit(0, 0, 1, 0),
        phi.unit(0, 1, 1, 0), phi.unit(0, 1, 0, 1),
        phi.unit(1, 1, 1, 0), phi.unit(1, 1, 0, 1),
    ]
    gens += [tuple(p * x for x in b) for b in phi.basis()]
    return close(gens, 4, p, M, label="mord")


def build_unramified_order(p: int, M: int = 1) -> LocalOrder:
    """O_E embedded in M_2(O)."""
    phi = embed_unramified(1, p)
    return close([phi.unit(0, 0, 0, 1)], 2, p, M, label="O_E")


def build_eichler(n: int, p: int, level: int = 1, M: int = 1) -> LocalOrder:
    """Upper-triangular-mod-p^level order of M_n(O): lower entries in p^level O."""
    gens = [_unit_flat(n, i, j, 1 if i <= j else p ** level) for i in range(n) for j in range(n)]
    return close(gens, n, p, M, label=f"eichler(level={level})")


def _residual_rows(residual_gens, n: int, p: int) -> list[IntMatrix]:
    out = []
    for g in residual_gens:
        if isinstance(g, Mat) and getattr(g.ring, "p", p) != p:
            raise RingMismatchError(f"residual generator over {g.ring}, expected characteristic {p}")
        out.append(tuple(x % p for x in _as_int_matrix(g, n)))
    return out


def build_residual_preimage(residual_gens, n: int, p: int) -> LocalOrder:
    """Preimage in M_n(O) of a unital subalgebra of M_n(F_p): lift + p M_n(O)."""
    rows = _residual_rows(residual_gens, n, p)
    span = howell_rows(rows, p, 1, n * n)
    if not contains_row(span, _identity_flat(n), p, 1):
        raise PreconditionError("residual generators do not span a unital algebra")
    for a in span:
        for b in span:
            if not contains_row(span, _mul_flat(a, b, n, p), p, 1):
                raise PreconditionError("residual generators do not span a subalgebra")
    gens = list(rows) + [_unit_flat(n, i, j, p) for i in range(n) for j in range(n)]
    return close(gens, n, p, 1, label="residual preimage")


def eichler_residual_generators(n: int, p: int) -> list[IntMatrix]:
    """Basis of the residual algebra ( K K 0 ; 0 M_{n-1}(K) ) in M_n(F_p)."""
    gens = [_unit_flat(n, 0, j) for j in range(n)]
    gens += [_unit_flat(n, i, j) for i in range(1, n) for j in range(1, n)]
    return gens


def build_block_triangular(components: Sequence[LocalOrder], exponents: Sequence[int] | None = None,
                           off_diagonal_depth: int = 0) -> LocalOrder:
    """Block upper triangular order with the given diagonal blocks.

    Block (i, j), i < j, is p^(off_diagonal_depth + t_j - t_i) times the full
    rectangular module, i.e. the conjugate by diag(p^t_i) of the order with
    uniform off-diagonal depth.
    """
    if not components:
        raise PreconditionError("at least one component is required")
    p = components[0].p
    if any(c.p != p for c in components):
        raise RingMismatchError("components over different primes")
    M = max(c.M for c in components)
    r = len(components)
    t = list(exponents) if exponents is not None else [0] * r
    if len(t) != r:
        raise PreconditionError(f"{len(t)} exponents for {r} components")
    if any(b < a for a, b in zip(t, t[1:])):
        raise PreconditionError(f"exponents {t} are not nondecreasing")
    if off_diagonal_depth < 0 or off_diagonal_depth > M:
        raise PreconditionError(f"off-diagonal depth {off_diagonal_depth} outside 0..{M}")
    if any(x >= M for x in t if x):
        raise ResourceError(f"exponents {t} reach the precision M = {M}", cap=M, required=max(t))
    if r == 1 and off_diagonal_depth == 0 and not any(t):
        return components[0]

    sizes = [c.n for c in components]
    n = sum(sizes)
    offsets = [sum(sizes[:i]) for i in range(r)]
    gens: list[IntMatrix] = []
    for comp, off in zip(components, offsets):
        for g in (_identity_flat(comp.n),) + comp.presentation:
            big = [0] * (n * n)
            for a in range(comp.n):
                for b in range(comp.n):
                    big[(off + a) * n + off + b] = g[a * comp.n + b]
            gens.append(tuple(big))
    for i in range(r):
        for j in range(i + 1, r):
            scale = p ** (off_diagonal_depth + t[j] - t[i])
            for a in range(sizes[i]):
                for b in range(sizes[j]):
                    gens.append(_unit_flat(n, offsets[i] + a, offsets[j] + b, scale))
    return close(gens, n, p, M, label="block triangular")


def deep_lift(H0: LocalOrder, N: int) -> LocalOrder:
    """H0 + p^N M_n(O)."""
    if N < 0 or N > H0.M:
        raise PreconditionError(f"lift depth {N} outside 0..{H0.M}")
    n, p = H0.n, H0.p
    gens = list(H0.presentation) + [_unit_flat(n, i, j, p ** N) for i in range(n) for j in range(n)]
    return close(gens, n, p, H0.M, label=f"{H0.label or 'order'} + p^{N} M_{n}")


# ---------------------------------------------------------------------------
# completeness certificate


@dataclass(frozen=True)
class PrimitivityCertificate:
    depth: int
    verified: bool
    failing_vector: tuple[int, ...] | None = None
    checked: int = 0


def certificate_cost(H: LocalOrder, depth: int) -> int:
    return primitive_count(ModulusRing(H.p, depth + 1), H.n)


def primitivity_certificate(H: LocalOrder, depth: int, cap: int = DEFAULT_CAP) -> PrimitivityCertificate:
    """Check that every primitive vector spins onto p^depth O^n.

    Works mod p^(depth+1): for each primitive v (one per unit multiple) the
    spin of v under H must contain p^depth (Z/p^(depth+1))^n. By Nakayama the
    true spin then contains p^depth O^n, so every H-invariant lattice that is
    not inside p O^n contains p^depth O^n, and the window of depth ``depth``
    sees every invariant lattice class.

    The cap bounds the number of unit classes of primitive vectors examined.
    """
    if depth < 0:
        raise PreconditionError("certificate depth must be >= 0")
    cost = certificate_cost(H, depth)
    if cost > cap:
        raise ResourceError(
            f"certificate at depth {depth} needs {cost} primitive classes, above the cap {cap}",
            cap=cap, required=cost)
    Hd = H.at_precision(depth + 1)
    R = Hd.ring
    acts = [g.to_rows() for g in Hd.acting_matrices()]
    checked = 0
    for v in primitive_representatives(R.p, R.M, Hd.n):
        checked += 1
        if not spin_contains_scaled_full(acts, R, Hd.n, v, depth):
            return PrimitivityCertificate(depth, False, v, checked)
    return PrimitivityCertificate(depth, True, None, checked)
