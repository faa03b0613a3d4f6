"""Small finite fields F_{p^m} and scalar extension of matrices.

Elements are ints in ``[0, q)`` encoding the coefficient vector of a
polynomial residue in base p: ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}``.
So the prime field sits inside every extension as ``0 .. p-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Sequence

from ..errors import ConfigurationError, PreconditionError, RingMismatchError
from .matrix import Mat
from .zmod import is_prime

MAX_DEGREE = 16

Poly = tuple[int, ...]  # coefficients over F_p, lowest degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv) % p
        shift = len(a) - 1 - dm
        for i, x in enumerate(m):
            a[shift + i] = (a[shift + i] - c * x) % p
        _trim(a)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim([x % p for x in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> Poly:
    """Lexicographically least monic irreducible of degree m over F_p.

    Candidates are ordered by the integer ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}``.
    """
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        poly = tuple(low) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True)
class FiniteField:
    """F_q with q = p^m, realized as F_p[x]/(modulus)."""

    p: int
    m: int = 1
    modulus: Poly = field(default=None)

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"characteristic {self.p} is not prime")
        if not 1 <= self.m <= MAX_DEGREE:
            raise PreconditionError(f"extension degree {self.m} outside 1..{MAX_DEGREE}")
        if self.modulus is None:
            object.__setattr__(self, "modulus", least_irreducible(self.p, self.m))
        else:
            mod = tuple(x % self.p for x in self.modulus)
            if len(mod) != self.m + 1 or mod[-1] != 1:
                raise PreconditionError(f"modulus {self.modulus} is not monic of degree {self.m}")
            if not is_irreducible(mod, self.p):
                raise PreconditionError(f"modulus {self.modulus} is reducible over F_{self.p}")
            object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.m

    size = q

    def __str__(self):
        return f"F_{self.q}" if self.m == 1 else f"F_{self.p}^{self.m}"

    # -- encoding ---------------------------------------------------------
    def to_poly(self, x: int) -> list[int]:
        return [(x // self.p ** i) % self.p for i in range(self.m)]

    def from_poly(self, coeffs: Sequence[int]) -> int:
        r = _poly_mod(list(coeffs), self.modulus, self.p) if len(coeffs) > self.m else [c % self.p for c in coeffs]
        return sum(c * self.p ** i for i, c in enumerate(r))

    def reduce(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise PreconditionError(f"{x} is not an element encoding of {self}")
        return x

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic -------------------------------------------------------
    @cached_property
    def _log_tables(self):
        q = self.q
        # find a generator of the multiplicative group by brute force
        for g in range(2 if q > 2 else 1, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                log = [0] * q
                for i, e in enumerate(exp):
                    log[e] = i
                return exp, log
        raise AssertionError("multiplicative group is cyclic")

    def _slow_mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        pa, pb = self.to_poly(a), self.to_poly(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(pa):
            if x:
                for j, y in enumerate(pb):
                    prod[i + j] += x * y
        return self.from_poly(prod)

    @cached_property
    def _add_table(self):
        if self.m == 1:
            return None
        q, p = self.q, self.p
        digits = [self.to_poly(x) for x in range(q)]
        return [[sum(((a + b) % p) * p ** i for i, (a, b) in enumerate(zip(digits[x], digits[y])))
                 for y in range(q)] for x in range(q)]

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._add_table[a][b]

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return self.from_poly([(-c) % self.p for c in self.to_poly(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._log_tables
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        if self.m == 1:
            return pow(a, -1, self.p)
        exp, log = self._log_tables
        return exp[(-log[a]) % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        exp, log = self._log_tables
        return exp[(log[a] * e) % (self.q - 1)]

    def primitive_element(self) -> int:
        return self._log_tables[0][1] if self.q > 2 else 1

    def eval_poly(self, coeffs: Sequence[int], x: int) -> int:
        """Evaluate a polynomial with coefficients in this field at ``x``."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc


def embedding(small: FiniteField, big: FiniteField) -> list[int]:
    """Images in ``big`` of all elements of ``small`` under a field embedding.

    The embedding sends the class of x to the least root of ``small.modulus``
    in ``big``; prime-field elements map to themselves.
    """
    if small.p != big.p or big.m % small.m:
        raise ConfigurationError(f"{small} does not embed in {big}")
    if small.m == 1:
        return list(range(small.q))
    lifted = list(small.modulus)  # prime-field coefficients encode identically
    for alpha in big.elements():
        if big.eval_poly(lifted, alpha) == 0:
            powers = [1]
            for _ in range(small.m - 1):
                powers.append(big.mul(powers[-1], alpha))
            images = []
            for x in small.elements():
                acc = 0
                for c, w in zip(small.to_poly(x), powers):
                    acc = big.add(acc, big.mul(c, w))
                images.append(acc)
            return images
    raise ConfigurationError(f"no root of {small.modulus} in {big}")


def scalar_extend(mats: Sequence[Mat], d: int, target: FiniteField | None = None) -> list[Mat]:
    """Re-read matrices over F_q as matrices over F_{q^d}.

    ``target`` may supply the extension field explicitly; otherwise the
    default-modulus field of degree ``m * d`` is used.
    """
    if not mats:
        return []
    small = mats[0].ring
    if not isinstance(small, FiniteField):
        raise RingMismatchError(f"scalar_extend needs matrices over a finite field, got {small}")
    if not 1 <= d <= 4:
        raise PreconditionError(f"extension degree d = {d} outside 1..4")
    for m in mats:
        if m.ring != small:
            raise RingMismatchError("matrices over different fields")
    if d == 1 and target is None:
        return list(mats)
    big = target if target is not None else FiniteField(small.p, small.m * d)
    if big.m != small.m * d:
        raise ConfigurationError(f"{big} is not a degree-{d} extension of {small}")
    emb = embedding(small, big)
    return [Mat(big, m.rows, m.cols, tuple(emb[x] for x in m.entries)) for m in mats]
