"""Global verdicts from local data, inside a finite abelian Galois group.

A scenario fixes G = Gal(Sigma/K) by invariant factors, and for finitely many
places a Frobenius element together with either the local image (classes in
Z/n) or the t-invariant. Class c at a place with Frobenius s contributes c*s
to G, so the global image is the sumset over places of {c*s}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Iterable, Sequence

from .errors import PreconditionError
from .spinor import SpinorImageSet

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    """Z/d_1 x ... x Z/d_r with d_1 | d_2 | ... | d_r."""

    factors: tuple[int, ...]

    def __post_init__(self):
        fs = tuple(int(d) for d in self.factors)
        if any(d < 1 for d in fs):
            raise PreconditionError(f"invariant factors {list(fs)} must be positive")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise PreconditionError(f"invariant factors {list(fs)} do not form a divisibility chain")
        object.__setattr__(self, "factors", fs)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def element(self, coords: Sequence[int]) -> Element:
        if len(coords) != self.rank:
            raise PreconditionError(f"element {list(coords)} has {len(coords)} coordinates, group rank is {self.rank}")
        return tuple(c % d for c, d in zip(coords, self.factors))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def scale(self, k: int, a: Element) -> Element:
        return tuple((k * x) % d for x, d in zip(a, self.factors))

    def elements(self) -> Iterable[Element]:
        return product(*(range(d) for d in self.factors))

    def subgroup(self, gens: Iterable[Element]) -> frozenset[Element]:
        """Subgroup generated by ``gens``, by closure."""
        sub = {self.zero}
        frontier = [self.zero]
        gens = [g for g in gens if any(g)]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in sub:
                        sub.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(sub)

    def quotient_factors(self, gens: Iterable[Element]) -> tuple[int, ...]:
        """Invariant factors (all > 1) of G / <gens>."""
        rel = [list(g) for g in gens]
        for i, d in enumerate(self.factors):
            rel.append([d if j == i else 0 for j in range(self.rank)])
        return tuple(x for x in smith_diagonal(rel, self.rank) if x != 1)


def smith_diagonal(rows: list[list[int]], ncols: int) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix with ``ncols``
    columns, as a divisibility chain padded with zeros to length ncols."""
    a = [list(r) for r in rows]
    m = len(a)
    diag: list[int] = []
    t = 0
    while t < min(m, ncols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            piv = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, ncols):
                q = a[t][j] // piv
                if q:
                    for r in a:
                        r[j] -= q * r[t]
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                a[t], a[i] = a[i], a[t]
                for r in a:
                    r[t], r[j] = r[j], r[t]
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, ncols) if a[i][j] % piv), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag + [0] * (ncols - len(diag))


@dataclass(frozen=True)
class PlaceDatum:
    label: str
    frobenius: Element
    image: SpinorImageSet | None = None
    t: int | None = None

    def __post_init__(self):
        if (self.image is None) == (self.t is None):
            raise PreconditionError(f"place {self.label!r} needs exactly one of an image set or a t-invariant")
        if self.t is not None and self.t < 1:
            raise PreconditionError(f"place {self.label!r}: t = {self.t} must be positive")


@dataclass(frozen=True)
class GaloisScenario:
    group: AbelianGroup
    places: tuple[PlaceDatum, ...]
    n: int | None = None

    def __post_init__(self):
        if not self.places:
            raise PreconditionError("a scenario needs at least one place")
        for pl in self.places:
            self.group.element(pl.frobenius)
        mods = {pl.image.n for pl in self.places if pl.image is not None}
        if len(mods) > 1:
            raise PreconditionError(f"places disagree on the modulus n: {sorted(mods)}")
        if self.n is None and mods:
            object.__setattr__(self, "n", mods.pop())
        elif mods and self.n not in mods:
            raise PreconditionError(f"place modulus {mods.pop()} differs from n = {self.n}")


def _image_places(sc: GaloisScenario) -> tuple[PlaceDatum, ...]:
    for pl in sc.places:
        if pl.image is None:
            raise PreconditionError(f"place {pl.label!r} carries only a t-invariant; an image set is needed")
    return sc.places


def global_image_set(sc: GaloisScenario) -> frozenset[Element]:
    G = sc.group
    T = {G.zero}
    for pl in _image_places(sc):
        contrib = {G.scale(c, pl.frobenius) for c in pl.image.classes}
        T = {G.add(x, y) for x in T for y in contrib}
    return frozenset(T)


def lower_field_subgroup(sc: GaloisScenario) -> frozenset[Element]:
    return sc.group.subgroup(global_image_set(sc))


def upper_field_subgroup(sc: GaloisScenario) -> frozenset[Element]:
    """Translation stabilizer {g : g + T = T} of the global image."""
    G = sc.group
    T = global_image_set(sc)
    return frozenset(g for g in G.elements() if all(G.add(g, x) in T for x in T))


def lower_field_from_t(sc: GaloisScenario) -> frozenset[Element]:
    """Subgroup generated by t * Frobenius over the places."""
    G = sc.group
    gens = []
    for pl in sc.places:
        if pl.t is None:
            raise PreconditionError(f"place {pl.label!r} carries an image set; a t-invariant is needed")
        gens.append(G.scale(pl.t, pl.frobenius))
    return G.subgroup(gens)


@dataclass(frozen=True)
class GlobalVerdict:
    group: AbelianGroup
    image: frozenset[Element]
    lower: frozenset[Element]
    upper: frozenset[Element]
    lower_field: tuple[int, ...] = field(default=())
    upper_field: tuple[int, ...] = field(default=())

    @property
    def defined(self) -> bool:
        return self.lower == self.upper

    def as_dict(self) -> dict:
        def enc(s):
            return [list(x) for x in sorted(s)]
        return {
            "group": list(self.group.factors),
            "image": enc(self.image),
            "is_group": self.defined,
            "lower": enc(self.lower),
            "upper": enc(self.upper),
            "lower_field": list(self.lower_field),
            "upper_field": list(self.upper_field),
            "defined": self.defined,
        }


def is_defined_global(sc: GaloisScenario) -> GlobalVerdict:
    """Fixed fields are given as the invariant factors of G / subgroup;
    the empty tuple is the base field K."""
    G = sc.group
    T = global_image_set(sc)
    lower = G.subgroup(T)
    upper = upper_field_subgroup(sc)
    closed = all(G.add(a, b) in T for a in T for b in T)
    if not closed == (lower == upper) == (T == lower):
        raise AssertionError("global group criteria disagree")
    return GlobalVerdict(G, T, lower, upper, G.quotient_factors(lower), G.quotient_factors(upper))


def t_report(sc: GaloisScenario) -> dict:
    """Lower field from t-invariants alone (the upper field needs image sets)."""
    G = sc.group
    lower = lower_field_from_t(sc)
    return {
        "group": list(G.factors),
        "lower": [list(x) for x in sorted(lower)],
        "lower_field": list(G.quotient_factors(lower)),
    }
