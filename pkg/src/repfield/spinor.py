"""Local spinor images as subsets of Z/nZ.

The image of an order H is the set of colength classes of H-invariant
lattices. It is read off a finite window: lattices between p^w O^n and O^n,
i.e. H-invariant submodules of (Z/p^w)^n. Depths w = 1, 2, ... are tried in
turn. A depth is final when

* the primitivity certificate holds there (the window provably sees every
  invariant lattice up to homothety),
* the window already gives all of Z/n (nothing can be missing), or
* the image did not change from the previous depth (stabilized, not proven).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .core.zmod import ModulusRing
from .errors import PreconditionError, ResourceError, RingMismatchError
from .lattices import DEFAULT_CAP, iter_invariant_submodules
from .orders import LocalOrder, certificate_cost, primitivity_certificate

MAX_DEPTH = 3

CERTIFIED = "certified"
SATURATED = "saturated"
STABILIZED = "stabilized"
UNSTABILIZED = "unstabilized"


@dataclass(frozen=True)
class SpinorImageSet:
    """A subset of Z/n containing 0, with how it was obtained."""

    n: int
    classes: frozenset[int]
    certified: bool = True
    window_depth: int = 0
    status: str = CERTIFIED
    history: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"modulus n = {self.n} must be positive")
        cls = frozenset(self.classes)
        if any(not 0 <= c < self.n for c in cls):
            raise PreconditionError(f"classes {sorted(cls)} not inside Z/{self.n}")
        if 0 not in cls:
            raise PreconditionError("an image set always contains 0")
        object.__setattr__(self, "classes", cls)

    @classmethod
    def of(cls, n: int, classes: Iterable[int]) -> "SpinorImageSet":
        return cls(n, frozenset(c % n for c in classes))

    @property
    def complete(self) -> bool:
        """True when the set is known to be the whole image."""
        return self.status in (CERTIFIED, SATURATED)

    def sorted(self) -> list[int]:
        return sorted(self.classes)

    def negated(self) -> "SpinorImageSet":
        return SpinorImageSet(self.n, frozenset((-c) % self.n for c in self.classes),
                              self.certified, self.window_depth, self.status)

    def __str__(self):
        return "{" + ", ".join(map(str, self.sorted())) + f"}} mod {self.n}"


@dataclass(frozen=True)
class SubgroupZn:
    """The cyclic subgroup d·Z/n of Z/n, with d | n."""

    n: int
    d: int

    def __post_init__(self):
        d = gcd(self.d, self.n)
        object.__setattr__(self, "d", d)

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(range(0, self.n, self.d))

    @property
    def order(self) -> int:
        return self.n // self.d

    @property
    def index(self) -> int:
        return self.d

    def __contains__(self, x: int) -> bool:
        return x % self.d == 0

    def __str__(self):
        return f"{self.d}Z/{self.n}"


# ---------------------------------------------------------------------------
# set arithmetic


def is_group(S: SpinorImageSet) -> bool:
    c = S.classes
    return all((a + b) % S.n in c for a in c for b in c)


def generated_subgroup(S: SpinorImageSet) -> SubgroupZn:
    d = S.n
    for c in S.classes:
        d = gcd(d, c)
    return SubgroupZn(S.n, d)


def translation_stabilizer(S: SpinorImageSet) -> SubgroupZn:
    """{d : d + S = S}, which is always a subgroup."""
    c = S.classes
    ds = [d for d in range(S.n) if all((d + x) % S.n in c for x in c)]
    g = S.n
    for d in ds:
        g = gcd(g, d)
    return SubgroupZn(S.n, g)


def sumset(a: SpinorImageSet, b: SpinorImageSet) -> SpinorImageSet:
    if not isinstance(a, SpinorImageSet) or not isinstance(b, SpinorImageSet):
        raise TypeError("sumset takes two SpinorImageSet values")
    if a.n != b.n:
        raise RingMismatchError(f"cannot add subsets of Z/{a.n} and Z/{b.n}")
    return SpinorImageSet(
        a.n, frozenset((x + y) % a.n for x in a.classes for y in b.classes),
        a.certified and b.certified, max(a.window_depth, b.window_depth),
        CERTIFIED if a.complete and b.complete else STABILIZED)


def lift_classes(S: SpinorImageSet, n: int) -> SpinorImageSet:
    """All residues mod n that reduce into S mod S.n; needs S.n | n.

    A block of size n_i inside M_n shifts lattice colengths by whole
    multiples of n_i that the block alone cannot see, so its classes are
    only known mod n_i.
    """
    if n % S.n:
        raise RingMismatchError(f"Z/{S.n} classes do not lift to Z/{n}")
    return SpinorImageSet(n, frozenset((c + S.n * k) % n for c in S.classes for k in range(n // S.n)),
                          S.certified, S.window_depth, S.status)


# ---------------------------------------------------------------------------
# computing the image


def window_image(H: LocalOrder, depth: int, cap: int = DEFAULT_CAP) -> frozenset[int]:
    """Colength classes of H-invariant submodules of (Z/p^depth)^n."""
    if depth < 1:
        raise PreconditionError(f"window depth {depth} must be >= 1")
    Hw = H.at_precision(depth)
    ring = ModulusRing(H.p, depth)
    n = H.n
    full = n * depth
    seen: set[int] = set()
    for L in iter_invariant_submodules(Hw.acting_matrices(), ring, n, cap):
        seen.add((full - L.log_size()) % n)
        if len(seen) == n:
            break
    return frozenset(seen)


def spinor_image(H: LocalOrder, max_depth: int = MAX_DEPTH, cap: int = DEFAULT_CAP) -> SpinorImageSet:
    """The local spinor image of H in Z/n.

    Raises ResourceError only when even the depth-1 window is over the cap;
    a cap hit at a later depth returns the last image with status
    ``unstabilized``.
    """
    if max_depth < 1:
        raise PreconditionError(f"max_depth {max_depth} must be >= 1")
    n = H.n
    history: list[tuple[int, ...]] = []
    prev = None
    for w in range(1, max_depth + 1):
        try:
            img = window_image(H, w, cap)
        except ResourceError:
            if prev is None:
                raise
            return SpinorImageSet(n, prev, False, w - 1, UNSTABILIZED, tuple(history))
        history.append(tuple(sorted(img)))
        if certificate_cost(H, w) <= cap and primitivity_certificate(H, w, cap).verified:
            return SpinorImageSet(n, img, True, w, CERTIFIED, tuple(history))
        if len(img) == n:
            return SpinorImageSet(n, img, False, w, SATURATED, tuple(history))
        if img == prev:
            return SpinorImageSet(n, img, False, w - 1, STABILIZED, tuple(history))
        prev = img
    return SpinorImageSet(n, prev, False, max_depth, UNSTABILIZED, tuple(history))


@dataclass(frozen=True)
class LocalReport:
    image: SpinorImageSet
    is_group: bool
    generated: SubgroupZn
    stabilizer: SubgroupZn

    @property
    def defined(self) -> bool:
        return self.is_group

    @property
    def certified(self) -> bool:
        return self.image.certified

    def as_dict(self) -> dict:
        S = self.image
        return {
            "n": S.n,
            "modulus": S.n,
            "classes": S.sorted(),
            "is_group": self.is_group,
            "generated": sorted(self.generated.elements),
            "stabilizer": sorted(self.stabilizer.elements),
            "certified": S.certified,
            "depth": S.window_depth,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def report_for(S: SpinorImageSet) -> LocalReport:
    """Group verdict for an image set, with the three equivalent forms checked."""
    grp = is_group(S)
    gen = generated_subgroup(S)
    stab = translation_stabilizer(S)
    if not grp == (gen == stab) == (S.classes == gen.elements):
        raise AssertionError(f"group criteria disagree on {S}")
    return LocalReport(S, grp, gen, stab)


def local_defined(H: LocalOrder, max_depth: int = MAX_DEPTH, cap: int = DEFAULT_CAP) -> LocalReport:
    return report_for(spinor_image(H, max_depth, cap))
