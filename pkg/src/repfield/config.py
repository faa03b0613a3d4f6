"""Reading order and scenario configs (TOML).

Order configs
-------------
Either explicit generators::

    n = 2
    p = 2
    precision = 2          # optional, default 3
    generators = [[[0, 1], [0, 0]]]

or a builder::

    builder = "mord"               # keys: p, precision
    builder = "maximal"            # keys: n, p
    builder = "scalar"             # keys: n, p
    builder = "unramified"         # keys: p            (O_E inside M_2)
    builder = "eichler"            # keys: n, p, level
    builder = "residual_preimage"  # keys: n, p, and residual = [matrices mod p]
                                   #   or residual = "eichler"
    builder = "block_triangular"   # keys: [[component]] order tables,
                                   #   off_diagonal_depth, exponents
    builder = "deep_lift"          # keys: [base] order table, depth

Generator matrices are integral and row-major; the order is the O-algebra
they generate with the identity. ``precision`` only sets the working
truncation and never changes the order.

Scenario configs
----------------
::

    group = [4]
    [[place]]
    label = "P"
    frobenius = [1]
    classes = [0, 2, 3]
    modulus = 4        # or, instead of classes/modulus:  t = 2
"""

from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .classfield import AbelianGroup, GaloisScenario, PlaceDatum
from .core.zmod import is_prime
from .errors import ConfigurationError, RepfieldError
from .orders import (
    LocalOrder,
    build_block_triangular,
    build_eichler,
    build_mord,
    build_residual_preimage,
    build_unramified_order,
    close,
    deep_lift,
    eichler_residual_generators,
    maximal_order,
    scalar_order,
)
from .spinor import SpinorImageSet

DEFAULT_PRECISION = 3

BUILDER_KEYS = {
    None: {"n", "p", "precision", "generators"},
    "mord": {"p", "precision"},
    "maximal": {"n", "p", "precision"},
    "scalar": {"n", "p", "precision"},
    "unramified": {"p", "precision"},
    "eichler": {"n", "p", "level", "precision"},
    "residual_preimage": {"n", "p", "residual"},
    "block_triangular": {"component", "off_diagonal_depth", "exponents"},
    "deep_lift": {"base", "depth"},
}


def fixture_names() -> list[str]:
    return sorted(f.name for f in resources.files("repfield.fixtures").iterdir()
                  if f.name.endswith((".order", ".scenario")))


def read_text(path: str) -> str:
    """Read a config file, falling back to a bundled fixture of that name."""
    p = Path(path)
    if p.is_file():
        return p.read_text()
    bundled = resources.files("repfield.fixtures") / p.name
    if bundled.is_file():
        return bundled.read_text()
    raise ConfigurationError(f"no such file (and no bundled fixture named {p.name!r})", key="path")


def parse(text: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f"malformed config: {e}", key="syntax") from e


def _int(tab: dict, key: str, where: str, default: Any = ..., minimum: int | None = None) -> int:
    full = f"{where}{key}"
    if key not in tab:
        if default is ...:
            raise ConfigurationError("missing required key", key=full)
        return default
    v = tab[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigurationError(f"expected an integer, got {v!r}", key=full)
    if minimum is not None and v < minimum:
        raise ConfigurationError(f"value {v} is below {minimum}", key=full)
    return v


def _prime(tab: dict, where: str) -> int:
    p = _int(tab, "p", where)
    if not is_prime(p):
        raise ConfigurationError(f"{p} is not prime", key=f"{where}p")
    return p


def _matrices(v: Any, n: int, key: str) -> list[tuple[int, ...]]:
    if not isinstance(v, list):
        raise ConfigurationError("expected a list of matrices", key=key)
    out = []
    for idx, m in enumerate(v):
        k = f"{key}[{idx}]"
        if not isinstance(m, list) or len(m) != n or any(not isinstance(r, list) or len(r) != n for r in m):
            raise ConfigurationError(f"expected a {n}x{n} integer matrix", key=k)
        if any(isinstance(x, bool) or not isinstance(x, int) for r in m for x in r):
            raise ConfigurationError("matrix entries must be integers", key=k)
        out.append(tuple(x for r in m for x in r))
    return out


def order_from_table(tab: dict, where: str = "") -> LocalOrder:
    """Build a LocalOrder from a parsed config table.

    ``where`` prefixes key names in diagnostics for nested tables.
    """
    if not isinstance(tab, dict):
        raise ConfigurationError("expected a table", key=where.rstrip(".") or "config")
    builder = tab.get("builder")
    if builder is not None and builder not in BUILDER_KEYS:
        raise ConfigurationError(f"unknown builder {builder!r}; choose from "
                                 f"{sorted(k for k in BUILDER_KEYS if k)}", key=f"{where}builder")
    allowed = BUILDER_KEYS[builder] | {"builder", "label"}
    for k in tab:
        if k not in allowed:
            raise ConfigurationError(f"unexpected key for builder {builder or 'generators'!r}", key=f"{where}{k}")
    try:
        return _build(tab, builder, where)
    except ConfigurationError:
        raise
    except RepfieldError as e:
        raise ConfigurationError(str(e), key=f"{where}builder" if builder else f"{where}generators") from e


def _build(tab: dict, builder: str | None, where: str) -> LocalOrder:
    if builder is None:
        n = _int(tab, "n", where, minimum=1)
        p = _prime(tab, where)
        M = _int(tab, "precision", where, DEFAULT_PRECISION, minimum=1)
        if "generators" not in tab:
            raise ConfigurationError("missing required key (or set `builder`)", key=f"{where}generators")
        gens = _matrices(tab["generators"], n, f"{where}generators")
        return close(gens, n, p, M, label=tab.get("label", "config"))
    if builder == "mord":
        return build_mord(_prime(tab, where), _int(tab, "precision", where, 2, minimum=1))
    if builder in ("maximal", "scalar"):
        n = _int(tab, "n", where, minimum=1)
        make = maximal_order if builder == "maximal" else scalar_order
        return make(n, _prime(tab, where), _int(tab, "precision", where, DEFAULT_PRECISION, minimum=1))
    if builder == "unramified":
        return build_unramified_order(_prime(tab, where), _int(tab, "precision", where, DEFAULT_PRECISION, minimum=1))
    if builder == "eichler":
        n = _int(tab, "n", where, minimum=1)
        p = _prime(tab, where)
        return build_eichler(n, p, _int(tab, "level", where, 1, minimum=0),
                             _int(tab, "precision", where, DEFAULT_PRECISION, minimum=1))
    if builder == "residual_preimage":
        n = _int(tab, "n", where, minimum=1)
        p = _prime(tab, where)
        res = tab.get("residual")
        if res is None:
            raise ConfigurationError("missing required key", key=f"{where}residual")
        if res == "eichler":
            gens = eichler_residual_generators(n, p)
        elif isinstance(res, str):
            raise ConfigurationError(f"unknown residual {res!r}; give matrices or \"eichler\"", key=f"{where}residual")
        else:
            gens = _matrices(res, n, f"{where}residual")
        try:
            return build_residual_preimage(gens, n, p)
        except RepfieldError as e:
            raise ConfigurationError(str(e), key=f"{where}residual") from e
    if builder == "block_triangular":
        comps = tab.get("component")
        if not isinstance(comps, list) or not comps:
            raise ConfigurationError("expected one or more [[component]] tables", key=f"{where}component")
        orders = [order_from_table(c, f"{where}component[{i}].") for i, c in enumerate(comps)]
        exps = tab.get("exponents")
        if exps is not None and (not isinstance(exps, list) or any(not isinstance(x, int) for x in exps)):
            raise ConfigurationError("expected a list of integers", key=f"{where}exponents")
        depth = _int(tab, "off_diagonal_depth", where, 0, minimum=0)
        try:
            return build_block_triangular(orders, exps, depth)
        except RepfieldError as e:
            raise ConfigurationError(str(e), key=f"{where}off_diagonal_depth") from e
    if builder == "deep_lift":
        if "base" not in tab:
            raise ConfigurationError("missing required [base] table", key=f"{where}base")
        base = order_from_table(tab["base"], f"{where}base.")
        N = _int(tab, "depth", where, minimum=0)
        if N > base.M:
            base = close(base.presentation, base.n, base.p, N, label=base.label)
        return deep_lift(base, N)
    raise AssertionError(builder)


def load_order(path: str) -> LocalOrder:
    return order_from_table(parse(read_text(path)))


def scenario_from_table(tab: dict) -> GaloisScenario:
    for k in tab:
        if k not in ("group", "place", "n"):
            raise ConfigurationError("unexpected key", key=k)
    g = tab.get("group")
    if not isinstance(g, list) or not g or any(isinstance(x, bool) or not isinstance(x, int) for x in g):
        raise ConfigurationError("expected a nonempty list of invariant factors", key="group")
    try:
        G = AbelianGroup(tuple(g))
    except RepfieldError as e:
        raise ConfigurationError(str(e), key="group") from e
    places = tab.get("place")
    if not isinstance(places, list) or not places:
        raise ConfigurationError("expected one or more [[place]] tables", key="place")
    data = []
    for i, pl in enumerate(places):
        w = f"place[{i}]."
        for k in pl:
            if k not in ("label", "frobenius", "classes", "modulus", "t"):
                raise ConfigurationError("unexpected key", key=w + k)
        label = str(pl.get("label", f"P{i}"))
        fr = pl.get("frobenius")
        if not isinstance(fr, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in fr):
            raise ConfigurationError("expected a list of integers", key=w + "frobenius")
        if len(fr) != G.rank:
            raise ConfigurationError(f"{len(fr)} coordinates for a group of rank {G.rank}", key=w + "frobenius")
        has_img = "classes" in pl or "modulus" in pl
        if has_img == ("t" in pl):
            raise ConfigurationError("give either classes with modulus, or t", key=w + ("t" if has_img else "classes"))
        if has_img:
            n = _int(pl, "modulus", w, minimum=1)
            cls = pl.get("classes")
            if not isinstance(cls, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in cls):
                raise ConfigurationError("expected a list of integers", key=w + "classes")
            classes = {c % n for c in cls}
            if 0 not in classes:
                raise ConfigurationError("an image set must contain the class 0", key=w + "classes")
            data.append(PlaceDatum(label, G.element(fr), image=SpinorImageSet.of(n, classes)))
        else:
            data.append(PlaceDatum(label, G.element(fr), t=_int(pl, "t", w, minimum=1)))
    try:
        return GaloisScenario(G, tuple(data), tab.get("n"))
    except RepfieldError as e:
        raise ConfigurationError(str(e), key="place") from e


def load_scenario(path: str) -> GaloisScenario:
    return scenario_from_table(parse(read_text(path)))
