"""Command line front end.

Subcommands::

    repfield image CONFIG [--depth D] [--cap C] [--out PATH]
    repfield residual CONFIG [--ext-degree d] [--seed S] [--out PATH]
    repfield scenario CONFIG [--out PATH]
    repfield verify-paper [--case NAME] [--seed S] [--cap C] [--out PATH]

CONFIG is a path, or the name of a bundled fixture such as ``mord.order`` or
``thm3.scenario``. The config schema is documented in :mod:`repfield.config`.

Exit codes: 0 success, 1 configuration or usage error, 2 resource limit hit
or an image that is neither certified nor stabilized, 3 verification
failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import config
from .classfield import is_defined_global, t_report
from .errors import ConfigurationError, PreconditionError, ResourceError
from .lattices import DEFAULT_CAP
from .residual import irreducible_profile, residual_algebra
from .spinor import UNSTABILIZED, local_defined

EXIT_OK, EXIT_CONFIG, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3
MIN_CAP = 256


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors: exit 1, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _emit(obj: dict, out: str | None):
    text = json.dumps(obj)
    print(text)
    if out:
        Path(out).write_text(text + "\n")


def _check_run_config(args):
    if getattr(args, "cap", DEFAULT_CAP) < MIN_CAP:
        raise ConfigurationError(f"cap {args.cap} is below {MIN_CAP}", key="--cap")
    depth = getattr(args, "depth", 3)
    if depth not in (1, 2, 3):
        raise ConfigurationError(f"depth {depth} is not one of 1, 2, 3", key="--depth")


def cmd_image(args) -> int:
    H = config.load_order(args.config)
    rep = local_defined(H, max_depth=args.depth, cap=args.cap)
    _emit(rep.as_dict(), args.out)
    if rep.image.status == UNSTABILIZED:
        print(f"image not certified and not stabilized by depth {args.depth}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_residual(args) -> int:
    H = config.load_order(args.config)
    try:
        prof = irreducible_profile(H, args.ext_degree, args.seed)
    except PreconditionError as e:
        raise ConfigurationError(str(e), key="--ext-degree") from e
    A = residual_algebra(H)
    _emit({"n": H.n, "p": H.p, "d": args.ext_degree, "dimension": A.dimension,
           "dims": list(prof.dims), "t": prof.t, "uniform": prof.uniform}, args.out)
    return EXIT_OK


def cmd_scenario(args) -> int:
    sc = config.load_scenario(args.config)
    if all(pl.t is not None for pl in sc.places):
        _emit(t_report(sc), args.out)
    else:
        _emit(is_defined_global(sc).as_dict(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import CASES, run_cases

    names = [args.case] if args.case else list(CASES)
    results = run_cases(names, seed=args.seed, cap=args.cap)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status:4}  {r.name:12} {r.seconds:7.2f}s", file=sys.stderr)
        for f in r.failures:
            print(f"      - {f}", file=sys.stderr)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} PASS", file=sys.stderr)
    _emit({"passed": passed, "total": len(results), "cases": [r.as_dict() for r in results]}, args.out)
    return EXIT_OK if passed == len(results) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="repfield", description="Spinor images and representation fields of orders.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, depth=False, cap=False, seed=False):
        if depth:
            p.add_argument("--depth", type=int, default=3, help="largest window depth (1-3)")
        if cap:
            p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (>= 256)")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="PRNG seed")
        p.add_argument("--out", help="also write the JSON report here")

    p = sub.add_parser("image", help="local spinor image of an order")
    p.add_argument("config")
    common(p, depth=True, cap=True, seed=True)
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("residual", help="irreducible dimensions of the residual algebra")
    p.add_argument("config")
    p.add_argument("--ext-degree", type=int, default=1, dest="ext_degree")
    common(p, seed=True)
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("scenario", help="global verdict for a Galois scenario")
    p.add_argument("config")
    common(p)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("verify-paper", help="run the reproduction cases")
    p.add_argument("--case", choices=["mord", "eichler3", "prop51", "thm3", "lemma-l3",
                                      "quaternion", "rank7", "commutative"])
    common(p, cap=True, seed=True)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        _check_run_config(args)
        return args.func(args)
    except ConfigurationError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except PreconditionError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
