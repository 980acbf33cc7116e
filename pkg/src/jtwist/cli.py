"""Command-line driver: ``jtwist verify <suite>...`` and ``jtwist emit <object>``.

Exit status: 0 when every selected check passes, 1 when any fails,
2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .scalars import default_order, parse_rational

SUITES = (
    "cybe",
    "factorizable",
    "hopf-axioms",
    "inhom",
    "jacobi",
    "matrix-r",
    "qspace",
    "qybe",
    "r-expansion",
    "r-hom",
    "real-form",
    "triangular",
    "twist",
    "twisted-antipodes",
    "twisted-coproducts",
)
EMIT_OBJECTS = ("r-matrix", "classical-r", "twist")
VARIANTS = ("jordanian_only", "extended_single", "extended_multi", "abstract_L")
DATA = Path(__file__).parent / "data"

DEFAULTS = {
    "n": 3,
    "order": None,
    "variant": "extended_multi",
    "coeffs": None,
    "constants": None,
    "h": ["1", "2", "1/2"],
    "alpha": "1",
    "gamma": "1",
    "format": "text",
    "out": None,
    "reading": "consistent",
}


class UsageError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("--n", type=int, help="rank parameter N of sl(N) (default 3)")
    common.add_argument("--order", type=int,
                        help="truncation order K (default $JTWIST_ORDER or 4)")
    common.add_argument("--variant", choices=VARIANTS)
    common.add_argument("--coeffs", help="JSON file with extension coefficients")
    common.add_argument("--alpha", help="alpha for the abstract_L variant")
    common.add_argument("--gamma", help="gamma for the abstract_L variant")
    common.add_argument("--format", choices=("json", "text"))
    common.add_argument("--out", help="write output to this file")

    p = argparse.ArgumentParser(prog="jtwist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suites", nargs="+", metavar="SUITE",
                   help="one or more of: " + ", ".join(SUITES) + ", or 'all'")
    v.add_argument("--constants", help="JSON action constants for the inhom suite")
    v.add_argument("--h", action="append", help="rational h sample for cybe (repeatable)")
    v.add_argument("--reading", choices=("displayed", "consistent"),
                   help="qspace: demand displayed relations or their consistent forms")
    e = sub.add_parser("emit", parents=[common], help="export an object")
    e.add_argument("object", choices=EMIT_OBJECTS)
    return p


def resolve_config(args):
    """Merge defaults, the optional config file and explicit flags (flags win)."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            doc = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        unknown = set(doc) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(doc)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if cfg["order"] is None:
        cfg["order"] = default_order()
    cfg["n"] = int(cfg["n"])
    cfg["order"] = int(cfg["order"])
    if cfg["n"] < 2:
        raise UsageError("--n must be at least 2")
    if cfg["order"] < 1:
        raise UsageError("--order must be at least 1 for deformation checks")
    if cfg["variant"] not in VARIANTS:
        raise UsageError(f"unknown variant {cfg['variant']!r}")
    if isinstance(cfg["h"], str):
        cfg["h"] = [cfg["h"]]
    return cfg


def _spec(cfg):
    from .twist import ExtensionCoefficients, TwistSpec

    coeffs = None
    if cfg["coeffs"]:
        doc = json.loads(Path(cfg["coeffs"]).read_text())
        coeffs = ExtensionCoefficients.from_json(doc, cfg["n"])
    variant = cfg["variant"]
    if variant != "abstract_L" and cfg["n"] == 2 and variant != "jordanian_only":
        variant = "jordanian_only"
    return TwistSpec(variant, cfg["n"], cfg["order"], coeffs,
                     parse_rational(str(cfg["alpha"])), parse_rational(str(cfg["gamma"])))


def _inhom_instances(cfg):
    from .inhom import ActionConstants

    if cfg["constants"]:
        paths = [Path(cfg["constants"])]
    else:
        paths = sorted(DATA.glob("*.json"))
    out = []
    for path in paths:
        try:
            out.append(ActionConstants.from_json(path.read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read action constants {path}: {exc}")
    return out


def run_suite(name, cfg):
    """Reports for one suite name."""
    from . import inhom, liealg, qspace, rep, twist

    N, K = cfg["n"], cfg["order"]
    if name == "twist":
        return [twist.twist_report(_spec(cfg))]
    if name == "factorizable":
        return [twist.factorizable_report(_spec(cfg))]
    if name == "twisted-coproducts":
        return [twist.coproducts_report(N, K)]
    if name == "twisted-antipodes":
        return [twist.antipodes_report(N, K)]
    if name == "hopf-axioms":
        return [twist.hopf_axioms_report(N, K)]
    if name == "triangular":
        return [twist.triangular_report(N, K)]
    if name == "qybe":
        return [twist.qybe_report(N, K)]
    if name == "matrix-r":
        return [rep.matrix_checks(N, K)]
    if name == "cybe":
        return [twist.cybe_report(N, K, tuple(cfg["h"]))]
    if name == "r-expansion":
        return [twist.check_r_basis_expansion(N, K)]
    if name == "real-form":
        return [twist.real_form_check(N, K)]
    if name == "jacobi":
        return [liealg.jacobi_report(N)]
    if name == "r-hom":
        if N < 3:
            raise UsageError("r-hom needs --n >= 3")
        return [liealg.r_hom_check(N)]
    if name == "qspace":
        return [qspace.check_qspace_relations(N, K, cfg["reading"])]
    if name == "inhom":
        return [inhom.inhom_report(Lc, K) for Lc in _inhom_instances(cfg)]
    raise UsageError(f"unknown suite {name!r}")


def _write(text, cfg):
    if cfg["out"]:
        Path(cfg["out"]).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_verify(args, cfg):
    names = []
    for s in args.suites:
        if s == "all":
            names.extend(SUITES)
        elif s in SUITES:
            names.append(s)
        else:
            raise UsageError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    reports = []
    for name in sorted(set(names)):
        reports.extend(run_suite(name, cfg))
    reports.sort(key=lambda r: r.check)
    if cfg["format"] == "json":
        _write(json.dumps([r.to_dict() for r in reports], indent=2), cfg)
    else:
        _write("\n".join(r.line() for r in reports), cfg)
    return 0 if all(r.passed for r in reports) else 1


def cmd_emit(args, cfg):
    from . import rep, twist

    N, K = cfg["n"], cfg["order"]
    if args.object == "r-matrix":
        try:
            text = rep.export_r_matrix(N, K, cfg["format"])
        except rep.StabilizationError as exc:
            sys.stderr.write(f"{exc}\n")
            return 1
    elif args.object == "classical-r":
        r = twist.classical_r_preset(N)
        from .liealg import WedgeElement

        w = WedgeElement.from_tensor(r)
        if cfg["format"] == "json":
            text = json.dumps({"object": "classical-r", "N": N, "algebra": r.algebra.label,
                               "wedge": [[r.algebra.names[i], r.algebra.names[j], str(c)]
                                         for (i, j), c in sorted(w.wedge_coeffs.items())]},
                              indent=2)
        else:
            text = f"r = {w.render()}   (coefficient of xi)"
    else:
        F = twist.Twist(_spec(cfg)).F
        if cfg["format"] == "json":
            text = json.dumps({"object": "twist", "params": _spec(cfg).params(),
                               "terms": [[twist_render(F, key), str(s)]
                                         for key, s in F.terms.items()]}, indent=2)
        else:
            text = F.render()
    _write(text, cfg)
    return 0


def twist_render(t, key):
    from .uea import render_monomial

    return " (x) ".join(render_monomial(t.algebra, m) for m in key)


def main(argv=None):
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "verify":
            return cmd_verify(args, cfg)
        return cmd_emit(args, cfg)
    except UsageError as exc:
        parser.exit(2, f"jtwist: error: {exc}\n")
    except Exception as exc:  # computation or input failure
        from .twist import CoefficientConstraintError

        if isinstance(exc, (CoefficientConstraintError, ValueError, OSError)):
            sys.stderr.write(f"jtwist: error: {exc}\n")
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
