"""hermgenus command line: spectrum | genus | classify | verify | enumerate."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import __version__
from .errors import (
    CapacityError, HermGenusError, InputFormatError, NotUnitaryError, ParameterError,
)

FORMATS = ("json", "csv", "text")
DEFAULT_CAP_GROUP = 10 ** 6
DEFAULT_CAP_LATTICE = 1000


# ---------------------------------------------------------------- generator files


def load_generator_file(path: str, strict: bool = True):
    """Parse {p, n, model, generators} into (model, canonical matrices)."""
    from . import matrices as mx
    from .unitary import is_unitary, mat_from_coeffs, model_for

    try:
        with open(path, encoding="utf-8") if path != "-" else sys.stdin as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise InputFormatError("generator file must be a JSON object")
    for key in ("p", "generators"):
        if key not in data:
            raise InputFormatError(f"generator file lacks {key!r}")
    p, n = data["p"], data.get("n", 1)
    if not isinstance(p, int) or not isinstance(n, int):
        raise InputFormatError("p and n must be integers")
    mid = str(data.get("model", "M1")).upper()
    model = model_for(p, n, mid, strict=strict)
    gens = data["generators"]
    if not isinstance(gens, list):
        raise InputFormatError("generators must be a list")
    mats = []
    for i, g in enumerate(gens):
        if isinstance(g, list) and len(g) == 3 and all(isinstance(r, list) and len(r) == 3 for r in g):
            g = [e for row in g for e in row]
        try:
            m = mat_from_coeffs(model, g)
        except (InputFormatError, TypeError) as exc:
            raise InputFormatError(f"generator {i}: {exc}") from exc
        if mx.det(model.F, m) == 0 or not is_unitary(m, model):
            raise NotUnitaryError(f"generator {i} does not preserve the Hermitian form of {mid}", index=i)
        mats.append(mx.canonical(model.F, m))
    return model, mats


def generator_file(model, mats) -> dict:
    from .unitary import mat_to_coeffs

    return {"p": model.tower.p, "n": model.tower.n, "model": model.model_id,
            "generators": [mat_to_coeffs(model, m) for m in mats]}


# ---------------------------------------------------------------- commands


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def _table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return _dump(rows)
    if not rows:
        return ""
    cols = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([json.dumps(r[c]) if isinstance(r[c], (dict, list)) else r[c] for c in cols])
        return buf.getvalue()
    width = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    lines = ["  ".join(c.ljust(width[c]) for c in cols)]
    lines += ["  ".join(str(r[c]).ljust(width[c]) for c in cols) for r in rows]
    return "\n".join(lines) + "\n"


def cmd_spectrum(args) -> int:
    from .catalog import spectrum

    s = spectrum(args.p ** args.n, families=args.families, strict=args.strict)
    text = {"json": lambda: s.to_json() + "\n", "csv": s.to_csv, "text": s.to_text}[args.format]()
    _emit(args, text)
    return 0


def _close_generators(model, mats, cap: int):
    from .unitary import closure

    if not mats:
        return closure([], model, cap=cap)
    return closure(mats, model, cap=cap)


def cmd_genus(args) -> int:
    from .hurwitz import quotient_genus

    model, mats = load_generator_file(args.input, args.strict)
    G = _close_generators(model, mats, args.cap_group)
    res = quotient_genus(G).to_json()
    res["model"] = model.model_id
    res["canonicalGenerators"] = generator_file(model, mats)["generators"]
    if args.format == "json":
        text = _dump(res)
    else:
        flat = {k: v for k, v in res.items() if k not in ("census", "canonicalGenerators")}
        flat.update({f"census.{k}": v for k, v in res["census"].items()})
        text = _table([flat], args.format)
    _emit(args, text)
    return 0


def cmd_classify(args) -> int:
    from .classify import classify
    from .unitary import GroupElement

    model, mats = load_generator_file(args.input, args.strict)
    reports = []
    for i, m in enumerate(mats):
        rep = classify(GroupElement(m, model.model_id, model))
        reports.append({"index": i, **rep.to_json(model)})
    if args.format == "json":
        text = _dump({"field": model.tower.describe(), "elements": reports})
    else:
        text = _table([{k: r[k] for k in ("index", "type", "order", "iSigma")} for r in reports], args.format)
    _emit(args, text)
    return 0


def cmd_verify(args) -> int:
    from .verify import CHECKS, run_checks

    q = args.p ** args.n
    if q % 4 != 1:
        raise ParameterError(f"q={q} is not congruent to 1 mod 4; verify refuses it")
    if q not in (5, 9):
        raise ParameterError("verify runs at q = 5, or q = 9 with --long")
    if q == 9 and not args.long:
        raise ParameterError("q = 9 verification is long-running; pass --long")
    names = args.check or list(CHECKS)
    results = run_checks(args.p, args.n, names)
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = _dump({"q": q, "passed": ok, "checks": [r.to_json() for r in results]})
    else:
        rows = [{"check": r.name, "passed": r.passed, "seconds": round(r.seconds, 2),
                 "note": r.details.get("skipped", "")} for r in results]
        text = _table(rows, args.format)
    _emit(args, text)
    return 0 if ok else 1


def _parse_params(items: Sequence[str] | None) -> dict:
    out = {}
    for it in items or ():
        if "=" not in it:
            raise ParameterError(f"--param expects key=value, got {it!r}")
        k, v = it.split("=", 1)
        if v.lower() in ("true", "false"):
            out[k] = v.lower() == "true"
        else:
            try:
                out[k] = int(v)
            except ValueError:
                raise ParameterError(f"parameter {k} must be an integer") from None
    return out


def cmd_enumerate(args) -> int:
    from .classify import census
    from .unitary import curve_points, enumerate_group, model_for, pgu_generators, standard_mq

    model = model_for(args.p, args.n, args.model.upper(), strict=args.strict)
    tower, q = model.tower, model.q
    what = args.target
    if what == "named":
        from .subgroups import named_subgroup

        if not args.family:
            raise ParameterError("enumerate --target named needs --family")
        N = named_subgroup(tower, args.family, **_parse_params(args.param))
        out = generator_file(N.group.model, [tuple(int(x) for x in g) for g in N.generators])
        out.update({"family": N.family, "params": N.params, "order": N.order,
                    "targets": [{"formulaId": f, "params": prm} for f, prm in N.targets]})
        _emit(args, _dump(out))
        return 0
    if what == "lattice":
        from .lattice import lattice_genera, subgroup_lattice

        S = standard_mq(tower)
        lat = subgroup_lattice(S.group, bound=args.cap_lattice)
        rows = [{"order": c.order, "classSize": c.class_size, "delta": d, "genus": g}
                for c, d, g in lattice_genera(lat)]
        _emit(args, _table(rows, args.format))
        return 0
    if what == "curve-points":
        pts = sorted(curve_points(model))
        rows = [{"point": [model.F.coeffs(x) for x in pt]} for pt in pts]
        _emit(args, _dump({"count": len(pts), "points": [r["point"] for r in rows]})
              if args.format == "json" else _table([{"count": len(pts)}], args.format))
        return 0
    if what == "mq":
        S = standard_mq(tower)
        G = S.group
        gens = [tuple(int(x) for x in g) for g in S.generators]
    else:
        cap = max(args.cap_group, 1)
        if q ** 3 * (q ** 3 + 1) * (q * q - 1) > cap:
            raise CapacityError(f"|PGU(3,{q})| exceeds --cap-group {cap}")
        G = enumerate_group(model)
        gens = [g.mat for g in pgu_generators(G.model)]
    summary = {"q": q, "model": G.model.model_id, "target": what, "order": len(G), "census": census(G),
               "field": tower.describe()}
    summary.update(generator_file(G.model, gens))
    if args.format == "json":
        text = _dump(summary)
    else:
        flat = {"q": q, "target": what, "order": len(G)}
        flat.update({f"census.{k}": v for k, v in summary["census"].items()})
        text = _table([flat], args.format)
    _emit(args, text)
    return 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "genus": cmd_genus,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
}


def _positive(v: str) -> int:
    try:
        x = int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{v!r} is not an integer") from None
    if x <= 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=5, help="characteristic (odd prime)")
    common.add_argument("--n", type=int, default=1, help="q = p^n")
    common.add_argument("--model", choices=("m1", "m2", "M1", "M2"), default="m1")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--families", default=None,
                        help="comma list from mq, fixed-point, self-polar, singer, nofix, all")
    common.add_argument("--cap-group", type=_positive, default=DEFAULT_CAP_GROUP)
    common.add_argument("--cap-lattice", type=_positive, default=DEFAULT_CAP_LATTICE)
    common.add_argument("--strict", dest="strict", action="store_true", default=True)
    common.add_argument("--no-strict", dest="strict", action="store_false")
    common.add_argument("--threads", type=_positive, default=1,
                        help="parallelism hint; results do not depend on it")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")

    ap = argparse.ArgumentParser(prog="hermgenus", description=__doc__)
    ap.add_argument("--version", action="version", version=f"hermgenus {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="genus spectrum from the formula catalog")
    for name, hlp in (("genus", "genus of H_q/<generators>"), ("classify", "type of each matrix")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("input", help="generator file (JSON), or - for stdin")
    vp = sub.add_parser("verify", parents=[common], help="brute-force cross-validation suite")
    vp.add_argument("--check", action="append", default=None, help="run only this check (repeatable)")
    vp.add_argument("--long", action="store_true", help="allow the long q = 9 run")
    ep = sub.add_parser("enumerate", parents=[common], help="enumerate groups, points or subgroups")
    ep.add_argument("--target", choices=("pgu", "mq", "lattice", "curve-points", "named"), default="pgu")
    ep.add_argument("--family", default=None, help="named construction (with --target named)")
    ep.add_argument("--param", action="append", default=None, help="key=value for --family")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except HermGenusError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
