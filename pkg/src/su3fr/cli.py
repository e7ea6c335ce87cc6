"""Command-line front end: ``su3fr group|verify|export|import|catalog|fusion``.

Exit codes: 0 success, 1 verification failure or resource cap, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog as C
from . import engine as En
from . import fusion as Fu
from . import verify as Vf
from .cyclo import DEFAULT_CONDUCTOR
from .mat3 import Mat3

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_cap() -> int:
    raw = os.environ.get("SU3_CAP")
    if raw is None:
        return 10000
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"SU3_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError("SU3_CAP must be positive")
    return cap


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    _emit(args, json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _group_from_args(args) -> En.MatrixGroup:
    n = args.conductor
    if args.name:
        try:
            gens = C.get(args.name, n)
        except KeyError:
            raise UsageError(f"unknown group name {args.name!r}") from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return En.generate(gens.generators, cap=args.cap, name=args.name, n=n)
    data = _load_json(args.gens)
    if isinstance(data, list):
        data = {"generators": data}
    if not isinstance(data, dict) or not isinstance(data.get("generators"), list):
        raise UsageError("a generator file holds {\"generators\": [matrix, ...]} or a bare list")
    n = data.get("conductor", n)
    try:
        mats = [Mat3.from_json(m, n) for m in data["generators"]]
        return En.generate(mats, cap=args.cap, name=str(data.get("name", Path(args.gens).stem)), n=n)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, En.ClosureCapExceeded):
            raise
        raise UsageError(f"bad generator file: {exc}") from None


def _primes(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def group_report(G: En.MatrixGroup) -> dict:
    spec = En.order_spectrum(G)
    Z = En.center(G)
    sylows, tracked = {}, [("center", Z)]
    for p in _primes(G.order):
        syl = En.sylow(G, p)
        sylows[str(p)] = {"count": len(syl), "order": syl[0].order}
        tracked.append((f"sylows.{p}", En.generated_by_sylows(G, p)))
    lattice = [
        {"subgroup": label, "order": H.order, "index": G.order // H.order, "normal": En.is_normal(H)}
        for label, H in tracked
    ]
    two = En.two_sylow_type(G) if En.p_part(G.order, 2) == 8 else None
    return {
        "name": G.name,
        "order": G.order,
        "spectrum": {str(k): v for k, v in sorted(spec.items())},
        "center": Z.order,
        "sylow": sylows,
        "subgroups": lattice,
        "two_sylow_type": two,
    }


def cmd_group(args) -> int:
    rep = group_report(_group_from_args(args))
    if args.json:
        _emit_json(args, rep)
        return EXIT_OK
    lines = [
        f"name\t{rep['name']}",
        f"order\t{rep['order']}",
        "spectrum\t" + " ".join(f"{k}:{v}" for k, v in rep["spectrum"].items()),
        f"center\t{rep['center']}",
    ]
    for p, s in rep["sylow"].items():
        lines.append(f"sylow.{p}\t{s['count']} of order {s['order']}")
    for sub in rep["subgroups"]:
        tag = "normal" if sub["normal"] else "not normal"
        lines.append(f"subgroup.{sub['subgroup']}\torder {sub['order']}, index {sub['index']}, {tag}")
    lines.append(f"two_sylow_type\t{rep['two_sylow_type'] or 'n/a'}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        Vf.select(args.suite)
    except Vf.UnknownSelector as exc:
        raise UsageError(str(exc)) from None
    report = Vf.run(args.suite, cap=args.cap, n=args.conductor)
    if args.json:
        _emit_json(args, report.to_json())
    else:
        s = report.summary
        tail = f"# {s['pass']}/{s['total']} passed"
        _emit(args, "\n".join(report.lines() + [tail]) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_export(args) -> int:
    G = _group_from_args(args)
    _emit(args, json.dumps(En.group_to_json(G)) + "\n")
    return EXIT_OK


def cmd_import(args) -> int:
    data = _load_json(args.path)
    try:
        G = En.group_from_json(data, cap=args.cap)
    except En.GroupFileError as exc:
        raise UsageError(f"malformed group file: {exc}") from None
    except En.GroupInvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        _emit_json(args, {"name": G.name, "order": G.order, "valid": True})
    else:
        _emit(args, f"name\t{G.name}\norder\t{G.order}\nvalid\tyes\n")
    return EXIT_OK


def cmd_catalog(args) -> int:
    n = args.conductor
    try:
        sets = C.named_sets(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _emit_json(args, [
            {"name": s.name, "provenance": s.provenance, "labels": list(s.labels),
             "conductor": n, "generators": [g.to_json() for g in s.generators]}
            for s in sets
        ])
    else:
        _emit(args, "".join(f"{s.name}\t{s.provenance}\n" for s in sets))
    return EXIT_OK


def _fmt_matrix(m: Mat3) -> list[str]:
    return ["  [" + ", ".join(str(x) for x in row) + "]" for row in m.rows()]


def cmd_fusion(args) -> int:
    n = args.conductor
    if args.symbols:
        rows = Fu.symbol_table(n)
        if args.json:
            _emit_json(args, [{"symbol": k, "exact": str(v), "approx": v.approx().real} for k, v in rows])
        else:
            _emit(args, "".join(f"{k}\t{v}\t{v.approx().real:.12f}\n" for k, v in rows))
        return EXIT_OK
    M = Fu.derive_fusion_matrix(n)
    S = Fu.su3_normalize(M)
    same = S == C.fum(n)
    if args.json:
        _emit_json(args, {"derived": M.to_json(), "normalized": S.to_json(), "equals_fum": same})
    else:
        lines = ["derived"] + _fmt_matrix(M) + ["normalized"] + _fmt_matrix(S)
        lines.append(f"equals_fum\t{'yes' if same else 'no'}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if same else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--cap", type=int, default=None, help="closure size cap (env SU3_CAP)")
    common.add_argument("--conductor", type=int, default=DEFAULT_CONDUCTOR,
                        help="cyclotomic conductor, expert override (default 72)")

    p = argparse.ArgumentParser(prog="su3fr", description="Exact finite SU(3) subgroup toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def with_source(sp):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--name", help="catalog name, e.g. fr162x4 or d18-1-1-2-1-1")
        src.add_argument("--gens", help="JSON file with generator matrices")

    g = sub.add_parser("group", parents=[common], help="structure report for a group")
    with_source(g)
    g.set_defaults(func=cmd_group)

    v = sub.add_parser("verify", parents=[common], help="run verification items")
    v.add_argument("--suite", default="all", help="all, a family such as thm14, or one item id")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", parents=[common], help="write a group as JSON")
    with_source(e)
    e.set_defaults(func=cmd_export)

    i = sub.add_parser("import", parents=[common], help="read and revalidate a group file")
    i.add_argument("path")
    i.set_defaults(func=cmd_import)

    c = sub.add_parser("catalog", parents=[common], help="named generator sets")
    c.add_argument("action", choices=["list"])
    c.set_defaults(func=cmd_catalog)

    f = sub.add_parser("fusion", parents=[common], help="level-4 recoupling computations")
    mode = f.add_mutually_exclusive_group(required=True)
    mode.add_argument("--derive-fum", action="store_true", help="derive the fusion matrix")
    mode.add_argument("--symbols", action="store_true", help="dump all level-4 symbols")
    f.set_defaults(func=cmd_fusion)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cap is None:
            args.cap = _default_cap()
        if args.cap < 1:
            raise UsageError("--cap must be positive")
        if args.conductor < 2 or args.conductor % 2:
            raise UsageError("--conductor must be an even integer >= 2")
        return args.func(args)
    except UsageError as exc:
        print(f"su3fr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except En.ClosureCapExceeded as exc:
        print(f"su3fr: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
