"""Command-line entry point: ``exminor <verb> ...``.

A matroid argument is either a catalog name or a path to a file in the
text format (``path.mat`` takes the first record, ``path.mat:NAME`` picks
one by name).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, scenarios, textformat
from .connectivity import find_separations, is_three_connected
from .constructions import grow_fan
from .isomorphism import isomorphism
from .matroid import Matroid, MatroidError
from .minors import has_minor


def resolve(arg: str) -> Matroid:
    path, _, name = arg.partition(":") if not Path(arg).exists() else (arg, "", "")
    if Path(path).is_file():
        ms = textformat.load(path)
        if not ms:
            raise MatroidError(f"{path}: no records")
        if not name:
            return ms[0]
        for m in ms:
            if m.name == name:
                return m
        raise MatroidError(f"{path}: no record named {name!r}")
    return catalog.get(arg)


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def _describe(m: Matroid) -> dict:
    return {
        "name": m.name,
        "kind": m.kind,
        "rank": m.rank(),
        "size": m.n,
        "labels": list(m.labels),
        "triangles": sorted(m.ordered(t) for t in m.triangle_masks()),
        "triads": sorted(m.ordered(t) for t in m.triad_masks()),
        "three_connected": is_three_connected(m),
    }


def cmd_catalog(args) -> int:
    if args.action == "list":
        names = catalog.names()
        _emit(names, args.json, "\n".join(names))
        return 0
    if not args.name:
        print("catalog show needs a name", file=sys.stderr)
        return 2
    m = catalog.get(args.name)
    if args.json:
        _emit(_describe(m), True, "")
    else:
        print(textformat.dumps(m), end="")
    return 0


def cmd_check(args) -> int:
    if args.what == "minor":
        host, pattern = resolve(args.host), resolve(args.pattern)
        w = has_minor(host, pattern)
        if w is None:
            _emit({"minor": False}, args.json, f"{host.name} has no {pattern.name}-minor")
            return 1
        text = (
            f"{host.name} has a {pattern.name}-minor\n"
            f"  contract: {' '.join(w.contract) or '-'}\n"
            f"  delete:   {' '.join(w.delete) or '-'}\n"
            f"  map:      {' '.join(f'{a}->{b}' for a, b in w.iso.pairs)}"
        )
        _emit({"minor": True, "witness": w.to_json()}, args.json, text)
        return 0
    if args.what == "iso":
        a, b = resolve(args.items[0]), resolve(args.items[1])
        phi = isomorphism(a, b)
        if phi is None:
            _emit({"isomorphic": False}, args.json, f"{a.name} and {b.name} are not isomorphic")
            return 1
        text = f"{a.name} ~ {b.name}: " + " ".join(f"{x}->{y}" for x, y in phi.pairs)
        _emit({"isomorphic": True, "map": [list(p) for p in phi.pairs]}, args.json, text)
        return 0
    m = resolve(args.items[0])
    if is_three_connected(m):
        _emit({"three_connected": True}, args.json, f"{m.name} is 3-connected")
        return 0
    seps = find_separations(m, 1) or find_separations(m, 2)
    sep = seps[0].to_json() if seps else None
    text = f"{m.name} is not 3-connected"
    if sep:
        text += f"; {sep['lambda'] + 1}-separation {' '.join(sep['side'])} | {' '.join(sep['other'])}"
    _emit({"three_connected": False, "separation": sep}, args.json, text)
    return 1


def cmd_growfan(args) -> int:
    m = resolve(args.matroid)
    tri = [x.strip() for x in args.triangle.split(",")]
    if len(tri) != 3:
        print("--triangle needs three comma-separated labels", file=sys.stderr)
        return 2
    g = grow_fan(m, tri, args.n)
    note = "fan: " + " ".join(g.fan)
    text = textformat.dumps(g.matroid, note=note)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return 0


def cmd_verify(args) -> int:
    ids = args.scenario or None
    report = scenarios.run_all(ids, jobs=args.jobs, timings=args.timings)
    if args.report:
        scenarios.write_report(report, args.report)
    for sc in report["scenarios"]:
        for c in sc["claims"]:
            extra = f" ({c['millis']} ms)" if args.timings else ""
            if c["status"] != "pass" or args.verbose:
                print(f"{c['status'].upper():7} {sc['scenario']} {c['id']}{extra}")
        n = {k: sum(1 for c in sc["claims"] if c["status"] == k) for k in ("pass", "fail", "skipped")}
        print(f"{sc['scenario']}: {n['pass']} pass, {n['fail']} fail, {n['skipped']} skipped")
    s = report["summary"]
    print(f"total: {s['claims']} claims, {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped")
    return scenarios.exit_code(report, args.strict)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exminor", description="Matroid minors, fans and finite case-checks.")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("catalog", help="list or show catalog matroids")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("name", nargs="?")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog)

    k = sub.add_parser("check", help="minor, isomorphism and 3-connectivity checks")
    k.add_argument("what", choices=["minor", "iso", "3conn"])
    k.add_argument("items", nargs="*")
    k.add_argument("--host")
    k.add_argument("--pattern")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_check)

    g = sub.add_parser("growfan", help="grow a fan on a triangle by gluing a wheel")
    g.add_argument("--matroid", required=True)
    g.add_argument("--triangle", required=True, help="three labels, e.g. 3,6,8")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_growfan)

    v = sub.add_parser("verify", help="run the finite case-check scenarios")
    v.add_argument("--scenario", action="append", help="scenario id (repeatable); default all")
    v.add_argument("--strict", action="store_true", help="skipped claims also fail the run")
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="include per-claim milliseconds")
    v.add_argument("--list", action="store_true", help="print scenario ids and exit")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def _check_arity(p: argparse.ArgumentParser, args) -> None:
    if args.verb != "check":
        return
    if args.what == "minor" and not (args.host and args.pattern):
        p.error("check minor needs --host and --pattern")
    want = {"iso": 2, "3conn": 1}.get(args.what)
    if want is not None and len(args.items) != want:
        p.error(f"check {args.what} takes {want} matroid argument(s)")


def main(argv: list[str] | None = None) -> int:
    p = build_parser()
    args = p.parse_args(argv)
    _check_arity(p, args)
    if args.verb == "verify" and args.list:
        print("\n".join(scenarios.scenario_ids()))
        return 0
    try:
        return args.func(args)
    except (MatroidError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
