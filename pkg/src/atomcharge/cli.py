"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .atoms import atom_decomposition
from .charge import (
    charge2,
    kl_in_n_basis,
    kostant_oracle,
    kostka_foulkes,
    llt_charge2,
    partitions_up_to,
)
from .crystal import build_crystal, encode, normalize_partition
from .errors import VerificationError
from .poly import LaurentPoly
from .rootlat import dominant_below, is_dominant
from .wallcross import moment_graph, twisted_graph, wall_sequence, run_wallcross


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _partition(args) -> tuple[int, ...]:
    if args.lam is None:
        raise UsageError("--lambda is required")
    try:
        return normalize_partition(_ints(args.lam), args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _wtext(mu) -> str:
    return "(" + ",".join(map(str, mu)) + ")"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _llt_poly(C, mu) -> LaurentPoly:
    return LaurentPoly.from_exponents(llt_charge2(C, x) for x in C.elements_of_weight(mu))


def _kostka_rows(n, lam, mus, oracle):
    C = build_crystal(n, lam)
    rows = []
    for mu in mus:
        row = {"lambda": list(lam), "mu": list(mu), "poly": kostka_foulkes(n, lam, mu)}
        if oracle in ("llt", "both"):
            row["llt"] = _llt_poly(C, mu)
        if oracle in ("kostant", "both"):
            row["kostant"] = kostant_oracle(n, lam, mu)
        if oracle:
            row["match"] = all(row[k] == row["poly"] for k in ("llt", "kostant") if k in row)
        rows.append(row)
    return rows


def cmd_kostka(args) -> int:
    if args.sweep is not None:
        jobs = [(n, normalize_partition(p, n)) for n in range(1, args.rank + 1)
                for p in partitions_up_to(args.sweep, n + 1)]
    else:
        jobs = [(args.rank, _partition(args))]
    rows = []
    for n, lam in jobs:
        if args.mu and args.sweep is None:
            mus = []
            for text in args.mu:
                mu = _ints(text)
                if len(mu) != n + 1 or sum(mu) != sum(lam) or not is_dominant(mu):
                    raise UsageError(f"{_wtext(mu)} is not a dominant weight with {n + 1} entries summing to {sum(lam)}")
                mus.append(mu)
        else:
            mus = dominant_below(lam)
        try:
            rows.extend(dict(r, rank=n) for r in _kostka_rows(n, lam, mus, args.oracle))
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    var = args.variable
    if args.format == "json":
        out = []
        for r in rows:
            d = {"rank": r["rank"], "lambda": r["lambda"], "mu": r["mu"], "q_poly": r["poly"].to_text("q"),
                 "v_poly": r["poly"].to_json()}
            for k in ("llt", "kostant"):
                if k in r:
                    d[k] = r[k].to_text(var)
            if "match" in r:
                d["match"] = r["match"]
            out.append(d)
        print(json.dumps(out, indent=2))
    elif args.format == "csv":
        head = ["rank", "lambda", "mu", "K"] + [k for k in ("llt", "kostant", "match") if rows and k in rows[0]]
        body = [[r["rank"], _wtext(r["lambda"]), _wtext(r["mu"]), r["poly"].to_text(var)]
                + [r[k] if k == "match" else r[k].to_text(var) for k in head[4:]] for r in rows]
        sys.stdout.write(_csv([head] + body))
    else:
        head = ["lambda", "mu", "K"] + [k for k in ("llt", "kostant", "match") if rows and k in rows[0]]
        body = [[_wtext(r["lambda"]), _wtext(r["mu"]), r["poly"].to_text(var)]
                + [("yes" if r[k] else "NO") if k == "match" else r[k].to_text(var) for k in head[3:]]
                for r in rows]
        widths = [max(len(str(x)) for x in col) for col in zip(head, *body)]
        for line in [head] + body:
            print("  ".join(str(x).ljust(w) for x, w in zip(line, widths)).rstrip())
        if args.oracle:
            print("all oracles agree" if all(r["match"] for r in rows) else "ORACLE MISMATCH")
    return 0 if all(r.get("match", True) for r in rows) else 1


def cmd_atoms(args) -> int:
    lam = _partition(args)
    C = build_crystal(args.rank, lam)
    dec = atom_decomposition(C)
    expansion = kl_in_n_basis(args.rank, lam)
    if args.format == "json":
        print(json.dumps({"atoms": [a.to_json(C) for a in dec], "expansion": expansion.to_json()}, indent=2))
    elif args.format == "csv":
        rows = [["highest_weight", "size", "atomic_number2"]]
        rows += [[_wtext(a.highest_weight), len(a), a.atomic_number2] for a in dec]
        sys.stdout.write(_csv(rows))
    else:
        for a in dec:
            print(f"atom {_wtext(a.highest_weight)}  size {len(a)}  2Z = {a.atomic_number2}")
        print("H_lambda = " + expansion.to_text(args.variable))
    return 0 if dec.is_constant() else 1


def cmd_wallcross(args) -> int:
    lam = _partition(args)
    C = build_crystal(args.rank, lam)
    trace = run_wallcross(C)
    if args.format == "json":
        print(json.dumps(trace.to_json(), indent=2))
    elif args.format == "csv":
        rows = [["state", "wall", "weight", "h"]]
        for s in [trace.mv] + trace.steps:
            name = "mv" if s is trace.mv else f"m={s.m}"
            for mu, p in s.h.items():
                rows.append([name, "" if s.wall is None else str(s.wall), _wtext(mu), p.to_text(args.variable)])
        sys.stdout.write(_csv(rows))
    else:
        print("walls: " + ", ".join(str(w) for w in trace.walls.walls))
        for s in [trace.mv] + trace.steps:
            if s is trace.mv:
                title = "MV chamber"
            elif s.wall is None:
                title = f"parabolic chamber (m={s.m})"
            else:
                title = f"m={s.m} after {s.wall}"
            print(title)
            for mu, p in s.h.items():
                print(f"  {_wtext(mu)}  {p.to_text(args.variable)}")
            if s.recurrence is not None:
                gam = "pass" if all(r.ok for r in s.gammam) else "fail"
                print(f"  recurrence: {s.recurrence.verdict()}  in-degree: {gam}")
        for c in trace.checks:
            print(f"{c.name}: {c.verdict()}")
            for f in c.failures:
                print(f"  {f}")
    return 0 if trace.ok else 1


def cmd_graph(args) -> int:
    lam = _partition(args)
    n = args.rank
    if args.crystal:
        sys.stdout.write(build_crystal(n, lam).to_dot())
        return 0
    if args.atom is not None:
        C = build_crystal(n, lam)
        dec = atom_decomposition(C)
        if not 0 <= args.atom < len(dec):
            raise UsageError(f"atom index must be in 0..{len(dec) - 1}")
        members = set(dec.atoms[args.atom].members)
        lines = [f"digraph atom_{args.atom} {{"]
        for x in sorted(members):
            lines.append(f'  t{x} [label="{"".join(map(str, encode(C.elements[x])))}"];')
        for i in range(1, n + 1):
            for x in sorted(members):
                y = C.s(i, x)
                if y > x:
                    lines.append(f'  t{x} -> t{y} [label="s{i}", dir=none];')
                fy = C.f(i, x) if i == n else None
                if fy is not None:
                    lines.append(f'  t{x} -> t{fy} [label="f{i}"];')
        lines.append("}")
        print("\n".join(lines))
        return 0
    G = moment_graph(n, lam)
    if args.twisted:
        S = wall_sequence(G)
        if args.m is None or not 0 <= args.m <= S.M:
            raise UsageError(f"--twisted needs --m in 0..{S.M}")
        sys.stdout.write(twisted_graph(G, S, args.m).to_dot())
    else:
        sys.stdout.write(G.to_dot())
    return 0


def cmd_report(args) -> int:
    from .report import write_report

    lam = _partition(args)
    C = build_crystal(args.rank, lam)
    for p in write_report(C, Path(args.out)):
        print(p)
    return 0


def cmd_charge(args) -> int:
    """Per-tableau charge listing."""
    lam = _partition(args)
    C = build_crystal(args.rank, lam)
    dec = atom_decomposition(C)
    rows = [["tableau", "weight", "atom", "charge2"]]
    for x in range(len(C)):
        rows.append([" ".join(map(str, encode(C.elements[x]))), _wtext(C.weights[x]), dec.atom_index(x),
                     charge2(C, x)])
    sys.stdout.write(_csv(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="atomcharge", description="Crystal charge, atoms and wall crossing in type A.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json", "csv")):
        sp.add_argument("--rank", type=int, required=True, help="rank n (the group is SL_{n+1})")
        sp.add_argument("--lambda", dest="lam", help="partition, comma separated")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--variable", choices=("v", "q"), default="v")

    sp = sub.add_parser("kostka", help="Kostka-Foulkes polynomials via charge")
    common(sp)
    sp.add_argument("--mu", action="append", help="dominant weight as a content vector (repeatable)")
    sp.add_argument("--oracle", choices=("llt", "kostant", "both"))
    sp.add_argument("--sweep", type=int, metavar="SIZE",
                    help="ignore --lambda and run every rank up to --rank and every partition up to SIZE")
    sp.set_defaults(func=cmd_kostka)

    sp = sub.add_parser("atoms", help="atomic decomposition and expansion in the N basis")
    common(sp)
    sp.set_defaults(func=cmd_atoms)

    sp = sub.add_parser("wallcross", help="run the recharge engine and print the trace")
    common(sp)
    sp.set_defaults(func=cmd_wallcross)

    sp = sub.add_parser("charge", help="charge of every tableau (CSV)")
    common(sp, formats=("csv",))
    sp.set_defaults(func=cmd_charge)

    sp = sub.add_parser("graph", help="DOT export of a crystal, an atom or a moment graph")
    common(sp, formats=("dot",))
    what = sp.add_mutually_exclusive_group()
    what.add_argument("--crystal", action="store_true")
    what.add_argument("--atom", type=int, metavar="K")
    what.add_argument("--moment", action="store_true", help="moment graph (default)")
    what.add_argument("--twisted", action="store_true")
    sp.add_argument("--m", type=int, help="step index for --twisted")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("report", help="write CSV tables and PNG figures to a directory")
    common(sp, formats=("csv",))
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.rank < 1:
        print("error: --rank must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
