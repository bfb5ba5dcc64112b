"""Command-line interface.

Exit codes: 0 success or pass, 1 verification failure or no certificate,
2 usage error (bad dimensions, bad hole, guard exceeded).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import linalg, matchgen, profile_dp, temperley, theorems
from .grid import GridError, GridSpec, parse_cell
from .twoadic import decompose, format_valuation

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _spec(args) -> GridSpec:
    try:
        return GridSpec(args.rows, args.cols)
    except GridError as exc:
        raise UsageError(str(exc)) from exc


def _count_row(cell, value) -> dict:
    t = decompose(value)
    row = {} if cell is None else {"row": cell.row, "col": cell.col}
    row.update(count=value, v2=format_valuation(t.valuation), odd_part=t.odd_part)
    return row


def cmd_count(args, out) -> int:
    spec = _spec(args)
    if args.hole and args.all_holes:
        raise UsageError("--hole and --all-holes are mutually exclusive")
    if args.all_holes:
        if not spec.odd_odd():
            raise UsageError("--all-holes needs odd dimensions")
        counts, total = profile_dp.count_all_holes(spec, jobs=args.jobs)
        rows = [_count_row(cell, value) for cell, value in counts.items()]
        total_row = _count_row(None, total)
    else:
        if args.hole:
            hole = parse_cell(args.hole)
            if not spec.odd_odd():
                raise UsageError("a hole needs odd dimensions")
            spec.require(hole)
            rows = [_count_row(hole, profile_dp.count_with_hole(spec, hole))]
        else:
            if spec.odd_odd():
                raise UsageError("odd area: give --hole or --all-holes")
            rows = [_count_row(None, profile_dp.count_perfect(spec.rows, spec.cols))]
        total_row = None

    if args.format == "json":
        payload = {"rows": spec.rows, "cols": spec.cols, "counts": rows}
        if total_row is not None:
            payload["total"] = total_row
        out.write(json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["row", "col", "count", "v2", "odd_part"])
        for row in rows:
            w.writerow([row.get("row", ""), row.get("col", ""), row["count"], row["v2"], row["odd_part"]])
        if total_row is not None:
            w.writerow(["total", "", total_row["count"], total_row["v2"], total_row["odd_part"]])
    else:
        if len(rows) == 1 and total_row is None:
            out.write(f"{rows[0]['count']}\n")
        else:
            for row in rows:
                out.write(f"{row['row']},{row['col']}: {row['count']} = 2^{row['v2']} * {row['odd_part']}\n")
            out.write(f"total: {total_row['count']} = 2^{total_row['v2']} * {total_row['odd_part']}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = theorems.run_claim(args.claim, k_min=args.k_min, k_max=args.k_max,
                                r_max=args.r_max, c_max=args.c_max, max_dim=args.max_dim)
    if args.format == "json":
        out.write(report.dumps() + "\n")
    else:
        out.write(f"{report.claim}: {report.verdict} ({len(report.instances)} instances, "
                  f"{report.seconds:.2f}s)\n")
        if report.verdict == "report-only":
            out.write(f"data agrees: {'yes' if report.holds else 'no'}\n")
        for bad in report.counterexamples[:10]:
            out.write(f"counter-instance: {json.dumps(bad, default=str)}\n")
    return EXIT_FAIL if report.verdict == "fail" else EXIT_OK


def cmd_certificate(args, out) -> int:
    spec = _spec(args)
    hole = parse_cell(args.hole) if args.hole else None
    if hole is not None:
        spec.require(hole)
    if args.mode == "a":
        cert = linalg.construct_certificate_case_a(spec.rows, spec.cols)
    elif args.mode == "b":
        if args.f is None:
            raise UsageError("--mode b needs --f")
        cert = linalg.construct_certificate_case_b(spec.rows, spec.cols, args.f)
    else:
        cert = linalg.find_certificate(spec, hole)
        if cert is None:
            out.write("none\n")
            return EXIT_FAIL
    for cell in cert.sorted_cells():
        out.write(f"{cell}\n")
    ok = linalg.verify_certificate(spec, hole, cert)
    out.write("verified\n" if ok else "NOT verified\n")
    return EXIT_OK if ok else EXIT_FAIL


def _web_lines(spec, m) -> list[str]:
    web = temperley.web_from_matching(spec, m)
    lines = web.to_text().splitlines()
    for cyc in temperley.find_cycles(web):
        verts = " ".join(str(v) for v in cyc.vertices)
        lines.append(f"cycle: {verts} encloses_hole={'yes' if cyc.encloses_hole else 'no'}")
    return lines


def cmd_web(args, out) -> int:
    spec = _spec(args)
    if not spec.odd_odd():
        raise UsageError("webs need odd dimensions")
    if args.enumerate:
        if not args.hole:
            raise UsageError("--enumerate needs --hole")
        hole = parse_cell(args.hole)
        spec.require(hole)
        matchings = list(matchgen.enumerate_near_perfect(spec, hole))
        index = {m: i for i, m in enumerate(matchings)}
        pairs, trees, round_trip = [], 0, True
        for i, m in enumerate(matchings):
            web = temperley.web_from_matching(spec, m)
            if temperley.find_cycles(web):
                j = index[temperley.reverse_canonical_cycle(spec, m)]
                if i < j:
                    pairs.append((i, j))
            else:
                trees += 1
                round_trip &= temperley.matching_from_tree(spec, hole, web) == m
        census = {"matchings": len(matchings), "pairs": len(pairs), "trees": trees,
                  "round_trip": round_trip}
        if hole.white_parity == "odd":
            census["spanning_trees"] = linalg.spanning_tree_count(*temperley.web_dims(spec))
        if args.format == "json":
            out.write(json.dumps({**census, "pairing": pairs}, indent=2) + "\n")
        else:
            for i, j in pairs:
                out.write(f"pair: {i} {j}\n")
            for key, value in census.items():
                out.write(f"{key}: {value}\n")
        return EXIT_OK

    if not args.input:
        raise UsageError("give --input FILE or --enumerate")
    with open(args.input, encoding="utf-8") as fh:
        m = matchgen.parse_matching(fh.read(), spec)
    try:
        m.validate(spec)
    except GridError as exc:
        raise UsageError(f"invalid matching: {exc}") from exc
    for line in _web_lines(spec, m):
        out.write(line + "\n")
    return EXIT_OK


def _grids(args):
    if args.rows is not None and args.cols is not None:
        return [_spec(args)]
    return [GridSpec(r, c) for r in range(1, args.r_max + 1, 2) for c in range(1, args.c_max + 1, 2)]


def cmd_scan_mod4(args, out) -> int:
    specs = _grids(args)
    for spec in specs:
        if not spec.odd_odd():
            raise UsageError("scan needs odd dimensions")
    single = len(specs) == 1
    w = csv.writer(out, lineterminator="\n")
    w.writerow((["row", "col"] if single else ["rows", "cols", "row", "col"]) + ["count", "mod4", "class"])
    for spec in specs:
        scan = temperley.scan_mod4(spec, jobs=args.jobs)
        for cell, count, residue, cls in scan.rows:
            prefix = [] if single else [spec.rows, spec.cols]
            w.writerow(prefix + [cell.row, cell.col, count, residue, cls])
        for finding in scan.findings():
            print(f"finding: {finding}", file=sys.stderr)
    return EXIT_OK


def cmd_scan_parity(args, out) -> int:
    specs = _grids(args)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["rows", "cols", "tree_count", "odd_white_consistent", "even_white_even"])
    ok = True
    for spec in specs:
        if not spec.odd_odd():
            raise UsageError("scan needs odd dimensions")
        scan = temperley.scan_parity_invariance(spec, jobs=args.jobs)
        ok &= scan.passed
        w.writerow([spec.rows, spec.cols, scan.tree_count, scan.odd_white_consistent, scan.even_white_even])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sequence(args, out) -> int:
    rows = theorems.sequence_rows(range(args.k_min, args.k_max + 1))
    if args.format == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "n", "a", "v2", "c_k", "c_k_mod8"])
        for row in rows:
            w.writerow([row[key] for key in ("k", "n", "a", "v2", "c_k", "c_k_mod8")])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holey", description="Exact counts of one-hole domino tilings.")
    sub = p.add_subparsers(dest="command", required=True)

    def dims(sp, required=True):
        sp.add_argument("--rows", type=int, required=required)
        sp.add_argument("--cols", type=int, required=required)

    sp = sub.add_parser("count", help="count tilings")
    dims(sp)
    sp.add_argument("--hole", help="ROW,COL")
    sp.add_argument("--all-holes", action="store_true")
    sp.add_argument("--format", choices=("csv", "json", "plain"), default="plain")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("verify", help="run one verification claim")
    sp.add_argument("--claim", required=True, choices=sorted(theorems.CLAIMS))
    sp.add_argument("--k-min", type=int, default=0)
    sp.add_argument("--k-max", type=int, default=6)
    sp.add_argument("--r-max", type=int, default=9)
    sp.add_argument("--c-max", type=int, default=9)
    sp.add_argument("--max-dim", type=int, default=10)
    sp.add_argument("--format", choices=("json", "plain"), default="plain")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("certificate", help="evenness certificate")
    dims(sp)
    sp.add_argument("--mode", choices=("a", "b", "search"), required=True)
    sp.add_argument("--f", type=int)
    sp.add_argument("--hole", help="ROW,COL")
    sp.set_defaults(func=cmd_certificate)

    sp = sub.add_parser("web", help="spanning web of a matching")
    dims(sp)
    sp.add_argument("--hole", help="ROW,COL")
    sp.add_argument("--input", help="matching file (line format or JSON)")
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--format", choices=("json", "plain"), default="plain")
    sp.set_defaults(func=cmd_web)

    scans = (
        ("scan-mod4", cmd_scan_mod4, "hole counts mod 4, as CSV"),
        ("scan-parity", cmd_scan_parity, "hole-count parity against the web's tree count"),
    )
    for name, func, text in scans:
        sp = sub.add_parser(name, help=text)
        dims(sp, required=False)
        sp.add_argument("--r-max", type=int, default=9)
        sp.add_argument("--c-max", type=int, default=9)
        sp.add_argument("--jobs", type=int, default=1)
        sp.set_defaults(func=func)

    sp = sub.add_parser("sequence", help="a(2k+1), v2, c_k, c_k mod 8")
    sp.add_argument("--k-min", type=int, default=0)
    sp.add_argument("--k-max", type=int, default=6)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_sequence)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (UsageError, GridError, profile_dp.ProfileTooLarge, matchgen.EnumerationLimitExceeded) as exc:
        print(f"holey {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
