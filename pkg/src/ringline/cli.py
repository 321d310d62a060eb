"""Command line interface.

Subcommands mirror the library layers: `sym` for exact polynomial
identities, `e2` for elementary-group sweeps, `jordan` for map checks,
`line` for the projective line and induced maps, `chains` for chain
geometries, and `suite` for the named verification suites with an
optional machine-readable report file.

Every command prints one PASS/FAIL line per check and exits 0 exactly
when all checks passed; otherwise the exit status is the number of
failures (capped at 99).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import chains as chains_mod
from . import elemgrp, freealg, jordan, presets, projline, suites
from .config import ConfigError, parse_map_arg, parse_ring_arg, parse_subfield_arg
from .report import normalize_record


def _exit_code(failures: int) -> int:
    return min(int(failures), 99)


def _print_records(records, label: str = "cli") -> int:
    failures = 0
    for rec in records:
        r = normalize_record(label, rec)
        status = "PASS" if r["passed"] else "FAIL"
        if not r["passed"]:
            failures += 1
        line = "%s %s @ %s [%s] checked=%d" % (
            status,
            r["name"],
            r["target"] or "-",
            r["mode"],
            r["checked"],
        )
        if not r["passed"] and r["witness"] is not None:
            line += " witness=" + json.dumps(r["witness"], sort_keys=True)
        print(line)
    return failures


def _parse_poly(text: str) -> freealg.FreePoly:
    """A product of window factors: 'e 1 4 * te 1 3' or 'e 1 4'."""
    out = freealg.FreePoly.const(1)
    for chunk in text.split("*"):
        parts = chunk.split()
        if len(parts) != 3 or parts[0] not in ("e", "te"):
            raise ConfigError(
                "bad factor %r; expected 'e I J' or 'te I J' joined by '*'" % chunk.strip()
            )
        i, j = int(parts[1]), int(parts[2])
        out = out * (freealg.e_ij(i, j) if parts[0] == "e" else freealg.te_ij(i, j))
    return out


# -- sym --------------------------------------------------------------------


def cmd_sym_verify(args) -> int:
    records = freealg.verify_e_identities(args.max_index)
    records += freealg.verify_first_row_forms(args.max_index)
    records.append(freealg.verify_hat_word_inverse(args.max_index))
    records.append(freealg.verify_window_shifts(min(args.max_index, 6)))
    return _exit_code(_print_records(records, "sym"))


def cmd_sym_epoly(args) -> int:
    if args.i is not None or args.j is not None:
        if args.i is None or args.j is None:
            raise ConfigError("--i and --j go together")
        print("e(%d,%d)  = %s" % (args.i, args.j, freealg.e_ij(args.i, args.j)))
        print("te(%d,%d) = %s" % (args.i, args.j, freealg.te_ij(args.i, args.j)))
    else:
        print("e(%d) = %s" % (args.n, freealg.e_rec(args.n)))
    return 0


# -- e2 ---------------------------------------------------------------------


def cmd_e2_enumerate(args) -> int:
    ring = parse_ring_arg(args.ring)
    group = elemgrp.enumerate_E2(ring, cap=args.cap)
    print("|E2(%s)| = %d" % (ring.label, len(group)))
    centre = elemgrp.centre_H(ring, group)
    print("centre size %d" % len(centre))
    return 0


def cmd_e2_nalpha(args) -> int:
    jmap = parse_map_arg(args.map)
    res = elemgrp.n_alpha(jmap.domain, jmap.codomain, jmap.apply, max_len=args.max_len)
    print(
        "relations checked: %d, generators: %d, subgroup size: %d"
        % (res.relations_checked, len(res.generators), len(res.subgroup))
    )
    rec = {
        "name": "nalpha-scalar-central[len<=%d]" % args.max_len,
        "target": jordan._pair_label(jmap),
        "checked": len(res.subgroup),
        "passed": res.all_scalar_central,
        "witness": None if res.all_scalar_central else {"failures": res.failures[:3]},
    }
    return _exit_code(_print_records([rec], "e2"))


# -- jordan -------------------------------------------------------------------


def cmd_jordan_verify(args) -> int:
    jmap = parse_map_arg(args.map)
    cls = jmap.classification()
    records = [
        {
            "name": "classification",
            "target": jordan._pair_label(jmap),
            "checked": jmap.domain.size**2,
            "passed": jmap.additive and jmap.unital and jmap.jordan_law,
            "witness": cls,
        },
        jordan.verify_unit_behavior(jmap),
    ]
    failures = _print_records(records, "jordan")
    print(json.dumps(cls, sort_keys=True))
    return _exit_code(failures)


def cmd_jordan_jtest(args) -> int:
    jmap = parse_map_arg(args.map)
    poly = _parse_poly(args.poly)
    records = jordan.test_j_polynomial(
        poly, [jmap], max_seq_len=args.max_len, budget=args.budget, seed=args.seed,
        label=args.poly,
    )
    return _exit_code(_print_records(records, "jordan"))


# -- line ---------------------------------------------------------------------


def cmd_line_enumerate(args) -> int:
    ring = parse_ring_arg(args.ring)
    line = projline.enumerate_line(ring)
    print("P(%s): %d points" % (ring.label, len(line)))
    shown = min(len(line), args.limit)
    for i in range(shown):
        print("  %d: %r" % (i, line.point(i)))
    if shown < len(line):
        print("  ... (%d more)" % (len(line) - shown))
    return 0


def cmd_line_graph(args) -> int:
    ring = parse_ring_arg(args.ring)
    ctx = projline.line_context(ring)
    g = ctx.graph
    edges = int(g.adj.sum()) // 2
    print(
        "distant graph on %d points: %d edges, %d component(s)"
        % (len(ctx.line), edges, g.n_components)
    )
    return 0


def cmd_line_diameter(args) -> int:
    ring = parse_ring_arg(args.ring)
    ctx = projline.line_context(ring)
    for comp_id, diam in enumerate(ctx.graph.diameters):
        size = int((ctx.graph.comp == comp_id).sum())
        print("component %d: %d points, diameter %d" % (comp_id, size, int(diam)))
    return 0


def cmd_line_induced(args) -> int:
    jmap = parse_map_arg(args.map)
    imap = projline.induced_map(jmap)
    records = list(imap.certificate)
    records.extend(projline.check_equivariance(imap))
    if args.check_harmonic:
        records.extend(projline.check_prop45(imap, seed=args.seed))
    return _exit_code(_print_records(records, "line"))


# -- chains ---------------------------------------------------------------------


def cmd_chains_list(args) -> int:
    ring = parse_ring_arg(args.ring)
    kf = parse_subfield_arg(ring, args.subfield)
    ctx = projline.line_context(ring)
    found = chains_mod.enumerate_chains(ctx, kf)
    print("%d chain(s) for K=%s on P(%s)" % (len(found), kf.label, ring.label))
    shown = min(len(found), args.limit)
    for ch in found[:shown]:
        print("  %s" % (ch.sorted_ids,))
    if shown < len(found):
        print("  ... (%d more)" % (len(found) - shown))
    return 0


def cmd_chains_thm52(args) -> int:
    jmap = parse_map_arg(args.map)
    kf = parse_subfield_arg(jmap.domain, args.subfield)
    kf2 = parse_subfield_arg(jmap.codomain, args.subfield_prime or args.subfield)
    records = chains_mod.check_thm52(jmap, kf, kf2, seed=args.seed)
    failures = _print_records(records, "chains")
    for rec in records:
        if rec["name"] == "kc-conjugacy" and rec["passed"] and rec["witness"]:
            print("unit table: " + json.dumps(rec["witness"]["units"], sort_keys=True))
    return _exit_code(failures)


# -- suite ------------------------------------------------------------------------


def cmd_suite(args) -> int:
    start = time.perf_counter()
    report = suites.run_suite(args.name, seed=args.seed)
    elapsed = time.perf_counter() - start
    print(report.summary())
    print("wall time: %.1f s" % elapsed)
    if args.report:
        report.write(args.report)
        print("report written to %s" % args.report)
    return _exit_code(report.counts["failed"])


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringline",
        description="Exact checks for elementary groups, Jordan maps, and the "
        "projective line over finite rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sym = sub.add_parser("sym", help="symbolic polynomial identities")
    sym_sub = p_sym.add_subparsers(dest="subcommand", required=True)
    p = sym_sub.add_parser("verify", help="window recurrences and matrix forms")
    p.add_argument("--max-index", type=int, default=8)
    p.set_defaults(fn=cmd_sym_verify)
    p = sym_sub.add_parser("epoly", help="print a recurrence polynomial")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(fn=cmd_sym_epoly)

    p_e2 = sub.add_parser("e2", help="elementary group over a finite ring")
    e2_sub = p_e2.add_subparsers(dest="subcommand", required=True)
    p = e2_sub.add_parser("enumerate", help="enumerate E2(R) by orbit closure")
    p.add_argument("--ring", required=True)
    p.add_argument("--cap", type=int, default=1_000_000)
    p.set_defaults(fn=cmd_e2_enumerate)
    p = e2_sub.add_parser("nalpha", help="relation-group sweep for a Jordan map")
    p.add_argument("--map", required=True)
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(fn=cmd_e2_nalpha)

    p_j = sub.add_parser("jordan", help="Jordan homomorphism checks")
    j_sub = p_j.add_subparsers(dest="subcommand", required=True)
    p = j_sub.add_parser("verify", help="validate and classify a map")
    p.add_argument("--map", required=True)
    p.set_defaults(fn=cmd_jordan_verify)
    p = j_sub.add_parser("jtest", help="test f(T)^alpha = f(T^alpha) for a polynomial")
    p.add_argument("--map", required=True)
    p.add_argument("--poly", required=True, help="e.g. 'e 1 4 * te 1 3'")
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--budget", type=int, default=jordan.WORK_BUDGET)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_jordan_jtest)

    p_line = sub.add_parser("line", help="projective line over a finite ring")
    line_sub = p_line.add_subparsers(dest="subcommand", required=True)
    p = line_sub.add_parser("enumerate", help="list the points")
    p.add_argument("--ring", required=True)
    p.add_argument("--limit", type=int, default=16)
    p.set_defaults(fn=cmd_line_enumerate)
    p = line_sub.add_parser("graph", help="distant-graph shape")
    p.add_argument("--ring", required=True)
    p.set_defaults(fn=cmd_line_graph)
    p = line_sub.add_parser("diameter", help="per-component diameters")
    p.add_argument("--ring", required=True)
    p.set_defaults(fn=cmd_line_diameter)
    p = line_sub.add_parser("induced", help="induced point map of a Jordan map")
    p.add_argument("--map", required=True)
    p.add_argument("--check-harmonic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_line_induced)

    p_ch = sub.add_parser("chains", help="chain geometries of subfields")
    ch_sub = p_ch.add_subparsers(dest="subcommand", required=True)
    p = ch_sub.add_parser("list", help="enumerate the K-chains")
    p.add_argument("--ring", required=True)
    p.add_argument("--subfield", required=True)
    p.add_argument("--limit", type=int, default=32)
    p.set_defaults(fn=cmd_chains_list)
    p = ch_sub.add_parser("thm52", help="chain preservation vs the unit-conjugacy condition")
    p.add_argument("--map", required=True)
    p.add_argument("--subfield", required=True)
    p.add_argument("--subfield-prime")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_chains_thm52)

    p_suite = sub.add_parser("suite", help="run a named verification suite")
    p_suite.add_argument("name", choices=suites.suite_names())
    p_suite.add_argument("--seed", type=int, default=0)
    p_suite.add_argument("--report", help="write the JSONL report to this path")
    p_suite.set_defaults(fn=cmd_suite)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
