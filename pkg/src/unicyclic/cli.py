"""Command-line entry point: ``unicyclic <verb> [options]``.

Verbs: compute, family, enumerate, verify, correlate.  Integers in JSON and
CSV output are decimal strings.  Exit status is 0 on success, 2 on parse or
hypothesis errors and 3 when a verification run finds a counterexample.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .enumeration import ClassFilter, parallel_map, unicyclic_with_keys
from .families import (
    cycle,
    path,
    star,
    starlike,
    u1n,
    u_cycle_seg,
    u_two_branch,
    us_up,
)
from .graph import Graph, GraphError, cycle_info, is_connected, read_edgelist, segment_sequence, write_edgelist
from .invariants import hosoya, merrifield_simmons, subtree_profile, subtree_total, wiener
from .verification import (
    LEMMAS,
    admissible_sequences,
    check_lemma,
    check_theorem,
    normalize_id,
    segment_count_cases,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3

INDICES = ("subtrees", "profile", "wiener", "sigma", "hosoya", "segments", "girth")
FAMILIES = ("path", "cycle", "star", "us", "up", "u<i>", "utwo", "u1n", "starlike")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage already; keep the message on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_family_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("kind", nargs=None if required else "?",
                   help="path, cycle, star, us, up, u1..u9 (U_i), utwo, u1n, starlike")
    p.add_argument("--n", type=int, help="order (path, cycle, star, us, up, u1n)")
    p.add_argument("--girth", type=int, default=3, help="cycle length for us/up (default 3)")
    p.add_argument("--segments", type=_int_list, help="segment lengths, e.g. 4,4,1,1")
    p.add_argument("--arcs", type=_int_list, help="utwo: the two arc lengths li,lj")
    p.add_argument("--left", type=_int_list, help="utwo: pendant paths at the first branch vertex")
    p.add_argument("--right", type=_int_list, help="utwo: pendant paths at the second branch vertex")


def _need(value, flag: str, kind: str):
    if value is None:
        raise GraphError(f"family {kind} needs {flag}")
    return value


def build_family(args) -> Graph:
    kind = args.kind
    if kind in ("path", "cycle", "star"):
        return {"path": path, "cycle": cycle, "star": star}[kind](_need(args.n, "--n", kind))
    if kind in ("us", "up"):
        return us_up(kind, _need(args.n, "--n", kind), args.girth)
    if kind == "u1n":
        return u1n(_need(args.n, "--n", kind))
    if kind == "starlike":
        return starlike(_need(args.segments, "--segments", kind))
    if kind == "utwo":
        arcs = _need(args.arcs, "--arcs", kind)
        if len(arcs) != 2:
            raise GraphError("--arcs takes exactly two lengths")
        return u_two_branch(arcs[0], arcs[1], _need(args.left, "--left", kind), _need(args.right, "--right", kind))
    if kind.startswith("u") and kind[1:].isdigit():
        segs = _need(args.segments, "--segments", kind)
        return u_cycle_seg(sorted(segs, reverse=True), int(kind[1:]))
    raise GraphError(f"unknown family {kind!r}; choose from {', '.join(FAMILIES)}")


def _read_graph(source: str) -> Graph:
    if source == "-":
        return read_edgelist(sys.stdin.read())
    try:
        with open(source, encoding="utf-8") as fh:
            return read_edgelist(fh.read())
    except OSError as exc:
        raise GraphError(f"cannot read {source}: {exc.strerror}") from None


def compute_record(g: Graph, indices) -> dict:
    """JSON-ready record of the requested indices, integers as strings."""
    out = {"order": str(g.vertex_count), "size": str(g.m)}
    if "subtrees" in indices or "profile" in indices:
        prof = subtree_profile(g)
        if "subtrees" in indices:
            out["n"] = str(prof.total)
        if "profile" in indices:
            out["profile"] = [str(x) for x in prof.counts]
    if "wiener" in indices:
        out["wiener"] = str(wiener(g))
    if "sigma" in indices:
        out["sigma"] = str(merrifield_simmons(g))
    if "hosoya" in indices:
        out["hosoya"] = str(hosoya(g))
    if "segments" in indices:
        out["segments"] = [str(x) for x in segment_sequence(g)]
    if "girth" in indices:
        out["girth"] = str(cycle_info(g).girth)
    return out


def _indices(text: str | None) -> tuple[str, ...]:
    if text is None or text == "all":
        return INDICES
    chosen = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = [x for x in chosen if x not in INDICES]
    if bad:
        raise GraphError(f"unknown indices {bad}; choose from {', '.join(INDICES)}")
    return chosen


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_compute(args, out) -> int:
    indices = _indices(args.indices)
    if args.input is not None:
        g = _read_graph(args.input)
    elif args.kind is not None:
        g = build_family(args)
    else:
        raise GraphError("compute needs --input FILE or a family spec")
    if args.indices is None:
        # default to what the graph supports
        if not is_connected(g):
            indices = ("sigma", "hosoya")
        elif g.m != g.vertex_count:
            indices = tuple(i for i in indices if i not in ("segments", "girth"))
    out.write(_dump(compute_record(g, indices)))
    return EXIT_OK


def cmd_family(args, out) -> int:
    out.write(write_edgelist(build_family(args)))
    return EXIT_OK


def _filter(args) -> ClassFilter:
    if args.segments:
        return ClassFilter(order=sum(args.segments), girth=args.girth, segment_sequence=tuple(args.segments))
    if args.order is None:
        raise GraphError("give --order or --segments")
    return ClassFilter(order=args.order, girth=args.girth, segment_count=args.segment_count)


def cmd_enumerate(args, out) -> int:
    flt = _filter(args)
    if args.emit == "count":
        out.write(f"{sum(1 for _ in unicyclic_with_keys(flt))}\n")
        return EXIT_OK
    first = True
    for key, g in unicyclic_with_keys(flt):
        if args.emit == "keys":
            out.write(key.hex() + "\n")
            continue
        if not first:
            out.write("\n")
        out.write(f"# {key.hex()}\n" + write_edgelist(g))
        first = False
    return EXIT_OK


def _verify_cases(args) -> list[dict]:
    tid = normalize_id(args.theorem)
    if args.up_to is None:
        params = {}
        for name in ("n", "m", "girth"):
            if getattr(args, name) is not None:
                params[name] = getattr(args, name)
        if args.segments:
            params["segments"] = sorted(args.segments, reverse=True)
        return [params]
    limit = args.up_to
    if tid in ("T1_uni",):
        return [{"n": n} for n in range(3, limit + 1)]
    if tid == "T2_girth":
        return [{"n": n, "girth": l} for n in range(3, limit + 1) for l in range(3, n + 1)]
    if tid in ("T3_subtree_segseq", "T6_sigma_segseq"):
        return [{"segments": list(s)} for s in admissible_sequences(limit) if s[0] >= 3]
    if tid == "T4_short_subtree" or tid == "T7_short_sigma":
        return [{"segments": list(s)} for s in admissible_sequences(limit)
                if (s[0] == 2 and len(s) >= 4) or (s[0] == 1 and len(s) >= 6)]
    if tid == "T5_segnum_subtree":
        return [{"n": n, "m": m} for n, m in segment_count_cases(limit)
                if n >= m + 2 or (n == m + 1 and m >= 4) or (n == m and n >= 6)]
    if tid == "T8_segnum_sigma":
        return [{"n": n, "m": m} for n, m in segment_count_cases(limit)
                if (n >= m + 3 and m >= 2) or (n == m + 2 and m >= 4) or (n == m + 1 and m >= 4)
                or (n == m and n >= 6)]
    raise GraphError("--up-to applies to theorems only")


def cmd_verify(args, out) -> int:
    tid = normalize_id(args.theorem)
    verdicts = []
    if tid in LEMMAS:
        params = {"seed": args.seed}
        verdicts.append(check_lemma(tid, params))
    else:
        for params in _verify_cases(args):
            verdicts.append(check_theorem(tid, params, workers=args.workers))
    if args.report == "json":
        reports = [v.to_report() for v in verdicts]
        out.write(_dump(reports[0] if len(reports) == 1 and args.up_to is None else reports))
    else:
        for v in verdicts:
            status = "holds" if v.holds else "COUNTEREXAMPLE"
            out.write(f"{v.theorem} {json.dumps(v.params, sort_keys=True)}: {status} "
                      f"(class size {v.class_size}, extremal value {v.extremal_value})\n")
            for f in v.findings:
                out.write(f"  finding: {f}\n")
    return EXIT_OK if all(v.holds for v in verdicts) else EXIT_COUNTEREXAMPLE


CORRELATED = ("n", "wiener", "sigma", "hosoya")


def _row(g: Graph) -> tuple[int, int, int, int]:
    return subtree_total(g), wiener(g), merrifield_simmons(g), hosoya(g)


def correlation_table(flt: ClassFilter, workers: int = 1) -> str:
    """CSV: one row per class member, then a Kendall tau block for each index pair."""
    from scipy.stats import kendalltau

    members = list(unicyclic_with_keys(flt))
    rows = parallel_map(_row, [g for _, g in members], workers)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key",) + CORRELATED)
    for (key, _), row in zip(members, rows):
        w.writerow((key.hex(),) + tuple(str(x) for x in row))
    w.writerow(())
    w.writerow(("index_a", "index_b", "kendall_tau"))
    for i in range(len(CORRELATED)):
        for j in range(i + 1, len(CORRELATED)):
            a = [r[i] for r in rows]
            b = [r[j] for r in rows]
            if len(rows) < 2 or len(set(a)) < 2 or len(set(b)) < 2:
                tau = "nan"
            else:
                tau = f"{kendalltau(a, b).statistic:.6f}"
            w.writerow((CORRELATED[i], CORRELATED[j], tau))
    return buf.getvalue()


def cmd_correlate(args, out) -> int:
    out.write(correlation_table(_filter(args), args.workers))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unicyclic", description="Exact subtree, Wiener, Merrifield-Simmons and Hosoya "
                                                   "indices on trees and unicyclic graphs.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="invariants of one graph")
    _add_family_args(p, required=False)
    p.add_argument("--input", "-i", help="edge-list file ('-' for stdin)")
    p.add_argument("--indices", help=f"comma list from {','.join(INDICES)} (default: all that apply)")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("family", help="emit a family member as an edge list")
    _add_family_args(p, required=True)
    p.set_defaults(func=cmd_family)

    for verb, func, helptext in (("enumerate", cmd_enumerate, "list a unicyclic class"),
                                 ("correlate", cmd_correlate, "CSV of n, W, sigma, Z over a class")):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("--order", type=int)
        p.add_argument("--girth", type=int)
        p.add_argument("--segments", type=_int_list)
        p.add_argument("--segment-count", type=int)
        p.add_argument("--workers", type=int, default=1)
        if verb == "enumerate":
            p.add_argument("--emit", choices=("edgelist", "count", "keys"), default="edgelist")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="check a theorem or lemma exhaustively")
    p.add_argument("--theorem", required=True, help="T1..T8, a full id like T5_segnum_subtree, or a lemma id")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--girth", type=int)
    p.add_argument("--segments", type=_int_list)
    p.add_argument("--up-to", type=int, help="sweep every admissible parameter set up to this order")
    p.add_argument("--seed", type=int, default=0, help="corpus seed for lemma suites")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EXIT_OK
        if isinstance(exc.code, str):
            sys.stderr.write(exc.code + "\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (GraphError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
