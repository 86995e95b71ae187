"""Command-line front end.

Everything on stdout is machine-parseable (JSON documents or canonical
comma-separated permutation text); human diagnostics and iteration traces go
to stderr.

Exit codes: 0 success, 1 verification failures, 2 parse error,
3 precondition violation, 4 I/O error, 5 verification cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .equivalence import (
    KEY_DESCENTS,
    KEY_MAJ,
    descent_key,
    dt_descent_set,
    render_descent_key,
    tally,
    theta_f_to_g,
    theta_g_to_f,
)
from .errors import (
    BadParameter,
    HypothesisViolation,
    InputContainsPattern,
    ParseError,
)
from .patterns import avoiders, contains, parse_spec
from .permutation import (
    ascent_set,
    blocks,
    descent_set,
    inversion_number,
    major_index,
    parse,
    ranks,
    to_text,
)
from .slidemap import phi_map, psi_map
from .verify import SUITES, run_suite
from .westmap import f_map, g_map

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4
EXIT_CAP = 5

VERIFY_CAP = 8

_BIJECTIONS = {
    "f": f_map,
    "g": g_map,
    "phi": phi_map,
    "psi": psi_map,
    "theta": theta_g_to_f,
    "theta_inv": theta_f_to_g,
}


def _cmd_stats(args) -> int:
    p = parse(args.perm)
    doc = {
        "n": len(p),
        "descents": list(descent_set(p)),
        "ascents": list(ascent_set(p)),
        "maj": major_index(p),
        "inv": inversion_number(p),
        "blocks": [list(b) for b in blocks(p)] if p else [],
        "ranks": list(ranks(p)),
    }
    print(json.dumps(doc))
    return EXIT_OK


def _cmd_contains(args) -> int:
    p = parse(args.perm)
    results = []
    for text in args.pattern:
        spec = parse_spec(text)
        occ = contains(p, spec)
        results.append({
            "pattern": spec.label,
            "contains": occ is not None,
            "occurrence": list(occ) if occ else None,
        })
    print(json.dumps({"perm": to_text(p), "n": len(p), "results": results}))
    return EXIT_OK


def _enumerate_document(args) -> tuple[dict | None, str, int]:
    """Build (json_doc, csv_text, total) for the enumerate subcommand."""
    specs = [parse_spec(t) for t in args.pattern]
    labels = [s.label for s in specs]
    if args.count_by == "none":
        perms = [to_text(p) for p in avoiders(args.n, specs)]
        doc = {"n": args.n, "patterns": labels, "total": len(perms),
               "permutations": perms}
        csv_text = "permutation\n" + "".join(t + "\n" for t in perms)
        return doc, csv_text, len(perms)
    if args.count_by in ("descents", "maj"):
        key_kind = KEY_DESCENTS if args.count_by == "descents" else KEY_MAJ
        table = tally(args.n, specs, key_kind)
        return table.to_json_dict(), table.to_csv(), table.total()
    # count_by == "dt": single entry, keyed by the rendered target descent set
    dset = dt_descent_set(args.n, args.t)
    table = tally(args.n, specs, KEY_DESCENTS)
    count = table.entries.get(descent_key(dset), 0)
    rendered = render_descent_key(descent_key(dset))
    doc = {"n": args.n, "k": None, "pattern": "&".join(labels) or "all",
           "key_kind": "dt", "t": args.t, "total": count,
           "entries": {rendered: count}}
    csv_text = f"key,count\n{rendered},{count}\n"
    return doc, csv_text, count


def _cmd_enumerate(args) -> int:
    doc, csv_text, total = _enumerate_document(args)
    payload = json.dumps(doc) if args.format == "json" else csv_text
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(payload if payload.endswith("\n") else payload + "\n")
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
        print(json.dumps({"total": total, "out": args.out}))
    else:
        print(payload, end="" if payload.endswith("\n") else "\n")
    return EXIT_OK


def _cmd_map(args) -> int:
    p = parse(args.perm)
    fn = _BIJECTIONS[args.bijection]
    trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
    if args.bijection in ("phi", "psi", "theta", "theta_inv"):
        out = fn(p, args.k, trace=trace)
    else:
        out = fn(p, args.k)
    print(to_text(out))
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.n_max > VERIFY_CAP and not args.force:
        print(f"n-max {args.n_max} exceeds the cap {VERIFY_CAP}; "
              "pass --force to run anyway", file=sys.stderr)
        return EXIT_CAP
    k_set = tuple(args.k) if args.k else (3, 4)
    t_set = tuple(args.t) if args.t else (1, 2, 3)
    report = run_suite(args.suite, args.n_max, k_set=k_set, t_set=t_set)
    print(report.to_json())
    return EXIT_OK if report.ok else EXIT_FAILURES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="descentbij",
        description="Descent-preserving bijections between pattern-avoiding "
                    "permutation classes, with exhaustive verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="statistics of one permutation")
    p_stats.add_argument("perm")
    p_stats.set_defaults(func=_cmd_stats)

    p_contains = sub.add_parser("contains", help="pattern containment witnesses")
    p_contains.add_argument("perm")
    p_contains.add_argument("--pattern", action="append", required=True,
                            help="classical ('132', '1,3,2'), special ('H:5', "
                                 "'Q:5'), or shorthand ('J4', 'F4', 'G4')")
    p_contains.set_defaults(func=_cmd_contains)

    p_enum = sub.add_parser("enumerate", help="list or tally an avoidance class")
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--pattern", action="append", default=[])
    p_enum.add_argument("--count-by", choices=("none", "descents", "maj", "dt"),
                        default="none")
    p_enum.add_argument("--t", type=int, default=1,
                        help="step of the target descent set for --count-by dt")
    p_enum.add_argument("--format", choices=("json", "csv"), default="json")
    p_enum.add_argument("--out", help="write the document here instead of stdout")
    p_enum.set_defaults(func=_cmd_enumerate)

    p_map = sub.add_parser("map", help="apply one of the bijections")
    p_map.add_argument("bijection", choices=sorted(_BIJECTIONS))
    p_map.add_argument("perm")
    p_map.add_argument("--k", type=int, required=True)
    p_map.add_argument("--trace", action="store_true",
                       help="emit the iteration trace on stderr")
    p_map.set_defaults(func=_cmd_map)

    p_verify = sub.add_parser("verify", help="run an exhaustive suite")
    p_verify.add_argument("--suite", choices=SUITES, default="all")
    p_verify.add_argument("--n-max", type=int, default=6)
    p_verify.add_argument("--k", type=int, action="append",
                          help="repeatable; default 3 and 4")
    p_verify.add_argument("--t", type=int, action="append",
                          help="repeatable; default 1, 2 and 3")
    p_verify.add_argument("--force", action="store_true",
                          help="allow n-max beyond the cap")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, BadParameter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InputContainsPattern, HypothesisViolation) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
