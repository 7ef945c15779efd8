"""Command-line front end: ``lagperm map|stats|enumerate|gamma|verify|orbit|table``.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import bijection, gamma, laguerre as L, perm as P, verify
from .errors import InternalInconsistency, LagpermError, NotInImage

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _history_json(h: L.LaguerreHistory) -> dict:
    return {"path": h.path.steps, "mu": list(h.mu)}


def _read_history(path: str, mu: str) -> L.LaguerreHistory:
    return L.make_history(path, L.parse_mu(mu))


# -- subcommands -------------------------------------------------------------

def cmd_map(args) -> int:
    if args.direction in ("phi", "psi"):
        if args.input is None:
            raise argparse.ArgumentTypeError("a permutation is required")
        sigma = P.parse_permutation(args.input)
        h = (bijection.phi if args.direction == "phi" else bijection.psi)(sigma)
    else:
        if args.path is None or args.mu is None:
            raise argparse.ArgumentTypeError("--path and --mu are required")
        h = _read_history(args.path, args.mu)
        sigma = (bijection.phi_inverse if args.direction == "phi-inv" else bijection.psi_inverse)(h)
    if args.json:
        print(json.dumps({"perm": str(sigma), **_history_json(h)}))
    elif args.direction in ("phi", "psi"):
        print(f"path: {h.path.steps}")
        print(f"mu: {L.format_mu(h.mu)}")
    else:
        print(sigma)
    return EXIT_OK


def stats_record(sigma: P.Permutation) -> dict:
    return {
        "perm": str(sigma),
        "n": sigma.n,
        "inv": P.inv(sigma),
        "exc": P.exc(sigma),
        "des": P.des(sigma),
        "dd": P.dd_count(sigma),
        "cros": P.cros(sigma),
        "nest": P.nest(sigma),
        "31-2": P.pattern_31_2(sigma),
        "2-13": P.pattern_2_13(sigma),
        "sde": sorted(P.shifted_double_excedances(sigma)),
        "val": list(P.val_vector(sigma)),
        "pos": list(P.pos_vector(sigma)),
        "nes": list(P.nes_vector(sigma)),
    }


def cmd_stats(args) -> int:
    rec = stats_record(P.parse_permutation(args.perm))
    if args.json:
        print(json.dumps(rec))
        return EXIT_OK
    for key, value in rec.items():
        if isinstance(value, list):
            inner = ",".join(map(str, value))
            value = f"{{{inner}}}" if key == "sde" else f"({inner})"
        print(f"{key}={value}")
    return EXIT_OK


_PERM_SETS = {"Sn": P.Family.ALL, "DD": P.Family.DD, "DE": P.Family.DE, "ALT": P.Family.ALTERNATING}


def cmd_enumerate(args) -> int:
    if args.set in _PERM_SETS:
        items = P.family(args.n, _PERM_SETS[args.set], args.k)
    elif args.set == "L":
        items = L.all_histories(args.n)
    else:
        if args.k is None:
            raise argparse.ArgumentTypeError("O needs k")
        items = L.orbit_reps(args.n, args.k)
    if args.count_only:
        print(sum(1 for _ in items))
        return EXIT_OK
    for x in items:
        if args.json:
            out = {"perm": str(x)} if isinstance(x, P.Permutation) else _history_json(x)
            print(json.dumps(out))
        else:
            print(x)
    return EXIT_OK


def cmd_gamma(args) -> int:
    if args.model == "de":
        g = gamma.gamma_de(args.n)
    elif args.model == "dd":
        g = gamma.gamma_dd(args.n)
    else:
        g = gamma.gamma_expand(gamma.qt_eulerian(args.n, args.workers), args.n)
    print(json.dumps(g.to_json()) if args.json else g)
    return EXIT_OK


def cmd_verify(args) -> int:
    impl = args.mutate
    if args.check:
        reports = [verify.run_check(args.check, args.max_n, impl)]
    else:
        reports = verify.run_all(args.max_n, impl, args.workers)
    if args.json:
        for r in reports:
            print(r.to_json())
    else:
        print(verify.format_table(reports))
        if args.verbose:
            for r in reports:
                for line in r.details:
                    print(f"{r.check_name}: {line}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_orbit(args) -> int:
    h = _read_history(args.path, args.mu)
    members = sorted(L.orbit(h), key=L.history_key)
    for m in members:
        print(json.dumps(_history_json(m)) if args.json else m)
    return EXIT_OK


_TABLE_STATS = ("inv", "exc", "des", "dd", "cros", "nest", "31-2", "2-13", "sde")


def cmd_table(args) -> int:
    names = [s.strip() for s in args.stats.split(",") if s.strip()]
    bad = [s for s in names if s not in _TABLE_STATS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown statistics {bad}; choose from {', '.join(_TABLE_STATS)}")
    kind = _PERM_SETS[args.family]
    rows = []
    for sigma in P.family(args.n, kind, args.k):
        rec = stats_record(sigma)
        rec["sde"] = len(rec["sde"])
        rows.append((str(sigma), tuple(rec[s] for s in names)))
    if args.aggregate:
        print("\t".join(names + ["count"]))
        for values, count in sorted(Counter(v for _, v in rows).items()):
            print("\t".join(map(str, values + (count,))))
    else:
        print("\t".join(["perm"] + names))
        for s, values in rows:
            print("\t".join([s, *map(str, values)]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lagperm", description="Laguerre-history encodings of permutations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("map", help="apply phi, psi or their inverses")
    p.add_argument("direction", choices=["phi", "phi-inv", "psi", "psi-inv"])
    p.add_argument("input", nargs="?", help="permutation (for phi / psi)")
    p.add_argument("--path", help="path word over U, D, 0, 1 (for inverses)")
    p.add_argument("--mu", help="comma-separated mu (for inverses)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("stats", help="all statistics of one permutation")
    p.add_argument("perm")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("enumerate", help="list a family of permutations or histories")
    p.add_argument("set", choices=["Sn", "DD", "DE", "ALT", "L", "O"])
    p.add_argument("n", type=int)
    p.add_argument("k", type=int, nargs="?")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("gamma", help="gamma coefficients for size n")
    p.add_argument("n", type=int)
    p.add_argument("model", choices=["de", "dd", "expand"])
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("verify", help="run exhaustive identity checks")
    p.add_argument("--check", choices=list(verify.CHECKS))
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="JSON lines, one report per line")
    p.add_argument("--verbose", "-v", action="store_true", help="print per-n values")
    p.add_argument("--mutate", choices=list(verify.MUTATIONS), help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbit", help="orbit of a history under the level-step toggles")
    p.add_argument("--path", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("table", help="TSV of chosen statistics over a family")
    p.add_argument("n", type=int)
    p.add_argument("--stats", default="inv,exc")
    p.add_argument("--family", choices=list(_PERM_SETS), default="Sn")
    p.add_argument("--k", type=int)
    p.add_argument("--aggregate", action="store_true", help="count rows per value tuple")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InternalInconsistency, NotInImage) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (LagpermError, argparse.ArgumentTypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
