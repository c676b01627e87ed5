"""Command-line front end.

Commands: compute, table, verify, export-lattice. Exit codes are part of
the contract: 0 success, 2 parse error, 3 brute force unsupported for the
requested type, 4 method disagreement, 1 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .graphs import (
    GroupSpecError,
    TypeLabel,
    canonical_spec,
    component_labels,
    parse_group_spec,
)
from .lattice import (
    build_lattice_with_action,
    count_chain_orbits,
    lattice_to_json,
    orbit_count_of_lines,
)
from .models import UnsupportedModelError, build_model, model_to_json
from .recursion import ENGINE_VERSION, KCalculator, KResult, multinomial
from .series import (
    bar_d_closed_form,
    euler_numbers,
    euler_numbers_from_series,
    k_closed_form,
    verify_identities,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_DISAGREE = 4

REQUIRED_BRUTE_TIER = (
    ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "H3"]
    + [f"I2({m})" for m in range(3, 13)]
    + ["A1xA1", "A2xA1", "B2xA1"]
)
DEEP_BRUTE_TIER = ["A5", "B5", "D5", "F4"]


def closed_form_value(spec: str) -> int:
    """Closed-form K: per-component closed forms glued by the multinomial."""
    g = parse_group_spec(spec)
    labels = component_labels(g)
    value = multinomial([t.coxeter_rank for t in labels])
    for t in labels:
        value *= k_closed_form(t)
    return value


def brute_force_count(spec: str, workers: int = 1):
    model = build_model(parse_group_spec(spec))
    lattice, table = build_lattice_with_action(model)
    return count_chain_orbits(lattice, table, workers=workers)


class DiskCache:
    """JSON value cache keyed by canonical spec, stamped with the engine
    version so stale files are ignored rather than trusted."""

    def __init__(self, path: str):
        self.path = path

    def load_into(self, calc: KCalculator) -> int:
        if not os.path.exists(self.path):
            return 0
        with open(self.path) as fh:
            data = json.load(fh)
        if data.get("engine_version") != ENGINE_VERSION:
            return 0
        loaded = 0
        for spec, entry in data.get("results", {}).items():
            calc.memo[spec] = KResult(
                value=int(entry["value"]),
                method=entry["method"],
                terms=[(d, int(v)) for d, v in entry["terms"]],
            )
            loaded += 1
        return loaded

    def save_from(self, calc: KCalculator):
        data = {
            "engine_version": ENGINE_VERSION,
            "results": {
                spec: kr.to_json_dict(spec)
                for spec, kr in sorted(calc.memo.items())
            },
        }
        for entry in data["results"].values():
            entry.pop("group", None)
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
        os.replace(tmp, self.path)


def _cache_path(args) -> str | None:
    if getattr(args, "cache", None):
        return args.cache
    return os.environ.get("COXETER_CACHE")


def _make_calculator(args) -> tuple:
    calc = KCalculator()
    path = _cache_path(args)
    cache = DiskCache(path) if path else None
    if cache:
        cache.load_into(calc)
    return calc, cache


def cmd_compute(args) -> int:
    try:
        graph = parse_group_spec(args.spec)
    except GroupSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    spec = canonical_spec(graph)
    calc, cache = _make_calculator(args)
    results = {}
    detail = None
    if args.method in ("recursion", "all"):
        detail = calc.k(graph)
        results["recursion"] = detail.value
    if args.method in ("closed", "all"):
        results["closed"] = closed_form_value(args.spec)
    if args.method in ("bruteforce", "all"):
        try:
            results["bruteforce"] = brute_force_count(args.spec, args.workers).orbit_count
        except UnsupportedModelError as exc:
            if args.method == "bruteforce":
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_UNSUPPORTED
    if cache:
        cache.save_from(calc)
    agree = len(set(results.values())) <= 1
    if args.format == "json":
        payload = {
            "group": spec,
            "results": {m: str(v) for m, v in sorted(results.items())},
            "agreement": agree,
        }
        if detail is not None:
            payload["recursion_detail"] = detail.to_json_dict(spec)
        print(json.dumps(payload, indent=1, sort_keys=True))
    elif args.method == "all":
        for m in ("recursion", "bruteforce", "closed"):
            if m in results:
                print(f"{m}: {results[m]}")
        print("agreement: " + ("ok" if agree else "MISMATCH"))
    else:
        print(next(iter(results.values())))
    if not agree:
        return EXIT_DISAGREE
    return EXIT_OK


def _table_rows(max_rank: int):
    t = euler_numbers(max_rank + 2)
    rows = []
    for n in range(0, max_rank + 1):
        rows.append(("A", n, t[n]))
    for n in range(2, max_rank + 1):
        rows.append(("B", n, t[n + 1]))
    for n in range(2, max_rank + 1):
        rows.append(("D", n, k_closed_form(TypeLabel("D", n))))
    for n in range(2, max_rank + 1):
        rows.append(("barD", n, bar_d_closed_form(n)))
    for name in ("E6", "E7", "E8", "F4", "H3", "H4"):
        rows.append((name[0], int(name[1]), k_closed_form(TypeLabel(name[0], int(name[1])))))
    for m in range(3, max_rank + 1):
        rows.append(("I2", m, k_closed_form(TypeLabel("I2", m))))
    return rows


def cmd_table(args) -> int:
    rows = _table_rows(args.max_rank)
    if args.format == "csv":
        print("family,rank_or_m,method,value")
        for fam, n, v in rows:
            print(f"{fam},{n},closed,{v}")
    elif args.format == "json":
        print(json.dumps(
            [{"family": fam, "rank_or_m": n, "method": "closed", "value": str(v)}
             for fam, n, v in rows],
            indent=1,
        ))
    else:
        width = max(len(str(v)) for _, _, v in rows)
        for fam, n, v in rows:
            print(f"{fam:>4} {n:>3}  {v:>{width}}")
    return EXIT_OK


def _verify_checks(args):
    calc, cache = _make_calculator(args)
    fresh = KCalculator()

    def egf_identities():
        bad = [c for c in verify_identities(20) if not c.passed]
        return not bad, "; ".join(
            f"{c.name} differs first at index {c.first_mismatch}" for c in bad
        )

    def seidel_vs_series():
        t = euler_numbers(40).values
        s = euler_numbers_from_series(40)
        return t == s, f"seidel {t[:8]}... vs series {s[:8]}..."

    def closed_vs_recursion():
        labels = [TypeLabel("A", n) for n in range(1, 13)]
        labels += [TypeLabel("B", n) for n in range(2, 13)]
        labels += [TypeLabel("D", n) for n in range(4, 13)]
        labels += [TypeLabel("I2", m) for m in range(3, 31)]
        labels += [TypeLabel(f[0], int(f[1])) for f in ("E6", "E7", "E8", "F4", "H3", "H4")]
        for t in labels:
            rec = fresh.k_value(str(t))
            clo = k_closed_form(t)
            if rec != clo:
                return False, f"{t}: recursion {rec} != closed {clo}"
        return True, ""

    def bar_d_check():
        for n in range(2, 13):
            rec = fresh.k_bar(n)  # cross-checks the closed form internally
            if rec != bar_d_closed_form(n):
                return False, f"bar d_{n} mismatch"
        return True, ""

    def parity_check():
        t = euler_numbers(12)
        for n in range(2, 13):
            d = k_closed_form(TypeLabel("D", n))
            bar = bar_d_closed_form(n)
            want = t[n] if n % 2 == 0 else 0
            if d - bar != want:
                return False, f"d_{n} - bar d_{n} = {d - bar}, expected {want}"
        return True, ""

    def brute_tier(specs):
        def run():
            for spec in specs:
                graph = parse_group_spec(spec)
                model = build_model(graph)
                lattice, table = build_lattice_with_action(model)
                brute = count_chain_orbits(lattice, table, workers=args.workers)
                rec = fresh.k(graph)
                if brute.orbit_count != rec.value:
                    return False, (
                        f"{spec}: bruteforce {brute.orbit_count} != recursion "
                        f"{rec.value}; terms {rec.terms}"
                    )
                if len(component_labels(graph)) == 1 and graph.rank >= 2:
                    lines = orbit_count_of_lines(lattice, table)
                    if lines != len(rec.terms):
                        return False, (
                            f"{spec}: {lines} line orbits vs {len(rec.terms)} "
                            f"recursion terms"
                        )
            return True, ""

        return run

    def cache_consistency():
        if not cache or not os.path.exists(cache.path):
            return True, "no cache file"
        for spec, kr in list(calc.memo.items()):
            if fresh.k_value(spec) != kr.value:
                return False, f"cached K({spec}) = {kr.value} disagrees with recomputation"
        return True, ""

    checks = [
        ("egf-identities", egf_identities),
        ("seidel-vs-series", seidel_vs_series),
        ("closed-vs-recursion", closed_vs_recursion),
        ("bar-d", bar_d_check),
        ("parity", parity_check),
        ("bruteforce-required-tier", brute_tier(REQUIRED_BRUTE_TIER)),
        ("cache-consistency", cache_consistency),
    ]
    if args.deep:
        checks.insert(6, ("bruteforce-deep-tier", brute_tier(DEEP_BRUTE_TIER)))
    return checks


def cmd_verify(args) -> int:
    failures = 0
    for name, fn in _verify_checks(args):
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except AssertionError as exc:
            ok, detail = False, str(exc)
        elapsed = time.perf_counter() - start
        status = "PASS" if ok else "FAIL"
        line = f"{status}  {name:<28} {elapsed:8.2f}s"
        if detail and not ok:
            line += f"  {detail}"
        print(line)
        if not ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_export_lattice(args) -> int:
    try:
        graph = parse_group_spec(args.spec)
    except GroupSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        model = build_model(graph)
        lattice, _ = build_lattice_with_action(model)
    except UnsupportedModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    payload = {"group": canonical_spec(graph), "lattice": lattice_to_json(lattice)}
    if args.include_model:
        payload["model"] = model_to_json(model)
    with open(args.output, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
    print(f"wrote {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxchains",
        description="Chain-orbit counts K(W) for finite Coxeter groups.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute K(W) for a group spec")
    p.add_argument("spec")
    p.add_argument("--method", choices=["recursion", "bruteforce", "closed", "all"],
                   default="all")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--workers", type=int, default=1,
                   help="brute-force chain scan workers; results are "
                        "worker-count independent")
    p.add_argument("--cache", help="path to the recursion value cache "
                                   "(or env COXETER_CACHE)")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("table", help="closed-form value table")
    p.add_argument("--max-rank", type=int, default=12)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("verify", help="run the cross-validation suite")
    p.add_argument("--deep", action="store_true",
                   help="include the rank-5 and F4 brute-force tier")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cache")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export-lattice", help="dump an intersection lattice as JSON")
    p.add_argument("spec")
    p.add_argument("output")
    p.add_argument("--include-model", action="store_true")
    p.set_defaults(fn=cmd_export_lattice)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
