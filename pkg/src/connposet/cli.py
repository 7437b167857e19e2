"""Batch command-line interface.

Every verification, census and explorer is a subcommand writing
machine-readable output (json, ndjson or csv).  Exit codes: 0 when all
asserted invariants passed, 1 when an asserted invariant failed (the
counterexample is printed), 2 for usage or budget errors.  Rows evaluating
asymptotic bounds are reports and never affect the exit code.  Identical
invocations (including --seed) produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from multiprocessing import Pool

from . import bounds, connectivity, graphs, poset, quotient
from .limits import BudgetExceededError, check_scan_budget

LEMMA_IDS = (
    "squares",
    "disc",
    "skeleton",
    "removable",
    "chorded",
    "irk",
    "tech",
    "lovasz",
    "technical",
    "shadow-ratio",
    "appendix",
    "selftest",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="connposet",
        description="Verification and exploration of the connected-graph edge poset.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_n: int = 4) -> None:
        p.add_argument("--n", type=int, default=default_n, help="vertex count")
        p.add_argument("--k", type=int, default=None, help="edge-count level")
        p.add_argument("--epsilon", type=float, default=None)
        p.add_argument(
            "--family",
            default="connected",
            help="graph family: connected | all | two_edge_connected",
        )
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", dest="fmt", default="json",
                       choices=("json", "ndjson", "csv"))
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--budget-override", action="store_true")
        p.add_argument("--trials", type=int, default=None, help="randomized trial count")

    common(sub.add_parser("census", help="per-level counts of a family"))
    common(sub.add_parser("sperner", help="exact width versus largest level"))
    common(sub.add_parser("matchings", help="adjacent-level matching table"))
    common(sub.add_parser("chains", help="chain partition through the middle level"))

    lemma = sub.add_parser("lemma", help="run one verification sweep")
    lemma.add_argument("id", choices=LEMMA_IDS)
    common(lemma, default_n=5)
    lemma.add_argument("--q-max", type=int, default=5, help="multigraph sweep size")
    lemma.add_argument("--n-max", type=int, default=20,
                       help="largest n for the composition sweep (squares)")

    explore = sub.add_parser("explore", help="open-question explorers")
    explore.add_argument("which", choices=("cprime", "quotient", "hamiltonian"))
    common(explore, default_n=4)

    binom = sub.add_parser("binom", help="extended binomial evaluator")
    binom.add_argument("--x", type=float, default=None)
    binom.add_argument("--k", type=int, required=True)
    binom.add_argument("--target", type=float, default=None,
                       help="invert: find x with binom(x, k) = target")
    binom.add_argument("--out", default=None)
    binom.add_argument("--format", dest="fmt", default="json")
    return parser


# ---------------------------------------------------------------------------
# serialization


def _clean(value):
    if isinstance(value, float) and (value != value or value in (float("inf"), float("-inf"))):
        return None
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(doc, records, fmt: str, out: str | None, columns: list[str] | None = None) -> None:
    """Write one document (json) or its row expansion (ndjson/csv)."""
    if fmt == "json":
        text = json.dumps(_clean(doc), sort_keys=True) + "\n"
    elif fmt == "ndjson":
        text = "".join(json.dumps(_clean(rec), sort_keys=True) + "\n" for rec in records)
    else:
        if columns is None:
            keys: list[str] = []
            for rec in records:
                for key in rec:
                    if key not in keys:
                        keys.append(key)
            columns = keys
        if not columns:
            _write("", out)
            return
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore",
                                restval="", lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow({k: _csv_cell(v) for k, v in _clean(rec).items()})
        text = buf.getvalue()
    _write(text, out)


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(_clean(value), sort_keys=True)
    return value


# ---------------------------------------------------------------------------
# subcommands


def _cmd_census(args) -> int:
    if args.workers > 1:
        m = graphs.slot_count(args.n)
        check_scan_budget(args.n, args.budget_override)
        total = 1 << m
        step = -(-total // args.workers)
        ranges = [(args.n, args.family, lo, min(lo + step, total))
                  for lo in range(0, total, step)]
        with Pool(args.workers) as pool:
            partials = pool.starmap(graphs._census_range, ranges)
        counts = [sum(part[k] for part in partials) for k in range(m + 1)]
        census = graphs.LevelCensus(args.n, args.family, tuple(counts))
    else:
        census = graphs.level_census(args.n, args.family, args.budget_override)
    doc = {
        "n": census.n,
        "family": census.family,
        "counts": list(census.counts),
        "total": census.total,
    }
    rows = [
        {"n": census.n, "family": census.family, "k": k, "count": c}
        for k, c in enumerate(census.counts)
    ]
    _emit(doc, rows, args.fmt, args.out, ["n", "family", "k", "count"])
    return 0


def _sperner_doc(report) -> dict:
    return {
        "n": report.n,
        "universe": report.universe,
        "element_count": report.element_count,
        "level_sizes": {str(k): v for k, v in sorted(report.level_sizes.items())},
        "max_level_k": report.max_level_k,
        "max_level_size": report.max_level_size,
        "width": report.width,
        "sperner": report.sperner,
        "strict": report.strict,
        "antichain": [g.text() for g in report.antichain],
    }


def _cmd_sperner(args) -> int:
    report = poset.sperner_verdict(args.n, args.family, args.budget_override)
    doc = _sperner_doc(report)
    rows = [{k: v for k, v in doc.items() if k not in ("antichain", "level_sizes")}]
    _emit(doc, rows, args.fmt, args.out)
    return 0


def _cmd_matchings(args) -> int:
    check_scan_budget(args.n, args.budget_override)
    m = graphs.slot_count(args.n)
    levels = graphs._level_bits(args.n, args.family)
    ks = [args.k] if args.k is not None else list(range(m + 1))
    table = []
    pair_rows = []
    for k in ks:
        for direction in ("up", "down"):
            k_to = k + 1 if direction == "up" else k - 1
            if not (0 <= k_to <= m) or not levels[k] or not levels[k_to]:
                continue
            res = poset.adjacent_level_matching(
                args.n, k, direction, args.family, args.budget_override
            )
            table.append(
                {
                    "n": res.n,
                    "universe": res.universe,
                    "k_from": res.k_from,
                    "k_to": res.k_to,
                    "size_from": res.size_from,
                    "size_to": res.size_to,
                    "matching_size": res.matching_size,
                    "complete": res.complete,
                    "violator": None
                    if res.violator is None
                    else [g.text() for g in res.violator],
                }
            )
            for g, h in res.pairs:
                pair_rows.append(
                    {"n": res.n, "k_from": res.k_from, "k_to": res.k_to,
                     "from": g.text(), "to": h.text()}
                )
    doc = {"n": args.n, "universe": args.family, "matchings": table}
    if args.fmt == "ndjson":
        _emit(doc, pair_rows, args.fmt, args.out)
    else:
        rows = [{k: v for k, v in row.items() if k != "violator"} for row in table]
        _emit(doc, rows, args.fmt, args.out,
              ["n", "universe", "k_from", "k_to", "size_from", "size_to",
               "matching_size", "complete"])
    return 0


def _cmd_chains(args) -> int:
    try:
        partition = poset.chain_partition(args.n, args.budget_override)
    except poset.ChainPartitionError as exc:
        print(f"FAIL chains: {exc} (pair {exc.k_from}->{exc.k_to})", file=sys.stderr)
        return 1
    doc = {
        "n": partition.n,
        "count": partition.count,
        "chains": [[g.text() for g in chain] for chain in partition.chains],
    }
    records = [{"chain": [g.text() for g in chain]} for chain in partition.chains]
    if args.fmt == "csv":
        rows = [
            {"chain_index": i, "position": p, "graph": g.text()}
            for i, chain in enumerate(partition.chains)
            for p, g in enumerate(chain)
        ]
        _emit(doc, rows, args.fmt, args.out, ["chain_index", "position", "graph"])
    else:
        _emit(doc, records, args.fmt, args.out)
    return 0


def _report_rows(reports) -> list[dict]:
    return [r.as_row() for r in reports]


def _fail(name: str, findings) -> int:
    for finding in findings[:20]:
        print(f"FAIL {name}: {json.dumps(_clean(finding), sort_keys=True)}", file=sys.stderr)
    if len(findings) > 20:
        print(f"FAIL {name}: ... {len(findings) - 20} more", file=sys.stderr)
    return 1


def _cmd_lemma(args) -> int:
    name = args.id
    if name == "squares":
        checked, violations = bounds.squares_sweep(args.n_max)
        doc = {"lemma": "squares", "n_max": args.n_max, "checked": checked,
               "violations": violations}
        _emit(doc, violations or [{"checked": checked}], args.fmt, args.out)
        return _fail("squares", violations) if violations else 0

    if name == "disc":
        rows = bounds.disconnected_report(args.n, args.budget_override)
        doc = {"lemma": "disc", "n": args.n, "rows": _report_rows(rows)}
        _emit(doc, _report_rows(rows), args.fmt, args.out)
        bad = [r.as_row() for r in rows if r.name != "disc_total" and not r.holds]
        return _fail("disc", bad) if bad else 0

    if name == "skeleton":
        checked, findings = connectivity.skeleton_findings(
            args.n, args.budget_override, workers=args.workers
        )
        doc = {"lemma": "skeleton", "n": args.n, "checked": checked,
               "findings": findings}
        _emit(doc, findings or [{"checked": checked}], args.fmt, args.out)
        return _fail("skeleton", findings) if findings else 0

    if name == "removable":
        checked, findings = connectivity.removability_findings(
            args.n, args.budget_override, workers=args.workers
        )
        doc = {"lemma": "removable", "n": args.n, "checked": checked,
               "findings": findings}
        _emit(doc, findings or [{"checked": checked}], args.fmt, args.out)
        return _fail("removable", findings) if findings else 0

    if name == "chorded":
        sweep = connectivity.chorded_cycle_sweep(args.q_max)
        doc = {"lemma": "chorded", "q_max": args.q_max, **sweep}
        rows = [
            {"q": q, **stats} for q, stats in sorted(sweep["per_q"].items())
        ]
        _emit(doc, rows, args.fmt, args.out)
        findings = list(sweep["bound_violations"])
        findings += [
            {"problem": "doubled star not tight", "q": q}
            for q, stats in sweep["per_q"].items()
            if not stats["doubled_star_tight"]
        ]
        if sweep["mismatches"]:
            print(
                f"note: block test and chorded-cycle search diverge on "
                f"{len(sweep['mismatches'])} instances (reported, not asserted)",
                file=sys.stderr,
            )
        return _fail("chorded", findings) if findings else 0

    if name == "irk":
        epsilon = args.epsilon if args.epsilon is not None else 1.0
        census = bounds.i_r_census(args.n, epsilon, args.budget_override)
        doc = {
            "lemma": "irk",
            "n": args.n,
            "epsilon": epsilon,
            "table": {f"{k},{r}": c for (k, r), c in sorted(census.table.items())},
            "rows": _report_rows(census.reports),
        }
        _emit(doc, _report_rows(census.reports), args.fmt, args.out,
              ["name", "n", "k", "r", "epsilon", "count",
               "lhs_log2", "rhs_log2", "holds", "margin_log2", "note"])
        total = census.total()
        expected = sum(len(lv) for lv in graphs._level_bits(args.n, "two_edge_connected"))
        if total != expected:
            return _fail("irk", [{"problem": "census total mismatch",
                                  "total": total, "expected": expected}])
        return 0

    if name == "tech":
        summary = bounds.tech_inequality_sweep(args.n, args.budget_override)
        doc = {"lemma": "tech", **summary}
        _emit(doc, [summary], args.fmt, args.out)
        return 0

    if name == "lovasz":
        trials = args.trials if args.trials is not None else 200
        rng = random.Random(args.seed)
        m = graphs.slot_count(args.n)
        check_scan_budget(args.n, args.budget_override)
        rows = []
        violations = []
        for k in range(1, m + 1):
            level = [graphs.EdgeSet(args.n, b) for b in graphs._level_bits(args.n, "all")[k]]
            full_report = bounds.lovasz_check(level)
            rows.append(full_report.as_row())
            if not full_report.holds:
                violations.append(full_report.as_row())
            worst = None
            for _ in range(trials):
                size = rng.randint(1, len(level))
                family = rng.sample(level, size)
                report = bounds.lovasz_check(family)
                if not report.holds:
                    violations.append(report.as_row())
                if worst is None or report.margin_log2 < worst["margin_log2"]:
                    worst = report.as_row()
            worst["note"] = "smallest margin among sampled families"
            rows.append(worst)
        doc = {"lemma": "lovasz", "n": args.n, "trials": trials,
               "seed": args.seed, "rows": rows}
        _emit(doc, rows, args.fmt, args.out)
        return _fail("lovasz", violations) if violations else 0

    if name == "technical":
        trials = args.trials if args.trials is not None else 100_000
        rng = random.Random(args.seed)
        violations = []
        for _ in range(trials):
            a = rng.uniform(1e-3, 10.0)
            b = rng.uniform(1e-3, 10.0)
            c2 = rng.uniform(1e-3, 2.0)
            c3 = rng.uniform(1e-3, 2.0)
            c1 = c2 * c3 * rng.uniform(0.0, 1.0)
            if not bounds.technical_lemma_check(a, b, c1, c2, c3):
                violations.append({"a": a, "b": b, "c1": c1, "c2": c2, "c3": c3})
        doc = {"lemma": "technical", "trials": trials, "seed": args.seed,
               "violations": violations}
        _emit(doc, violations or [{"trials": trials, "violations": 0}],
              args.fmt, args.out)
        return _fail("technical", violations) if violations else 0

    if name == "shadow-ratio":
        epsilon = args.epsilon if args.epsilon is not None else 1 / 18
        rows = bounds.shadow_ratio_report(
            args.n, args.k, epsilon, budget_override=args.budget_override
        )
        doc = {"lemma": "shadow-ratio", "n": args.n, "epsilon": epsilon,
               "rows": _report_rows(rows)}
        _emit(doc, _report_rows(rows), args.fmt, args.out)
        return 0

    if name == "appendix":
        rows = []
        violations = []
        for item in (1, 2, 3, 4):
            grid = bounds.appendix_grid(item)
            failures = [
                {"item": item, "x": x, "k": k, "delta": d}
                for x, k, d in grid
                if not bounds.appendix_property_check(item, x, k, d)
            ]
            rows.append({"item": item, "points": len(grid),
                         "failures": len(failures)})
            violations.extend(failures)
        doc = {"lemma": "appendix", "rows": rows, "violations": violations}
        _emit(doc, rows, args.fmt, args.out)
        return _fail("appendix", violations) if violations else 0

    if name == "selftest":
        finding = {"problem": "synthetic failing invariant (test hook)",
                   "witness": "selftest"}
        _emit({"lemma": "selftest", "findings": [finding]}, [finding],
              args.fmt, args.out)
        return _fail("selftest", [finding])

    raise ValueError(f"unknown lemma id {name!r}")


def _explorer_doc(report) -> dict:
    return {
        "universe": report.universe,
        "n": report.n,
        "element_count": report.element_count,
        "level_sizes": {str(k): v for k, v in sorted(report.level_sizes.items())},
        "max_level_k": report.max_level_k,
        "max_level_size": report.max_level_size,
        "width": report.width,
        "sperner": report.sperner,
        "margin": report.margin,
    }


def _cmd_explore(args) -> int:
    if args.which == "cprime":
        reports = quotient.cprime_search(args.n, args.budget_override)
        docs = [_explorer_doc(r) for r in reports]
        non_sperner = [d for d in docs if not d["sperner"]]
        doc = {"explore": "cprime", "n_max": args.n, "non_sperner": non_sperner,
               "reports": docs}
        rows = [{k: v for k, v in d.items() if k != "level_sizes"} for d in docs]
        _emit(doc, rows, args.fmt, args.out)
        return 0
    if args.which == "quotient":
        report = quotient.quotient_sperner(args.n, args.budget_override)
        doc = {"explore": "quotient", **_explorer_doc(report), "note": report.note}
        _emit(doc, [{k: v for k, v in doc.items() if k != "level_sizes"}],
              args.fmt, args.out)
        return 0
    if args.which == "hamiltonian":
        report = quotient.property_poset_report(args.n, "hamiltonian",
                                                args.budget_override)
        doc = {
            "explore": "hamiltonian",
            "n": report.n,
            "element_count": report.element_count,
            "level_sizes": {str(k): v for k, v in sorted(report.level_sizes.items())},
            "graded": report.graded,
            "upward_closed": report.upward_closed,
            "minimal_levels": list(report.minimal_levels),
            "width": report.width,
            "max_level_k": report.max_level_k,
            "max_level_size": report.max_level_size,
            "sperner": report.sperner,
        }
        _emit(doc, [{k: v for k, v in doc.items() if k != "level_sizes"}],
              args.fmt, args.out)
        return 0
    raise ValueError(f"unknown explorer {args.which!r}")


def _cmd_binom(args) -> int:
    if (args.x is None) == (args.target is None):
        print("binom: provide exactly one of --x or --target", file=sys.stderr)
        return 2
    if args.target is not None:
        x = bounds.binom_inverse(args.target, args.k)
        doc = {"k": args.k, "target": args.target, "x": x}
    else:
        value = bounds.ext_binom(args.x, args.k)
        numeric = (
            value.exact
            if value.exact is not None
            else float(f"{value.value():.12g}")
        )
        doc = {"x": args.x, "k": args.k, "value": numeric, "log2": value.log2}
    _emit(doc, [doc], args.fmt, args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "census":
            return _cmd_census(args)
        if args.command == "sperner":
            return _cmd_sperner(args)
        if args.command == "matchings":
            return _cmd_matchings(args)
        if args.command == "chains":
            return _cmd_chains(args)
        if args.command == "lemma":
            return _cmd_lemma(args)
        if args.command == "explore":
            return _cmd_explore(args)
        if args.command == "binom":
            return _cmd_binom(args)
        parser.error(f"unknown command {args.command!r}")
    except BudgetExceededError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"FAIL invariant: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
