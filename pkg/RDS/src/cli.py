"""
Command-line surface: spectrum, verify, sweep, quotient, decompose.

Usage:
    python -m RDS.src spectrum --graph RDS/data/graphs/k4.edges --alpha 0.5
    python -m RDS.src verify --group dihedral:6 --format human
    python -m RDS.src verify --plan RDS/data/plans/multipartite_3x4.json --alpha 0
    python -m RDS.src sweep --family cyclic --range 3..40 --alpha 0,0.5,1 --workers 4
    python -m RDS.src quotient --group quaternion:3 --alpha 0.25
    python -m RDS.src decompose --group cyclic:12

Reports go to stdout (or --out); status lines go to stderr.
"""

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from RDS.src.closed_form import VerificationReport, group_closed_form, verify_plan, verify_spectrum
from RDS.src.config import OUTPUT_FORMATS, RunConfig, Tolerances, build_run_config, load_config
from RDS.src.errors import (
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    SpectraError,
    UsageError,
    exit_code_for,
)
from RDS.src.graph_core import QuotientMatrix, rd_alpha_matrix, read_edge_list
from RDS.src.groups import (
    Family,
    GroupSpec,
    cayley_power_graph,
    expand_family_range,
    structural_power_graph,
    verify_decomposition,
)
from RDS.src.joined_union import (
    block_eigenvalues,
    compose,
    joined_union_quotient,
    plan_to_json,
    read_plan,
)
from RDS.src.spectral import Spectrum, general_eigenvalues, sym_eigenvalues
from RDS.src.tracking import SweepTracker

CSV_FIELDS = ("alpha", "value", "multiplicity", "source")


def status(message: str):
    print(message, file=sys.stderr)


# =============================================================================
# Inputs
# =============================================================================


def _input_of(args) -> Optional[str]:
    return getattr(args, "graph", None) or getattr(args, "group", None) or getattr(args, "plan", None)


def _load_subject(args):
    """Graph, GroupSpec or JoinedUnionPlan named by the input flag."""
    if getattr(args, "graph", None):
        return read_edge_list(args.graph)
    if getattr(args, "group", None):
        return GroupSpec.parse(args.group)
    if getattr(args, "plan", None):
        return read_plan(args.plan)
    raise UsageError("one of --graph, --group or --plan is required")


# =============================================================================
# Output
# =============================================================================


def _spectrum_rows(alpha: float, spectrum: Spectrum, source: str) -> List[dict]:
    return [
        {"alpha": alpha, "value": v, "multiplicity": m, "source": source}
        for v, m in spectrum.entries
    ]


def _csv_text(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({**row, "value": repr(float(row["value"]))})
    return buf.getvalue()


def emit(config: RunConfig, text: str):
    if config.output_path:
        path = Path(config.output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        status(f"  → Saved {path}")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _format_spectrum(spectrum: Spectrum, indent: str = "  ") -> str:
    return "\n".join(f"{indent}{v: .10g}  ×{m}" for v, m in spectrum.entries)


def _format_claim(claim, oracle: Spectrum, tol: float) -> str:
    data = claim.to_json(oracle, tol)
    tag = "[OK]" if data["agrees"] else "[WARNING]"
    if data["kind"] == "eigenvalue":
        if data["printed"] is None:
            return f"  {tag} {data['label']}: published expression {data.get('note', 'unparseable')}, derived {data['derived']:.10g} ×{data['derived_multiplicity']}"
        support = "oracle supports published" if data["printed_supported"] else "oracle rejects published"
        return (
            f"  {tag} {data['label']}: published {data['printed']:.10g} ×{data['printed_multiplicity']}, "
            f"derived {data['derived']:.10g} ×{data['derived_multiplicity']} ({support})"
        )
    if data["entry_deviation"] is None:
        return f"  {tag} {data['label']}: published matrix {data.get('note', 'unparseable')}"
    return (
        f"  {tag} {data['label']}: entry deviation {data['entry_deviation']:.3g}, "
        f"spectral deviation {data['spectral_deviation']:.3g}"
    )


def _format_report(report: VerificationReport, compare_printed: bool) -> str:
    lines = [
        f"[{'OK' if report.passed else 'ERROR'}] alpha = {report.alpha:g}: "
        f"{'closed form matches oracle' if report.match.equal else 'closed form differs from oracle'} "
        f"(max deviation {report.match.max_deviation:.3g}, path: {report.path})"
    ]
    if not report.match.equal:
        lines.append(f"  closed form only: {list(report.match.unmatched_left)}")
        lines.append(f"  oracle only:      {list(report.match.unmatched_right)}")
    if not report.quotient_in_oracle:
        lines.append("  [ERROR] quotient eigenvalues are not all eigenvalues of the full matrix")
    for name, m in report.extra:
        lines.append(f"  [{'OK' if m.equal else 'ERROR'}] {name}: max deviation {m.max_deviation:.3g}")
    claims = report.claims if compare_printed else report.deviations
    if claims:
        lines.append("  Published formula deviations:" if not compare_printed else "  Published formulas:")
        lines += ["  " + _format_claim(c, report.oracle, report.tol) for c in claims]
    return "\n".join(lines)


# =============================================================================
# Commands
# =============================================================================


def cmd_spectrum(config: RunConfig, subject) -> int:
    """RD_alpha spectrum of a graph, a composed plan or a group's power graph."""
    tols = config.tolerances
    if isinstance(subject, GroupSpec):
        graph, _ = cayley_power_graph(subject)
    elif hasattr(subject, "components"):
        graph = compose(subject)
    else:
        graph = subject

    results = []
    for alpha in config.alphas:
        m = rd_alpha_matrix(graph, alpha)
        results.append((alpha, sym_eigenvalues(m, tols.jacobi, tols.max_sweeps, tols.coalesce)))

    if config.output_format == "json":
        out = [{"alpha": a, "spectrum": s.to_json()} for a, s in results]
        emit(config, json.dumps({"input": config.input, "spectra": out}, indent=2))
    elif config.output_format == "csv":
        emit(config, _csv_text(r for a, s in results for r in _spectrum_rows(a, s, "oracle")))
    else:
        blocks = [f"RD_alpha spectrum of {config.input} ({graph.vertex_count} vertices)"]
        for a, s in results:
            blocks.append(f"alpha = {a:g}  (trace {s.trace:.10g})\n{_format_spectrum(s)}")
        emit(config, "\n".join(blocks))
    return EXIT_OK


def _verify_one(config: RunConfig, subject, alpha: float) -> VerificationReport:
    tols = config.tolerances
    kwargs = dict(
        tol=tols.match, jacobi_tol=tols.jacobi, max_sweeps=tols.max_sweeps, coalesce_tol=tols.coalesce
    )
    if isinstance(subject, GroupSpec):
        return verify_spectrum(subject, alpha, **kwargs)
    return verify_plan(subject, alpha, subject=config.input or "plan", **kwargs)


def _closed_form_rows(config: RunConfig, subject, alpha: float) -> List[dict]:
    coalesce = config.tolerances.coalesce
    if isinstance(subject, GroupSpec):
        cf = group_closed_form(subject, alpha)
        rows = [
            {"alpha": alpha, "value": f.value, "multiplicity": f.multiplicity, "source": f"explicit:{f.provenance}"}
            for f in cf.explicit
            if f.multiplicity > 0
        ]
        return rows + _spectrum_rows(alpha, cf.quotient_spectrum(coalesce), "quotient")
    blocks = Spectrum.from_values(block_eigenvalues(subject, alpha), coalesce)
    quotient = general_eigenvalues(joined_union_quotient(subject, alpha), coalesce_tol=coalesce)
    return _spectrum_rows(alpha, blocks, "explicit:joined union blocks") + _spectrum_rows(alpha, quotient, "quotient")


def cmd_verify(config: RunConfig, subject) -> int:
    """Closed form against the oracle for every alpha; exit 0 iff all match."""
    if not isinstance(subject, GroupSpec) and not hasattr(subject, "components"):
        raise UsageError("verify needs --group or --plan")
    reports = [_verify_one(config, subject, a) for a in config.alphas]
    passed = all(r.passed for r in reports)

    if config.output_format == "json":
        emit(config, json.dumps({"passed": passed, "reports": [r.to_json() for r in reports]}, indent=2))
    elif config.output_format == "csv":
        rows = []
        for r in reports:
            rows += _closed_form_rows(config, subject, r.alpha)
            rows += _spectrum_rows(r.alpha, r.oracle, "oracle")
        emit(config, _csv_text(rows))
    else:
        text = ["=" * 80, f"verify {config.input}", "=" * 80]
        text += [_format_report(r, config.compare_printed) for r in reports]
        text += ["=" * 80, "All checks passed" if passed else "Verification FAILED", "=" * 80]
        emit(config, "\n".join(text))
    return EXIT_OK if passed else EXIT_MISMATCH


def _sweep_task(spec: GroupSpec, alpha: float, tols: Tolerances) -> Dict[str, object]:
    """One (spec, alpha) check, reduced to a picklable summary."""
    try:
        report = verify_spectrum(spec, alpha, tols.match, tols.jacobi, tols.max_sweeps, tols.coalesce)
    except SpectraError as e:
        return {"spec": str(spec), "alpha": alpha, "passed": False, "error": f"{type(e).__name__}: {e}"}
    return {
        "spec": str(spec),
        "alpha": alpha,
        "path": report.path,
        "passed": report.passed,
        "max_dev": report.match.max_deviation,
        "printed_deviations": [c.label for c in report.deviations],
    }


def _split_family(args) -> Sequence[Optional[str]]:
    family, range_text, params_text = args.family, args.range, args.params
    if ":" in family:
        family, rest = family.split(":", 1)
        if family in (Family.ELEMAB.value, Family.PQ.value):
            params_text = params_text or rest
        else:
            range_text = range_text or rest
    return family, range_text, params_text


def cmd_sweep(config: RunConfig, args) -> int:
    """Verify a whole family grid across the alpha list, in parallel."""
    family, range_text, params_text = _split_family(args)
    specs, skipped = expand_family_range(family, range_text, params_text)
    for label, reason in skipped:
        status(f"[WARNING] skipping {label}: {reason}")
    if not specs:
        raise UsageError(f"no valid {family} groups in the requested range")

    tasks = [(spec, a) for spec in specs for a in config.alphas]
    tols = config.tolerances
    started = time.time()
    results: List[Dict[str, object]] = []

    with SweepTracker(config.experiment, f"sweep-{family}", config.track) as tracker:
        tracker.log_params(
            {
                "family": family,
                "range": range_text or params_text,
                "alphas": ",".join(f"{a:g}" for a in config.alphas),
                "tol": tols.match,
                "coalesce_tol": tols.coalesce,
                "workers": config.workers,
            }
        )
        progress = tqdm(total=len(tasks), desc=f"sweep {family}", file=sys.stderr, unit="check")
        if config.workers == 1:
            for spec, a in tasks:
                results.append(_sweep_task(spec, a, tols))
                progress.update(1)
                _report_failure(results[-1])
        else:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                futures = [pool.submit(_sweep_task, spec, a, tols) for spec, a in tasks]
                for fut in as_completed(futures):
                    results.append(fut.result())
                    progress.update(1)
                    _report_failure(results[-1])
        progress.close()

        results.sort(key=lambda r: (r["spec"], r["alpha"]))
        failed = [r for r in results if not r["passed"]]
        summary = {
            "family": family,
            "specs": len(specs),
            "alphas": list(config.alphas),
            "checks": len(results),
            "passed": len(results) - len(failed),
            "failed": len(failed),
            "skipped": [{"spec": s, "reason": why} for s, why in skipped],
            "max_deviation": max((float(r.get("max_dev", 0.0)) for r in results), default=0.0),
            "printed_deviations": sorted({f"{r['spec']}: {d}" for r in results for d in r.get("printed_deviations", [])}),
            "runtime_seconds": round(time.time() - started, 3),
            "failures": failed,
        }
        tracker.log_metrics(
            {
                "passed": summary["passed"],
                "failed": summary["failed"],
                "max_deviation": summary["max_deviation"],
                "runtime_seconds": summary["runtime_seconds"],
            }
        )
        if args.metrics:
            path = Path(args.metrics)
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w") as f:
                json.dump(summary, f, indent=2)
            status(f"  → Saved {path}")
            tracker.log_artifact(str(path))

    if config.output_format == "json":
        emit(config, json.dumps({**summary, "results": results}, indent=2))
    elif config.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["spec", "alpha", "path", "passed", "max_dev"])
        for r in results:
            writer.writerow([r["spec"], r["alpha"], r.get("path", ""), r["passed"], r.get("max_dev", "")])
        emit(config, buf.getvalue())
    else:
        lines = ["=" * 80, f"sweep {family}: {summary['passed']}/{summary['checks']} checks passed", "=" * 80]
        lines += [f"[ERROR] {r['spec']} alpha={r['alpha']:g}: {r.get('error', 'mismatch')}" for r in failed]
        if summary["printed_deviations"]:
            lines.append(f"Published formula deviations ({len(summary['printed_deviations'])}):")
            lines += [f"  {d}" for d in summary["printed_deviations"]]
        lines.append(f"Runtime: {summary['runtime_seconds']}s")
        emit(config, "\n".join(lines))
    return EXIT_OK if not failed else EXIT_MISMATCH


def _report_failure(result: Dict[str, object]):
    if not result["passed"]:
        tqdm.write(f"[ERROR] {result['spec']} alpha={result['alpha']:g}: {result.get('error', 'mismatch')}", file=sys.stderr)


def cmd_quotient(config: RunConfig, subject) -> int:
    """Block quotient (and the lumped closed-form quotient for groups) per alpha."""
    tols = config.tolerances
    out = []
    for alpha in config.alphas:
        if isinstance(subject, GroupSpec):
            plan = structural_power_graph(subject, allow_degenerate=True)
            lumped = group_closed_form(subject, alpha).quotient
        elif hasattr(subject, "components"):
            plan, lumped = subject, None
        else:
            raise UsageError("quotient needs --group or --plan")
        block = joined_union_quotient(plan, alpha, tols.equitable)
        entry = {"alpha": alpha, "block_quotient": _quotient_json(block, tols)}
        if lumped is not None:
            entry["closed_form_quotient"] = _quotient_json(lumped, tols)
        out.append(entry)

    if config.output_format == "csv":
        rows = []
        for entry in out:
            for key in ("block_quotient", "closed_form_quotient"):
                if key in entry:
                    for v, m in entry[key]["eigenvalues"]:
                        rows.append({"alpha": entry["alpha"], "value": v, "multiplicity": m, "source": key})
        emit(config, _csv_text(rows))
    elif config.output_format == "json":
        emit(config, json.dumps({"input": config.input, "quotients": out}, indent=2))
    else:
        lines = []
        for entry in out:
            for key in ("block_quotient", "closed_form_quotient"):
                if key not in entry:
                    continue
                q = np.array(entry[key]["entries"])
                lines.append(f"alpha = {entry['alpha']:g}, {key.replace('_', ' ')} ({q.shape[0]}x{q.shape[0]}):")
                lines.append(np.array2string(q, precision=6, suppress_small=True))
        emit(config, "\n".join(lines))
    return EXIT_OK


def _quotient_json(q: QuotientMatrix, tols: Tolerances) -> dict:
    spectrum = general_eigenvalues(q, tols.imaginary, tols.coalesce)
    return {**q.to_json(), "eigenvalues": [[v, m] for v, m in spectrum.entries]}


def cmd_decompose(config: RunConfig, subject) -> int:
    """Structural plan of a group's power graph and its check against the Cayley construction."""
    if not isinstance(subject, GroupSpec):
        raise UsageError("decompose needs --group")
    plan = structural_power_graph(subject, allow_degenerate=True)
    report = verify_decomposition(subject)
    payload = {"spec": str(subject), "plan": plan_to_json(plan), "isomorphism": report.to_json()}
    if config.output_format == "human":
        lines = [f"P({subject}): {plan.block_count} blocks, {plan.vertex_count} vertices"]
        lines += [f"  {plan.label(i)}: {n} vertices" for i, n in enumerate(plan.orders)]
        lines.append(f"[{'OK' if report.isomorphic else 'ERROR'}] structural plan vs power graph: {report.detail or 'isomorphic'}")
        emit(config, "\n".join(lines))
    else:
        emit(config, json.dumps(payload, indent=2))
    return EXIT_OK if report.isomorphic else EXIT_MISMATCH


# =============================================================================
# Entry point
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m RDS.src",
        description="RD_alpha spectra of joined unions and power graphs of finite groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs: Sequence[str]):
        source = p.add_mutually_exclusive_group()
        if "graph" in inputs:
            source.add_argument("--graph", help="Edge-list file (first line n, then 'u v' pairs)")
        if "group" in inputs:
            source.add_argument("--group", help="Group spec, e.g. cyclic:12, elemab:3,2, pq:3,7")
        if "plan" in inputs:
            source.add_argument("--plan", help="JoinedUnionPlan JSON file")
        p.add_argument("--alpha", help="Comma-separated alpha values in [0, 1] (default from config)")
        p.add_argument("--tol", type=float, help="Eigenvalue match tolerance (default 1e-8)")
        p.add_argument("--format", choices=OUTPUT_FORMATS, help="Output format (default from config)")
        p.add_argument("--out", help="Write the report to this file instead of stdout")
        p.add_argument("--config", help="YAML config (default: RDS/configs/defaults.yaml)")

    p = sub.add_parser("spectrum", help="RD_alpha spectrum by the Jacobi oracle")
    common(p, ("graph", "group", "plan"))

    p = sub.add_parser("verify", help="Closed form vs oracle, with published-formula deviations")
    common(p, ("group", "plan"))
    p.add_argument("--compare-printed", action="store_true", help="List every published formula, not only deviations")

    p = sub.add_parser("sweep", help="Verify a family over a parameter range")
    common(p, ())
    p.add_argument("--family", required=True, help="cyclic|dihedral|quaternion|elemab|pq, optionally family:range")
    p.add_argument("--range", help="n range for one-parameter families, e.g. 3..40")
    p.add_argument("--params", help="Pairs for elemab/pq, e.g. \"2,1..4;3,1..3\"")
    p.add_argument("--workers", type=int, help="Worker processes (default from config)")
    p.add_argument("--metrics", help="Write the sweep summary JSON here")
    p.add_argument("--track", action="store_true", help="Log the sweep to MLflow")

    p = sub.add_parser("quotient", help="Dump quotient matrices and their eigenvalues")
    common(p, ("group", "plan"))

    p = sub.add_parser("decompose", help="Dump the structural plan of a group's power graph")
    common(p, ("group",))
    return parser


COMMANDS = {
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "quotient": cmd_quotient,
    "decompose": cmd_decompose,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        config = build_run_config(
            command=args.command,
            input_value=_input_of(args),
            config=load_config(args.config),
            alpha_text=args.alpha,
            tol=args.tol,
            output_format=args.format,
            output_path=args.out,
            compare_printed=getattr(args, "compare_printed", False),
            workers=getattr(args, "workers", None),
            track=getattr(args, "track", False),
        )
        if args.command == "sweep":
            return cmd_sweep(config, args)
        return COMMANDS[args.command](config, _load_subject(args))
    except SpectraError as e:
        status(f"[ERROR] {type(e).__name__}: {e}")
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
