"""Command-line interface: analyze one instance file, run verification
campaigns over random instances, and sample circle band functions.

Machine output (JSON, or CSV for the band samples) goes to stdout; the
human summary goes to stderr.  Exit codes: 0 pass, 1 falsified identity,
2 parse error, 3 hypothesis violation (analyze), 4 other runtime failure.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .errors import (
    DegenerateEdge,
    IllConditioned,
    NodalMorseError,
    NotSingleVanishing,
    SimplicityLost,
)
from .graphs import build_graph
from .hill import (
    HillOperator,
    band_edges,
    curvature_identity_check,
    floquet_eigenvalue,
    parse_potential,
)
from .hodge import compare_hessians
from .instances import random_instance
from .nodal import nodal_report
from .operators import SchrodingerOperator, build_operator
from .special import vanishing_analysis
from .spectral import check_hypotheses, eig_symmetric

AGREEMENT_LIMIT = 1e-4

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_HYPOTHESES = 3
EXIT_RUNTIME = 4


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def dump_instance(op: SchrodingerOperator) -> str:
    """Canonical instance-file text: fixed key order, 17-digit floats."""
    g = op.graph
    lines = ["{", f'  "vertices": {g.num_vertices},', '  "edges": [']
    for i, (u, v) in enumerate(g.edges):
        comma = "," if i + 1 < g.num_edges else ""
        lines.append(
            f'    {{"u": {u}, "v": {v}, "h": {_fmt(op.matrix[u, v])}}}{comma}'
        )
    diag = ", ".join(_fmt(op.matrix[i, i]) for i in range(g.num_vertices))
    lines.append("  ],")
    lines.append(f'  "diagonal": [{diag}]')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> SchrodingerOperator:
    """Parse and validate instance JSON; error messages carry the field."""
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("top level must be an object")
    for key in ("vertices", "edges", "diagonal"):
        if key not in doc:
            raise ValueError(f"missing field {key!r}")
    n = doc["vertices"]
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"field 'vertices' must be a positive integer, got {n!r}")
    edges = []
    weights = []
    for i, entry in enumerate(doc["edges"]):
        for key in ("u", "v", "h"):
            if key not in entry:
                raise ValueError(f"edge {i}: missing field {key!r}")
        edges.append((int(entry["u"]), int(entry["v"])))
        weights.append(float(entry["h"]))
    diagonal = [float(x) for x in doc["diagonal"]]
    if len(diagonal) != n:
        raise ValueError(
            f"field 'diagonal' has {len(diagonal)} entries, expected {n}"
        )
    g = build_graph(n, edges)
    m = np.zeros((n, n))
    for (u, v), w in zip(edges, weights):
        m[u, v] = w
        m[v, u] = w
    m[np.diag_indices_from(m)] = diagonal
    return build_operator(g, m)


def load_instance(path: str) -> SchrodingerOperator:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def instance_payload(op: SchrodingerOperator) -> dict:
    g = op.graph
    return {
        "vertices": g.num_vertices,
        "edges": [
            {"u": u, "v": v, "h": float(op.matrix[u, v])} for u, v in g.edges
        ],
        "diagonal": [float(op.matrix[i, i]) for i in range(g.num_vertices)],
    }


def analyze_instance(op: SchrodingerOperator, n: int) -> tuple:
    """Full pipeline for one (instance, level); returns (report, exit code)."""
    eigs = eig_symmetric(op.matrix)
    hyp = check_hypotheses(op, n, eigs=eigs)
    report = {
        "n": n,
        "lambda_n": eigs[n - 1].value,
        "beta": op.graph.beta,
        "hypotheses": {
            "simple": hyp.simple,
            "nonvanishing": hyp.nonvanishing,
            "gap": hyp.gap,
            "vanishing_vertex": hyp.vanishing_vertex,
        },
    }
    if not hyp.ok:
        if hyp.simple and not hyp.nonvanishing:
            try:
                vrep = vanishing_analysis(op, n, eigs=eigs)
                report["vanishing_analysis"] = {
                    "x0": vrep.x0,
                    "n_plus": vrep.n_plus,
                    "n_minus": vrep.n_minus,
                    "nullity_bound": vrep.nullity_bound,
                    "fd_nullity": vrep.fd_nullity,
                    "fd_index": vrep.fd_index,
                }
            except (NotSingleVanishing, NodalMorseError) as exc:
                report["vanishing_analysis"] = {"error": str(exc)}
        return report, EXIT_HYPOTHESES

    nodal = nodal_report(op, n, eigs=eigs)
    comp = compare_hessians(op, n, eigs=eigs)
    report.update(
        {
            "nu": nodal.nu,
            "mu": nodal.mu,
            "defect": nodal.defect,
            "bounds_ok": nodal.bounds_ok,
            "index_Q_grad": comp.index_grad,
            "index_Q_kernel": comp.index_kernel,
            "fd_index": comp.fd_index,
            "fd_nullity": comp.fd_nullity,
            "fd_resolvable": comp.fd_resolvable,
            "agreement": comp.max_discrepancy,
        }
    )
    identities_ok = (
        nodal.bounds_ok
        and comp.index_grad == n - 1
        and comp.index_kernel == nodal.defect
        and (
            not comp.fd_resolvable
            or (
                comp.indices_agree
                and comp.fd_nullity == 0
                and comp.max_discrepancy <= AGREEMENT_LIMIT
            )
        )
    )
    report["passed"] = bool(identities_ok)
    return report, EXIT_PASS if identities_ok else EXIT_MISMATCH


def run_trial(args: tuple) -> dict:
    trial, seed, max_vertices, max_extra_edges = args
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(trial,))
    )
    op = random_instance(rng, max_vertices, max_extra_edges)
    eigs = eig_symmetric(op.matrix)
    records = []
    verified = 0
    failed = False
    for n in range(1, op.graph.num_vertices + 1):
        record = {
            "seed": trial,
            "n": n,
            "lambda_n": eigs[n - 1].value,
            "beta": op.graph.beta,
        }
        hyp = check_hypotheses(op, n, eigs=eigs)
        if not hyp.ok:
            record["status"] = "skipped"
            record["reason"] = "hypotheses"
            records.append(record)
            continue
        nodal = nodal_report(op, n, eigs=eigs)
        record.update(
            {
                "nu": nodal.nu,
                "mu": nodal.mu,
                "defect": nodal.defect,
                "bounds_ok": nodal.bounds_ok,
            }
        )
        try:
            comp = compare_hessians(op, n, eigs=eigs)
        except (SimplicityLost, IllConditioned) as exc:
            record["status"] = "skipped"
            record["reason"] = f"{type(exc).__name__}: {exc}"
            records.append(record)
            continue
        record.update(
            {
                "index_Q_grad": comp.index_grad,
                "index_Q_kernel": comp.index_kernel,
                "fd_index": comp.fd_index,
                "fd_nullity": comp.fd_nullity,
                "agreement": comp.max_discrepancy,
            }
        )
        ok = (
            nodal.bounds_ok
            and comp.index_grad == n - 1
            and comp.index_kernel == nodal.defect
        )
        if not comp.fd_resolvable:
            # analytic spectrum inside the FD counting band: the finite
            # difference cannot decide the index here
            record["status"] = "skipped"
            record["reason"] = "marginal-hessian"
            if not ok:
                record["status"] = "failed"
                failed = True
            records.append(record)
            continue
        ok = (
            ok
            and comp.indices_agree
            and comp.fd_nullity == 0
            and comp.max_discrepancy <= AGREEMENT_LIMIT
        )
        record["status"] = "ok" if ok else "failed"
        if ok:
            verified += 1
        else:
            failed = True
        records.append(record)
    return {
        "records": records,
        "verified": verified,
        "failed": failed,
        "instance": instance_payload(op),
    }


def run_campaign(
    trials: int,
    max_vertices: int,
    max_extra_edges: int,
    seed: int,
    workers: int | None = None,
) -> dict:
    """Random-instance campaign; the report is ordered and seed-stable."""
    if workers is None:
        workers = int(os.environ.get("NODAL_MORSE_THREADS", "1"))
    jobs = [(t, seed, max_vertices, max_extra_edges) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_trial, jobs))
    else:
        outcomes = [run_trial(job) for job in jobs]

    records = []
    failures = []
    passed = skipped = failed = 0
    for outcome in outcomes:
        records.extend(outcome["records"])
        if outcome["failed"]:
            failed += 1
            failures.append(
                {
                    "instance": outcome["instance"],
                    "records": [
                        r for r in outcome["records"] if r["status"] == "failed"
                    ],
                }
            )
        elif outcome["verified"] > 0:
            passed += 1
        else:
            skipped += 1
    return {
        "params": {
            "trials": trials,
            "max_vertices": max_vertices,
            "max_extra_edges": max_extra_edges,
            "seed": seed,
        },
        "records": records,
        "failures": failures,
        "summary": {
            "trials": trials,
            "passed": passed,
            "skipped_hypotheses": skipped,
            "failures": failed,
        },
    }


def hill_report(
    potential: str,
    band: int,
    samples: int,
    lambda_max: float | None = None,
    steps: int = None,
) -> dict:
    from .hill import DEFAULT_STEPS

    q = parse_potential(potential)
    h = HillOperator(q, n_steps=steps or DEFAULT_STEPS, description=potential)
    if lambda_max is None:
        lambda_max = (band * np.pi) ** 2 + h.max_sample + 5.0
    edges = band_edges(h, lambda_max=lambda_max)
    alphas = np.linspace(-np.pi, np.pi, samples)
    lams = floquet_eigenvalue(h, band, alphas, edges=edges)
    report = {
        "potential": potential,
        "band": band,
        "edges": [
            {
                "kind": e.kind,
                "n": e.n,
                "lambda": e.value,
                "delta_prime": e.delta_prime,
                "simple": e.simple,
            }
            for e in edges
        ],
        "samples": [
            {"alpha": float(a), "lambda": float(l)} for a, l in zip(alphas, lams)
        ],
    }
    try:
        curv = curvature_identity_check(h, band, edges=edges)
        report["curvature"] = {
            "fd": curv.fd_value,
            "analytic": curv.analytic_value,
            "rel_discrepancy": curv.rel_discrepancy,
            "morse_index": curv.morse_index,
            "index_matches_parity": curv.index_matches_parity,
        }
    except DegenerateEdge as exc:
        report["curvature"] = {"error": str(exc)}
    return report


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nodal-morse",
        description="Nodal statistics and magnetic flux Hessians on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="verify one instance file")
    p_analyze.add_argument("--file", required=True)
    p_analyze.add_argument("--n", type=int, required=True)

    p_verify = sub.add_parser("verify", help="random-instance campaign")
    p_verify.add_argument("--trials", type=int, required=True)
    p_verify.add_argument("--max-vertices", type=int, required=True)
    p_verify.add_argument("--max-extra-edges", type=int, required=True)
    p_verify.add_argument("--seed", type=int, required=True)
    p_verify.add_argument("--json", action="store_true", help="full report to stdout")

    p_hill = sub.add_parser("hill", help="circle band structure")
    p_hill.add_argument("--potential", required=True)
    p_hill.add_argument("--band", type=int, required=True)
    p_hill.add_argument("--samples", type=int, default=33)
    p_hill.add_argument("--lambda-max", type=float, default=None)
    p_hill.add_argument("--steps", type=int, default=None)
    p_hill.add_argument("--csv", action="store_true", help="alpha,lambda rows")

    args = parser.parse_args(argv)

    if args.command == "analyze":
        try:
            op = load_instance(args.file)
        except (OSError, json.JSONDecodeError, ValueError, NodalMorseError) as exc:
            if isinstance(exc, json.JSONDecodeError):
                print(
                    f"parse error: {exc.msg} at line {exc.lineno} column {exc.colno}",
                    file=sys.stderr,
                )
            else:
                print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        if not 1 <= args.n <= op.graph.num_vertices:
            print(f"level {args.n} out of range", file=sys.stderr)
            return EXIT_PARSE
        report, code = analyze_instance(op, args.n)
        _emit_json(report)
        outcome = {
            EXIT_PASS: "pass",
            EXIT_MISMATCH: "IDENTITY MISMATCH",
            EXIT_HYPOTHESES: "hypotheses violated",
        }[code]
        print(f"analyze: n={args.n} -> {outcome}", file=sys.stderr)
        return code

    if args.command == "verify":
        report = run_campaign(
            args.trials, args.max_vertices, args.max_extra_edges, args.seed
        )
        if args.json:
            _emit_json(report)
        s = report["summary"]
        print(
            f"verify: {s['trials']} trials, {s['passed']} passed, "
            f"{s['skipped_hypotheses']} skipped, {s['failures']} failures",
            file=sys.stderr,
        )
        return EXIT_PASS if s["failures"] == 0 else EXIT_MISMATCH

    if args.command == "hill":
        try:
            report = hill_report(
                args.potential,
                args.band,
                args.samples,
                lambda_max=args.lambda_max,
                steps=args.steps,
            )
        except ValueError as exc:
            print(f"potential parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        except NodalMorseError as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_RUNTIME
        if args.csv:
            sys.stdout.write("alpha,lambda\n")
            for row in report["samples"]:
                sys.stdout.write(f"{_fmt(row['alpha'])},{_fmt(row['lambda'])}\n")
        else:
            _emit_json(report)
        print(
            f"hill: potential={args.potential!r} band={args.band} "
            f"edges={len(report['edges'])}",
            file=sys.stderr,
        )
        return EXIT_PASS

    return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
