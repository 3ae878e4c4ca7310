"""
Command-line front end.

Every subcommand prints one JSON object on standard output; log messages go
to standard error. Exit codes: 0 when the command ran (a ``"no"`` verdict
included), 1 when ``verify`` rejects a certificate, 2 on malformed input and
3 when a resource limit is hit.

Functions:
    cmd_solve, cmd_kernelize, cmd_recognize, cmd_compare, cmd_generate,
    cmd_verify, build_parser, main.
"""

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

import pandas as pd

from stcsolver.cluster_deletion import solve_cd_k
from stcsolver.ell_solvers import solve_cd_ell, solve_stc_ell
from stcsolver.errors import (
    ClusterWitnessError,
    ConfigurationError,
    GraphInputError,
    InstanceParseError,
    LabelingContractError,
    ResourceLimitError,
    UnknownFamilyError,
    UnknownPatternError,
)
from stcsolver.gallai import approximate_stc, solve_stc_k
from stcsolver.generators import FAMILIES, corpus, fig3_graphs
from stcsolver.instance_io import (
    RESULT_SCHEMA_VERSION,
    ResultRecord,
    certificate_labeling,
    emit_instance,
    read_instance,
)
from stcsolver.kernels import (
    ReducedInstance,
    kernelize_k,
    partition_bounds,
    rule1_apply_once,
    rule2_apply,
)
from stcsolver.labeling import DeletionSet, cluster_labeling, is_stc_labeling
from stcsolver.oracle import correspondence_check
from stcsolver.results import CD, STC, minimize_budget
from stcsolver.special_cases import PATTERNS, dispatch, find_induced, solve_polynomial

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_LIMIT = 3

K_SOLVERS = {STC: solve_stc_k, CD: solve_cd_k}
ELL_SOLVERS = {STC: solve_stc_ell, CD: solve_cd_ell}


def _emit(payload):
    print(json.dumps({"schema_version": RESULT_SCHEMA_VERSION, **payload}))


def _load(path, problem=None):
    instance = read_instance(path)
    if problem is not None and instance.problem != problem:
        logger.warning("File %s declares %s; solving %s as requested.", path, instance.problem, problem)
    return instance.graph


def _budgeted(result, args):
    """Turns a result computed without a budget into an answer for the requested one."""
    if args.k is not None:
        feasible = result.weak_count <= args.k
        parameterization, budget, objective = "k", args.k, result.weak_count
    elif args.ell is not None:
        feasible = result.strong_count >= args.ell
        parameterization, budget, objective = "ell", args.ell, result.strong_count
    else:
        feasible = True
        parameterization, budget, objective = "k", result.weak_count, result.weak_count
    return replace(
        result,
        problem=args.problem,
        parameterization=parameterization,
        budget=budget,
        feasible=feasible,
        objective=objective if feasible else None,
        certificate=result.certificate if feasible else None,
    )


def cmd_solve(args):
    """
    Solves one instance for a weak budget, a strong target or the optimum.

    Returns:
        int: Exit code.
    """
    g = _load(args.input, args.problem)
    result = None
    if args.approx:
        result = _budgeted(approximate_stc(g), args)
    elif args.auto:
        polynomial = solve_polynomial(g, args.problem)
        if polynomial is not None:
            logger.info("Dispatched to the %s solver.", polynomial.solver)
            result = _budgeted(polynomial, args)
    if result is None:
        if args.k is not None:
            kwargs = {"use_kernel": not args.no_kernel} if args.problem == STC else {}
            result = K_SOLVERS[args.problem](g, args.k, **kwargs)
        elif args.ell is not None:
            result = ELL_SOLVERS[args.problem](g, args.ell)
        else:
            kwargs = {"use_kernel": not args.no_kernel} if args.problem == STC else {}
            result = minimize_budget(K_SOLVERS[args.problem], g, **kwargs)
    record = ResultRecord.from_result(result, g, include_trace=args.trace)
    logger.info("%s %s=%s: verdict %s, objective %s (%s).", result.problem,
                result.parameterization, result.budget, result.verdict, result.objective,
                result.solver)
    print(record.to_json())
    return EXIT_OK


def cmd_kernelize(args):
    """
    Runs a kernel and prints the reduced instance, its budget and the trace.

    Returns:
        int: Exit code.
    """
    g = _load(args.input)
    bounds = None
    if args.k is not None:
        parameterization, original = "k", args.k
        reduced = rule1_apply_once(g, args.k) if args.once else kernelize_k(g, args.k)
        if reduced is None:
            reduced = ReducedInstance(g, args.k, (), tuple(g.vertices()),
                                      reason="rule 1 does not apply")
    else:
        parameterization, original = "ell", args.ell
        reduced = rule2_apply(g, args.ell)
        if reduced.partition:
            bounds = {part: dict(zip(("size", "bound", "holds"), values))
                      for part, values in partition_bounds(reduced, args.ell).items()}
    text = emit_instance(reduced.graph, STC)
    if args.output:
        Path(args.output).write_text(text)
    logger.info("Kernel: %d -> %d vertices, %s %s -> %s.", g.vertex_count,
                reduced.graph.vertex_count, parameterization, original, reduced.budget)
    _emit({
        "problem": STC,
        "parameterization": parameterization,
        "budget": original,
        "reduced_budget": reduced.budget,
        "verdict": reduced.verdict,
        "reason": reduced.reason,
        "vertices": reduced.graph.vertex_count,
        "edges": reduced.graph.edge_count,
        "vertex_map": [v + 1 for v in reduced.vertex_map],
        "trace": [entry.to_dict(one_indexed=True) for entry in reduced.trace],
        "partition_bounds": bounds,
        "instance": text,
    })
    return EXIT_OK


def cmd_recognize(args):
    """Reports, for every catalog pattern, whether the graph is free of it."""
    g = _load(args.input)
    patterns = {}
    for name in PATTERNS:
        witness = find_induced(g, name)
        patterns[name] = (
            {"status": "free", "witness": None}
            if witness is None
            else {"status": "contains", "witness": [v + 1 for v in witness]}
        )
    _emit({"patterns": patterns, "dispatch": dispatch(g)})
    return EXIT_OK


def cmd_compare(args):
    """Prints the oracle STC and CD optima and whether they coincide."""
    g = _load(args.input)
    _emit(correspondence_check(g).as_dict())
    return EXIT_OK


def _family_graphs(args):
    if args.family == "fig3":
        return list(zip(("fig3_a", "fig3_b"), fig3_graphs())), [None, None]
    params = {"n": args.n, "count": args.count}
    if args.family == "gnp":
        params["p"] = args.p
    elif args.family == "hfree":
        params.update(p=args.p, pattern=args.pattern)
    graphs = corpus(args.seed, args.family, **params)
    names = [f"{args.family}_{index:04d}" for index in range(len(graphs))]
    seeds = [args.seed + index if args.family != "all-labeled" else args.seed for index in range(len(graphs))]
    return list(zip(names, graphs)), seeds


def cmd_generate(args):
    """
    Writes a corpus as instance files plus a ``manifest.csv``.

    Returns:
        int: Exit code.
    """
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    named, seeds = _family_graphs(args)
    rows = []
    for (name, g), seed in zip(named, seeds):
        filename = f"{name}.txt"
        (out / filename).write_text(emit_instance(g, args.problem))
        rows.append({"file": filename, "n": g.vertex_count, "m": g.edge_count, "seed": seed})
    manifest = out / "manifest.csv"
    pd.DataFrame(rows, columns=["file", "n", "m", "seed"]).to_csv(manifest, index=False)
    logger.info("Wrote %d instances to %s.", len(rows), out)
    _emit({"family": args.family, "count": len(rows), "directory": str(out), "manifest": str(manifest)})
    return EXIT_OK


def cmd_verify(args):
    """
    Re-validates a result record against its instance.

    Returns:
        int: 0 for a valid certificate (or a certificate-free ``"no"``), else 1.
    """
    g = _load(args.input)
    record = json.loads(Path(args.result).read_text())
    problem = record.get("problem", STC)
    valid, reason = True, None
    try:
        labeling = certificate_labeling(g, record)
        if labeling is None:
            valid = record.get("verdict") == "no"
            reason = None if valid else "yes verdict without certificate"
        else:
            if STC in problem and not is_stc_labeling(g, labeling):
                valid, reason = False, "strong edges form an induced P3"
            if valid and CD in problem:
                cluster_labeling(g, DeletionSet(labeling.weak))
            if valid and record.get("strong_count") not in (None, labeling.strong_count):
                valid, reason = False, "strong_count does not match the certificate"
    except LabelingContractError as err:
        valid, reason = False, str(err)
    except ClusterWitnessError as err:
        valid, reason = False, str(err)
    logger.info("Certificate %s.", "valid" if valid else f"invalid: {reason}")
    _emit({"valid": valid, "reason": reason})
    return EXIT_OK if valid else EXIT_INVALID


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _budget_options(parser, optimal=True):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=_non_negative, help="Weak-edge (deletion) budget")
    group.add_argument("--ell", type=_non_negative, help="Strong (cluster) edge target")
    if optimal:
        group.add_argument("--optimal", action="store_true", help="Find the optimum")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stcsolver",
        description="Exact solvers for strong triadic closure and cluster deletion.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    verbosity.add_argument("--quiet", action="store_true", help="Log warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Solve an instance")
    solve.add_argument("problem", choices=[STC, CD])
    solve.add_argument("input", help="Instance file")
    _budget_options(solve)
    solve.add_argument("--no-kernel", action="store_true", help="Skip the Rule 1 kernel")
    solve.add_argument("--trace", action="store_true", help="Include the kernel trace")
    solve.add_argument("--auto", action="store_true",
                       help="Use a polynomial-time solver when the graph class allows it")
    solve.add_argument("--approx", action="store_true",
                       help="Run the conflict-graph 2-approximation (stc with --optimal only)")
    solve.set_defaults(handler=cmd_solve)

    kernelize = sub.add_parser("kernelize", help="Kernelize an STC instance")
    kernelize.add_argument("problem", choices=[STC])
    kernelize.add_argument("input", help="Instance file")
    _budget_options(kernelize, optimal=False)
    kernelize.add_argument("--once", action="store_true", help="Apply Rule 1 a single time")
    kernelize.add_argument("--output", help="Write the reduced instance here")
    kernelize.set_defaults(handler=cmd_kernelize)

    recognize = sub.add_parser("recognize", help="Test every small forbidden pattern")
    recognize.add_argument("input", help="Instance file")
    recognize.set_defaults(handler=cmd_recognize)

    compare = sub.add_parser("compare", help="Compare STC and CD optima with the oracles")
    compare.add_argument("input", help="Instance file")
    compare.set_defaults(handler=cmd_compare)

    generate = sub.add_parser("generate", help="Write a corpus of instance files")
    generate.add_argument("family", choices=list(FAMILIES) + ["fig3"])
    generate.add_argument("--n", type=int, default=6, help="Number of vertices")
    generate.add_argument("--p", type=float, default=0.5, help="Edge probability")
    generate.add_argument("--count", type=int, default=10, help="Number of graphs")
    generate.add_argument("--seed", type=int, default=0, help="Base seed")
    generate.add_argument("--pattern", default="diamond", help="Forbidden pattern for hfree")
    generate.add_argument("--problem", choices=[STC, CD], default=STC)
    generate.add_argument("--out", required=True, help="Output directory")
    generate.set_defaults(handler=cmd_generate)

    verify = sub.add_parser("verify", help="Re-validate an emitted certificate")
    verify.add_argument("input", help="Instance file")
    verify.add_argument("result", help="JSON result record")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None):
    """
    Parses the command line, runs one subcommand and returns its exit code.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "approx", False) and args.problem != STC:
        parser.error("--approx is only available for stc")
    if getattr(args, "approx", False) and not args.optimal:
        parser.error("--approx gives no exact answer for --k or --ell; use --optimal")
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s',
                        stream=sys.stderr)
    try:
        return args.handler(args)
    except (InstanceParseError, GraphInputError, UnknownPatternError, UnknownFamilyError,
            ConfigurationError, OSError, json.JSONDecodeError) as err:
        logger.error("Invalid input: %s", err)
        return EXIT_PARSE
    except ResourceLimitError as err:
        logger.error("Resource limit: %s", err)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
