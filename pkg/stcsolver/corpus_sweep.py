"""
Corpus-wide agreement sweeps between the solvers, the kernels and the oracles.

Each corpus graph is evaluated as an independent ``dask.delayed`` task and the
rows are collected into a pandas DataFrame, one row per graph.

Classes:
    SweepConfig: What to generate and which checks to run.
    CorpusSweep: Runs the checks and saves the report.

Functions:
    main: Console entry point ``stc-sweep``.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

import dask
import pandas as pd

from stcsolver.cluster_deletion import solve_cd_k
from stcsolver.ell_solvers import solve_cd_ell, solve_stc_ell
from stcsolver.errors import (
    ConfigurationError,
    ResourceLimitError,
    UnknownFamilyError,
    UnknownPatternError,
)
from stcsolver.gallai import solve_stc_k
from stcsolver.generators import FAMILIES, corpus
from stcsolver.kernels import kernelize_k, partition_bounds, rule2_apply
from stcsolver.oracle import OracleBudget, brute_cd_optimum, brute_stc_optimum
from stcsolver.results import maximize_target, minimize_budget
from stcsolver.special_cases import solve_polynomial

CHECKS = ("solvers", "rule1", "rule2", "special")


@dataclass
class SweepConfig:
    """
    Parameters of one sweep.

    Attributes:
        family (str): Corpus family passed to ``generators.corpus``.
        params (dict): Family parameters such as ``n``, ``p`` and ``count``.
        seed (int): Base seed.
        checks (tuple): Subset of ``CHECKS``.
        scheduler (str): Dask scheduler name.
    """

    family: str = "gnp"
    params: dict = field(default_factory=lambda: {"n": 6, "p": 0.5, "count": 20})
    seed: int = 0
    checks: tuple = CHECKS
    scheduler: str = "threads"


class CorpusSweep:
    """
    Cross-checks every graph of a corpus.

    Attributes:
        config (SweepConfig): Sweep parameters.
        budget (OracleBudget): Oracle limits, read from the environment by default.
    """

    def __init__(self, config, budget=None):
        unknown = set(config.checks) - set(CHECKS)
        if unknown:
            raise ValueError(f"unknown checks {sorted(unknown)}; expected a subset of {CHECKS}")
        self.config = config
        self.budget = budget or OracleBudget.from_env()
        self.logger = logging.getLogger(__name__)

    def _rule1_holds(self, g, weak_opt):
        for k in range(g.edge_count + 1):
            reduced = kernelize_k(g, k)
            expected = weak_opt <= k
            if reduced.verdict == "no":
                if expected:
                    return False
                continue
            reduced_opt, _ = brute_stc_optimum(reduced.graph, self.budget)
            if (reduced.graph.edge_count - reduced_opt <= reduced.budget) != expected:
                return False
            if expected and reduced.graph.vertex_count > 4 * reduced.budget:
                return False
        return True

    def _rule2_holds(self, g, strong_opt):
        for ell in range(g.edge_count + 1):
            reduced = rule2_apply(g, ell)
            expected = strong_opt >= ell
            if reduced.verdict == "yes":
                if not expected:
                    return False
                continue
            reduced_opt, _ = brute_stc_optimum(reduced.graph, self.budget)
            if (reduced_opt >= ell) != expected:
                return False
            if not all(holds for _, _, holds in partition_bounds(reduced, ell).values()):
                return False
        return True

    def _evaluate(self, index, g):
        m = g.edge_count
        stc_opt, _ = brute_stc_optimum(g, self.budget)
        cd_opt, _ = brute_cd_optimum(g, self.budget)
        row = {"index": index, "n": g.vertex_count, "m": m, "stc_oracle": stc_opt, "cd_oracle": cd_opt}
        flags = []
        if "solvers" in self.config.checks:
            row["stc_k"] = m - minimize_budget(solve_stc_k, g).objective
            row["stc_ell"] = maximize_target(solve_stc_ell, g).objective
            row["cd_k"] = m - minimize_budget(solve_cd_k, g).objective
            row["cd_ell"] = maximize_target(solve_cd_ell, g).objective
            flags.append(row["stc_k"] == row["stc_ell"] == stc_opt)
            flags.append(row["cd_k"] == row["cd_ell"] == cd_opt)
        if "rule1" in self.config.checks:
            row["rule1_ok"] = self._rule1_holds(g, m - stc_opt)
            flags.append(row["rule1_ok"])
        if "rule2" in self.config.checks:
            row["rule2_ok"] = self._rule2_holds(g, stc_opt)
            flags.append(row["rule2_ok"])
        if "special" in self.config.checks:
            result = solve_polynomial(g)
            row["dispatch"] = "exponential" if result is None else result.solver
            if result is not None:
                flags.append(result.strong_count == stc_opt == cd_opt)
        row["agree"] = all(flags)
        if not row["agree"]:
            self.logger.warning("Disagreement on graph %d: %s", index, g.edges)
        return row

    def run(self):
        """
        Evaluates the corpus.

        Returns:
            pandas.DataFrame: One row per graph with an ``agree`` column.
        """
        graphs = corpus(self.config.seed, self.config.family, **self.config.params)
        self.logger.info("Sweeping %d %s graphs with checks %s.", len(graphs),
                         self.config.family, ", ".join(self.config.checks))
        tasks = [dask.delayed(self._evaluate)(index, g) for index, g in enumerate(graphs)]
        rows = dask.compute(*tasks, scheduler=self.config.scheduler)
        return pd.DataFrame(list(rows))

    def save(self, df, path):
        """Writes the report as CSV."""
        df.to_csv(path, index=False)
        self.logger.info("Saved sweep report to %s", path)


def main(argv=None):
    """
    Runs a sweep from the command line; exit code 1 when any graph disagrees.
    """
    parser = argparse.ArgumentParser(description="Cross-check solvers, kernels and oracles on a corpus.")
    parser.add_argument("--family", choices=FAMILIES, default="gnp", help="Corpus family")
    parser.add_argument("--n", type=int, default=6, help="Number of vertices")
    parser.add_argument("--p", type=float, default=0.5, help="Edge probability")
    parser.add_argument("--count", type=int, default=20, help="Number of graphs")
    parser.add_argument("--pattern", default="diamond", help="Forbidden pattern for hfree")
    parser.add_argument("--seed", type=int, default=0, help="Base seed")
    parser.add_argument("--checks", nargs="+", choices=CHECKS, default=list(CHECKS))
    parser.add_argument("--scheduler", choices=["threads", "processes", "synchronous"],
                        default="threads")
    parser.add_argument("--output", help="CSV report path")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s',
                        stream=sys.stderr)

    params = {"n": args.n}
    if args.family != "all-labeled":
        params.update(p=args.p, count=args.count)
    if args.family == "hfree":
        params["pattern"] = args.pattern
    config = SweepConfig(args.family, params, args.seed, tuple(args.checks), args.scheduler)
    try:
        sweep = CorpusSweep(config)
        df = sweep.run()
    except (UnknownFamilyError, UnknownPatternError, ConfigurationError) as err:
        logging.error("Invalid sweep configuration: %s", err)
        return 2
    except ResourceLimitError as err:
        logging.error("Resource limit: %s", err)
        return 3
    if args.output:
        sweep.save(df, args.output)
    disagreements = int((~df["agree"]).sum()) if len(df) else 0
    print(json.dumps({"graphs": len(df), "disagreements": disagreements, "report": args.output}))
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
