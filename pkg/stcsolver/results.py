"""
Solver results and the drivers that turn decision solvers into optimizers.

Classes:
    SolveStats: Counters collected while solving.
    SolveResult: Verdict, objective and certificate of one solver call.

Functions:
    minimize_budget: Smallest deletion/weak budget a k-solver accepts.
    maximize_target: Largest strong/cluster target an ell-solver accepts.
"""

import logging
import time
from dataclasses import dataclass, field, replace

from stcsolver.instance_io import ResultRecord
from stcsolver.labeling import DeletionSet, Labeling

logger = logging.getLogger(__name__)

STC = "stc"
CD = "cd"


@dataclass
class SolveStats:
    """Search nodes explored, reduction rules fired and wall time in seconds."""

    nodes_explored: int = 0
    rules_fired: int = 0
    wall_time: float = 0.0
    _started: float = field(default_factory=time.perf_counter, repr=False, compare=False)

    def stop(self):
        """Records the wall time since construction and returns ``self``."""
        self.wall_time = time.perf_counter() - self._started
        return self

    def as_dict(self):
        return {
            "nodes_explored": self.nodes_explored,
            "rules_fired": self.rules_fired,
            "wall_time": round(self.wall_time, 6),
        }


@dataclass(frozen=True)
class SolveResult:
    """
    Outcome of a solver call.

    ``objective`` is the number of weak edges (deletions) for ``"k"`` runs and
    the number of strong (cluster) edges for ``"ell"`` runs, always counted on
    the returned certificate. It is None for infeasible results.

    Attributes:
        problem (str): ``"stc"`` or ``"cd"``.
        parameterization (str): ``"k"`` or ``"ell"``.
        budget (int | None): The k or ell the solver was asked about.
        feasible (bool): The yes/no verdict.
        objective (int | None): Size achieved by the certificate.
        certificate (Labeling | DeletionSet | None): Witness for a yes verdict.
        solver (str): Tag naming the algorithm used.
        edge_count (int): Number of edges of the input graph.
        stats (SolveStats): Search counters.
        trace (tuple): Kernel trace entries, if a kernel ran.
    """

    problem: str
    parameterization: str
    budget: object
    feasible: bool
    objective: object
    certificate: object
    solver: str
    edge_count: int
    stats: SolveStats = field(default_factory=SolveStats)
    trace: tuple = ()

    @property
    def verdict(self):
        return "yes" if self.feasible else "no"

    @property
    def weak_count(self):
        if isinstance(self.certificate, Labeling):
            return self.certificate.weak_count
        if isinstance(self.certificate, DeletionSet):
            return self.certificate.size
        return None

    @property
    def strong_count(self):
        weak = self.weak_count
        return None if weak is None else self.edge_count - weak

    def labeling(self, g):
        """Returns the certificate as a Labeling of ``g`` (None when infeasible)."""
        if isinstance(self.certificate, DeletionSet):
            return Labeling.from_weak(g, self.certificate.deleted)
        return self.certificate

    def with_parameterization(self, parameterization, budget):
        """Copy reporting the objective under another parameterization."""
        if parameterization == "k":
            objective = self.weak_count
        else:
            objective = self.strong_count
        return replace(self, parameterization=parameterization, budget=budget, objective=objective)

    def to_record(self, g, include_trace=True):
        """The result as a ResultRecord with 1-indexed certificate pairs."""
        return ResultRecord.from_result(self, g, include_trace)


def minimize_budget(solver, g, **kwargs):
    """
    Finds the smallest budget ``k`` a k-parameterized solver accepts.

    Args:
        solver (callable): ``solver(g, k, **kwargs) -> SolveResult``.
        g (Graph): Input graph.

    Returns:
        SolveResult: The first feasible result; ``k = m`` is always feasible.
    """
    for k in range(g.edge_count + 1):
        result = solver(g, k, **kwargs)
        if result.feasible:
            logger.debug("Smallest accepted budget is k=%d.", k)
            return result
    raise RuntimeError(f"solver rejected the trivial budget k={g.edge_count}")


def maximize_target(solver, g, **kwargs):
    """
    Finds the largest target ``ell`` an ell-parameterized solver accepts.

    Targets are tried upward from 0 and the last feasible result is kept,
    which is exact because a yes at ``ell`` implies a yes at ``ell - 1``.

    Returns:
        SolveResult: The feasible result for the largest accepted target.
    """
    best = None
    for ell in range(g.edge_count + 1):
        result = solver(g, ell, **kwargs)
        if not result.feasible:
            break
        best = result
    logger.debug("Largest accepted target is ell=%s.", best.budget)
    return best
