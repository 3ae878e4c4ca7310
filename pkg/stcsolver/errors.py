"""
Exception hierarchy shared by every module of the stcsolver package.

Classes:
    StcSolverError: Base class for all package errors.
    GraphInputError: Malformed edge list.
    LabelingContractError: A labeling that does not partition the host's edges.
    ClusterWitnessError: A deletion set that leaves an induced P3 behind.
    PreconditionError: A special-case solver called outside its graph class.
    InternalConsistencyError: A structural guarantee was contradicted.
    UnknownPatternError: Pattern name not in the catalog.
    UnknownFamilyError: Corpus family not known to the generators.
    ConfigurationError: Invalid environment override.
    ResourceLimitError: Base class for desk-scale limits.
    OracleBudgetExceeded: Instance too large for a brute-force oracle.
    ParameterTooLargeError: Vertex cover too large for the subset DP.
    InstanceParseError: Malformed instance file.
    ReductionInputError: Invalid input to a reduction construction.
"""


class StcSolverError(Exception):
    """Base exception for the stcsolver package."""


class GraphInputError(StcSolverError, ValueError):
    """Custom exception for malformed edge lists."""

    def __init__(self, reason, pair):
        self.reason = reason
        self.pair = tuple(pair)
        super().__init__(f"{reason}: {self.pair}")


class LabelingContractError(StcSolverError, ValueError):
    """Raised when a labeling is not a partition of the host graph's edges."""


class ClusterWitnessError(StcSolverError):
    """Raised when removing a deletion set does not leave a cluster graph."""

    def __init__(self, witness, edges):
        self.witness = tuple(witness)
        self.edges = tuple(edges)
        super().__init__(
            f"residual graph is not a cluster graph, induced P3 on {self.witness}"
        )


class PreconditionError(StcSolverError):
    """Raised when a graph contains a pattern a solver requires to be absent."""

    def __init__(self, pattern, witness):
        self.pattern = pattern
        self.witness = tuple(witness) if witness is not None else None
        super().__init__(f"graph contains an induced {pattern} on {self.witness}")


class InternalConsistencyError(StcSolverError, AssertionError):
    """Raised when a structural guarantee relied upon does not hold."""


class UnknownPatternError(StcSolverError, KeyError):
    """Raised for a pattern name outside the catalog."""


class UnknownFamilyError(StcSolverError, KeyError):
    """Raised for an unknown corpus family."""


class ConfigurationError(StcSolverError, ValueError):
    """Raised for an environment override that is not a positive integer."""


class ResourceLimitError(StcSolverError):
    """Base exception for desk-scale resource limits."""


class OracleBudgetExceeded(ResourceLimitError):
    """Raised when an instance exceeds a brute-force oracle budget."""

    def __init__(self, limit_name, limit, actual):
        self.limit_name = limit_name
        self.limit = limit
        self.actual = actual
        super().__init__(f"{limit_name}={limit} exceeded (instance has {actual})")


class ParameterTooLargeError(ResourceLimitError):
    """Raised when the cover used by a subset DP is too large for desk scale."""


class InstanceParseError(StcSolverError, ValueError):
    """Raised for malformed instance files; carries the offending line number."""

    def __init__(self, line_number, message):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class ReductionInputError(StcSolverError, ValueError):
    """Raised for invalid input to a reduction construction."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message}: {witness}")
