"""
Instance files and JSON result records.

An instance file is line oriented ASCII::

    c optional comment
    p stc 3 2
    e 1 2
    e 2 3

The header names the problem (``stc`` or ``cd``) and the vertex and edge
counts; edges use 1-indexed vertices. Internally vertices are 0-indexed and
the conversion happens only here.

Classes:
    Instance: Parsed problem name and graph.
    ResultRecord: JSON-serialisable view of a SolveResult.

Functions:
    parse_instance, read_instance, emit_instance, certificate_labeling.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path

from stcsolver.errors import InstanceParseError, LabelingContractError
from stcsolver.graph_core import Graph
from stcsolver.labeling import Labeling

logger = logging.getLogger(__name__)

RESULT_SCHEMA_VERSION = "1.0"
PROBLEMS = ("stc", "cd")


@dataclass(frozen=True)
class Instance:
    problem: str
    graph: Graph


def _int_field(token, line_number, what):
    try:
        value = int(token)
    except ValueError as err:
        raise InstanceParseError(line_number, f"{what} must be an integer, got {token!r}") from err
    if value < 0:
        raise InstanceParseError(line_number, f"{what} must be non-negative, got {value}")
    return value


def parse_instance(text):
    """
    Parses the contents of an instance file.

    Args:
        text (str): File contents.

    Returns:
        Instance: Problem name and graph; edge indices follow file order.

    Raises:
        InstanceParseError: On any malformed line, naming its line number.
    """
    header = None
    pairs = []
    seen = set()
    line_number = 0
    for line_number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if header is not None:
                raise InstanceParseError(line_number, "second problem line")
            if len(tokens) != 4 or tokens[1] not in PROBLEMS:
                raise InstanceParseError(line_number, "expected 'p stc|cd N M'")
            header = (
                tokens[1],
                _int_field(tokens[2], line_number, "vertex count"),
                _int_field(tokens[3], line_number, "edge count"),
            )
        elif tokens[0] == "e":
            if header is None:
                raise InstanceParseError(line_number, "edge before the problem line")
            if len(tokens) != 3:
                raise InstanceParseError(line_number, "expected 'e U V'")
            u = _int_field(tokens[1], line_number, "vertex") - 1
            v = _int_field(tokens[2], line_number, "vertex") - 1
            if not (0 <= u < header[1] and 0 <= v < header[1]):
                raise InstanceParseError(line_number, f"vertex out of range 1..{header[1]}")
            if u == v:
                raise InstanceParseError(line_number, "self-loop")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceParseError(line_number, "duplicate edge")
            seen.add(key)
            pairs.append(key)
        else:
            raise InstanceParseError(line_number, f"unknown line type {tokens[0]!r}")
    if header is None:
        raise InstanceParseError(line_number, "missing problem line")
    problem, n, m = header
    if len(pairs) != m:
        raise InstanceParseError(line_number, f"header declares {m} edges, found {len(pairs)}")
    return Instance(problem, Graph(n, pairs))


def read_instance(path):
    """Reads and parses an instance file."""
    instance = parse_instance(Path(path).read_text())
    logger.debug("Read %s: %d vertices, %d edges.", path,
                 instance.graph.vertex_count, instance.graph.edge_count)
    return instance


def emit_instance(g, problem="stc", comments=()):
    """Serialises ``g`` in edge-index order; every line ends with a newline."""
    if problem not in PROBLEMS:
        raise ValueError(f"problem must be one of {PROBLEMS}")
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p {problem} {g.vertex_count} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _one_indexed(g, indices):
    return [[u + 1, v + 1] for u, v in (g.edges[i] for i in sorted(indices))]


@dataclass
class ResultRecord:
    """
    Machine-readable outcome of one invocation.

    ``certificate`` holds ``strong`` and ``weak`` lists of 1-indexed vertex
    pairs; it is None for a ``"no"`` verdict.
    """

    problem: str
    parameterization: str
    budget: object
    verdict: str
    objective: object
    strong_count: object
    weak_count: object
    certificate: object
    solver: str
    trace: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    schema_version: str = RESULT_SCHEMA_VERSION

    @classmethod
    def from_result(cls, result, g, include_trace=True):
        certificate = None
        labeling = result.labeling(g) if result.feasible else None
        if labeling is not None:
            certificate = {
                "strong": _one_indexed(g, labeling.strong),
                "weak": _one_indexed(g, labeling.weak),
            }
        stats = result.stats.as_dict()
        return cls(
            problem=result.problem,
            parameterization=result.parameterization,
            budget=result.budget,
            verdict=result.verdict,
            objective=result.objective,
            strong_count=result.strong_count,
            weak_count=result.weak_count,
            certificate=certificate,
            solver=result.solver,
            trace=[entry.to_dict(one_indexed=True) for entry in result.trace] if include_trace else [],
            stats={key: value for key, value in stats.items() if key != "wall_time"},
            timing={"wall_time": stats["wall_time"]},
        )

    def to_dict(self):
        record = asdict(self)
        version = record.pop("schema_version")
        return {"schema_version": version, **record}

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)


def certificate_labeling(g, record):
    """
    Rebuilds the Labeling an emitted record claims for ``g``.

    Args:
        g (Graph): The instance graph.
        record (dict): A parsed ResultRecord.

    Returns:
        Labeling | None: None when the record carries no certificate.

    Raises:
        LabelingContractError: If a pair is not an edge of ``g`` or the lists
            do not partition the edges.
    """
    certificate = record.get("certificate")
    if certificate is None:
        return None

    def indices(pairs):
        found = []
        for u, v in pairs:
            try:
                found.append(g.edge_index(u - 1, v - 1))
            except KeyError as err:
                raise LabelingContractError(f"certificate pair ({u}, {v}) is not an edge") from err
        return frozenset(found)

    strong = indices(certificate.get("strong", []))
    weak = indices(certificate.get("weak", []))
    if strong & weak or len(strong) + len(weak) != g.edge_count:
        raise LabelingContractError("certificate does not partition the edges")
    return Labeling(strong, weak)
