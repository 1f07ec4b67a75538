"""Structural causal models over categorical variables.

An ScmDefinition couples a DAG with one conditional probability table per
node (shape = parent cardinalities x own cardinality). Sampling is ancestral
in topological order, with exogenous noise realized as one uniform draw per
node per row pushed through the row's inverse CDF. Recording that noise is
what makes counterfactuals possible: re-propagating the same noise under an
intervention answers "what would this unit have done".

Interventions are plain {variable: state} dicts; do(X=x) clamps the column
and severs X's own mechanism while descendants respond through theirs.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class VariableSpec:
    name: str
    cardinality: int
    positive_value: int

    def __post_init__(self):
        if self.cardinality < 2:
            raise ValueError(f"{self.name}: cardinality must be >= 2")
        if not 0 <= self.positive_value < self.cardinality:
            raise ValueError(f"{self.name}: positive_value out of range")


class DirectedGraph:
    """Ordered variable list plus an ordered, acyclic directed edge list."""

    def __init__(self, nodes: list[VariableSpec], edges: list[tuple[str, str]]):
        names = [n.name for n in nodes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable name")
        known = set(names)
        seen = set()
        for u, v in edges:
            if u not in known or v not in known:
                raise ValueError(f"edge ({u}, {v}) references unknown variable")
            if u == v:
                raise ValueError(f"self-loop on {u}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        self.nodes = list(nodes)
        self.edges = [(u, v) for u, v in edges]
        self._spec = {n.name: n for n in nodes}
        self._order = self._topological_order()  # raises on cycle

    def _topological_order(self) -> list[str]:
        indeg = {n.name: 0 for n in self.nodes}
        for _, v in self.edges:
            indeg[v] += 1
        # stable: among ready nodes, declaration order
        order, ready = [], [n.name for n in self.nodes if indeg[n.name] == 0]
        while ready:
            u = ready.pop(0)
            order.append(u)
            for a, b in self.edges:
                if a == u:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        ready.append(b)
        if len(order) != len(self.nodes):
            raise ValueError("cycle detected in edge list")
        return order

    @property
    def names(self) -> list[str]:
        return [n.name for n in self.nodes]

    def spec(self, name: str) -> VariableSpec:
        return self._spec[name]

    def cardinality(self, name: str) -> int:
        return self._spec[name].cardinality

    def topological_order(self) -> list[str]:
        return list(self._order)

    def parents(self, name: str) -> list[str]:
        return [u for u, v in self.edges if v == name]

    def children(self, name: str) -> list[str]:
        return [v for u, v in self.edges if u == name]

    def descendants(self, name: str) -> set[str]:
        out, stack = set(), [name]
        while stack:
            for c in self.children(stack.pop()):
                if c not in out:
                    out.add(c)
                    stack.append(c)
        return out

    def polarity_map(self) -> dict[str, int]:
        return {n.name: n.positive_value for n in self.nodes}


def load_spec(json_text: str) -> tuple[DirectedGraph, dict[str, int]]:
    """Parse the spec JSON into a validated graph and its polarity map.

    Schema: {"variables": [{"name", "cardinality", "positive_value"}, ...],
             "edges": [["u", "v"], ...]} with order-significant arrays.
    """
    doc = json.loads(json_text)
    if "variables" not in doc or "edges" not in doc:
        raise ValueError("spec JSON needs 'variables' and 'edges'")
    nodes = []
    for entry in doc["variables"]:
        for key in ("name", "cardinality", "positive_value"):
            if key not in entry:
                raise ValueError(f"variable entry missing {key!r}: {entry}")
        nodes.append(VariableSpec(entry["name"], int(entry["cardinality"]),
                                  int(entry["positive_value"])))
    edges = [(u, v) for u, v in doc["edges"]]
    graph = DirectedGraph(nodes, edges)
    return graph, graph.polarity_map()


def emit_spec(graph: DirectedGraph) -> str:
    """Inverse of load_spec on the canonical schema."""
    doc = {
        "variables": [
            {"name": n.name, "cardinality": n.cardinality,
             "positive_value": n.positive_value}
            for n in graph.nodes
        ],
        "edges": [[u, v] for u, v in graph.edges],
    }
    return json.dumps(doc, indent=2)


@dataclass
class ObservationTable:
    """Rows of categorical state indices, one column per variable.

    weights, when present, let a table stand in for an exact distribution
    (used by the enumeration bridge in causal validation); absent weights
    mean one unit per row.
    """

    columns: list[str]
    data: np.ndarray  # (rows, vars) int
    weights: np.ndarray | None = None

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.int64)
        if self.data.ndim != 2 or self.data.shape[1] != len(self.columns):
            raise ValueError("data shape does not match columns")
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=np.float64)
            if self.weights.shape != (self.data.shape[0],):
                raise ValueError("weights length does not match rows")

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    def row_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(self.n_rows)
        return self.weights

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.data:
            buf.write(",".join(str(int(x)) for x in row) + "\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ObservationTable":
        lines = [ln for ln in text.strip().splitlines() if ln]
        columns = lines[0].split(",")
        data = np.array([[int(x) for x in ln.split(",")] for ln in lines[1:]],
                        dtype=np.int64).reshape(len(lines) - 1, len(columns))
        return cls(columns, data)

    def subset(self, row_indices: np.ndarray) -> "ObservationTable":
        w = None if self.weights is None else self.weights[row_indices]
        return ObservationTable(self.columns, self.data[row_indices], w)


class ScmDefinition:
    """Graph plus per-node CPTs; immutable after construction."""

    def __init__(self, graph: DirectedGraph, cpts: dict[str, np.ndarray]):
        self.graph = graph
        self.cpts = {}
        for node in graph.names:
            if node not in cpts:
                raise ValueError(f"missing mechanism for {node}")
            cpt = np.asarray(cpts[node], dtype=np.float64)
            expected = tuple(graph.cardinality(p) for p in graph.parents(node))
            expected += (graph.cardinality(node),)
            if cpt.shape != expected:
                raise ValueError(
                    f"{node}: CPT shape {cpt.shape} != expected {expected}")
            sums = cpt.sum(axis=-1)
            if not np.allclose(sums, 1.0, atol=1e-12):
                raise ValueError(f"{node}: CPT rows must sum to 1")
            if (cpt < 0).any():
                raise ValueError(f"{node}: CPT entries must be nonnegative")
            self.cpts[node] = cpt

    def _check_intervention(self, intervention: dict[str, int]) -> None:
        for var, state in intervention.items():
            if var not in self.graph.names:
                raise KeyError(f"cannot clamp unknown variable {var!r}")
            if not 0 <= state < self.graph.cardinality(var):
                raise ValueError(f"do({var}={state}) out of range")

    def _propagate(self, noise: np.ndarray,
                   intervention: dict[str, int]) -> np.ndarray:
        """Push a (rows, vars) uniform-noise matrix through the mechanisms."""
        names = self.graph.names
        col = {name: i for i, name in enumerate(names)}
        data = np.zeros_like(noise, dtype=np.int64)
        for node in self.graph.topological_order():
            j = col[node]
            if node in intervention:
                data[:, j] = intervention[node]
                continue
            cpt = self.cpts[node]
            parents = self.graph.parents(node)
            if parents:
                idx = tuple(data[:, col[p]] for p in parents)
                rows = cpt[idx]                       # (n, card)
            else:
                rows = np.broadcast_to(cpt, (noise.shape[0],) + cpt.shape)
            cdf = np.cumsum(rows, axis=1)
            state = (cdf <= noise[:, j:j + 1]).sum(axis=1)
            data[:, j] = np.minimum(state, cpt.shape[-1] - 1)
        return data

    def sample_noise(self, n_rows: int, seed: int) -> np.ndarray:
        """One uniform per node per row; the exogenous record."""
        rng = np.random.default_rng(seed)
        return rng.random((n_rows, len(self.graph.names)))


def sample_observational(scm: ScmDefinition, n_rows: int, seed: int,
                         return_noise: bool = False):
    """Ancestral sample of the observational distribution."""
    noise = scm.sample_noise(n_rows, seed)
    table = ObservationTable(scm.graph.names, scm._propagate(noise, {}))
    if return_noise:
        return table, noise
    return table


def sample_interventional(scm: ScmDefinition, intervention: dict[str, int],
                          n_rows: int, seed: int) -> ObservationTable:
    """Sample under do(intervention): clamped columns are constant, their
    mechanisms severed; descendants respond through their own mechanisms."""
    scm._check_intervention(intervention)
    noise = scm.sample_noise(n_rows, seed)
    return ObservationTable(scm.graph.names, scm._propagate(noise, intervention))


def sample_counterfactual(scm: ScmDefinition, factual_noise: np.ndarray,
                          intervention: dict[str, int]
                          ) -> tuple[np.ndarray, np.ndarray]:
    """Factual and counterfactual rows for the same exogenous noise.

    factual_noise is one row of the record returned by sample_observational
    (abduction by noise reuse). Intervening with the factual value returns
    the factual row unchanged.
    """
    scm._check_intervention(intervention)
    noise = np.atleast_2d(np.asarray(factual_noise, dtype=np.float64))
    if noise.shape[1] != len(scm.graph.names):
        raise ValueError("noise record does not match variable count")
    factual = scm._propagate(noise, {})
    counterfactual = scm._propagate(noise, intervention)
    return factual[0], counterfactual[0]


def enumerate_joint(scm: ScmDefinition, intervention: dict[str, int] | None = None
                    ) -> ObservationTable:
    """Exact joint distribution as a weighted table over all configurations.

    Row weights are the configurations' probabilities (they sum to 1), so the
    result plugs into any estimator that honors table weights.
    """
    intervention = intervention or {}
    scm._check_intervention(intervention)
    names = scm.graph.names
    col = {name: i for i, name in enumerate(names)}
    cards = [scm.graph.cardinality(n) for n in names]
    grids = np.meshgrid(*[np.arange(c) for c in cards], indexing="ij")
    configs = np.stack([g.ravel() for g in grids], axis=1)
    probs = np.ones(configs.shape[0])
    for node in names:
        j = col[node]
        if node in intervention:
            probs *= configs[:, j] == intervention[node]
            continue
        idx = tuple(configs[:, col[p]] for p in scm.graph.parents(node))
        probs *= scm.cpts[node][idx + (configs[:, j],)]
    keep = probs > 0
    return ObservationTable(names, configs[keep], probs[keep])
