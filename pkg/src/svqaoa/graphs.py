"""MaxCut instances: graphs, cost diagonals, random regular graphs, small-graph catalog."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GenerationError, InvalidArgumentError, ResourceLimitError

MAX_DIAGONAL_NODES = 24
REJECTION_BUDGET = 10_000


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; ``edges`` are sorted ``(i, j)`` pairs with ``i < j``."""

    n_nodes: int
    edges: tuple

    def __post_init__(self):
        if self.n_nodes < 1:
            raise InvalidArgumentError("graph needs at least one node")
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise InvalidArgumentError(f"self-loop at node {i}")
            if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
                raise InvalidArgumentError(f"edge ({i}, {j}) out of range")
            if i > j:
                raise InvalidArgumentError("edges must be normalized; use Graph.from_edges")
            if (i, j) in seen:
                raise InvalidArgumentError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    @classmethod
    def from_edges(cls, n_nodes: int, edges) -> "Graph":
        norm = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise InvalidArgumentError(f"self-loop at node {i}")
            norm.add((min(i, j), max(i, j)))
        return cls(int(n_nodes), tuple(sorted(norm)))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes, dtype=int)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def to_json(self) -> str:
        return json.dumps({"n": self.n_nodes, "edges": [list(e) for e in self.edges]})

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        obj = json.loads(text)
        return cls.from_edges(obj["n"], obj["edges"])

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cut_value(g: Graph, x: Sequence[int]) -> int:
    """Number of edges whose endpoints differ in ``x`` (``x[i]`` is node ``i``)."""
    x = [int(b) for b in x]
    if len(x) != g.n_nodes:
        raise InvalidArgumentError(f"bitstring length {len(x)} != {g.n_nodes} nodes")
    return sum(1 for i, j in g.edges if x[i] != x[j])


def cut_diagonal(g: Graph) -> np.ndarray:
    """``c(x)`` for every basis index ``x`` (node ``i`` is bit ``i``)."""
    if g.n_nodes > MAX_DIAGONAL_NODES:
        raise ResourceLimitError(f"cost diagonal limited to {MAX_DIAGONAL_NODES} nodes")
    x = np.arange(1 << g.n_nodes, dtype=np.int64)
    c = np.zeros(x.shape, dtype=np.int64)
    for i, j in g.edges:
        c += ((x >> i) ^ (x >> j)) & 1
    return c


@dataclass(frozen=True, eq=False)
class MaxCutInstance:
    graph: Graph
    cost_diagonal: np.ndarray
    c_max: int

    @property
    def n_qubits(self) -> int:
        return self.graph.n_nodes


def build_instance(g: Graph) -> MaxCutInstance:
    diag = cut_diagonal(g).astype(float)
    diag.setflags(write=False)
    return MaxCutInstance(g, diag, int(diag.max()))


def random_regular(n: int, degree: int, seed: int) -> Graph:
    """
    Random ``degree``-regular simple graph from the pairing model.

    Each attempt shuffles the ``n * degree`` stubs and pairs neighbours; any
    self-loop or repeated edge discards the whole attempt.
    """
    if (n * degree) % 2:
        raise InvalidArgumentError("n * degree must be even")
    if not 0 <= degree < n:
        raise InvalidArgumentError("need 0 <= degree < n")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(REJECTION_BUDGET):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        edges = set()
        for a, b in pairs:
            a, b = int(a), int(b)
            if a == b:
                break
            e = (min(a, b), max(a, b))
            if e in edges:
                break
            edges.add(e)
        else:
            return Graph(n, tuple(sorted(edges)))
    raise GenerationError(
        f"no simple {degree}-regular graph on {n} nodes after {REJECTION_BUDGET} attempts"
    )


_CATALOG = {
    3: [
        ("path", [(0, 1), (1, 2)]),
        ("triangle", [(0, 1), (1, 2), (0, 2)]),
    ],
    4: [
        ("path", [(0, 1), (1, 2), (2, 3)]),
        ("star", [(0, 1), (0, 2), (0, 3)]),
        ("paw", [(0, 1), (1, 2), (0, 2), (2, 3)]),
        ("cycle", [(0, 1), (1, 2), (2, 3), (0, 3)]),
        ("diamond", [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]),
        ("complete", [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    ],
}


def small_graph_catalog(n: int, names: bool = False):
    """Connected nonisomorphic graphs on 3 or 4 nodes (2 and 6 of them)."""
    if n not in _CATALOG:
        raise InvalidArgumentError(f"catalog only covers n in (3, 4), got {n}")
    graphs = [(name, Graph.from_edges(n, e)) for name, e in _CATALOG[n]]
    return graphs if names else [g for _, g in graphs]


def is_permutation_symmetry(g: Graph, perm: Sequence[int]) -> bool:
    """True iff node relabeling ``i -> perm[i]`` maps the edge set onto itself."""
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(g.n_nodes)):
        raise InvalidArgumentError(f"{perm} is not a permutation of {g.n_nodes} nodes")
    mapped = {(min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in g.edges}
    return mapped == set(g.edges)
