"""Finite connected graphs, their edge 1-forms, and the differential.

Every edge is stored once under the canonical orientation low index ->
high index, and all 1-form values refer to that orientation (evaluating
against the reversed edge negates).  The spanning tree is the
breadth-first tree rooted at vertex 0 with neighbors visited in index
order, so chord indices, and therefore flux coordinates, are reproducible.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DisconnectedGraph, InvalidEdge


@dataclass
class Graph:
    num_vertices: int
    edges: list  # list of (low, high) vertex pairs
    spanning_tree: list  # edge indices of the BFS tree
    chords: list  # the remaining edge indices
    beta: int
    _lo: np.ndarray = field(repr=False, default=None)
    _hi: np.ndarray = field(repr=False, default=None)
    _edge_ids: dict = field(repr=False, default_factory=dict)
    _adjacency: list = field(repr=False, default_factory=list)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_id(self, x: int, y: int) -> int:
        return self._edge_ids[(min(x, y), max(x, y))]

    def neighbors(self, x: int) -> list:
        return self._adjacency[x]

    def same_structure(self, other: "Graph") -> bool:
        return (
            self.num_vertices == other.num_vertices and self.edges == other.edges
        )


@dataclass
class OneForm:
    """Real-valued function on oriented edges, antisymmetric under reversal.

    ``values[e]`` is the value on edge ``e`` in its canonical orientation.
    """

    graph: Graph
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.graph.num_edges,):
            raise DimensionMismatch(
                f"one-form needs {self.graph.num_edges} edge values, "
                f"got shape {self.values.shape}"
            )

    def value_on(self, x: int, y: int) -> float:
        """Value on the oriented edge from x to y."""
        val = self.values[self.graph.edge_id(x, y)]
        return val if x < y else -val


def build_graph(num_vertices: int, edge_list) -> Graph:
    """Validate, orient canonically, and pick the deterministic BFS tree."""
    if num_vertices < 1:
        raise InvalidEdge(f"need at least one vertex, got {num_vertices}")
    edges = []
    seen = set()
    for pair in edge_list:
        u, v = pair
        u, v = int(u), int(v)
        if u == v:
            raise InvalidEdge(f"self-loop at vertex {u}")
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise InvalidEdge(f"edge ({u}, {v}) out of range")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InvalidEdge(f"duplicate edge {key}")
        seen.add(key)
        edges.append(key)

    adjacency = [[] for _ in range(num_vertices)]
    for lo, hi in edges:
        adjacency[lo].append(hi)
        adjacency[hi].append(lo)
    for nbrs in adjacency:
        nbrs.sort()

    edge_ids = {e: i for i, e in enumerate(edges)}

    # BFS from vertex 0, neighbors in index order; discovery edges form the tree
    visited = [False] * num_vertices
    visited[0] = True
    queue = [0]
    tree = []
    while queue:
        x = queue.pop(0)
        for y in adjacency[x]:
            if not visited[y]:
                visited[y] = True
                tree.append(edge_ids[(min(x, y), max(x, y))])
                queue.append(y)
    if not all(visited):
        missing = [i for i, ok in enumerate(visited) if not ok]
        raise DisconnectedGraph(f"vertices unreachable from 0: {missing}")

    tree_set = set(tree)
    chords = [i for i in range(len(edges)) if i not in tree_set]
    beta = 1 + len(edges) - num_vertices
    assert len(chords) == beta

    lo = np.array([e[0] for e in edges], dtype=int)
    hi = np.array([e[1] for e in edges], dtype=int)
    return Graph(
        num_vertices=num_vertices,
        edges=edges,
        spanning_tree=tree,
        chords=chords,
        beta=beta,
        _lo=lo,
        _hi=hi,
        _edge_ids=edge_ids,
        _adjacency=adjacency,
    )


def incidence(g: Graph) -> np.ndarray:
    """Matrix of the differential: (num_edges, num_vertices), row e has
    -1 at the low endpoint and +1 at the high endpoint of edge e."""
    d = np.zeros((g.num_edges, g.num_vertices))
    d[np.arange(g.num_edges), g._lo] = -1.0
    d[np.arange(g.num_edges), g._hi] = 1.0
    return d


def differential(g: Graph, f) -> OneForm:
    """df evaluated on canonical edges: f(high) - f(low)."""
    f = np.asarray(f, dtype=float)
    if f.shape != (g.num_vertices,):
        raise DimensionMismatch(
            f"expected {g.num_vertices} vertex values, got shape {f.shape}"
        )
    return OneForm(g, f[g._hi] - f[g._lo])


def gradient_subspace_basis(g: Graph) -> list:
    """num_vertices - 1 independent one-forms spanning the gradients.

    Images of the standard basis vectors e_1 .. e_{n-1}; e_0 is omitted
    because constants have zero differential.
    """
    basis = []
    for i in range(1, g.num_vertices):
        e_i = np.zeros(g.num_vertices)
        e_i[i] = 1.0
        basis.append(differential(g, e_i))
    return basis
