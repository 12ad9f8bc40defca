"""
Graph representation, hop distances, and the RD / RT_r / RD_alpha matrices.

Vertices are dense 0-based integers. Anything with richer labels (group
elements, divisors, blocks of a joined union) keeps its own index map and
talks to this module through plain integers.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from RDS.src.errors import (
    AlphaOutOfRange,
    AsymmetricMatrix,
    DisconnectedGraph,
    InvalidPartition,
    ParseError,
)

UNREACHABLE = -1


# =============================================================================
# Graph
# =============================================================================


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError(f"negative vertex count: {self.vertex_count}")
        normalized = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(
                    f"edge ({u}, {v}) out of range for {self.vertex_count} vertices"
                )
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        return cls(vertex_count, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        g = nx.convert_node_labels_to_integers(g)
        return cls(g.number_of_nodes(), frozenset(g.edges()))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        g.add_edges_from(self.edges)
        return g

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def degrees(self) -> Tuple[int, ...]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    @property
    def degree(self) -> int:
        """Common degree of a regular graph (0 for the empty vertex set)."""
        degs = set(self.degrees())
        if len(degs) > 1:
            raise ValueError("graph is not regular")
        return degs.pop() if degs else 0

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        return nx.is_connected(self.to_networkx())

    def is_complete(self) -> bool:
        n = self.vertex_count
        return len(self.edges) == n * (n - 1) // 2

    def is_empty(self) -> bool:
        return not self.edges

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={len(self.edges)})"


def complete_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n))


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return Graph.from_networkx(nx.star_graph(leaves))


def complement(g: Graph) -> Graph:
    return Graph.from_networkx(nx.complement(g.to_networkx()))


def relabel(g: Graph, permutation: Sequence[int]) -> Graph:
    """Image of g under vertex v -> permutation[v]."""
    if sorted(permutation) != list(range(g.vertex_count)):
        raise ValueError("relabel expects a permutation of the vertex set")
    return Graph(g.vertex_count, frozenset((permutation[u], permutation[v]) for u, v in g.edges))


# =============================================================================
# Edge-list I/O
# =============================================================================


def parse_edge_list(text: str) -> Graph:
    """
    Parse the edge-list text format.

    First data line holds the vertex count, each following line a `u v` pair.
    Everything after `#` is a comment; blank lines are skipped.
    """
    n: Optional[int] = None
    edges: List[Tuple[int, int]] = []
    seen = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 1:
                raise ParseError("expected the vertex count on its own line", lineno)
            try:
                n = int(tokens[0])
            except ValueError:
                raise ParseError(f"invalid vertex count {tokens[0]!r}", lineno)
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1} in {line!r}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u}-{v}", lineno)
        seen.add(key)
        edges.append(key)

    if n is None:
        raise ParseError("empty edge list")
    return Graph.from_edges(n, edges)


def read_edge_list(path) -> Graph:
    path = Path(path)
    if not path.exists():
        raise ParseError(f"file not found: {path}")
    return parse_edge_list(path.read_text(encoding="utf-8"))


def graph_to_json(g: Graph) -> dict:
    return {"n": g.vertex_count, "edges": [list(e) for e in sorted(g.edges)]}


def graph_from_json(obj) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj:
        raise ParseError("edge-list object needs an 'n' field")
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj.get("edges", [])]
    except (TypeError, ValueError):
        raise ParseError("edge-list object has malformed 'n' or 'edges'")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as e:
        raise ParseError(str(e))


# =============================================================================
# Distances
# =============================================================================


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    n: int
    d: np.ndarray

    @property
    def connected(self) -> bool:
        # the empty graph counts as disconnected, matching Graph.is_connected
        return self.n > 0 and not (self.d == UNREACHABLE).any()

    def first_unreachable(self) -> Optional[Tuple[int, int]]:
        pairs = np.argwhere(self.d == UNREACHABLE)
        if len(pairs) == 0:
            return None
        i, j = pairs[0]
        return int(i), int(j)


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Hop distances by BFS from every vertex; unreachable pairs hold UNREACHABLE."""
    d = np.full((g.vertex_count, g.vertex_count), UNREACHABLE, dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(g.to_networkx()):
        for target, hops in lengths.items():
            d[source, target] = hops
    d.setflags(write=False)
    return DistanceMatrix(g.vertex_count, d)


# =============================================================================
# Matrices
# =============================================================================


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Real symmetric matrix; symmetry is exact and checked on construction."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise AsymmetricMatrix(f"expected a square matrix, got shape {arr.shape}")
        if not np.array_equal(arr, arr.T):
            raise AsymmetricMatrix("matrix is not exactly symmetric")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries))


def _checked_distances(g: Graph) -> DistanceMatrix:
    dist = all_pairs_distances(g)
    if not dist.connected:
        raise DisconnectedGraph(dist.first_unreachable())
    return dist


def _reciprocal(dist: DistanceMatrix) -> np.ndarray:
    rd = np.zeros((dist.n, dist.n))
    off = ~np.eye(dist.n, dtype=bool)
    rd[off] = 1.0 / dist.d[off]
    return rd


def reciprocal_distance_matrix(g: Graph) -> SymMatrix:
    return SymMatrix(_reciprocal(_checked_distances(g)))


def reciprocal_transmissions(g: Graph) -> np.ndarray:
    """RT_r for every vertex (row sums of RD)."""
    return _reciprocal(_checked_distances(g)).sum(axis=1)


def reciprocal_transmission(g: Graph, v: int) -> float:
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range")
    return float(reciprocal_transmissions(g)[v])


def harary_index(g: Graph) -> float:
    """Sum of 1/d(u, v) over unordered pairs."""
    return float(_reciprocal(_checked_distances(g)).sum() / 2.0)


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(alpha)
    return alpha


def rd_alpha_matrix(g: Graph, alpha: float) -> SymMatrix:
    """alpha * diag(RT_r) + (1 - alpha) * RD."""
    alpha = check_alpha(alpha)
    rd = _reciprocal(_checked_distances(g))
    m = (1.0 - alpha) * rd
    np.fill_diagonal(m, alpha * rd.sum(axis=1))
    return SymMatrix(m)


# =============================================================================
# Partitions and quotients
# =============================================================================


@dataclass(frozen=True)
class VertexPartition:
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(v) for v in b)) for b in self.blocks)
        if any(len(b) == 0 for b in blocks):
            raise InvalidPartition("partition contains an empty block")
        flat = [v for b in blocks for v in b]
        if sorted(flat) != list(range(len(flat))):
            raise InvalidPartition("blocks must be disjoint and cover 0..n-1")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def singletons(cls, n: int) -> "VertexPartition":
        return cls(tuple((v,) for v in range(n)))

    @classmethod
    def single_block(cls, n: int) -> "VertexPartition":
        return cls((tuple(range(n)),))

    @property
    def vertex_count(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True, eq=False)
class QuotientMatrix:
    """Block-average row sums; generally not symmetric."""

    entries: np.ndarray
    equitable: bool
    block_sizes: Tuple[int, ...] = ()

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"quotient must be square, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "equitable": self.equitable,
            "block_sizes": list(self.block_sizes),
            "entries": self.entries.tolist(),
        }


def _block_row_sums(m: SymMatrix, p: VertexPartition) -> np.ndarray:
    if p.vertex_count != m.n:
        raise InvalidPartition(
            f"partition covers {p.vertex_count} vertices, matrix has {m.n}"
        )
    indicator = np.zeros((m.n, len(p)))
    for b, block in enumerate(p.blocks):
        indicator[list(block), b] = 1.0
    return m.entries @ indicator


def is_equitable(m: SymMatrix, p: VertexPartition, tol: float = 1e-9) -> bool:
    """True iff every block-to-block sub-matrix has constant row sums within tol."""
    sums = _block_row_sums(m, p)
    return all(
        float(np.ptp(sums[list(block)], axis=0).max()) <= tol for block in p.blocks
    )


def quotient_matrix(m: SymMatrix, p: VertexPartition, tol: float = 1e-9) -> QuotientMatrix:
    sums = _block_row_sums(m, p)
    entries = np.array([sums[list(block)].mean(axis=0) for block in p.blocks])
    return QuotientMatrix(entries, is_equitable(m, p, tol), p.sizes)


def is_reciprocal_transmission_regular(g: Graph, tol: float = 1e-9) -> bool:
    return is_equitable(reciprocal_distance_matrix(g), VertexPartition.single_block(g.vertex_count), tol)
