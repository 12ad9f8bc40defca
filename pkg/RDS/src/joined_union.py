"""
Joined unions G[G_1, ..., G_n] of regular graphs.

Every vertex v_i of the parent G is blown up into the regular component G_i,
and blocks whose parent vertices are adjacent are joined completely. The
block partition is equitable for RD_alpha, so the spectrum splits into the
quotient eigenvalues plus n_i - 1 values per block read off the component's
adjacency spectrum.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from RDS.src.errors import (
    DegenerateDecomposition,
    DisconnectedGraph,
    InvalidParameter,
    NotRegular,
    ParseError,
)
from RDS.src.graph_core import (
    Graph,
    QuotientMatrix,
    VertexPartition,
    all_pairs_distances,
    check_alpha,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph_from_json,
    graph_to_json,
    quotient_matrix,
    rd_alpha_matrix,
    star_graph,
)
from RDS.src.printed import PrintedClaim, PrintedEigenvalue, printed_matrix
from RDS.src.spectral import COALESCE_TOL, Spectrum, general_eigenvalues, sym_eigenvalues, union


# =============================================================================
# Plan
# =============================================================================


@dataclass(frozen=True)
class JoinedUnionPlan:
    """Parent graph plus one regular component per parent vertex."""

    parent: Graph
    components: Tuple[Graph, ...]
    labels: Tuple[str, ...] = ()
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.parent.vertex_count == 0:
            raise InvalidParameter("parent graph has no vertices")
        if len(self.components) != self.parent.vertex_count:
            raise InvalidParameter(
                f"parent has {self.parent.vertex_count} vertices but "
                f"{len(self.components)} components were given"
            )
        if self.labels and len(self.labels) != len(self.components):
            raise InvalidParameter("labels must name every block")
        if not self.parent.is_connected():
            raise DisconnectedGraph(all_pairs_distances(self.parent).first_unreachable())
        for i, g in enumerate(self.components):
            if g.vertex_count == 0:
                raise InvalidParameter(f"component {i} has no vertices")
            if not g.is_regular():
                raise NotRegular(i, g.degrees())

    @property
    def block_count(self) -> int:
        return self.parent.vertex_count

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(g.vertex_count for g in self.components)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.components)

    @property
    def vertex_count(self) -> int:
        return sum(self.orders)

    @property
    def block_offsets(self) -> Tuple[int, ...]:
        """Prefix sums; block i owns vertices block_offsets[i]..block_offsets[i+1]-1."""
        return tuple(int(x) for x in np.concatenate(([0], np.cumsum(self.orders))))

    @property
    def block_partition(self) -> VertexPartition:
        offsets = self.block_offsets
        return VertexPartition(
            tuple(tuple(range(offsets[i], offsets[i + 1])) for i in range(self.block_count))
        )

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"block {i}"


def compose(plan: JoinedUnionPlan) -> Graph:
    offsets = plan.block_offsets
    edges = []
    for i, g in enumerate(plan.components):
        base = offsets[i]
        edges.extend((base + u, base + v) for u, v in g.edges)
    for i, j in plan.parent.edges:
        edges.extend(
            (u, w)
            for u in range(offsets[i], offsets[i + 1])
            for w in range(offsets[j], offsets[j + 1])
        )
    return Graph.from_edges(plan.vertex_count, edges)


# =============================================================================
# Block data and quotient
# =============================================================================


@dataclass(frozen=True)
class BlockData:
    index: int
    order: int
    degree: int
    m: float
    rtr: float

    @property
    def inner_transmission(self) -> float:
        """Reciprocal distances from one block vertex to the rest of its block."""
        return self.degree + (self.order - 1 - self.degree) / 2.0


def block_data(plan: JoinedUnionPlan) -> List[BlockData]:
    d = all_pairs_distances(plan.parent).d
    orders = plan.orders
    out = []
    for i, (n_i, r_i) in enumerate(zip(orders, plan.degrees)):
        m = sum(orders[t] / d[i, t] for t in range(plan.block_count) if t != i)
        out.append(BlockData(i, n_i, r_i, float(m), (n_i + r_i - 1) / 2.0 + float(m)))
    return out


def joined_union_quotient(plan: JoinedUnionPlan, alpha: float, tol: float = 1e-9) -> QuotientMatrix:
    """Average-row-sum quotient of RD_alpha(compose(plan)) over the blocks."""
    return quotient_matrix(rd_alpha_matrix(compose(plan), alpha), plan.block_partition, tol)


# =============================================================================
# Spectrum
# =============================================================================


def component_adjacency_spectrum(g: Graph, coalesce_tol: float = COALESCE_TOL) -> Spectrum:
    n = g.vertex_count
    if g.is_complete():
        return Spectrum.from_entries([(n - 1, 1), (-1, n - 1)], coalesce_tol)
    if g.is_empty():
        return Spectrum.from_entries([(0, n)], coalesce_tol)
    return sym_eigenvalues(g.adjacency_matrix(), coalesce_tol=coalesce_tol)


def block_eigenvalues(plan: JoinedUnionPlan, alpha: float, data: Optional[List[BlockData]] = None) -> List[float]:
    """
    The n_i - 1 eigenvalues of each block carried by vectors orthogonal
    to the block's all-ones vector: alpha * rtr_i + (1 - alpha) * (mu - 1) / 2
    for every adjacency eigenvalue mu of G_i except one copy of r_i.
    """
    alpha = check_alpha(alpha)
    data = data if data is not None else block_data(plan)
    values: List[float] = []
    for block, g in zip(data, plan.components):
        mus = list(component_adjacency_spectrum(g).values)
        mus.pop(int(np.argmin([abs(mu - block.degree) for mu in mus])))
        values.extend(alpha * block.rtr + (1.0 - alpha) * (mu - 1.0) / 2.0 for mu in mus)
    return values


def joined_union_spectrum(
    plan: JoinedUnionPlan, alpha: float, coalesce_tol: float = COALESCE_TOL
) -> Spectrum:
    if plan.block_count < 2:
        raise DegenerateDecomposition("joined-union spectrum needs a parent with at least 2 vertices")
    blocks = Spectrum.from_values(block_eigenvalues(plan, alpha), coalesce_tol)
    quotient = general_eigenvalues(joined_union_quotient(plan, alpha), coalesce_tol=coalesce_tol)
    return union([blocks, quotient], coalesce_tol)


# =============================================================================
# Twin blocks
# =============================================================================


def are_twins(plan: JoinedUnionPlan, i: int, j: int) -> bool:
    """Same order and degree, and the same parent distance to every other block."""
    if i == j:
        return False
    if plan.orders[i] != plan.orders[j] or plan.degrees[i] != plan.degrees[j]:
        return False
    d = all_pairs_distances(plan.parent).d
    return all(d[i, k] == d[j, k] for k in range(plan.block_count) if k not in (i, j))


def twin_groups(plan: JoinedUnionPlan) -> List[Tuple[int, ...]]:
    """Blocks grouped into twin classes (the relation is transitive), ordered by first block."""
    groups: List[List[int]] = []
    for i in range(plan.block_count):
        for group in groups:
            if are_twins(plan, group[0], i):
                group.append(i)
                break
        else:
            groups.append([i])
    return [tuple(g) for g in groups]


def twin_eigenvalue(plan: JoinedUnionPlan, alpha: float, i: int, j: int) -> float:
    """q_ii - q_ij, carried by e_i - e_j on the block quotient."""
    if not are_twins(plan, i, j):
        raise InvalidParameter(f"blocks {i} and {j} are not interchangeable")
    q = joined_union_quotient(plan, alpha).entries
    return float(q[i, i] - q[i, j])


def twin_families(plan: JoinedUnionPlan, alpha: float) -> List[Tuple[float, int, Tuple[int, ...]]]:
    """(value, multiplicity, group) for every twin class of size >= 2."""
    q = joined_union_quotient(plan, alpha).entries
    return [
        (float(q[g[0], g[0]] - q[g[0], g[1]]), len(g) - 1, g)
        for g in twin_groups(plan)
        if len(g) > 1
    ]


def lumped_partition(plan: JoinedUnionPlan, groups: Optional[Sequence[Sequence[int]]] = None) -> VertexPartition:
    groups = twin_groups(plan) if groups is None else groups
    blocks = plan.block_partition.blocks
    return VertexPartition(tuple(tuple(v for b in g for v in blocks[b]) for g in groups))


def lumped_quotient(
    plan: JoinedUnionPlan,
    alpha: float,
    groups: Optional[Sequence[Sequence[int]]] = None,
    tol: float = 1e-9,
) -> QuotientMatrix:
    """Quotient over the coarser partition that merges each group of twin blocks."""
    return quotient_matrix(rd_alpha_matrix(compose(plan), alpha), lumped_partition(plan, groups), tol)


# =============================================================================
# Special plans
# =============================================================================


def complete_multipartite_plan(parts: Sequence[int]) -> JoinedUnionPlan:
    """K_{n_1,...,n_q} = K_q[empty_{n_1}, ..., empty_{n_q}]."""
    if len(parts) < 2:
        raise InvalidParameter("complete multipartite graph needs at least 2 parts")
    if any(n < 1 for n in parts):
        raise InvalidParameter(f"part sizes must be positive: {list(parts)}")
    return JoinedUnionPlan(complete_graph(len(parts)), tuple(empty_graph(n) for n in parts))


def complete_multipartite_spectrum(n: int, q: int, alpha: float, coalesce_tol: float = COALESCE_TOL) -> Spectrum:
    """Closed form for q equal parts of size n."""
    alpha = check_alpha(alpha)
    if n < 1 or q < 2:
        raise InvalidParameter(f"need n >= 1 and q >= 2, got n={n}, q={q}")
    return Spectrum.from_entries(
        [
            (n * q - (n + 1) / 2.0, 1),
            (alpha * q * n - (n + 1) / 2.0, q - 1),
            (n * alpha * (q - 0.5) - 0.5, q * (n - 1)),
        ],
        coalesce_tol,
    )


def join_three_plan(g1: Graph, g2: Graph, g3: Graph) -> JoinedUnionPlan:
    """G_1 v (G_2 u G_3) as K_{1,2}[G_1, G_2, G_3], G_1 on the center."""
    return JoinedUnionPlan(star_graph(2), (g1, g2, g3))


def join_three_spectrum(g1: Graph, g2: Graph, g3: Graph, alpha: float) -> Spectrum:
    return joined_union_spectrum(join_three_plan(g1, g2, g3), alpha)


def join_three_completes_quotient(n1: int, n2: int, n3: int, alpha: float) -> np.ndarray:
    big_n = n1 + n2 + n3
    a, b = alpha, 1.0 - alpha
    return np.array(
        [
            [(big_n - n1) * a + n1 - 1, b * n2, b * n3],
            [b * n1, (n1 + n3 / 2.0) * a + n2 - 1, b * n3 / 2.0],
            [b * n1, b * n2 / 2.0, (n1 + n2 / 2.0) * a + n3 - 1],
        ]
    )


def join_three_completes_spectrum(
    n1: int, n2: int, n3: int, alpha: float, coalesce_tol: float = COALESCE_TOL
) -> Spectrum:
    """K_{n1} v (K_{n2} u K_{n3}): three block families plus the 3x3 quotient."""
    alpha = check_alpha(alpha)
    if min(n1, n2, n3) < 1:
        raise InvalidParameter(f"orders must be positive: {(n1, n2, n3)}")
    big_n = n1 + n2 + n3
    explicit = Spectrum.from_entries(
        [
            (big_n * alpha - 1, n1 - 1),
            ((big_n - n3 / 2.0) * alpha - 1, n2 - 1),
            ((big_n - n2 / 2.0) * alpha - 1, n3 - 1),
        ],
        coalesce_tol,
    )
    quotient = QuotientMatrix(join_three_completes_quotient(n1, n2, n3, alpha), equitable=True)
    return union([explicit, general_eigenvalues(quotient, coalesce_tol=coalesce_tol)], coalesce_tol)


def is_complete_multipartite(plan: JoinedUnionPlan) -> bool:
    return plan.block_count >= 2 and plan.parent.is_complete() and all(g.is_empty() for g in plan.components)


def is_three_completes(plan: JoinedUnionPlan) -> bool:
    return (
        plan.parent == star_graph(2)
        and all(g.is_complete() for g in plan.components)
    )


# =============================================================================
# Printed formulas
# =============================================================================


def printed_plan_claims(plan: JoinedUnionPlan, alpha: float) -> List[PrintedClaim]:
    """Published quotient entries and eliminated roots evaluated on this plan."""
    alpha = check_alpha(alpha)
    a, b = alpha, 1.0 - alpha
    data = block_data(plan)
    d = all_pairs_distances(plan.parent).d
    k = plan.block_count
    operational = joined_union_quotient(plan, alpha).entries
    orders = plan.orders

    def off_diagonal(i, j):
        return b * orders[j] / d[i, j]

    def general():
        m = np.array([[off_diagonal(i, j) if i != j else 0.0 for j in range(k)] for i in range(k)])
        for blk in data:
            m[blk.index, blk.index] = (
                a * ((blk.order - blk.degree - 1) / 2.0 + blk.m) + b * blk.inner_transmission
            )
        return m

    claims: List[PrintedClaim] = [printed_matrix("joined union quotient", general, operational)]
    for blk in data:
        claims.append(
            PrintedEigenvalue(
                f"{plan.label(blk.index)} eliminated root",
                a * blk.rtr - b * blk.inner_transmission,
                1,
                a * blk.rtr + b * blk.inner_transmission,
                1,
            )
        )

    if all(g.is_complete() for g in plan.components):
        def completes():
            m = np.array([[off_diagonal(i, j) if i != j else 0.0 for j in range(k)] for i in range(k)])
            for blk in data:
                m[blk.index, blk.index] = blk.m * a + blk.order - 1
            return m

        claims.append(printed_matrix("complete components quotient", completes, operational))

    if is_complete_multipartite(plan):
        total = plan.vertex_count

        def multipartite():
            m = np.array([[b * orders[j] for j in range(k)] for _ in range(k)], dtype=float)
            for i, n_i in enumerate(orders):
                m[i, i] = a * (total - n_i) - (n_i - 1) / 2.0
            return m

        claims.append(printed_matrix("complete multipartite quotient", multipartite, operational))

    if plan.parent == star_graph(2):
        total = plan.vertex_count
        n1, n2, n3 = orders
        r = plan.degrees
        inner = [blk.inner_transmission for blk in data]

        def join_three():
            return np.array(
                [
                    [(total - (n1 - r[0] + 1) / 2.0) * a + b * inner[0], b * n2, b * n3],
                    [b * n1, (total - (n2 + n3 - r[1] + 1) / 2.0) * a + b * inner[1], b * n3 / 2.0],
                    [b * n1, b * n2 / 2.0, (total - (n2 + n3 - r[2] + 1) / 2.0) * a + b * inner[2]],
                ]
            )

        claims.append(printed_matrix("join of three quotient", join_three, operational))
        if is_three_completes(plan):
            claims.append(
                printed_matrix(
                    "join of three complete graphs quotient",
                    lambda: join_three_completes_quotient(n1, n2, n3, alpha),
                    operational,
                )
            )
    return claims


# =============================================================================
# Plan I/O and random plans
# =============================================================================


def plan_to_json(plan: JoinedUnionPlan) -> dict:
    out = {
        "parent": graph_to_json(plan.parent),
        "components": [graph_to_json(g) for g in plan.components],
    }
    if plan.labels:
        out["labels"] = list(plan.labels)
    if plan.degenerate:
        out["degenerate"] = True
    return out


def plan_from_json(obj) -> JoinedUnionPlan:
    if not isinstance(obj, dict) or "parent" not in obj or "components" not in obj:
        raise ParseError("plan object needs 'parent' and 'components'")
    if not isinstance(obj["components"], list):
        raise ParseError("'components' must be a list")
    parent = graph_from_json(obj["parent"])
    components = tuple(graph_from_json(c) for c in obj["components"])
    labels = tuple(str(s) for s in obj.get("labels", ()))
    try:
        return JoinedUnionPlan(parent, components, labels, bool(obj.get("degenerate", False)))
    except InvalidParameter as e:
        raise ParseError(str(e))


def read_plan(path) -> JoinedUnionPlan:
    path = Path(path)
    if not path.exists():
        raise ParseError(f"file not found: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno)
    return plan_from_json(obj)


COMPONENT_KINDS = ("complete", "empty", "cycle", "cycle_complement")


def regular_component(kind: str, order: int) -> Graph:
    if kind == "complete":
        return complete_graph(order)
    if kind == "empty":
        return empty_graph(order)
    if order < 3:
        return complete_graph(order)
    if kind == "cycle":
        return cycle_graph(order)
    if kind == "cycle_complement":
        return complement(cycle_graph(order))
    raise InvalidParameter(f"unknown component kind: {kind}")


def random_connected_graph(rng: np.random.Generator, order: int, p: float = 0.5) -> Graph:
    while True:
        g = nx.gnp_random_graph(order, p, seed=int(rng.integers(2**31)))
        if nx.is_connected(g):
            return Graph.from_networkx(g)


def random_regular_plan(
    rng: np.random.Generator,
    parent_orders: Tuple[int, int] = (2, 6),
    component_orders: Tuple[int, int] = (1, 6),
) -> JoinedUnionPlan:
    """Random connected parent with complete, empty, cycle or co-cycle components."""
    k = int(rng.integers(parent_orders[0], parent_orders[1] + 1))
    parent = random_connected_graph(rng, k)
    components = tuple(
        regular_component(
            COMPONENT_KINDS[int(rng.integers(len(COMPONENT_KINDS)))],
            int(rng.integers(component_orders[0], component_orders[1] + 1)),
        )
        for _ in range(k)
    )
    return JoinedUnionPlan(parent, components)
