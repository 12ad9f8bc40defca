"""Unit tests for graphs, distances, RD_alpha matrices and quotients."""

import numpy as np
import pytest

from RDS.src.errors import AlphaOutOfRange, DisconnectedGraph, InvalidPartition, ParseError
from RDS.src.graph_core import (
    Graph,
    SymMatrix,
    VertexPartition,
    all_pairs_distances,
    complement,
    cycle_graph,
    graph_from_json,
    graph_to_json,
    harary_index,
    is_equitable,
    is_reciprocal_transmission_regular,
    parse_edge_list,
    quotient_matrix,
    rd_alpha_matrix,
    read_edge_list,
    reciprocal_distance_matrix,
    reciprocal_transmission,
    reciprocal_transmissions,
    relabel,
    star_graph,
)

pytestmark = pytest.mark.unit


# =============================================================================
# Graph and distances
# =============================================================================


def test_graph_normalizes_edges():
    """Edges are stored once, smaller endpoint first."""
    g = Graph.from_edges(3, [(1, 0), (2, 1)])
    assert g.edges == frozenset({(0, 1), (1, 2)})
    assert g.degrees() == (1, 2, 1)


def test_graph_rejects_self_loop():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])


def test_path_distances(p4):
    """Hop distances on P4 grow along the path."""
    d = all_pairs_distances(p4).d
    assert d[0, 3] == 3
    assert d[1, 3] == 2
    assert (np.diag(d) == 0).all()


def test_disconnected_distances_flag_pair():
    dist = all_pairs_distances(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert not dist.connected
    assert dist.first_unreachable() == (0, 2)


def test_empty_graph_counts_as_disconnected():
    g = Graph(0)
    assert not g.is_connected()
    assert not all_pairs_distances(g).connected
    with pytest.raises(DisconnectedGraph):
        rd_alpha_matrix(g, 0.5)


def test_complement_of_cycle_is_regular():
    g = complement(cycle_graph(6))
    assert g.is_regular()
    assert g.degree == 3


def test_relabel_preserves_edge_count(petersen):
    perm = list(reversed(range(10)))
    assert len(relabel(petersen, perm).edges) == 15


# =============================================================================
# Reciprocal distance and RD_alpha
# =============================================================================


def test_reciprocal_transmissions_of_path(p4):
    """RT_r(v) is the sum of 1/d(v, u)."""
    rt = reciprocal_transmissions(p4)
    assert rt[0] == pytest.approx(1 + 1 / 2 + 1 / 3)
    assert rt[1] == pytest.approx(2.5)
    assert reciprocal_transmission(p4, 3) == pytest.approx(rt[0])


def test_trace_identity_uses_harary_index(p4, petersen):
    """Sum of reciprocal transmissions is twice the Harary index."""
    for g in (p4, petersen):
        assert reciprocal_transmissions(g).sum() == pytest.approx(2 * harary_index(g))
    assert harary_index(p4) == pytest.approx(13 / 3)


def test_rd_alpha_endpoints(p4):
    """alpha = 0 gives RD, alpha = 1 gives diag(RT_r)."""
    rd = reciprocal_distance_matrix(p4).entries
    assert np.allclose(rd_alpha_matrix(p4, 0.0).entries, rd)
    assert np.allclose(rd_alpha_matrix(p4, 1.0).entries, np.diag(rd.sum(axis=1)))


def test_rd_alpha_is_exactly_symmetric(petersen):
    m = rd_alpha_matrix(petersen, 0.3).entries
    assert np.array_equal(m, m.T)
    assert np.trace(m) == pytest.approx(0.3 * reciprocal_transmissions(petersen).sum())


def test_rd_alpha_rejects_disconnected_graph():
    with pytest.raises(DisconnectedGraph) as exc:
        rd_alpha_matrix(Graph.from_edges(4, [(0, 1), (2, 3)]), 0.5)
    assert exc.value.pair == (0, 2)


@pytest.mark.parametrize("alpha", [-0.1, 1.5])
def test_rd_alpha_rejects_alpha_out_of_range(k4, alpha):
    with pytest.raises(AlphaOutOfRange):
        rd_alpha_matrix(k4, alpha)


def test_transmission_regularity(p4, petersen):
    assert is_reciprocal_transmission_regular(petersen)
    assert is_reciprocal_transmission_regular(cycle_graph(7))
    assert not is_reciprocal_transmission_regular(p4)


# =============================================================================
# Partitions and quotients
# =============================================================================


def test_star_quotient():
    """Center/leaves split of K_{1,3} is equitable for RD_alpha."""
    m = rd_alpha_matrix(star_graph(3), 0.5)
    q = quotient_matrix(m, VertexPartition(((0,), (1, 2, 3))))
    assert q.equitable
    assert q.block_sizes == (1, 3)
    assert np.allclose(q.entries, [[1.5, 1.5], [0.5, 1.5]])


def test_non_equitable_partition_is_flagged(p4):
    m = reciprocal_distance_matrix(p4)
    p = VertexPartition(((0, 1), (2, 3)))
    assert not is_equitable(m, p)
    assert not quotient_matrix(m, p).equitable


@pytest.mark.parametrize("tol, equitable", [(1e-5, True), (1e-7, False)])
def test_quotient_flag_follows_equitable_tolerance(tol, equitable):
    entries = rd_alpha_matrix(star_graph(3), 0.5).entries.copy()
    entries[1, 2] += 1e-6
    entries[2, 1] += 1e-6
    m = SymMatrix(entries)
    p = VertexPartition(((0,), (1, 2, 3)))
    assert is_equitable(m, p, tol) is equitable
    assert quotient_matrix(m, p, tol).equitable is equitable


def test_partition_must_cover_vertices():
    with pytest.raises(InvalidPartition):
        VertexPartition(((0, 1), (1, 2)))
    with pytest.raises(InvalidPartition):
        VertexPartition(((0,), ()))


# =============================================================================
# Edge-list I/O
# =============================================================================


def test_parse_edge_list_with_comments():
    g = parse_edge_list("# triangle\n3\n0 1  # first\n\n1 2\n0 2\n")
    assert g.vertex_count == 3
    assert g.is_complete()


@pytest.mark.parametrize(
    "text, line",
    [
        ("x\n", 1),
        ("3\n0 1\n1 1\n", 3),
        ("3\n0 1\n0 7\n", 3),
        ("3\n0 1\n1 0\n", 3),
        ("3\n0 1 2\n", 2),
    ],
)
def test_parse_edge_list_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_edge_list(text)
    assert exc.value.line == line


def test_read_edge_list_missing_file(temp_dir):
    with pytest.raises(ParseError):
        read_edge_list(temp_dir / "missing.edges")


def test_sample_graphs(data_dir):
    """Shipped samples parse into the graphs their names promise."""
    assert read_edge_list(data_dir / "graphs" / "k4.edges").is_complete()
    assert not read_edge_list(data_dir / "graphs" / "disconnected.edges").is_connected()


def test_graph_json_object(petersen):
    obj = graph_to_json(petersen)
    assert obj["n"] == 10
    assert graph_from_json(obj) == petersen
    with pytest.raises(ParseError):
        graph_from_json({"n": 3, "edges": [[0, 5]]})
