"""Tests for group specs, explicit elements and both power-graph constructions."""

import networkx as nx
import pytest
import sympy

from RDS.src.errors import DegenerateDecomposition, InvalidSpec, UsageError
from RDS.src.graph_core import rd_alpha_matrix, star_graph
from RDS.src.groups import (
    Family,
    GroupSpec,
    block_assignment,
    cayley_power_graph,
    divisor_graph,
    euler_phi,
    expand_family_range,
    group_elements,
    is_power_of_two,
    is_prime_power,
    proper_divisors,
    quaternion_divisors,
    smallest_unit_of_order,
    structural_power_graph,
    verify_decomposition,
)
from RDS.src.joined_union import compose
from RDS.src.spectral import spectra_equal, sym_eigenvalues


# =============================================================================
# Number theory helpers
# =============================================================================


@pytest.mark.unit
def test_totient_and_divisors():
    assert euler_phi(12) == 4
    assert euler_phi(1) == 1
    assert proper_divisors(12) == [2, 3, 4, 6]
    assert proper_divisors(7) == []
    assert quaternion_divisors(6) == [3, 4, 6]


@pytest.mark.unit
@pytest.mark.parametrize("n, expected", [(8, True), (9, True), (7, True), (12, False), (1, False)])
def test_is_prime_power(n, expected):
    assert is_prime_power(n) is expected


@pytest.mark.unit
def test_is_power_of_two():
    assert [n for n in range(1, 20) if is_power_of_two(n)] == [1, 2, 4, 8, 16]


@pytest.mark.unit
def test_smallest_unit_of_order():
    assert smallest_unit_of_order(3, 7) == 2
    assert smallest_unit_of_order(2, 11) == 10
    with pytest.raises(InvalidSpec):
        smallest_unit_of_order(3, 5)


@pytest.mark.unit
def test_divisor_graph_of_twelve():
    """2|4, 2|6 and 3|6; 3 and 4 are joined only through 6 and 2."""
    dg = divisor_graph(12)
    assert dg.divisors == (2, 3, 4, 6)
    assert len(dg.graph.edges) == 3
    assert dg.connected
    assert not dg.graph.has_edge(dg.index(3), dg.index(4))


@pytest.mark.unit
def test_divisor_graph_connectivity_rule():
    """Connected exactly when n is neither a prime nor a product of two distinct primes."""
    for n in range(2, 201):
        factors = sympy.factorint(n)
        squarefree_pair = len(factors) == 2 and all(e == 1 for e in factors.values())
        expected = not (sympy.isprime(n) or squarefree_pair)
        assert divisor_graph(n).connected is expected, n


# =============================================================================
# Group specs
# =============================================================================


@pytest.mark.unit
@pytest.mark.parametrize(
    "text, order",
    [("cyclic:12", 12), ("dihedral:6", 12), ("quaternion:3", 12), ("elemab:3,2", 9), ("pq:3,7", 21)],
)
def test_parse_group_spec(text, order):
    spec = GroupSpec.parse(text)
    assert spec.order == order
    assert str(spec) == text


@pytest.mark.unit
def test_pq_spec_with_explicit_unit():
    spec = GroupSpec.parse("pq:3,7,4")
    assert spec.unit == 4
    assert spec.pq_unit == 4
    assert str(spec) == "pq:3,7,4"
    assert GroupSpec.parse("pq:3,7").pq_unit == 2


@pytest.mark.unit
@pytest.mark.parametrize(
    "text",
    ["cyclic:2", "dihedral:1", "quaternion:1", "elemab:4,2", "elemab:3,0", "pq:3,5", "pq:7,3", "pq:3,7,3", "foo:3", "cyclic", "cyclic:1,2"],
)
def test_invalid_group_specs(text):
    with pytest.raises(InvalidSpec):
        GroupSpec.parse(text)


@pytest.mark.unit
def test_expand_one_parameter_range():
    specs, skipped = expand_family_range("dihedral", "3..6")
    assert [s.n for s in specs] == [3, 4, 5, 6]
    assert skipped == []


@pytest.mark.unit
def test_expand_pair_params_skips_invalid_groups():
    specs, skipped = expand_family_range("pq", params_text="2,3..7;3,7")
    assert [str(s) for s in specs] == ["pq:2,3", "pq:2,5", "pq:2,7", "pq:3,7"]
    assert [label for label, _ in skipped] == ["pq:2,4", "pq:2,6"]


@pytest.mark.unit
@pytest.mark.parametrize(
    "family, range_text, params_text",
    [("klein", "3..5", None), ("cyclic", "3..x", None), ("cyclic", None, None), ("elemab", None, "2;3")],
)
def test_expand_usage_errors(family, range_text, params_text):
    with pytest.raises(UsageError):
        expand_family_range(family, range_text, params_text)


# =============================================================================
# Explicit elements and the Cayley construction
# =============================================================================


@pytest.mark.unit
@pytest.mark.parametrize("text", ["cyclic:10", "dihedral:5", "quaternion:3", "elemab:2,3", "pq:3,7"])
def test_group_elements_cover_the_group(text):
    spec = GroupSpec.parse(text)
    els = group_elements(spec)
    assert els.size == spec.order
    assert els.order_of[0] == 1
    assert all(spec.order % o == 0 for o in els.order_of)


@pytest.mark.unit
def test_cyclic_element_orders_follow_totient():
    """Z_12 has phi(d) elements of order d for every divisor d."""
    els = group_elements(GroupSpec(Family.CYCLIC, (12,)))
    for d in (1, 2, 3, 4, 6, 12):
        assert els.order_of.count(d) == euler_phi(d)


@pytest.mark.unit
def test_power_graph_of_z6():
    g, _ = cayley_power_graph(GroupSpec.parse("cyclic:6"))
    assert g.vertex_count == 6
    assert len(g.edges) == 13


@pytest.mark.unit
def test_power_graph_of_s3():
    """Identity joins everything; the two rotations are adjacent; reflections are leaves."""
    g, els = cayley_power_graph(GroupSpec.parse("pq:2,3"))
    assert len(g.edges) == 6
    assert sorted(els.order_of) == [1, 2, 2, 2, 3, 3]


@pytest.mark.unit
def test_quaternion_elements_off_the_rotations_have_order_four():
    els = group_elements(GroupSpec.parse("quaternion:3"))
    assert all(o == 4 for (i, s), o in zip(els.labels, els.order_of) if s)


@pytest.mark.unit
@pytest.mark.parametrize("n", range(2, 9))
def test_quaternion_has_a_single_involution(n):
    els = group_elements(GroupSpec.parse(f"quaternion:{n}"))
    assert els.order_of.count(2) == 1


@pytest.mark.unit
@pytest.mark.parametrize(
    "text", ["cyclic:12", "cyclic:9", "dihedral:7", "quaternion:3", "quaternion:4", "elemab:2,3", "elemab:5,2", "pq:2,7", "pq:3,7,4"]
)
def test_identity_is_adjacent_to_every_element(text):
    g, els = cayley_power_graph(GroupSpec.parse(text))
    assert els.order_of[0] == 1
    assert all(g.has_edge(0, v) for v in range(1, g.vertex_count))


@pytest.mark.integration
def test_pq_power_graph_does_not_depend_on_the_unit():
    """2 and 4 both have order 3 mod 7; the two presentations give isomorphic power graphs."""
    g2, _ = cayley_power_graph(GroupSpec.parse("pq:3,7,2"))
    g4, _ = cayley_power_graph(GroupSpec.parse("pq:3,7,4"))
    assert nx.is_isomorphic(g2.to_networkx(), g4.to_networkx())
    for alpha in (0.0, 0.5, 1.0):
        s2 = sym_eigenvalues(rd_alpha_matrix(g2, alpha))
        s4 = sym_eigenvalues(rd_alpha_matrix(g4, alpha))
        assert spectra_equal(s2, s4).equal
    assert verify_decomposition(GroupSpec.parse("pq:3,7,4")).isomorphic


# =============================================================================
# Structural decompositions
# =============================================================================


@pytest.mark.unit
def test_cyclic_six_plan():
    plan = structural_power_graph(GroupSpec.parse("cyclic:6"))
    assert plan.orders == (3, 1, 2)
    assert plan.parent.edges == frozenset({(0, 1), (0, 2)})


@pytest.mark.unit
def test_cyclic_prime_power_is_degenerate():
    spec = GroupSpec.parse("cyclic:9")
    with pytest.raises(DegenerateDecomposition):
        structural_power_graph(spec)
    plan = structural_power_graph(spec, allow_degenerate=True)
    assert plan.degenerate
    assert compose(plan).is_complete()


@pytest.mark.unit
def test_elemab_and_pq_plans_are_stars():
    plan = structural_power_graph(GroupSpec.parse("elemab:3,2"))
    assert plan.parent == star_graph(4)
    assert plan.orders == (1, 2, 2, 2, 2)
    plan = structural_power_graph(GroupSpec.parse("pq:3,7"))
    assert plan.orders == (1,) + (2,) * 7 + (6,)


@pytest.mark.unit
def test_quaternion_power_of_two_plan():
    plan = structural_power_graph(GroupSpec.parse("quaternion:4"))
    assert plan.orders == (2, 6, 2, 2, 2, 2)
    assert plan.parent == star_graph(5)


@pytest.mark.unit
def test_block_assignment_respects_block_sizes():
    spec = GroupSpec.parse("dihedral:12")
    els = group_elements(spec)
    plan = structural_power_graph(spec)
    assignment = block_assignment(spec, els)
    assert [assignment.count(b) for b in range(plan.block_count)] == list(plan.orders)


@pytest.mark.integration
@pytest.mark.parametrize(
    "text",
    ["cyclic:6", "cyclic:12", "cyclic:30", "cyclic:8", "dihedral:6", "dihedral:9", "dihedral:12",
     "quaternion:2", "quaternion:3", "quaternion:6", "elemab:2,3", "elemab:3,2", "pq:2,5", "pq:3,7"],
)
def test_decomposition_matches_power_graph(text):
    report = verify_decomposition(GroupSpec.parse(text))
    assert report.isomorphic, report.detail
    assert report.pairs_checked == report.vertex_count * (report.vertex_count - 1) // 2
