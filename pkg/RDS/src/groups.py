"""
Finite groups of five families and their power graphs, built two ways.

cayley_power_graph multiplies explicit elements and joins x, y whenever one
lies in the cyclic subgroup of the other. structural_power_graph writes the
same graph down as a joined union of complete / edgeless blocks indexed by
element orders. verify_decomposition checks the two against each other
through an explicit order-based bijection.
"""

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, FrozenSet, Hashable, List, Optional, Tuple

import sympy

from RDS.src.errors import DegenerateDecomposition, InvalidSpec, UsageError
from RDS.src.graph_core import Graph, complete_graph, empty_graph, star_graph
from RDS.src.joined_union import JoinedUnionPlan, compose


class Family(str, Enum):
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    QUATERNION = "quaternion"
    ELEMAB = "elemab"
    PQ = "pq"


# parameter names per family; pq takes an optional third value, the unit
PARAMETERS = {
    Family.CYCLIC: ("n",),
    Family.DIHEDRAL: ("n",),
    Family.QUATERNION: ("n",),
    Family.ELEMAB: ("p", "k"),
    Family.PQ: ("p", "q"),
}


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidSpec(f"totient needs n >= 1, got {n}")
    return int(sympy.totient(n))


def is_prime_power(n: int) -> bool:
    return n > 1 and len(sympy.factorint(n)) == 1


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def proper_divisors(n: int) -> List[int]:
    """Divisors d with 1 < d < n, ascending."""
    return [int(d) for d in sympy.divisors(n)[1:-1]]


def smallest_unit_of_order(p: int, q: int) -> int:
    for u in range(2, q):
        if sympy.n_order(u, q) == p:
            return u
    raise InvalidSpec(f"no unit of multiplicative order {p} modulo {q}")


# =============================================================================
# Group specification
# =============================================================================


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    params: Tuple[int, ...]
    unit: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        expected = len(PARAMETERS[self.family])
        if len(self.params) != expected:
            raise InvalidSpec(
                f"{self.family.value} takes {expected} parameter(s), got {list(self.params)}"
            )
        if self.unit is not None and self.family is not Family.PQ:
            raise InvalidSpec("only pq groups take an explicit unit")
        self._validate()

    def _validate(self):
        f = self.family
        if f is Family.CYCLIC and self.params[0] < 3:
            raise InvalidSpec(f"cyclic needs n >= 3, got {self.params[0]}")
        if f is Family.DIHEDRAL and self.params[0] < 3:
            raise InvalidSpec(f"dihedral needs n >= 3, got {self.params[0]}")
        if f is Family.QUATERNION and self.params[0] < 2:
            raise InvalidSpec(f"quaternion needs n >= 2, got {self.params[0]}")
        if f is Family.ELEMAB:
            p, k = self.params
            if not sympy.isprime(p):
                raise InvalidSpec(f"elemab needs a prime p, got {p}")
            if k < 1:
                raise InvalidSpec(f"elemab needs k >= 1, got {k}")
        if f is Family.PQ:
            p, q = self.params
            if not (sympy.isprime(p) and sympy.isprime(q)):
                raise InvalidSpec(f"pq needs primes, got {p}, {q}")
            if not p < q:
                raise InvalidSpec(f"pq needs p < q, got {p}, {q}")
            if q % p != 1:
                raise InvalidSpec(f"no non-abelian group of order {p * q}: {q} is not 1 mod {p}")
            if self.unit is not None:
                if not 1 < self.unit < q or sympy.n_order(self.unit, q) != p:
                    raise InvalidSpec(f"unit {self.unit} does not have order {p} modulo {q}")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """`cyclic:12`, `dihedral:6`, `quaternion:3`, `elemab:3,2`, `pq:3,7` (or `pq:3,7,4` with a unit)."""
        match = re.fullmatch(r"\s*([a-z]+)\s*:\s*([0-9,\s]+)", text or "")
        if not match:
            raise InvalidSpec(f"malformed group spec {text!r}")
        try:
            family = Family(match.group(1))
        except ValueError:
            raise InvalidSpec(f"unknown family {match.group(1)!r}")
        try:
            values = [int(x) for x in match.group(2).split(",")]
        except ValueError:
            raise InvalidSpec(f"malformed parameters in {text!r}")
        unit = None
        if family is Family.PQ and len(values) == 3:
            unit = values.pop()
        return cls(family, tuple(values), unit)

    def __str__(self):
        params = list(self.params) + ([self.unit] if self.unit is not None else [])
        return f"{self.family.value}:{','.join(str(x) for x in params)}"

    @property
    def n(self) -> int:
        return self.params[0]

    @property
    def order(self) -> int:
        f, a = self.family, self.params
        if f is Family.CYCLIC:
            return a[0]
        if f is Family.DIHEDRAL:
            return 2 * a[0]
        if f is Family.QUATERNION:
            return 4 * a[0]
        if f is Family.ELEMAB:
            return a[0] ** a[1]
        return a[0] * a[1]

    @property
    def pq_unit(self) -> int:
        p, q = self.params
        return self.unit if self.unit is not None else smallest_unit_of_order(p, q)


def expand_family_range(
    family: str,
    range_text: Optional[str] = None,
    params_text: Optional[str] = None,
) -> Tuple[List[GroupSpec], List[Tuple[str, str]]]:
    """
    Expand sweep syntax into group specs.

    One-parameter families take `range_text` as `a..b` (or a single integer);
    two-parameter families take `params_text` as `;`-separated `x,y` terms,
    each side an integer or an `a..b` range. Combinations that do not name a
    valid group are returned in the skipped list with the reason.

    Returns:
        (specs, skipped)
    """
    try:
        fam = Family(family)
    except ValueError:
        raise UsageError(f"unknown family {family!r}")

    arity = len(PARAMETERS[fam])
    if arity == 1:
        if range_text is None:
            raise UsageError(f"{fam.value} sweeps need --range a..b")
        combos = [(n,) for n in _int_range(range_text)]
    else:
        if params_text is None:
            raise UsageError(f"{fam.value} sweeps need --params \"x,y;...\"")
        combos = []
        for term in filter(None, (t.strip() for t in params_text.split(";"))):
            parts = [s.strip() for s in term.split(",")]
            if len(parts) != 2:
                raise UsageError(f"expected 'x,y' in --params term {term!r}")
            combos.extend(itertools.product(_int_range(parts[0]), _int_range(parts[1])))

    specs: List[GroupSpec] = []
    skipped: List[Tuple[str, str]] = []
    for combo in combos:
        label = f"{fam.value}:{','.join(str(x) for x in combo)}"
        try:
            specs.append(GroupSpec(fam, combo))
        except InvalidSpec as e:
            skipped.append((label, str(e)))
    return specs, skipped


def _int_range(text: str) -> List[int]:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"malformed range {text!r}")


# =============================================================================
# Divisor graph
# =============================================================================


@dataclass(frozen=True)
class DivisorGraph:
    n: int
    divisors: Tuple[int, ...]
    graph: Graph

    @property
    def connected(self) -> bool:
        return self.graph.is_connected()

    def index(self, d: int) -> int:
        return self.divisors.index(d)


def divisor_graph(n: int) -> DivisorGraph:
    """Proper divisors of n, adjacent when one divides the other."""
    if n < 2:
        raise InvalidSpec(f"divisor graph needs n >= 2, got {n}")
    divs = tuple(proper_divisors(n))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(divs)), 2)
        if divs[j] % divs[i] == 0
    ]
    return DivisorGraph(n, divs, Graph.from_edges(len(divs), edges))


# =============================================================================
# Explicit elements
# =============================================================================


@dataclass(frozen=True)
class GroupElements:
    """Elements in a fixed order, identity at index 0."""

    labels: Tuple[Hashable, ...]
    order_of: Tuple[int, ...]
    power_closure: Tuple[FrozenSet[int], ...]

    @property
    def size(self) -> int:
        return len(self.labels)


def _elements_and_product(spec: GroupSpec) -> Tuple[List[Hashable], Callable]:
    f = spec.family
    if f is Family.CYCLIC:
        n = spec.n
        return list(range(n)), lambda a, b: (a + b) % n

    if f is Family.DIHEDRAL:
        n = spec.n

        def dihedral(x, y):
            (i1, f1), (i2, f2) = x, y
            if f1 == 0:
                return ((i1 + i2) % n, f2)
            return ((i1 - i2) % n, (1 + f2) % 2)

        return [(i, s) for s in (0, 1) for i in range(n)], dihedral

    if f is Family.QUATERNION:
        n = spec.n
        m = 2 * n

        def quaternion(x, y):
            (i1, f1), (i2, f2) = x, y
            if f1 == 0:
                return ((i1 + i2) % m, f2)
            if f2 == 0:
                return ((i1 - i2) % m, 1)
            return ((i1 - i2 + n) % m, 0)

        return [(i, s) for s in (0, 1) for i in range(m)], quaternion

    if f is Family.ELEMAB:
        p, k = spec.params
        return (
            list(itertools.product(range(p), repeat=k)),
            lambda x, y: tuple((a + b) % p for a, b in zip(x, y)),
        )

    p, q = spec.params
    u = spec.pq_unit

    def semidirect(x, y):
        (a1, b1), (a2, b2) = x, y
        return ((a1 + pow(u, b1, q) * a2) % q, (b1 + b2) % p)

    return [(a, b) for a in range(q) for b in range(p)], semidirect


def group_elements(spec: GroupSpec) -> GroupElements:
    labels, product = _elements_and_product(spec)
    index: Dict[Hashable, int] = {x: i for i, x in enumerate(labels)}
    identity = labels[0]
    orders, closures = [], []
    for x in labels:
        members = {index[identity]}
        power = x
        while power != identity:
            members.add(index[power])
            power = product(power, x)
        orders.append(len(members))
        closures.append(frozenset(members))
    return GroupElements(tuple(labels), tuple(orders), tuple(closures))


def cayley_power_graph(spec: GroupSpec) -> Tuple[Graph, GroupElements]:
    els = group_elements(spec)
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(els.size), 2)
        if u in els.power_closure[v] or v in els.power_closure[u]
    ]
    return Graph.from_edges(els.size, edges), els


# =============================================================================
# Structural decompositions
# =============================================================================


def structural_power_graph(spec: GroupSpec, allow_degenerate: bool = False) -> JoinedUnionPlan:
    """
    Power graph as a joined union, blocks in a fixed order: identity first,
    then generators, then proper divisors ascending, then the tail blocks.
    """
    builders = {
        Family.CYCLIC: _cyclic_plan,
        Family.DIHEDRAL: _dihedral_plan,
        Family.QUATERNION: _quaternion_plan,
        Family.ELEMAB: _elemab_plan,
        Family.PQ: _pq_plan,
    }
    plan = builders[spec.family](spec)
    if plan.degenerate and not allow_degenerate:
        raise DegenerateDecomposition(
            f"P({spec}) is complete; no proper divisor blocks to decompose"
        )
    return plan


def _cyclic_plan(spec: GroupSpec) -> JoinedUnionPlan:
    n = spec.n
    if is_prime_power(n):
        return JoinedUnionPlan(
            Graph(1), (complete_graph(n),), ("all elements",), degenerate=True
        )
    dg = divisor_graph(n)
    t = len(dg.divisors)
    edges = [(0, 1 + i) for i in range(t)] + [(1 + i, 1 + j) for i, j in dg.graph.edges]
    components = (complete_graph(euler_phi(n) + 1),) + tuple(
        complete_graph(euler_phi(d)) for d in dg.divisors
    )
    labels = ("identity and generators",) + tuple(f"order {d}" for d in dg.divisors)
    return JoinedUnionPlan(Graph.from_edges(1 + t, edges), components, labels)


def _dihedral_plan(spec: GroupSpec) -> JoinedUnionPlan:
    n = spec.n
    if is_prime_power(n):
        return JoinedUnionPlan(
            star_graph(2),
            (complete_graph(1), complete_graph(n - 1), empty_graph(n)),
            ("identity", "rotations", "reflections"),
        )
    dg = divisor_graph(n)
    t = len(dg.divisors)
    last = 2 + t
    edges = [(0, j) for j in range(1, last + 1)]
    edges += [(1, 2 + i) for i in range(t)]
    edges += [(2 + i, 2 + j) for i, j in dg.graph.edges]
    components = (
        (complete_graph(1), complete_graph(euler_phi(n)))
        + tuple(complete_graph(euler_phi(d)) for d in dg.divisors)
        + (empty_graph(n),)
    )
    labels = (
        ("identity", f"order {n}")
        + tuple(f"order {d}" for d in dg.divisors)
        + ("reflections",)
    )
    return JoinedUnionPlan(Graph.from_edges(last + 1, edges), components, labels)


def quaternion_divisors(n: int) -> List[int]:
    """Proper divisors of 2n other than 2 (2 is the order of the central involution)."""
    return [d for d in proper_divisors(2 * n) if d != 2]


def _quaternion_plan(spec: GroupSpec) -> JoinedUnionPlan:
    n = spec.n
    if is_power_of_two(n):
        edges = [(0, j) for j in range(1, n + 2)]
        components = (complete_graph(2), complete_graph(2 * n - 2)) + tuple(
            complete_graph(2) for _ in range(n)
        )
        labels = ("identity and central involution", "other rotations") + tuple(
            f"pair {k}" for k in range(n)
        )
        return JoinedUnionPlan(Graph.from_edges(n + 2, edges), components, labels)

    ws = quaternion_divisors(n)
    t = len(ws)
    v1, v2, v3 = 0, 1, 2
    w = [3 + i for i in range(t)]
    y = [3 + t + k for k in range(n)]
    size = 3 + t + n

    edges = [(v1, j) for j in range(1, size)]
    edges.append((v2, v3))
    edges += [(v2, w[i]) for i, d in enumerate(ws) if d % 2 == 0]
    edges += [(v2, yk) for yk in y]
    edges += [(v3, wi) for wi in w]
    edges += [
        (w[i], w[j])
        for i, j in itertools.combinations(range(t), 2)
        if ws[j] % ws[i] == 0
    ]
    components = (
        (complete_graph(1), complete_graph(1), complete_graph(euler_phi(2 * n)))
        + tuple(complete_graph(euler_phi(d)) for d in ws)
        + tuple(complete_graph(2) for _ in range(n))
    )
    labels = (
        ("identity", "central involution", f"order {2 * n}")
        + tuple(f"order {d}" for d in ws)
        + tuple(f"pair {k}" for k in range(n))
    )
    return JoinedUnionPlan(Graph.from_edges(size, edges), components, labels)


def _elemab_plan(spec: GroupSpec) -> JoinedUnionPlan:
    p, k = spec.params
    ell = (p**k - 1) // (p - 1)
    return JoinedUnionPlan(
        star_graph(ell),
        (complete_graph(1),) + tuple(complete_graph(p - 1) for _ in range(ell)),
        ("identity",) + tuple(f"subgroup {i}" for i in range(ell)),
    )


def _pq_plan(spec: GroupSpec) -> JoinedUnionPlan:
    p, q = spec.params
    return JoinedUnionPlan(
        star_graph(q + 1),
        (complete_graph(1),)
        + tuple(complete_graph(p - 1) for _ in range(q))
        + (complete_graph(q - 1),),
        ("identity",) + tuple(f"order {p} subgroup {i}" for i in range(q)) + (f"order {q}",),
    )


# =============================================================================
# Decomposition check
# =============================================================================


def _subgroup_blocks(els: GroupElements, prime: int, first_block: int) -> Dict[int, int]:
    """Order-`prime` elements grouped by cyclic subgroup, subgroups by smallest member."""
    keys = sorted(
        {min(els.power_closure[x] - {0}) for x in range(els.size) if els.order_of[x] == prime}
    )
    rank = {key: first_block + i for i, key in enumerate(keys)}
    return {
        x: rank[min(els.power_closure[x] - {0})]
        for x in range(els.size)
        if els.order_of[x] == prime
    }


def block_assignment(spec: GroupSpec, els: GroupElements) -> List[int]:
    """Block index of every element under the order-based bijection."""
    f = spec.family
    orders = els.order_of

    if f is Family.CYCLIC:
        n = spec.n
        if is_prime_power(n):
            return [0] * els.size
        divs = proper_divisors(n)
        return [0 if o in (1, n) else 1 + divs.index(o) for o in orders]

    if f is Family.DIHEDRAL:
        n = spec.n
        out = []
        if is_prime_power(n):
            for x, (i, s) in enumerate(els.labels):
                out.append(2 if s else (0 if i == 0 else 1))
            return out
        divs = proper_divisors(n)
        for x, (i, s) in enumerate(els.labels):
            if s:
                out.append(2 + len(divs))
            elif i == 0:
                out.append(0)
            elif orders[x] == n:
                out.append(1)
            else:
                out.append(2 + divs.index(orders[x]))
        return out

    if f is Family.QUATERNION:
        n = spec.n
        out = []
        if is_power_of_two(n):
            for i, s in els.labels:
                if s:
                    out.append(2 + i % n)
                else:
                    out.append(0 if i in (0, n) else 1)
            return out
        ws = quaternion_divisors(n)
        for x, (i, s) in enumerate(els.labels):
            if s:
                out.append(3 + len(ws) + i % n)
            elif i == 0:
                out.append(0)
            elif i == n:
                out.append(1)
            elif orders[x] == 2 * n:
                out.append(2)
            else:
                out.append(3 + ws.index(orders[x]))
        return out

    p = spec.params[0]
    blocks = _subgroup_blocks(els, p, 1)
    last = 1 + len(set(blocks.values()))
    return [0 if x == 0 else blocks.get(x, last) for x in range(els.size)]


@dataclass(frozen=True)
class IsomorphismReport:
    spec: str
    isomorphic: bool
    vertex_count: int
    pairs_checked: int
    mismatch: Optional[Tuple[int, int]] = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "spec": self.spec,
            "isomorphic": self.isomorphic,
            "vertex_count": self.vertex_count,
            "pairs_checked": self.pairs_checked,
            "mismatch": list(self.mismatch) if self.mismatch else None,
            "detail": self.detail,
        }


def element_embedding(spec: GroupSpec, els: GroupElements, plan: JoinedUnionPlan) -> Optional[List[int]]:
    """Composed-graph vertex of every element, or None when block sizes disagree."""
    assignment = block_assignment(spec, els)
    offsets = plan.block_offsets
    filled = [0] * plan.block_count
    position = []
    for b in assignment:
        if b >= plan.block_count or filled[b] >= plan.orders[b]:
            return None
        position.append(offsets[b] + filled[b])
        filled[b] += 1
    if list(filled) != list(plan.orders):
        return None
    return position


def verify_decomposition(spec: GroupSpec) -> IsomorphismReport:
    cayley, els = cayley_power_graph(spec)
    plan = structural_power_graph(spec, allow_degenerate=True)
    composed = compose(plan)
    label = str(spec)

    position = element_embedding(spec, els, plan)
    if position is None or composed.vertex_count != cayley.vertex_count:
        return IsomorphismReport(
            label, False, cayley.vertex_count, 0, None,
            f"block sizes {list(plan.orders)} do not match the element order classes",
        )

    checked = 0
    for u, v in itertools.combinations(range(els.size), 2):
        checked += 1
        if cayley.has_edge(u, v) != composed.has_edge(position[u], position[v]):
            relation = "adjacent" if cayley.has_edge(u, v) else "not adjacent"
            return IsomorphismReport(
                label, False, els.size, checked, (u, v),
                f"{els.labels[u]} and {els.labels[v]} are {relation} in the power graph "
                f"but not under the decomposition",
            )
    return IsomorphismReport(label, True, els.size, checked)
