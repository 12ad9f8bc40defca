"""
Closed-form RD_alpha spectra of power graphs, and verification reports.

Each family function evaluates the explicit eigenvalue families in the group
parameters, takes the residual quotient from the structural joined union
(lumped over interchangeable blocks where the families come from twin
blocks), and evaluates the published statements alongside for comparison.
"""

from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from RDS.src.errors import InvalidParameter, InvalidSpec
from RDS.src.graph_core import QuotientMatrix, all_pairs_distances, check_alpha, rd_alpha_matrix
from RDS.src.groups import (
    Family,
    GroupSpec,
    cayley_power_graph,
    euler_phi,
    is_power_of_two,
    is_prime_power,
    proper_divisors,
    quaternion_divisors,
    structural_power_graph,
)
from RDS.src.joined_union import (
    JoinedUnionPlan,
    compose,
    complete_multipartite_spectrum,
    is_complete_multipartite,
    is_three_completes,
    join_three_completes_spectrum,
    joined_union_quotient,
    joined_union_spectrum,
    lumped_quotient,
    printed_plan_claims,
)
from RDS.src.printed import (
    UNPARSEABLE,
    PrintedClaim,
    PrintedEigenvalue,
    evaluate,
    printed_matrix,
)
from RDS.src.spectral import (
    COALESCE_TOL,
    JACOBI_TOL,
    MATCH_TOL,
    MAX_SWEEPS,
    MatchReport,
    Spectrum,
    general_eigenvalues,
    is_submultiset,
    spectra_equal,
    sym_eigenvalues,
    union,
)

PATH_GENERAL = "general"
PATH_PRIME_POWER = "prime-power"
PATH_PQ = "pq corollary"
PATH_POWER_OF_TWO = "power-of-two corollary"


# =============================================================================
# Types
# =============================================================================


@dataclass(frozen=True)
class ExplicitFamily:
    label: str
    value: float
    multiplicity: int
    provenance: str = ""

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "value": self.value,
            "multiplicity": self.multiplicity,
            "provenance": self.provenance,
        }


@dataclass(frozen=True, eq=False)
class ClosedFormSpectrum:
    """Explicit eigenvalue families plus the small quotient that completes them."""

    spec: str
    alpha: float
    path: str
    explicit: Tuple[ExplicitFamily, ...]
    quotient: QuotientMatrix
    printed: Tuple[PrintedClaim, ...] = ()

    @property
    def dimension(self) -> int:
        return sum(f.multiplicity for f in self.explicit) + self.quotient.k

    def quotient_spectrum(self, coalesce_tol: float = COALESCE_TOL) -> Spectrum:
        return general_eigenvalues(self.quotient, coalesce_tol=coalesce_tol)

    def assemble(self, coalesce_tol: float = COALESCE_TOL) -> Spectrum:
        explicit = Spectrum.from_entries(
            [(f.value, f.multiplicity) for f in self.explicit], coalesce_tol
        )
        return union([explicit, self.quotient_spectrum(coalesce_tol)], coalesce_tol)

    def to_json(self) -> dict:
        return {
            "spec": self.spec,
            "alpha": self.alpha,
            "path": self.path,
            "explicit": [f.to_json() for f in self.explicit],
            "quotient": self.quotient.to_json(),
            "dimension": self.dimension,
        }


def _group(family: Family, *params: int, unit: Optional[int] = None) -> GroupSpec:
    try:
        return GroupSpec(family, tuple(params), unit)
    except InvalidSpec as e:
        raise InvalidParameter(str(e))


def _claim(
    label: str,
    printed: Callable[[], float],
    printed_multiplicity: int,
    derived: float,
    derived_multiplicity: int,
) -> PrintedEigenvalue:
    value = evaluate(printed)
    note = UNPARSEABLE if value is None else ""
    return PrintedEigenvalue(label, value, printed_multiplicity, derived, derived_multiplicity, note)


def _empty_quotient() -> QuotientMatrix:
    return QuotientMatrix(np.zeros((0, 0)), equitable=True)


FAMILY_NAMES = {
    Family.CYCLIC: "cyclic",
    Family.DIHEDRAL: "dihedral",
    Family.QUATERNION: "generalized quaternion",
    Family.ELEMAB: "elementary abelian",
    Family.PQ: "nonabelian pq",
}


def provenance_of(spec: GroupSpec, path: str) -> str:
    """Closed-form statement an explicit family comes from, e.g. "dihedral (prime-power)"."""
    return f"{FAMILY_NAMES[spec.family]} ({path})"


def _result(spec: GroupSpec, alpha: float, path: str, explicit, quotient, printed) -> ClosedFormSpectrum:
    source = provenance_of(spec, path)
    stamped = tuple(replace(f, provenance=source) for f in explicit)
    return ClosedFormSpectrum(str(spec), alpha, path, stamped, quotient, tuple(printed))


def _sum_over(indices: Sequence[int], skip: int, term: Callable[[int], float]) -> float:
    return float(sum(term(k) for k in indices if k != skip))


# =============================================================================
# Cyclic groups
# =============================================================================


def cyclic_spectrum(n: int, alpha: float) -> ClosedFormSpectrum:
    spec = _group(Family.CYCLIC, n)
    a = check_alpha(alpha)
    b = 1.0 - a

    if is_prime_power(n):
        explicit = (
            ExplicitFamily("largest", float(n - 1), 1),
            ExplicitFamily("complete graph", n * a - 1, n - 1),
        )
        printed = (
            _claim("complete graph largest", lambda: n - 1, 1, float(n - 1), 1),
            _claim("complete graph", lambda: n * a - 1, n - 1, n * a - 1, n - 1),
        )
        return _result(spec, a, PATH_PRIME_POWER, explicit, _empty_quotient(), printed)

    plan = structural_power_graph(spec)
    d = all_pairs_distances(plan.parent).d
    divs = proper_divisors(n)
    t = len(divs)
    phi_n = euler_phi(n)
    phis = [euler_phi(x) for x in divs]
    idx = range(t)

    def dist(i, k):
        return d[1 + i, 1 + k]

    explicit = [ExplicitFamily("identity and generators", n * a - 1, phi_n)]
    printed: List[PrintedClaim] = [
        _claim("identity and generators", lambda: n * a - 1, phi_n, n * a - 1, phi_n)
    ]
    for i, di in enumerate(divs):
        value = (phi_n + phis[i] + _sum_over(idx, i, lambda k: phis[k] / dist(i, k)) + 1) * a - 1
        explicit.append(ExplicitFamily(f"order {di}", value, phis[i] - 1))
        printed.append(PrintedEigenvalue(f"order {di}", None, phis[i] - 1, value, phis[i] - 1, UNPARSEABLE))

    quotient = joined_union_quotient(plan, a)

    def general():
        m = np.zeros((t + 1, t + 1))
        m[0, 0] = a * (n - 1 - phi_n) + phi_n
        for j in idx:
            m[0, 1 + j] = b * phis[j]
        for i in idx:
            m[1 + i, 0] = b * (phi_n + 1)
            for j in idx:
                if j != i:
                    m[1 + i, 1 + j] = b * phis[j] / dist(i, j)
            m[1 + i, 1 + i] = (
                a * (phi_n + _sum_over(idx, i, lambda k: phis[k] / dist(i, k)) + 1) + phis[i] - 1
            )
        return m

    printed.append(printed_matrix("cyclic quotient", general, quotient.entries))

    path = PATH_GENERAL
    factors = _distinct_prime_pair(n)
    if factors is not None:
        path = PATH_PQ
        p, q = factors
        phi_pq, phi_p, phi_q = euler_phi(p * q), p - 1, q - 1
        printed += [
            _claim(f"order {p} (pq form)", lambda: (p * q - (q - 1) / 2) * a - 1, p - 2,
                   explicit[1].value, explicit[1].multiplicity),
            _claim(f"order {q} (pq form)", lambda: (p * q - (p - 1) / 2) * a - 1, q - 2,
                   explicit[2].value, explicit[2].multiplicity),
        ]
        printed.append(
            printed_matrix(
                "pq quotient",
                lambda: np.array(
                    [
                        [(n - 1 - phi_pq) * a + phi_pq, b * phi_p, b * phi_q],
                        [b * phi_p, (p * q - p - (q - 3) / 2) * a + p - 2, b * (q - 2) / 2],
                        [b * phi_q, b * (p - 2) / 2, (p * q - q - (p - 3) / 2) * a + q - 2],
                    ]
                ),
                quotient.entries,
            )
        )
    return _result(spec, a, path, tuple(explicit), quotient, tuple(printed))


def _distinct_prime_pair(n: int) -> Optional[Tuple[int, int]]:
    divs = proper_divisors(n)
    if len(divs) == 2 and divs[0] * divs[1] == n:
        return divs[0], divs[1]
    return None


# =============================================================================
# Dihedral groups
# =============================================================================


def dihedral_spectrum(n: int, alpha: float) -> ClosedFormSpectrum:
    spec = _group(Family.DIHEDRAL, n)
    a = check_alpha(alpha)
    b = 1.0 - a
    plan = structural_power_graph(spec)
    quotient = joined_union_quotient(plan, a)
    reflections = (n + 0.5) * a - 0.5

    if is_prime_power(n):
        rotations = 1.5 * n * a - 1
        explicit = (
            ExplicitFamily("reflections", reflections, n - 1),
            ExplicitFamily("rotations", rotations, n - 2),
        )
        printed: List[PrintedClaim] = [
            _claim("reflections (prime-power statement)", lambda: (n + 0.5) * a - 0.5, n - 1, reflections, n - 1),
            _claim("reflections (general statement)", lambda: (n + 1) * a - 1, n - 1, reflections, n - 1),
            _claim("rotations (prime-power statement)", lambda: 1.5 * n * a - 1, n - 2, rotations, n - 2),
            printed_matrix(
                "prime-power quotient",
                lambda: np.array(
                    [
                        [(2 * n - 1) * a, b * (n - 1), b * n],
                        [b, (n / 2 + 1) * a + n - 2, b * n / 2],
                        [b, b * (n - 1) / 2, a + n - 1],
                    ]
                ),
                quotient.entries,
            ),
        ]
        return _result(spec, a, PATH_PRIME_POWER, explicit, quotient, tuple(printed))

    d = all_pairs_distances(plan.parent).d
    divs = proper_divisors(n)
    t = len(divs)
    phi_n = euler_phi(n)
    phis = [euler_phi(x) for x in divs]
    idx = range(t)

    def dist(i, k):
        return d[2 + i, 2 + k]

    generators = 1.5 * n * a - 1
    explicit = [ExplicitFamily(f"order {n}", generators, phi_n - 1)]
    printed = [_claim(f"order {n}", lambda: 1.5 * n * a - 1, phi_n - 1, generators, phi_n - 1)]
    for i, di in enumerate(divs):
        value = (phi_n + phis[i] + _sum_over(idx, i, lambda k: phis[k] / dist(i, k)) + n / 2 + 1) * a - 1
        explicit.append(ExplicitFamily(f"order {di}", value, phis[i] - 1))
        printed.append(
            _claim(
                f"order {di}",
                lambda i=i: (phi_n + phis[i] + _sum_over(idx, i, lambda k: 1 / dist(i, k)) + n / 2 + 1) * a - 1,
                phis[i] - 1,
                value,
                phis[i] - 1,
            )
        )
    explicit.append(ExplicitFamily("reflections", reflections, n - 1))
    printed += [
        _claim("reflections (general statement)", lambda: (n + 1) * a - 1, n - 1, reflections, n - 1),
        _claim("reflections (prime-power statement)", lambda: (n + 0.5) * a - 0.5, n - 1, reflections, n - 1),
    ]

    def general():
        size = t + 3
        last = size - 1
        m = np.zeros((size, size))
        m[0, 0] = (2 * n - 1) * a
        m[0, 1] = b * phi_n
        m[0, last] = b * n
        m[1, 0] = b
        m[1, 1] = (1.5 * n - phi_n) * a + phi_n - 1
        m[1, last] = b * n / 2
        for j in idx:
            m[0, 2 + j] = b * phis[j]
            m[1, 2 + j] = b * phis[j]
        for i in idx:
            m[2 + i, 0] = b
            m[2 + i, 1] = b * phi_n
            for j in idx:
                if j != i:
                    m[2 + i, 2 + j] = b * phis[j] / dist(i, j)
            m[2 + i, 2 + i] = (
                (phi_n + _sum_over(idx, i, lambda k: 1 / dist(i, k)) + n / 2 + 1) * a + phis[i] - 1
            )
            m[2 + i, last] = b * n / 2
        m[last, 0] = b
        m[last, 1] = b * phi_n / 2
        for j in idx:
            m[last, 2 + j] = b * phis[j] / 2
        m[last, last] = (n + 1) * a / 2 + (n - 1) / 2
        return m

    printed.append(printed_matrix("dihedral quotient", general, quotient.entries))
    return _result(spec, a, PATH_GENERAL, tuple(explicit), quotient, tuple(printed))


# =============================================================================
# Generalized quaternion groups
# =============================================================================


def quaternion_spectrum(n: int, alpha: float) -> ClosedFormSpectrum:
    spec = _group(Family.QUATERNION, n)
    a = check_alpha(alpha)
    b = 1.0 - a
    plan = structural_power_graph(spec)
    pair_block = 2 * (n + 1) * a - 1
    pair_twin = (2 * n + 1) * a

    if is_power_of_two(n):
        groups = [(0,), (1,), tuple(range(2, n + 2))]
        quotient = lumped_quotient(plan, a, groups)
        explicit = (
            ExplicitFamily("identity and central involution", 4 * n * a - 1, 1),
            ExplicitFamily("other rotations", 3 * n * a - 1, 2 * n - 3),
            ExplicitFamily("pairs", pair_block, n),
            ExplicitFamily("pairs exchanged", pair_twin, n - 1),
        )
        printed: List[PrintedClaim] = [
            _claim("identity and central involution", lambda: 4 * n * a - 1, 1, 4 * n * a - 1, 1),
            _claim("other rotations", lambda: 3 * n * a - 1, 2 * n - 3, 3 * n * a - 1, 2 * n - 3),
            _claim("pairs", lambda: 2 * (n + 1) * a - 1, n, pair_block, n),
            _claim("pairs exchanged", lambda: (2 * n + 1) * a, n - 1, pair_twin, n - 1),
            _claim("pairs (general statement)", lambda: 2 * (n + 1) * a - 1, n - 1, pair_block, n),
            _claim("pairs exchanged (general statement)", lambda: (2 * n + 1) * a, n, pair_twin, n - 1),
            printed_matrix(
                "power-of-two quotient",
                lambda: np.array(
                    [
                        [(4 * n - 2) * a + 1, 2 * (n - 1) * b, 2 * n * b],
                        [2 * b, (n + 2) * a + 2 * n - 3, n * b],
                        [2 * b, (n - 1) * b, (n + 1) * a + n],
                    ]
                ),
                quotient.entries,
            ),
        ]
        return _result(spec, a, PATH_POWER_OF_TWO, explicit, quotient, tuple(printed))

    d = all_pairs_distances(plan.parent).d
    ws = quaternion_divisors(n)
    t = len(ws)
    phi = euler_phi(2 * n)
    phis = [euler_phi(x) for x in ws]
    idx = range(t)
    v2 = 1

    def dist(i, k):
        return d[3 + i, 3 + k]

    def to_v2(i):
        return d[3 + i, v2]

    groups = [(i,) for i in range(3 + t)] + [tuple(range(3 + t, 3 + t + n))]
    quotient = lumped_quotient(plan, a, groups)

    generators = 3 * n * a - 1
    explicit = [ExplicitFamily(f"order {2 * n}", generators, phi - 1)]
    printed = [_claim(f"order {2 * n}", lambda: 3 * n * a - 1, phi - 1, generators, phi - 1)]
    for i, di in enumerate(ws):
        value = (
            phi + phis[i] + n + 1 / to_v2(i) + _sum_over(idx, i, lambda k: phis[k] / dist(i, k)) + 1
        ) * a - 1
        explicit.append(ExplicitFamily(f"order {di}", value, phis[i] - 1))
        printed.append(
            _claim(
                f"order {di}",
                lambda i=i: (
                    phi + phis[i] + n + 1 / to_v2(i) + _sum_over(idx, i, lambda k: 1 / dist(i, k)) + 1
                ) * a + 1,
                phis[i] - 1,
                value,
                phis[i] - 1,
            )
        )
    explicit += [
        ExplicitFamily("pairs", pair_block, n),
        ExplicitFamily("pairs exchanged", pair_twin, n - 1),
    ]
    printed += [
        _claim("pairs", lambda: 2 * (n + 1) * a - 1, n - 1, pair_block, n),
        _claim("pairs exchanged", lambda: (2 * n + 1) * a, n, pair_twin, n - 1),
    ]

    def general():
        size = t + 4
        y = size - 1
        m = np.zeros((size, size))
        m[0, :] = [(4 * n - 1) * a, b, b * phi] + [b * f for f in phis] + [2 * n * b]
        m[1, :] = (
            [b, (2 * n + phi + 1 + sum(1 / to_v2(i) for i in idx)) * a, b * phi]
            + [b * phis[j] / to_v2(j) for j in idx]
            + [2 * n * b]
        )
        m[2, :] = [b, b, (3 * n - phi) * a + phi - 1] + [b * f for f in phis] + [n * b]
        for i in idx:
            row = [b, b / to_v2(i), b * phi]
            for j in idx:
                if j == i:
                    row.append(
                        (phi + n + 1 / to_v2(i) + _sum_over(idx, i, lambda k: 1 / dist(i, k)) + 1) * a
                        + phis[i] - 1
                    )
                else:
                    row.append(b * phis[j] / dist(i, j))
            m[3 + i, :] = row + [n * b]
        m[y, :] = [b, b, b * phi / 2] + [b * f / 2 for f in phis] + [(n + 1) * a + n]
        return m

    printed.append(printed_matrix("quaternion quotient", general, quotient.entries))
    return _result(spec, a, PATH_GENERAL, tuple(explicit), quotient, tuple(printed))


# =============================================================================
# Elementary abelian p-groups
# =============================================================================


def elementary_abelian_spectrum(p: int, k: int, alpha: float) -> ClosedFormSpectrum:
    spec = _group(Family.ELEMAB, p, k)
    a = check_alpha(alpha)
    b = 1.0 - a
    ell = (p**k - 1) // (p - 1)
    plan = structural_power_graph(spec)
    quotient = lumped_quotient(plan, a, [(0,), tuple(range(1, ell + 1))])
    full = joined_union_quotient(plan, a)

    block = ((p - 1) * (ell + 1) / 2 + 1) * a - 1
    twin = a * (p * ell - ell + 2) / 2 + (p - 3) / 2
    explicit = (
        ExplicitFamily("subgroup blocks", block, ell * (p - 2)),
        ExplicitFamily("subgroups exchanged", twin, ell - 1),
    )

    def printed_full():
        m = np.full((ell + 1, ell + 1), b * (p - 1) / 2)
        m[0, :] = b * (p - 1)
        m[:, 0] = b
        m[0, 0] = ell * (p - 1) * a
        for i in range(1, ell + 1):
            m[i, i] = ((p - 1) * ell + 1) * a + p - 1
        return m

    printed: List[PrintedClaim] = [
        _claim("subgroup blocks", lambda: ((p - 1) * (ell + 1) / 2 + 1) * a - 1, ell * (p - 2), block, ell * (p - 2)),
        _claim(
            "subgroups exchanged",
            lambda: (2 * p * ell + p - 2 * ell + 1) / 2 * a + (p - 1) / 2,
            ell - 1,
            twin,
            ell - 1,
        ),
        printed_matrix(
            "reduced quotient",
            lambda: np.array(
                [
                    [ell * (p - 1) * a, b * (p - 1) * (ell - 1)],
                    [b, (p * ell + p - ell + 1) * a / 2 + (p - 1) * (ell - 1) / 2],
                ]
            ),
            quotient.entries,
        ),
        printed_matrix("full quotient", printed_full, full.entries),
    ]
    return _result(spec, a, PATH_GENERAL, explicit, quotient, tuple(printed))


# =============================================================================
# Non-abelian groups of order pq
# =============================================================================


def nonabelian_pq_spectrum(p: int, q: int, alpha: float, unit: Optional[int] = None) -> ClosedFormSpectrum:
    spec = _group(Family.PQ, p, q, unit=unit)
    a = check_alpha(alpha)
    b = 1.0 - a
    plan = structural_power_graph(spec)
    quotient = lumped_quotient(plan, a, [(0,), tuple(range(1, q + 1)), (q + 1,)])
    full = joined_union_quotient(plan, a)

    small = (p * q + p) / 2 * a - 1
    large = q * (p + 1) / 2 * a - 1
    twin = a * (p * q + 1) / 2 + (p - 3) / 2
    explicit = (
        ExplicitFamily(f"order {p} subgroups", small, q * (p - 2)),
        ExplicitFamily(f"order {q}", large, q - 2),
        ExplicitFamily(f"order {p} subgroups exchanged", twin, q - 1),
    )

    def printed_full():
        size = q + 2
        m = np.full((size, size), b * (p - 1) / 2)
        m[0, :] = b * (p - 1)
        m[0, size - 1] = b * (q - 1)
        m[:, 0] = b
        m[0, 0] = (p * q - 1) * a
        m[1:size - 1, size - 1] = b * (q - 1) / 2
        for i in range(1, q + 1):
            m[i, i] = (p * q - p + 3) / 2 * a + p - 2
        m[size - 1, size - 1] = (p * q - q + 2) / 2 * a + q - 2
        return m

    printed: List[PrintedClaim] = [
        _claim(f"order {p} subgroups", lambda: (p * q + p + 1) / 2 * a - 1, q * (p - 2), small, q * (p - 2)),
        _claim(f"order {q}", lambda: (p + 1) * q / 2 * a - 1, q - 2, large, q - 2),
        _claim(f"order {p} subgroups exchanged", lambda: (p * q + 2) / 2 * a + (p - 3) / 2, q - 1, twin, q - 1),
        printed_matrix(
            "reduced quotient",
            lambda: np.array(
                [
                    [(p * q - 1) * a, b * (p - 1) * (q - 1), b * (q - 1)],
                    [b, (q + 2) * a / 2 + (p - 1) * (q - 1) / 2, b * (q - 1) / 2],
                    [b, q * b * (p - 1) / 2, (p * q - q + 2) * a / 2 + q - 2],
                ]
            ),
            quotient.entries,
        ),
        printed_matrix("full quotient", printed_full, full.entries),
    ]
    return _result(spec, a, PATH_GENERAL, explicit, quotient, tuple(printed))


def group_closed_form(spec: GroupSpec, alpha: float) -> ClosedFormSpectrum:
    f = spec.family
    if f is Family.CYCLIC:
        return cyclic_spectrum(spec.n, alpha)
    if f is Family.DIHEDRAL:
        return dihedral_spectrum(spec.n, alpha)
    if f is Family.QUATERNION:
        return quaternion_spectrum(spec.n, alpha)
    if f is Family.ELEMAB:
        return elementary_abelian_spectrum(*spec.params, alpha)
    return nonabelian_pq_spectrum(*spec.params, alpha, unit=spec.unit)


# =============================================================================
# Verification
# =============================================================================


@dataclass(frozen=True, eq=False)
class VerificationReport:
    subject: str
    alpha: float
    path: str
    closed_form: Spectrum
    oracle: Spectrum
    match: MatchReport
    quotient_in_oracle: bool
    claims: Tuple[PrintedClaim, ...] = ()
    extra: Tuple[Tuple[str, MatchReport], ...] = field(default_factory=tuple)
    tol: float = MATCH_TOL

    @property
    def passed(self) -> bool:
        return self.match.equal and self.quotient_in_oracle and all(m.equal for _, m in self.extra)

    @property
    def deviations(self) -> List[PrintedClaim]:
        """Published statements that disagree with the derived values."""
        return [c for c in self.claims if not c.agrees(self.tol)]

    def to_json(self) -> dict:
        return {
            "spec": self.subject,
            "alpha": self.alpha,
            "path": self.path,
            "closed_form": self.closed_form.to_json(),
            "oracle": self.oracle.to_json(),
            "match": self.match.equal,
            "max_dev": self.match.max_deviation,
            "quotient_in_oracle": self.quotient_in_oracle,
            "closed_form_checks": {name: m.to_json() for name, m in self.extra},
            "printed_formula_deviations": [c.to_json(self.oracle, self.tol) for c in self.claims],
        }


def _oracle(graph, alpha: float, jacobi_tol: float, max_sweeps: int, coalesce_tol: float) -> Spectrum:
    return sym_eigenvalues(rd_alpha_matrix(graph, alpha), jacobi_tol, max_sweeps, coalesce_tol)


def verify_spectrum(
    spec: GroupSpec,
    alpha: float,
    tol: float = MATCH_TOL,
    jacobi_tol: float = JACOBI_TOL,
    max_sweeps: int = MAX_SWEEPS,
    coalesce_tol: float = COALESCE_TOL,
) -> VerificationReport:
    """Closed form against the Jacobi spectrum of the multiplied-out power graph."""
    cf = group_closed_form(spec, alpha)
    graph, _ = cayley_power_graph(spec)
    oracle = _oracle(graph, cf.alpha, jacobi_tol, max_sweeps, coalesce_tol)
    assembled = cf.assemble(coalesce_tol)
    return VerificationReport(
        subject=str(spec),
        alpha=cf.alpha,
        path=cf.path,
        closed_form=assembled,
        oracle=oracle,
        match=spectra_equal(assembled, oracle, tol),
        quotient_in_oracle=is_submultiset(cf.quotient_spectrum(coalesce_tol), oracle, max(tol, 1e-7)),
        claims=cf.printed,
        tol=tol,
    )


def verify_plan(
    plan: JoinedUnionPlan,
    alpha: float,
    tol: float = MATCH_TOL,
    jacobi_tol: float = JACOBI_TOL,
    max_sweeps: int = MAX_SWEEPS,
    coalesce_tol: float = COALESCE_TOL,
    subject: str = "plan",
) -> VerificationReport:
    """Joined-union spectrum against the Jacobi spectrum of the composed graph."""
    a = check_alpha(alpha)
    oracle = _oracle(compose(plan), a, jacobi_tol, max_sweeps, coalesce_tol)
    assembled = joined_union_spectrum(plan, a, coalesce_tol)
    quotient = general_eigenvalues(joined_union_quotient(plan, a), coalesce_tol=coalesce_tol)

    path = "joined union"
    extra: List[Tuple[str, MatchReport]] = []
    if is_complete_multipartite(plan):
        path = "complete multipartite"
        parts = set(plan.orders)
        if len(parts) == 1:
            closed = complete_multipartite_spectrum(parts.pop(), plan.block_count, a, coalesce_tol)
            extra.append(("complete multipartite, equal parts", spectra_equal(closed, oracle, tol)))
    if is_three_completes(plan):
        path = "three complete graphs"
        closed = join_three_completes_spectrum(*plan.orders, a, coalesce_tol)
        extra.append(("join of three complete graphs", spectra_equal(closed, oracle, tol)))

    return VerificationReport(
        subject=subject,
        alpha=a,
        path=path,
        closed_form=assembled,
        oracle=oracle,
        match=spectra_equal(assembled, oracle, tol),
        quotient_in_oracle=is_submultiset(quotient, oracle, max(tol, 1e-7)),
        claims=tuple(printed_plan_claims(plan, a)),
        extra=tuple(extra),
        tol=tol,
    )
