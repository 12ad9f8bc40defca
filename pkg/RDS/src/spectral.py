"""
Dense symmetric eigensolver and tolerance-aware spectrum algebra.

This module is the reference everything else is checked against, so it is
kept independent of the joined-union and group code.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from RDS.src.errors import ComplexSpectrum, NoConvergence
from RDS.src.graph_core import QuotientMatrix, SymMatrix

COALESCE_TOL = 1e-7
MATCH_TOL = 1e-8
JACOBI_TOL = 1e-13
MAX_SWEEPS = 100


# =============================================================================
# Spectrum
# =============================================================================


@dataclass(frozen=True)
class Spectrum:
    """
    Multiset of real eigenvalues.

    The raw values are kept (sorted descending) so that comparisons never
    depend on how nearby values were grouped; `entries` gives the coalesced
    (value, multiplicity) view.
    """

    values: Tuple[float, ...]
    coalesce_tol: float = COALESCE_TOL

    def __post_init__(self):
        ordered = tuple(sorted((float(v) for v in self.values), reverse=True))
        object.__setattr__(self, "values", ordered)

    @classmethod
    def from_values(cls, values: Iterable[float], coalesce_tol: float = COALESCE_TOL) -> "Spectrum":
        return cls(tuple(values), coalesce_tol)

    @classmethod
    def from_entries(
        cls, entries: Iterable[Tuple[float, int]], coalesce_tol: float = COALESCE_TOL
    ) -> "Spectrum":
        values: List[float] = []
        for value, multiplicity in entries:
            if multiplicity < 0:
                raise ValueError(f"negative multiplicity {multiplicity} for {value}")
            values.extend([float(value)] * int(multiplicity))
        return cls(tuple(values), coalesce_tol)

    @property
    def entries(self) -> List[Tuple[float, int]]:
        groups: List[List[float]] = []
        for v in self.values:
            if groups and groups[-1][0] - v <= self.coalesce_tol:
                groups[-1].append(v)
            else:
                groups.append([v])
        return [(float(np.mean(g)), len(g)) for g in groups]

    def __len__(self):
        return len(self.values)

    @property
    def trace(self) -> float:
        return float(sum(self.values))

    def count_near(self, value: float, tol: float = MATCH_TOL) -> int:
        return sum(1 for v in self.values if abs(v - value) <= tol)

    def to_json(self) -> dict:
        return {
            "eigenvalues": [{"value": v, "multiplicity": m} for v, m in self.entries],
            "trace": self.trace,
        }


@dataclass(frozen=True)
class MatchReport:
    equal: bool
    max_deviation: float
    unmatched_left: Tuple[float, ...] = ()
    unmatched_right: Tuple[float, ...] = ()

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "max_deviation": self.max_deviation,
            "unmatched_left": list(self.unmatched_left),
            "unmatched_right": list(self.unmatched_right),
        }


def spectra_equal(a: Spectrum, b: Spectrum, tol: float = MATCH_TOL) -> MatchReport:
    """
    Pair eigenvalues of two spectra within tol, respecting multiplicities.

    Both value lists are sorted descending, so a single greedy sweep finds a
    maximum pairing. max_deviation is taken over the positional pairing of
    the two sorted lists.
    """
    x, y = a.values, b.values
    common = min(len(x), len(y))
    max_dev = max((abs(x[i] - y[i]) for i in range(common)), default=0.0)

    left: List[float] = []
    right: List[float] = []
    i = j = 0
    while i < len(x) and j < len(y):
        if abs(x[i] - y[j]) <= tol:
            i += 1
            j += 1
        elif x[i] > y[j]:
            left.append(x[i])
            i += 1
        else:
            right.append(y[j])
            j += 1
    left.extend(x[i:])
    right.extend(y[j:])

    return MatchReport(
        equal=not left and not right,
        max_deviation=float(max_dev),
        unmatched_left=tuple(left),
        unmatched_right=tuple(right),
    )


def is_submultiset(sub: Union[Spectrum, Sequence[float]], full: Spectrum, tol: float = MATCH_TOL) -> bool:
    """True iff every value of sub pairs with a distinct value of full within tol."""
    xs = sub.values if isinstance(sub, Spectrum) else tuple(sorted(sub, reverse=True))
    ys = full.values
    j = 0
    for x in xs:
        while j < len(ys) and ys[j] > x + tol:
            j += 1
        if j == len(ys) or abs(ys[j] - x) > tol:
            return False
        j += 1
    return True


def union(spectra: Iterable[Spectrum], coalesce_tol: float = COALESCE_TOL) -> Spectrum:
    values: List[float] = []
    for s in spectra:
        values.extend(s.values)
    return Spectrum.from_values(values, coalesce_tol)


# =============================================================================
# Symmetric path: cyclic Jacobi
# =============================================================================


@lru_cache(maxsize=None)
def _round_robin(n: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
    """Disjoint (p, q) pairings covering every pair once per sweep."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            p_idx, q_idx = zip(*pairs)
            rounds.append((np.array(p_idx), np.array(q_idx)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def jacobi_eigenvalues(a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """
    Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the n/2 rotations of a round act on disjoint rows and columns and
    can be applied together. Iteration stops once the largest off-diagonal
    magnitude falls below tol times the Frobenius norm.

    Returns:
        eigenvalues sorted descending
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n <= 1:
        return a.diagonal().copy()

    fro = float(np.linalg.norm(a))
    if fro == 0.0:
        return np.zeros(n)
    threshold = tol * fro
    off_mask = ~np.eye(n, dtype=bool)
    rounds = _round_robin(n)

    for _ in range(max_sweeps):
        if np.abs(a[off_mask]).max() < threshold:
            return np.sort(a.diagonal())[::-1]
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(theta == 0.0, 1.0, np.nan_to_num(t))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c

            col_p, col_q = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * col_p - s * col_q
            a[:, q] = s * col_p + c * col_q
            row_p, row_q = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * row_p - s[:, None] * row_q
            a[q, :] = s[:, None] * row_p + c[:, None] * row_q
            a[p, q] = 0.0
            a[q, p] = 0.0

    off = float(np.abs(a[off_mask]).max())
    if off < threshold:
        return np.sort(a.diagonal())[::-1]
    raise NoConvergence(max_sweeps, off)


def sym_eigenvalues(
    m: Union[SymMatrix, np.ndarray],
    tol: float = JACOBI_TOL,
    max_sweeps: int = MAX_SWEEPS,
    coalesce_tol: float = COALESCE_TOL,
) -> Spectrum:
    if not isinstance(m, SymMatrix):
        m = SymMatrix(m)
    return Spectrum.from_values(jacobi_eigenvalues(m.entries, tol, max_sweeps), coalesce_tol)


# =============================================================================
# Non-symmetric path: quotient matrices
# =============================================================================


def general_eigenvalues(
    q: Union[QuotientMatrix, np.ndarray],
    tol: float = 1e-8,
    coalesce_tol: float = COALESCE_TOL,
) -> Spectrum:
    """
    Eigenvalues of a small, generally non-symmetric matrix (LAPACK geev,
    balanced Hessenberg QR). Equitable quotients of symmetric matrices are
    similar to symmetric matrices, so their spectra must be real.

    The imaginary-part check is relative: an equitable quotient raises
    ComplexSpectrum when some |Im λ| exceeds tol * max(1, max |λ|). Below
    magnitude 1 this is the absolute tol.
    """
    if not isinstance(q, QuotientMatrix):
        q = QuotientMatrix(np.asarray(q, dtype=float), equitable=False)
    if q.k == 0:
        return Spectrum((), coalesce_tol)
    ev = linalg.eigvals(q.entries)
    if q.equitable:
        scale = max(1.0, float(np.abs(ev).max()))
        worst = float(np.abs(ev.imag).max())
        if worst > tol * scale:
            raise ComplexSpectrum(worst)
    return Spectrum.from_values(ev.real.tolist(), coalesce_tol)
