"""
Evaluated published formulas and their deviation from derived values.

A PrintedEigenvalue pairs a published closed-form eigenvalue with the value
derived from the block structure; a PrintedMatrix pairs a published quotient
with the operational one of the same partition. Neither ever feeds an
assembled spectrum, they are only reported.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from RDS.src.spectral import MATCH_TOL, Spectrum, general_eigenvalues, spectra_equal

UNPARSEABLE = "unparseable"


def evaluate(formula: Callable[[], float]) -> Optional[float]:
    """Evaluate a printed expression; None when it cannot be evaluated."""
    try:
        value = float(formula())
    except (ZeroDivisionError, ValueError, OverflowError):
        return None
    return value if np.isfinite(value) else None


@dataclass(frozen=True)
class PrintedEigenvalue:
    label: str
    printed: Optional[float]
    printed_multiplicity: int
    derived: float
    derived_multiplicity: int
    note: str = ""

    @property
    def deviation(self) -> Optional[float]:
        if self.printed is None:
            return None
        return abs(self.printed - self.derived)

    def agrees(self, tol: float = MATCH_TOL) -> bool:
        return (
            self.printed is not None
            and abs(self.printed - self.derived) <= tol
            and self.printed_multiplicity == self.derived_multiplicity
        )

    def printed_supported(self, oracle: Spectrum, tol: float = MATCH_TOL) -> Optional[bool]:
        if self.printed is None:
            return None
        return oracle.count_near(self.printed, tol) >= self.printed_multiplicity

    def derived_supported(self, oracle: Spectrum, tol: float = MATCH_TOL) -> bool:
        return oracle.count_near(self.derived, tol) >= self.derived_multiplicity

    def to_json(self, oracle: Optional[Spectrum] = None, tol: float = MATCH_TOL) -> dict:
        out = {
            "kind": "eigenvalue",
            "label": self.label,
            "printed": self.printed,
            "printed_multiplicity": self.printed_multiplicity,
            "derived": self.derived,
            "derived_multiplicity": self.derived_multiplicity,
            "deviation": self.deviation,
            "agrees": self.agrees(tol),
        }
        if oracle is not None:
            out["printed_supported"] = self.printed_supported(oracle, tol)
            out["derived_supported"] = self.derived_supported(oracle, tol)
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True, eq=False)
class PrintedMatrix:
    label: str
    printed: Optional[np.ndarray]
    operational: np.ndarray
    note: str = ""

    @property
    def entry_deviation(self) -> Optional[float]:
        if self.printed is None:
            return None
        printed = np.asarray(self.printed, dtype=float)
        operational = np.asarray(self.operational, dtype=float)
        if printed.shape != operational.shape:
            return float("inf")
        return float(np.abs(printed - operational).max())

    @property
    def spectral_deviation(self) -> Optional[float]:
        """Largest gap between the sorted (real parts of the) two spectra."""
        if self.printed is None:
            return None
        printed = np.asarray(self.printed, dtype=float)
        operational = np.asarray(self.operational, dtype=float)
        if printed.shape != operational.shape:
            return float("inf")
        report = spectra_equal(general_eigenvalues(printed), general_eigenvalues(operational))
        return report.max_deviation

    def agrees(self, tol: float = MATCH_TOL) -> bool:
        dev = self.entry_deviation
        return dev is not None and dev <= tol

    def to_json(self, oracle: Optional[Spectrum] = None, tol: float = MATCH_TOL) -> dict:
        out = {
            "kind": "quotient",
            "label": self.label,
            "printed": None if self.printed is None else np.asarray(self.printed).tolist(),
            "operational": np.asarray(self.operational).tolist(),
            "entry_deviation": self.entry_deviation,
            "spectral_deviation": self.spectral_deviation,
            "agrees": self.agrees(tol),
        }
        if self.note:
            out["note"] = self.note
        return out


def printed_matrix(label: str, build: Callable[[], np.ndarray], operational: np.ndarray) -> PrintedMatrix:
    try:
        printed = np.asarray(build(), dtype=float)
    except (ZeroDivisionError, ValueError, OverflowError):
        return PrintedMatrix(label, None, operational, UNPARSEABLE)
    if not np.isfinite(printed).all():
        return PrintedMatrix(label, None, operational, UNPARSEABLE)
    return PrintedMatrix(label, printed, operational)


PrintedClaim = Union[PrintedEigenvalue, PrintedMatrix]
