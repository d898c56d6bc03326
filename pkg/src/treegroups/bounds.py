"""Closed-form systole, volume and rigidity-radius lower bounds.

Everything is a pure function of (E, D, k, n, C_n).  The core quantity is
s0 = (1/E) log(1 + 4/(e^{(4k+10) E D} - 1)); for large exponents the double
path loses all digits (4/(e^x - 1) ~ 4 e^{-x} underflows), so evaluation
switches to 60-digit arithmetic when (4k+10) E D exceeds the trigger.

C_n (the dimensional systolic constant) is a user-supplied parameter with
default 1.0; no value for it is derived here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import mpmath

HIGH_PRECISION_TRIGGER = 30.0
HIGH_PRECISION_DPS = 60

SMALL_X_THRESHOLD = 21.0 / 125.0


def _validate_ed(E: float, D: float) -> None:
    if not (E > 0 and D > 0):
        raise ValueError(f"E and D must be positive, got E={E}, D={D}")


def _validate_k(k: int) -> None:
    if int(k) != k or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k}")


def s0_core(x: float, mode: str = "auto") -> float:
    """log(1 + 4/(e^x - 1)) with automatic high-precision fallback."""
    if mode not in ("auto", "double", "high"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "double" or (mode == "auto" and x <= HIGH_PRECISION_TRIGGER):
        if x > 700.0:
            return 0.0  # e^x overflows a double; the true value underflows anyway
        return math.log1p(4.0 / math.expm1(x))
    with mpmath.workdps(HIGH_PRECISION_DPS):
        return float(mpmath.log1p(4 / mpmath.expm1(mpmath.mpf(x))))


def s0_general(E: float, D: float, k: int, mode: str = "auto") -> float:
    """(1/E) log(1 + 4/(e^{(4k+10) E D} - 1)): the systole lower bound for a
    non-elementary k-acylindrical splitting."""
    _validate_ed(E, D)
    _validate_k(k)
    return s0_core((4 * k + 10) * E * D, mode) / E


def s0_jsj(E: float, D: float, mode: str = "auto") -> float:
    """The canonical JSJ specialization k = 4 (exponent 26)."""
    return s0_general(E, D, 4, mode)


def hyperbolic_branch_bound(E: float, D: float) -> float:
    """e^{-6 E D} / E: the systole bound from the free-semigroup branch."""
    _validate_ed(E, D)
    return math.exp(-6.0 * E * D) / E


def free_product_bound(E: float, D: float, mode: str = "auto") -> float:
    """(1/E) log(1 + 4/(e^{2 E D} - 1)): the sharper bound for torsionless
    free products (trivial edge stabilizers, k = 0)."""
    _validate_ed(E, D)
    return s0_core(2.0 * E * D, mode) / E


def delta0(E: float, D: float, mode: str = "auto") -> float:
    """Gromov-Hausdorff rigidity radius: s0_jsj / 40."""
    return s0_jsj(E, D, mode) / 40.0


def volume_lower_bound(E: float, D: float, k: int, n: int = 3,
                       C_n: float = 1.0, mode: str = "auto") -> float:
    """C_n * s0_general^n (volume bound for 1-essential closed manifolds)."""
    _validate_ed(E, D)
    _validate_k(k)
    if int(n) != n or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n}")
    if not C_n > 0:
        raise ValueError(f"C_n must be positive, got {C_n}")
    return C_n * s0_general(E, D, k, mode) ** n


# ---------------------------------------------------------------------------
# the proof's case comparison
# ---------------------------------------------------------------------------


def threshold_implication_holds(x: float, k: int) -> bool:
    """For k >= 1: e^{-6x} < log(1 + 4/(e^{(4k+10)x} - 1)) forces x <= 21/125."""
    if k < 1 or x <= 0:
        raise ValueError("the implication is about k >= 1 and x > 0")
    premise = math.exp(-6.0 * x) < s0_core((4 * k + 10) * x)
    return (not premise) or (x <= SMALL_X_THRESHOLD)


def small_x_auxiliary_holds(x: float) -> bool:
    """The auxiliary inequality 2x < e^{-6x} (valid on 0 < x <= 21/125)."""
    if x <= 0:
        raise ValueError("x must be positive")
    return 2.0 * x < math.exp(-6.0 * x)


@dataclass(frozen=True)
class CaseComparison:
    dominant_branch: str  # free_product | hyperbolic_branch | elliptic_branch
    hyperbolic_branch: float
    s0_general: float
    effective_bound: float
    threshold_implication: Optional[bool]  # None when k = 0
    small_x_auxiliary: Optional[bool]  # None when x > 21/125

    def to_json_dict(self) -> dict:
        return {
            "dominant_branch": self.dominant_branch,
            "hyperbolic_branch": self.hyperbolic_branch,
            "s0_general": self.s0_general,
            "effective_bound": self.effective_bound,
            "threshold_implication": self.threshold_implication,
            "small_x_auxiliary": self.small_x_auxiliary,
        }


def compare_case_bounds(E: float, D: float, k: int) -> CaseComparison:
    """Compare the proof's branch bounds; the headline bound stays s0_general
    (that is the guaranteed bound), with k = 0 routed to the free-product bound.

    The two threshold facts of the comparison argument are exposed as
    sub-assertions: the implication "branch premise forces x <= 21/125" and
    the small-x inequality 2x < e^{-6x}.
    """
    _validate_ed(E, D)
    _validate_k(k)
    hb = hyperbolic_branch_bound(E, D)
    if k == 0:
        s0 = s0_general(E, D, 0)
        return CaseComparison("free_product", hb, s0, free_product_bound(E, D),
                              None, None)
    s0 = s0_general(E, D, k)
    x = E * D
    dominant = "hyperbolic_branch" if hb >= s0 else "elliptic_branch"
    aux = small_x_auxiliary_holds(x) if x <= SMALL_X_THRESHOLD else None
    return CaseComparison(dominant, hb, s0, s0,
                          threshold_implication_holds(x, k), aux)


# ---------------------------------------------------------------------------
# full report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    E: float
    D: float
    k: int
    n: int
    C_n: float
    s0_general: float
    s0_jsj: float
    hyperbolic_branch: float
    free_product_k0: float
    effective_systole_lb: float
    volume_lb: Optional[float]
    delta0: float
    dominant_branch: str
    volume_note: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "inputs": {"E": self.E, "D": self.D, "k": self.k,
                       "n": self.n, "C_n": self.C_n},
            "s0_general": self.s0_general,
            "s0_jsj": self.s0_jsj,
            "hyperbolic_branch": self.hyperbolic_branch,
            "free_product_k0": self.free_product_k0,
            "effective_systole_lb": self.effective_systole_lb,
            "volume_lb": self.volume_lb,
            "delta0": self.delta0,
            "dominant_branch": self.dominant_branch,
            "volume_note": self.volume_note,
        }


def build_bounds_report(E: float, D: float, k: int, n: int = 3,
                        C_n: float = 1.0, include_volume: bool = True,
                        volume_note: Optional[str] = None) -> BoundsReport:
    comparison = compare_case_bounds(E, D, k)
    volume = volume_lower_bound(E, D, k, n, C_n) if include_volume else None
    return BoundsReport(
        E=E, D=D, k=k, n=n, C_n=C_n,
        s0_general=s0_general(E, D, k),
        s0_jsj=s0_jsj(E, D),
        hyperbolic_branch=hyperbolic_branch_bound(E, D),
        free_product_k0=free_product_bound(E, D),
        effective_systole_lb=comparison.effective_bound,
        volume_lb=volume,
        delta0=delta0(E, D),
        dominant_branch=comparison.dominant_branch,
        volume_note=volume_note,
    )
