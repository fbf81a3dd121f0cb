"""Best lower Khinchin constants and an exact Rademacher-average oracle.

The best lower constant switches formula at the threshold ``p0``, the root
in (1, 2) of ``Gamma((p + 1) / 2) = sqrt(pi) / 2``.  Below it the constant
is the dyadic ``2**(1/2 - 1/p)``; between ``p0`` and 2 a Gamma expression
takes over, and from ``p = 2`` on the constant is 1 (Haagerup).  The Gamma
expression exceeds 1 for ``p > 2`` and is not a valid lower constant there.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError, SizeError
from .special import LN_2, LN_SQRT_PI, LogValue, compensated_sum, find_root_bracketed, log_gamma

MAX_ENUMERATION_DIM = 20
# p within this distance of p0 is assigned to the Gamma branch
P0_SNAP = 1e-12

# Gamma((p+1)/2) = sqrt(pi)/2 holds trivially at p = 2 as well, so the
# bracket must stop short of 2.  Gamma has its minimum near p = 1.923.
_P0_BRACKET = (1.5, 1.9)


class Regime(enum.Enum):
    BELOW_P0 = "below_p0"
    ABOVE_P0 = "above_p0"
    AT_LEAST_2 = "at_least_2"


@dataclass(frozen=True)
class KhinchinRegime:
    p: float
    regime: Regime
    p0: float


def _p0_equation(p: float) -> float:
    return log_gamma((p + 1.0) / 2.0) - (LN_SQRT_PI - LN_2)


@functools.lru_cache(maxsize=None)
def p0() -> float:
    """Threshold exponent where the two best-constant formulas meet (~1.8474)."""
    return find_root_bracketed(_p0_equation, *_P0_BRACKET, tol=1e-13)


def regime(p: float) -> KhinchinRegime:
    if not p > 0:
        raise DomainError(f"Khinchin exponent must be positive, got {p!r}")
    t = p0()
    if p < t - P0_SNAP:
        r = Regime.BELOW_P0
    elif p < 2.0:
        r = Regime.ABOVE_P0
    else:
        r = Regime.AT_LEAST_2
    return KhinchinRegime(float(p), r, t)


def lower_branch_ln(p: float) -> float:
    """``ln(2**(1/2 - 1/p))``."""
    return (0.5 - 1.0 / p) * LN_2


def upper_branch_ln(p: float) -> float:
    """``ln(sqrt(2) * (Gamma((p+1)/2) / sqrt(pi))**(1/p))``."""
    return 0.5 * LN_2 + (log_gamma((p + 1.0) / 2.0) - LN_SQRT_PI) / p


def best_A(p: float) -> LogValue:
    """Best constant A_p in the lower Khinchin inequality."""
    p = float(p)
    r = regime(p).regime
    if r is Regime.BELOW_P0:
        return LogValue(lower_branch_ln(p))
    if r is Regime.ABOVE_P0:
        return LogValue(upper_branch_ln(p))
    return LogValue(0.0)


def _signed_sums(a: np.ndarray) -> np.ndarray:
    # all sums a[0] + sum_{i>0} eps_i a[i]; the sign of a[0] is fixed by symmetry
    sums = np.array([a[0]])
    for x in a[1:]:
        sums = np.concatenate((sums + x, sums - x))
    return sums


def rademacher_p_mean(a: Sequence[float], p: float) -> float:
    """``(E |sum eps_i a_i|**p)**(1/p)`` over uniform random signs, computed
    by enumerating every sign vector.

    This equals the integral of ``|sum a_n r_n(t)|**p`` over [0, 1] with
    Rademacher functions ``r_n``.  Cost is ``2**(N-1)``.
    """
    a = np.asarray(a, dtype=float).ravel()
    if a.size == 0:
        raise DomainError("coefficient vector must be non-empty")
    if a.size > MAX_ENUMERATION_DIM:
        raise SizeError(f"N={a.size} exceeds the enumeration cap {MAX_ENUMERATION_DIM}")
    if not p > 0:
        raise DomainError(f"p must be positive, got {p!r}")
    if not np.all(np.isfinite(a)):
        raise DomainError("coefficients must be finite")
    powers = np.abs(_signed_sums(a)) ** p
    mean = compensated_sum(powers.tolist()) / powers.size
    return mean ** (1.0 / p)


class KhinchinCheck(NamedTuple):
    ratio: float
    ok: bool


def verify_khinchin_lower(a: Sequence[float], p: float) -> KhinchinCheck:
    """Compare the exact p-th Rademacher mean against ``A_p * ||a||_2``.

    A zero vector gives equality ``0 = 0`` and is reported as ratio 1.
    """
    lhs = rademacher_p_mean(a, p)
    norm = math.sqrt(compensated_sum(float(x) * float(x) for x in np.asarray(a, dtype=float).ravel()))
    if norm == 0.0:
        return KhinchinCheck(1.0, True)
    ratio = lhs / (best_A(p).value * norm)
    return KhinchinCheck(ratio, ratio >= 1.0 - 1e-10)
