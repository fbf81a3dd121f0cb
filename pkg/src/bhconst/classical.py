"""Real-scalar Bohnenblust-Hille constants built from Khinchin constants.

``C_2 = 2**(1/2)``, ``C_3 = 2**(5/6)`` and for ``n > 3``

    C_n = 2**(1/2) * (C_{n-2} / A_p**2)**((n-2)/n),   p = (2n-4)/(n-1).

While ``p < p0`` every ``A_p`` is a power of two and ``C_n`` has an exact
dyadic exponent.  For even ``n > 14`` the recursion telescopes into
``C_n = 2**((n+2)/8) * r_n`` with an explicit Gamma product for ``r_n``.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from . import khinchin
from .errors import DomainError
from .special import EULER_GAMMA, LN_2, LN_PI, LogValue, NeumaierSum, compensated_sum, log_gamma

#: published r_n values, as printed (digit count matters for comparison)
PAPER_RN_PRINTED = {
    30: "1.387",
    50: "1.404",
    100: "1.420",
    250: "1.431",
    500: "1.435",
    1000: "1.4374",
    10000: "1.43989",
    100000: "1.44021",
}
PAPER_RN_TABLE = {n: float(v) for n, v in PAPER_RN_PRINTED.items()}


class Method(enum.Enum):
    RECURSIVE = "recursive"
    SMALL_CLOSED = "small_closed"
    LARGE_CLOSED = "large_closed"


class HistoricalBound(enum.Enum):
    BH1931 = "bh1931"
    KAIJSER_DAVIE = "kaijser_davie"
    QUEFFELEC = "queffelec"


@dataclass(frozen=True)
class ConstantTableRow:
    n: int
    value: LogValue
    r_n: Optional[float] = None
    method: Method = Method.RECURSIVE

    def __post_init__(self):
        if (self.r_n is not None) != (self.n % 2 == 0 and self.n > 14):
            raise DomainError("r_n is present exactly for even n > 14")


def khinchin_exponent(n: int) -> Fraction:
    """The Khinchin exponent ``(2n-4)/(n-1)`` used at recursion step ``n``."""
    return Fraction(2 * n - 4, n - 1)


def _check_large_even(n: int) -> None:
    if n % 2 or n <= 14:
        raise DomainError(f"expected an even integer n > 14, got {n}")


def _base_ln(n: int) -> float:
    return (0.5 if n == 2 else 5.0 / 6.0) * LN_2


def c_real_recursive(n: int) -> LogValue:
    """``C_{R,n}`` by iterating the two-step recursion in log space."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    j = 2 if n % 2 == 0 else 3
    ln_c = _base_ln(j)
    while j < n:
        j += 2
        ln_a = khinchin.best_A(float(khinchin_exponent(j))).ln
        ln_c = 0.5 * LN_2 + (j - 2) / j * (ln_c - 2.0 * ln_a)
    return LogValue(ln_c)


def c_real_recursive_table(n_max: int) -> list[float]:
    """``ln C_{R,n}`` for ``n = 0..n_max`` (entries 0 and 1 are NaN)."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    out = [math.nan] * (n_max + 1)
    out[2] = _base_ln(2)
    if n_max >= 3:
        out[3] = _base_ln(3)
    for j in range(4, n_max + 1):
        ln_a = khinchin.best_A(float(khinchin_exponent(j))).ln
        out[j] = 0.5 * LN_2 + (j - 2) / j * (out[j - 2] - 2.0 * ln_a)
    return out


def c_real_recursive_exponent(n: int) -> Optional[Fraction]:
    """Exact exponent ``e`` with ``C_{R,n} = 2**e``, or None once the
    recursion meets a Khinchin constant off the dyadic branch.

    ``A_p**2 = 2**(1 - 2/p)`` while ``p < p0``; the branch is decided by
    comparing against the numerically computed ``p0``, not by a fixed n.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    j = 2 if n % 2 == 0 else 3
    e = Fraction(1, 2) if j == 2 else Fraction(5, 6)
    while j < n:
        j += 2
        p = khinchin_exponent(j)
        if khinchin.regime(float(p)).regime is not khinchin.Regime.BELOW_P0:
            return None
        a_sq = 1 - 2 / p
        e = Fraction(1, 2) + Fraction(j - 2, j) * (e - a_sq)
    return e


def c_real_small_closed(n: int) -> Fraction:
    """Exponent of 2 in the parity closed form for ``2 <= n <= 14``."""
    if not 2 <= n <= 14:
        raise DomainError(f"closed form only holds for 2 <= n <= 14, got {n}")
    if n % 2 == 0:
        return Fraction(n * n + 6 * n - 8, 8 * n)
    return Fraction(n * n + 6 * n - 7, 8 * n)


@functools.lru_cache(maxsize=None)
def _gamma_term(k: int) -> float:
    # (2k+1) ln Gamma((6k+1)/(4k+2))
    return (2 * k + 1) * log_gamma((6 * k + 1) / (4 * k + 2))


def _rn_prefactor(n: int) -> tuple[float, float]:
    # exponent numerators kept as integers until the final division
    pi_part = (n + 14) * (n - 14) / (8 * n) * LN_PI
    two_part = ((n + 12) * (n - 14) - 24) / (4 * n) * LN_2
    return pi_part, two_part


def ln_r_n(n: int) -> float:
    _check_large_even(n)
    gamma_sum = compensated_sum(_gamma_term(k) for k in range(7, (n - 2) // 2 + 1))
    pi_part, two_part = _rn_prefactor(n)
    return compensated_sum((pi_part, -two_part, -gamma_sum / n))


def r_n(n: int) -> float:
    """Correction factor in ``C_{R,n} = 2**((n+2)/8) r_n`` for even ``n > 14``."""
    return math.exp(ln_r_n(n))


def c_real_large_closed(n: int) -> LogValue:
    _check_large_even(n)
    return LogValue((n + 2) / 8 * LN_2 + ln_r_n(n))


@functools.lru_cache(maxsize=None)
def _s_factor(j: int) -> float:
    # 2 ln A_p with p = 4j/(2j+1), weighted by 2j (telescoped exponent times n)
    return 2 * j * 2.0 * khinchin.best_A(4 * j / (2 * j + 1)).ln


def s_n_oracle(n: int) -> LogValue:
    """``s_n``, the product of squared Khinchin constants in ``C_{R,n} = d_n / s_n``.

    The j-th factor ``A_{4j/(2j+1)}**2`` carries the telescoped exponent
    ``(2j/(2j+2)) ... ((n-2)/n) = 2j/n``.
    """
    _check_large_even(n)
    total = compensated_sum(_s_factor(j) for j in range(1, (n - 2) // 2 + 1))
    return LogValue(total / n)


def telescoped_exponent(j: int, n: int) -> Fraction:
    """Exponent of the j-th factor of ``s_n`` as the literal product."""
    out = Fraction(1)
    for i in range(j + 1, n // 2 + 1):
        out *= Fraction(2 * i - 2, 2 * i)
    return out


def d_n(n: int) -> LogValue:
    _check_large_even(n)
    return LogValue.power_of_two(Fraction(n + 2, 8))


@dataclass(frozen=True)
class RnSweep:
    max_identity_dev: float
    argmax_identity: int
    max_recursive_dev: float
    argmax_recursive: int
    count: int


def rn_sweep(n_max: int) -> Iterator[tuple[int, float, float]]:
    """Yield ``(n, ln r_n, ln s_n)`` for every even ``16 <= n <= n_max``.

    Both sums are carried incrementally so the whole sweep is linear in
    ``n_max``; the two running sums share no terms.
    """
    gamma_acc = NeumaierSum()
    s_acc = NeumaierSum()
    for j in range(1, 7):
        s_acc.add(_s_factor(j))
    for n in range(16, n_max + 1, 2):
        j = (n - 2) // 2
        gamma_acc.add(_gamma_term(j))
        s_acc.add(_s_factor(j))
        pi_part, two_part = _rn_prefactor(n)
        ln_r = compensated_sum((pi_part, -two_part, -gamma_acc.value / n))
        yield n, ln_r, s_acc.value / n


def verify_rn_identities(n_max: int) -> RnSweep:
    """Max deviations of ``ln(r_n s_n)`` and ``ln C_closed - ln C_recursive``."""
    if n_max < 16:
        raise DomainError(f"n_max must be >= 16, got {n_max}")
    rec = c_real_recursive_table(n_max)
    worst_id = (0.0, 16)
    worst_rec = (0.0, 16)
    count = 0
    for n, ln_r, ln_s in rn_sweep(n_max):
        count += 1
        dev = abs(ln_r + ln_s)
        if dev > worst_id[0]:
            worst_id = (dev, n)
        dev = abs((n + 2) / 8 * LN_2 + ln_r - rec[n])
        if dev > worst_rec[0]:
            worst_rec = (dev, n)
    return RnSweep(worst_id[0], worst_id[1], worst_rec[0], worst_rec[1], count)


def conjecture_limit() -> float:
    """``e**(1 - gamma/2) / sqrt(2)``, the conjectured limit of ``r_n``."""
    return math.exp(1.0 - 0.5 * EULER_GAMMA - 0.5 * LN_2)


def conjecture_gap(n: int) -> float:
    return r_n(n) - conjecture_limit()


def historical_bound(m: int, kind: HistoricalBound) -> LogValue:
    """Earlier upper bounds for the complex constant ``C_{C,m}``."""
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    kind = HistoricalBound(kind)
    if kind is HistoricalBound.BH1931:
        return LogValue((m + 1) / (2 * m) * math.log(m) + (m - 1) / 2 * LN_2)
    if kind is HistoricalBound.KAIJSER_DAVIE:
        return LogValue((m - 1) / 2 * LN_2)
    return LogValue((m - 1) * (LN_2 - 0.5 * LN_PI))


def table_row(n: int) -> ConstantTableRow:
    """Best available evaluation of ``C_{R,n}``, tagged with its method."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if n <= 14:
        return ConstantTableRow(n, LogValue.power_of_two(c_real_small_closed(n)), None, Method.SMALL_CLOSED)
    if n % 2:
        return ConstantTableRow(n, c_real_recursive(n), None, Method.RECURSIVE)
    ln_r = ln_r_n(n)
    return ConstantTableRow(n, LogValue((n + 2) / 8 * LN_2 + ln_r), math.exp(ln_r), Method.LARGE_CLOSED)
