"""Foundational numerics: log-gamma, compensated summation, bisection and
a few named constants.

Every constant in this package is a product of real powers, so values are
carried as natural logarithms (:class:`LogValue`). Sums with more than a
handful of terms go through :class:`NeumaierSum`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import BracketError, ConvergenceError, DomainError

# Euler-Mascheroni constant; the string carries more digits than a double.
EULER_GAMMA_DIGITS = "0.57721566490153286060651209008240243104215933593992"
EULER_GAMMA = float(EULER_GAMMA_DIGITS)
SQRT_PI = 1.7724538509055160272981674833411451827975494561224
LN_PI = 1.1447298858494001741434273513530587116472948129153
LN_2 = 0.69314718055994530941723212145817656807550013436026
LN_SQRT_PI = 0.57236494292470008707171367567652935582364740645766


@dataclass(frozen=True)
class NamedConstants:
    euler_gamma: float = EULER_GAMMA
    sqrt_pi: float = SQRT_PI
    ln_pi: float = LN_PI
    ln_2: float = LN_2


CONSTANTS = NamedConstants()


@dataclass(frozen=True, order=True)
class LogValue:
    """A strictly positive real stored as its natural logarithm."""

    ln: float

    def __post_init__(self):
        if not math.isfinite(self.ln):
            raise DomainError(f"LogValue requires a finite logarithm, got {self.ln!r}")

    @classmethod
    def of(cls, x: float) -> LogValue:
        if not (x > 0 and math.isfinite(x)):
            raise DomainError(f"LogValue requires a finite positive value, got {x!r}")
        return cls(math.log(x))

    @classmethod
    def power_of_two(cls, exponent) -> LogValue:
        return cls(float(exponent) * LN_2)

    @property
    def value(self) -> float:
        return math.exp(self.ln)

    @property
    def log2(self) -> float:
        return self.ln / LN_2

    def __mul__(self, other: LogValue) -> LogValue:
        return LogValue(self.ln + other.ln)

    def __truediv__(self, other: LogValue) -> LogValue:
        return LogValue(self.ln - other.ln)

    def __pow__(self, exponent: float) -> LogValue:
        return LogValue(self.ln * float(exponent))

    def __float__(self) -> float:
        return self.value


ONE = LogValue(0.0)


class NeumaierSum:
    """Running Kahan-Babuska-Neumaier accumulator.

    Terms are absorbed strictly in the order given, so results are
    bit-reproducible.
    """

    __slots__ = ("_s", "_c")

    def __init__(self):
        self._s = 0.0
        self._c = 0.0

    def add(self, x: float) -> None:
        if not math.isfinite(x):
            raise DomainError(f"non-finite summand {x!r}")
        s = self._s
        t = s + x
        if abs(s) >= abs(x):
            self._c += (s - t) + x
        else:
            self._c += (x - t) + s
        self._s = t

    @property
    def value(self) -> float:
        return self._s + self._c


def compensated_sum(terms: Iterable[float]) -> float:
    acc = NeumaierSum()
    for x in terms:
        acc.add(float(x))
    return acc.value


# (zeta(k) - 1) / k for k = 2, 3, ...; regenerate with tools/gen_lgamma_coeffs.py.
# Used in  ln Gamma(2 + z) = (1 - gamma) z + sum_k (-1)^k (zeta(k) - 1)/k z^k,  |z| < 2.
_ZETA_COEFFS = (
    0.32246703342411321824,
    0.067352301053198095133,
    0.020580808427784547879,
    0.0073855510286739852663,
    0.0028905103307415232858,
    0.0011927539117032609771,
    0.00050966952474304242234,
    0.00022315475845357937976,
    0.000099457512781808533715,
    0.0000449262367381331417,
    0.000020507212775670691553,
    9.439488275268395904e-6,
    4.3748667899074878042e-6,
    2.0392157538013662368e-6,
    9.5514121304074198329e-7,
    4.4924691987645660433e-7,
    2.1207184805554665869e-7,
    1.0043224823968099609e-7,
    4.7698101693639805658e-8,
    2.271109460894316491e-8,
    1.0838659214896954091e-8,
    5.1834750419700466551e-9,
    2.4836745438024783172e-9,
    1.1921401405860912074e-9,
    5.7313672416788620133e-10,
    2.7595228851242331452e-10,
    1.3304764374244489481e-10,
    6.4229645638381000221e-11,
    3.1044247747322272762e-11,
)

# Stirling correction B_{2j} / (2j (2j - 1)), j = 1..8.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

_HALF_LN_2PI = 0.91893853320467274178032973640561763986139747363778


def _series_tail(z: float) -> float:
    # sum_{k>=2} (-1)^k c_k z^k by Horner, valid for |z| <= 1/2 to full precision
    acc = 0.0
    for k in range(len(_ZETA_COEFFS) + 1, 1, -1):
        c = _ZETA_COEFFS[k - 2]
        acc = acc * z + (c if k % 2 == 0 else -c)
    return acc * z * z


def _stirling(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    for c in reversed(_STIRLING):
        corr = corr * inv2 + c
    return (x - 0.5) * math.log(x) - x + _HALF_LN_2PI + corr * inv


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for real ``x > 0``.

    Near the zeros at 1 and 2 a Taylor series in ``x - 1`` or ``x - 2`` keeps
    the error relative; elsewhere the argument is shifted onto that range or
    Stirling's series is used for ``x >= 10``.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    if x >= 10.0:
        return _stirling(x)
    shift = 0.0
    if x < 0.5:
        shift = -math.log(x)
        x += 1.0
    if x <= 1.5:
        z = x - 1.0
        return shift + (-math.log1p(z) + z * (1.0 - EULER_GAMMA) + _series_tail(z))
    prod = 1.0
    while x > 2.5:
        x -= 1.0
        prod *= x
    z = x - 2.0
    return shift + math.log(prod) + z * (1.0 - EULER_GAMMA) + _series_tail(z)


def find_root_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-13,
    max_iter: int = 200,
) -> float:
    """Bisection on ``[lo, hi]`` until the bracket is narrower than ``tol``.

    Returns the midpoint of the final bracket (or an endpoint/midpoint where
    ``f`` vanishes exactly).
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    if lo > hi:
        lo, hi = hi, lo
    flo, fhi = f(lo), f(hi)
    if not flo * fhi < 0:
        raise BracketError(f"f does not change sign on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid in (lo, hi):
            return mid
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    raise ConvergenceError(f"bisection did not reach width {tol} in {max_iter} iterations")
