"""The subexponential sequence

    C_1 = 1,  C_2 given,
    C_{2n}   = D C_n,
    C_{2n+1} = D C_n**(2n/(4n+2)) C_{n+1}**((2n+2)/(4n+2)),

and its closed form.  Writing ``n = 2**k - l`` with ``k`` minimal and
``0 <= l < 2**(k-1)``:

    C_n = D**(k-1) C_2**((n-l)/n)                          if l <= 2**(k-2)
    C_n = D**((n(k-1) + 2**(k-1) - 2l)/n) C_2**(2**(k-1)/n)  otherwise.

``D`` is a free parameter; the closed form is an identity for every ``D``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .classical import HistoricalBound, historical_bound
from .errors import DomainError
from .special import LN_2, LN_PI, LogValue

DEFAULT_D = 1.44


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class Branch(enum.Enum):
    STAR = "*"
    DOUBLE_STAR = "**"


def default_c2(field_: Field) -> LogValue:
    if Field(field_) is Field.REAL:
        return LogValue(0.5 * LN_2)
    return LogValue(LN_2 - 0.5 * LN_PI)


@dataclass(frozen=True)
class SubexpParams:
    """``D``, ``C_2`` and the scalar field.  ``c2`` defaults by field:
    ``sqrt(2)`` for real scalars, ``2/sqrt(pi)`` for complex."""

    D: float = DEFAULT_D
    field: Field = Field.REAL
    c2: Optional[LogValue] = None

    def __post_init__(self):
        if not (self.D > 0 and math.isfinite(self.D)):
            raise DomainError(f"D must be finite and positive, got {self.D!r}")
        object.__setattr__(self, "field", Field(self.field))
        if self.c2 is None:
            object.__setattr__(self, "c2", default_c2(self.field))

    @property
    def ln_d(self) -> float:
        return math.log(self.D)


@dataclass(frozen=True)
class Decomposition:
    n: int
    k: int
    l: int
    branch: Branch


def decompose(n: int) -> Decomposition:
    """Write ``n = 2**k - l`` with ``k`` minimal and pick the closed-form branch."""
    if n < 3:
        raise DomainError(f"decomposition requires n >= 3, got {n}")
    k = (n - 1).bit_length()
    l = (1 << k) - n
    branch = Branch.STAR if l <= 1 << (k - 2) else Branch.DOUBLE_STAR
    return Decomposition(n, k, l, branch)


def _exponent_numerators(d: Decomposition) -> tuple[int, int]:
    # (n * e_D, n * e_C), both integers
    n, k, l = d.n, d.k, d.l
    if d.branch is Branch.STAR:
        return n * (k - 1), n - l
    return n * (k - 1) + (1 << (k - 1)) - 2 * l, 1 << (k - 1)


def closed_exponents(n: int) -> tuple[Fraction, Fraction]:
    """Exact ``(e_D, e_C)`` with ``C_n = D**e_D * C_2**e_C``."""
    d = decompose(n)
    num_d, num_c = _exponent_numerators(d)
    e_d, e_c = Fraction(num_d, n), Fraction(num_c, n)
    if d.l == 1 << (d.k - 2):
        # both branches must agree on the boundary l = 2**(k-2)
        alt = _exponent_numerators(Decomposition(n, d.k, d.l, Branch.DOUBLE_STAR))
        assert (Fraction(alt[0], n), Fraction(alt[1], n)) == (e_d, e_c)
    return e_d, e_c


def c_subexp_closed(n: int, params: SubexpParams) -> LogValue:
    if n < 3:
        raise DomainError(f"closed formula requires n >= 3, got {n}; use c_subexp_recursive")
    num_d, num_c = _exponent_numerators(decompose(n))
    return LogValue(num_d / n * params.ln_d + num_c / n * params.c2.ln)


def c_subexp_recursive(n: int, params: SubexpParams) -> LogValue:
    """``C_n`` from the recursion, evaluating only the indices it touches.

    Level by level the needed indices are ``{floor(n/2**i), ceil(n/2**i)}``,
    so at most two per level; they are evaluated bottom-up.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    levels = [{n}]
    while max(levels[-1]) > 2:
        nxt = set()
        for j in levels[-1]:
            if j > 2:
                nxt.update((j // 2, (j + 1) // 2))
        levels.append(nxt)
    memo = {1: 0.0, 2: params.c2.ln}
    ln_d = params.ln_d
    for level in reversed(levels):
        for j in sorted(level):
            if j in memo:
                continue
            h = j // 2
            if j % 2 == 0:
                memo[j] = ln_d + memo[h]
            else:
                memo[j] = ln_d + (2 * h * memo[h] + (2 * h + 2) * memo[h + 1]) / (4 * h + 2)
    return LogValue(memo[n])


def subexp_recursive_table(n_max: int, params: SubexpParams) -> list[float]:
    """``ln C_n`` for ``n = 0..n_max`` by the recursion (entry 0 is NaN)."""
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    out = [math.nan] * (n_max + 1)
    out[1] = 0.0
    out[2] = params.c2.ln
    ln_d = params.ln_d
    for j in range(3, n_max + 1):
        h = j // 2
        if j % 2 == 0:
            out[j] = ln_d + out[h]
        else:
            out[j] = ln_d + (2 * h * out[h] + (2 * h + 2) * out[h + 1]) / (4 * h + 2)
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    n_max: int
    max_deviation: float
    argmax: int
    tol: float
    ok: bool


def verify_equivalence(n_max: int, params: SubexpParams, tol: float = 1e-9) -> EquivalenceReport:
    """Largest ``|ln C_closed - ln C_recursive|`` over ``3 <= n <= n_max``."""
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    if not tol > 0:
        raise DomainError("tol must be positive")
    rec = subexp_recursive_table(n_max, params)
    worst, arg = 0.0, 3
    for n in range(3, n_max + 1):
        dev = abs(c_subexp_closed(n, params).ln - rec[n])
        if dev > worst:
            worst, arg = dev, n
    return EquivalenceReport(n_max, worst, arg, tol, worst <= tol)


@dataclass(frozen=True)
class GrowthEntry:
    n: int
    ln_c: float
    ln_c_over_ln_n: float


def growth_profile(n_max: int, params: SubexpParams) -> list[GrowthEntry]:
    if n_max < 3:
        raise DomainError(f"n_max must be >= 3, got {n_max}")
    out = []
    for n in range(3, n_max + 1):
        ln_c = c_subexp_closed(n, params).ln
        out.append(GrowthEntry(n, ln_c, ln_c / math.log(n)))
    return out


def queffelec_crossover(params: SubexpParams, m_max: int = 4096) -> Optional[int]:
    """Smallest ``m*`` such that ``C_m < (2/sqrt(pi))**(m-1)`` for every
    ``m`` in ``[m*, m_max]``; None if it fails at ``m_max`` itself."""
    m_star = None
    for m in range(m_max, 2, -1):
        if c_subexp_closed(m, params).ln < historical_bound(m, HistoricalBound.QUEFFELEC).ln:
            m_star = m
        else:
            break
    return m_star
