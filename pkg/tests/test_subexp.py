import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bhconst.classical import HistoricalBound, historical_bound
from bhconst.errors import DomainError
from bhconst.special import LogValue
from bhconst.subexp import (
    Branch,
    Decomposition,
    Field,
    SubexpParams,
    c_subexp_closed,
    c_subexp_recursive,
    closed_exponents,
    decompose,
    growth_profile,
    queffelec_crossover,
    subexp_recursive_table,
    verify_equivalence,
)

REAL = SubexpParams(1.44, Field.REAL)


def literal_recursion(n, D, c2):
    # direct transcription of the two rules, plain recursion in value space
    if n == 1:
        return 1.0
    if n == 2:
        return c2
    h = n // 2
    if n % 2 == 0:
        return D * literal_recursion(h, D, c2)
    return D * literal_recursion(h, D, c2) ** (2 * h / (4 * h + 2)) * literal_recursion(h + 1, D, c2) ** ((2 * h + 2) / (4 * h + 2))


def test_params_defaults():
    assert SubexpParams(field=Field.REAL).c2.value == pytest.approx(math.sqrt(2))
    assert SubexpParams(field=Field.COMPLEX).c2.value == pytest.approx(2 / math.sqrt(math.pi))
    assert SubexpParams(2.0, Field.REAL, LogValue.of(3.0)).c2.value == pytest.approx(3.0)
    with pytest.raises(DomainError):
        SubexpParams(0.0)


def test_decompose_examples():
    assert decompose(4) == Decomposition(4, 2, 0, Branch.STAR)
    d = decompose(3)
    assert (d.k, d.l, d.branch) == (2, 1, Branch.STAR)
    d = decompose(5)
    assert (d.k, d.l, d.branch) == (3, 3, Branch.DOUBLE_STAR)
    for n in (2, 1, 0):
        with pytest.raises(DomainError):
            decompose(n)


def test_decompose_invariants_up_to_2_20():
    for n in range(3, 2**20 + 1):
        k = (n - 1).bit_length()
        l = (1 << k) - n
        assert 0 <= l < 1 << (k - 1)
    # spot-check the function itself against a brute-force minimal k
    for n in list(range(3, 5000)) + [2**20 - 1, 2**20, 2**19 + 1]:
        d = decompose(n)
        k = 1
        while 2**k < n:
            k += 1
        assert (d.k, 2**d.k - d.l) == (k, n)
        assert 0 <= d.l < 2 ** (d.k - 1)
        assert (d.branch is Branch.STAR) == (d.l <= 2 ** (d.k - 2))


def test_recursive_examples():
    assert c_subexp_recursive(1, REAL).value == 1.0
    assert c_subexp_recursive(2, REAL).value == pytest.approx(math.sqrt(2))
    assert c_subexp_recursive(3, REAL).value == pytest.approx(1.44 * math.sqrt(2) ** (2 / 3))
    with pytest.raises(DomainError):
        c_subexp_recursive(0, REAL)


def test_recursive_matches_literal_recursion():
    for D, c2 in ((1.44, math.sqrt(2)), (2.0, 1.3), (0.9, 1.0)):
        p = SubexpParams(D, Field.REAL, LogValue.of(c2))
        table = subexp_recursive_table(300, p)
        for n in range(1, 301):
            want = math.log(literal_recursion(n, D, c2))
            assert c_subexp_recursive(n, p).ln == pytest.approx(want, abs=1e-12)
            assert table[n] == pytest.approx(want, abs=1e-12)


def test_closed_examples():
    D, c2 = 1.44, math.sqrt(2)
    for k in range(2, 12):
        assert c_subexp_closed(2**k, REAL).value == pytest.approx(D ** (k - 1) * c2, rel=1e-13)
    assert closed_exponents(5) == (Fraction(8, 5), Fraction(4, 5))
    assert c_subexp_closed(5, REAL).value == pytest.approx(D**1.6 * c2**0.8, rel=1e-14)
    assert closed_exponents(3) == (Fraction(1), Fraction(2, 3))
    assert c_subexp_closed(3, REAL).ln == pytest.approx(c_subexp_recursive(3, REAL).ln, abs=1e-15)
    with pytest.raises(DomainError):
        c_subexp_closed(2, REAL)


def test_exponents_by_branch():
    for n in range(3, 3000):
        d = decompose(n)
        e_d, e_c = closed_exponents(n)
        if d.branch is Branch.STAR:
            assert e_d == d.k - 1 and e_c == Fraction(n - d.l, n)
        else:
            assert e_c == Fraction(2 ** (d.k - 1), n)
            assert e_d == Fraction(n * (d.k - 1) + 2 ** (d.k - 1) - 2 * d.l, n)
            # the D exponent never exceeds k - 1 on this branch
            assert e_d < d.k - 1


def test_branch_boundary_agreement():
    for k in range(2, 20):
        n = 3 * 2 ** (k - 2)
        d = decompose(n)
        assert d.l == 2 ** (d.k - 2) and d.branch is Branch.STAR
        assert closed_exponents(n) == (Fraction(d.k - 1), Fraction(2, 3))


def test_equivalence_examples():
    assert verify_equivalence(16, REAL).max_deviation <= 1e-9
    assert verify_equivalence(65536, SubexpParams(2.0, Field.REAL)).ok
    rep = verify_equivalence(16, SubexpParams(1.0, Field.REAL, LogValue(0.0)))
    assert rep.max_deviation == 0.0 and rep.ok


def test_equivalence_grid():
    for D in (1.2, 1.44, 2.0):
        for f in Field:
            assert verify_equivalence(65536, SubexpParams(D, f)).max_deviation <= 1e-9


def test_equivalence_flags_a_wrong_formula(monkeypatch):
    # a typo'd (k+1) exponent on the double-star branch must be caught
    import bhconst.subexp as sx

    orig = sx._exponent_numerators

    def typo(d):
        if d.branch is Branch.DOUBLE_STAR:
            return d.n * (d.k + 1) + (1 << (d.k - 1)) - 2 * d.l, 1 << (d.k - 1)
        return orig(d)

    monkeypatch.setattr(sx, "_exponent_numerators", typo)
    rep = verify_equivalence(64, REAL)
    assert not rep.ok and rep.argmax >= 5


@given(st.integers(3, 2**40), st.floats(1.0, 3.0), st.floats(1.0, 3.0))
def test_closed_vs_recursive_large_n(n, D, c2):
    p = SubexpParams(D, Field.REAL, LogValue.of(c2))
    assert c_subexp_closed(n, p).ln == pytest.approx(c_subexp_recursive(n, p).ln, abs=1e-9)


def test_monotone_growth():
    for D, c2 in ((1.0, 1.0), (1.2, math.sqrt(2)), (1.44, 2 / math.sqrt(math.pi)), (2.0, 1.0)):
        p = SubexpParams(D, Field.REAL, LogValue.of(c2))
        vals = [0.0, math.log(c2)] + [c_subexp_closed(n, p).ln for n in range(3, 4097)]
        assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))


def test_polynomial_type_bound():
    for D, c2 in ((1.0, 1.0), (1.44, math.sqrt(2)), (2.0, 2 / math.sqrt(math.pi)), (3.0, 2.5)):
        p = SubexpParams(D, Field.REAL, LogValue.of(c2))
        for e in growth_profile(2**16, p):
            assert e.ln_c <= (math.log2(e.n) + 1) * math.log(D) + math.log(c2) + 1e-12


def test_growth_profile_entries():
    prof = {e.n: e for e in growth_profile(8192, REAL)}
    for k in range(2, 14):
        assert prof[2**k].ln_c == pytest.approx((k - 1) * math.log(1.44) + 0.5 * math.log(2), abs=1e-13)
    assert prof[100].ln_c_over_ln_n == pytest.approx(prof[100].ln_c / math.log(100))
    # (ln C_n)/n: 11 ln 1.44 + ln sqrt2 over 4096 is ~1.064e-3; below 1e-3 from 8192 on
    assert prof[4096].ln_c / 4096 == pytest.approx((11 * math.log(1.44) + 0.5 * math.log(2)) / 4096)
    assert prof[4096].ln_c / 4096 > 1e-3
    assert all(prof[n].ln_c / n < 1e-3 for n in range(5000, 8193))


def test_queffelec_crossover():
    p = SubexpParams(1.44, Field.COMPLEX)
    m_star = queffelec_crossover(p, 4096)
    assert m_star is not None and m_star <= 16
    for m in range(m_star, 4097):
        assert c_subexp_closed(m, p).ln < historical_bound(m, HistoricalBound.QUEFFELEC).ln
    assert c_subexp_closed(m_star - 1, p).ln >= historical_bound(m_star - 1, HistoricalBound.QUEFFELEC).ln
    assert c_subexp_closed(16, p).value == pytest.approx(1.44**3 * 2 / math.sqrt(math.pi))
    assert c_subexp_closed(16, p).value < (2 / math.sqrt(math.pi)) ** 15
