"""Exit criteria, one test per criterion, each at its fixed tolerance.

Run with ``pytest tests/test_acceptance.py`` to get the per-criterion
PASS/FAIL summary at the end of the session.
"""
import math
import time

import numpy as np
import pytest

from bhconst import classical, khinchin, subexp, verifier
from bhconst.special import LogValue

RN_TOLERANCES = {
    30: 5e-4, 50: 5e-4, 100: 5e-4, 250: 5e-4, 500: 5e-4,
    1000: 5e-5,
    10000: 5e-6, 100000: 5e-6,
}


@pytest.mark.parametrize("n", sorted(RN_TOLERANCES))
def test_c1_rn_table(record, n):
    t0 = time.perf_counter()
    value = classical.r_n(n)
    elapsed = time.perf_counter() - t0
    dev = abs(value - classical.PAPER_RN_TABLE[n])
    ok = dev <= RN_TOLERANCES[n] and elapsed < 5.0
    record("1 r_n table reproduction", ok,
           f"n={n}: {value:.7f} vs {classical.PAPER_RN_PRINTED[n]} (|d|={dev:.2e}, tol {RN_TOLERANCES[n]:g})")
    assert dev <= RN_TOLERANCES[n]


def test_c1_rn_table_runtime(record):
    classical._gamma_term.cache_clear()
    t0 = time.perf_counter()
    for n in RN_TOLERANCES:
        classical.r_n(n)
    elapsed = time.perf_counter() - t0
    record("1 r_n table reproduction", elapsed < 5.0, f"runtime {elapsed:.2f}s < 5s")
    assert elapsed < 5.0


def test_c2_closed_vs_recursive(record):
    t0 = time.perf_counter()
    worst = (0.0, None)
    for D in (1.2, 1.44, 2.0):
        for c2 in (math.sqrt(2), 2 / math.sqrt(math.pi)):
            rep = subexp.verify_equivalence(65536, subexp.SubexpParams(D, subexp.Field.REAL, LogValue.of(c2)), 1e-9)
            if rep.max_deviation >= worst[0]:
                worst = (rep.max_deviation, (D, round(c2, 4), rep.argmax))
    elapsed = time.perf_counter() - t0
    ok = worst[0] <= 1e-9 and elapsed < 10.0
    record("2 closed-recursive equivalence", ok,
           f"max |d ln C_n| = {worst[0]:.2e} at (D, C2, n) = {worst[1]}, runtime {elapsed:.2f}s")
    assert worst[0] <= 1e-9
    assert elapsed < 10.0


def test_c3_small_n_exact(record):
    mismatches = [n for n in range(2, 15)
                  if classical.c_real_recursive_exponent(n) != classical.c_real_small_closed(n)]
    record("3 exact small-n identity", not mismatches,
           f"{13 - len(mismatches)}/13 exact rational matches for n=2..14")
    assert not mismatches


def test_c4_rn_oracle_identity(record):
    rep = classical.verify_rn_identities(4096)
    ok = rep.max_identity_dev <= 1e-9 and rep.max_recursive_dev <= 1e-9
    record("4 r_n oracle identity", ok,
           f"{rep.count} even n in (14, 4096]: max |ln r_n s_n| = {rep.max_identity_dev:.2e}, "
           f"max |ln C_closed - ln C_rec| = {rep.max_recursive_dev:.2e}")
    assert rep.count == 2041
    assert rep.max_identity_dev <= 1e-9
    assert rep.max_recursive_dev <= 1e-9
    # single-call paths agree with the sweep at a few points
    for n in (16, 1000, 4096):
        assert abs(classical.ln_r_n(n) + classical.s_n_oracle(n).ln) <= 1e-9
        assert abs(classical.c_real_large_closed(n).ln - classical.c_real_recursive(n).ln) <= 1e-9


def test_c5_p0(record):
    t = khinchin.p0()
    gap = abs(khinchin.lower_branch_ln(t) - khinchin.upper_branch_ln(t))
    ok = abs(t - 1.847) <= 1e-3 and gap <= 1e-10
    record("5 p0 and branch continuity", ok, f"p0 = {t:.10f}, branch gap {gap:.1e}")
    assert abs(t - 1.847) <= 1e-3
    assert gap <= 1e-10


def test_c6_khinchin_sweep(record):
    rng = np.random.Generator(np.random.PCG64(20240601))
    vectors = [rng.uniform(-1.0, 1.0, size=int(rng.integers(1, 13))) for _ in range(500)]
    violations = 0
    worst = math.inf
    for p in (1.0, 4 / 3, 8 / 5, 28 / 15, 2.0, 3.0):
        for a in vectors:
            r = khinchin.verify_khinchin_lower(a, p)
            violations += not r.ok
            worst = min(worst, r.ratio)
    a2 = khinchin.best_A(2.0).ln
    ok = violations == 0 and abs(a2) <= 1e-12
    record("6 Khinchin sweep", ok,
           f"{violations} violations in 3000 checks, min ratio {worst:.6f}, |ln A_2| = {abs(a2):.1e}")
    assert violations == 0
    assert abs(math.exp(a2) - 1.0) <= 1e-12


def test_c7_inequality_sweep(record):
    t0 = time.perf_counter()
    w = verifier.check_inequality(verifier.littlewood_witness(), math.sqrt(2))
    witness_ok = abs(w.ratio - math.sqrt(2)) <= 1e-12
    violations = 0
    details = []
    dists = list(verifier.Distribution)
    for m, N in ((2, 2), (2, 4), (2, 8), (3, 3), (3, 4), (4, 3)):
        const = classical.c_real_recursive(m).value
        worst = 0.0
        for t in range(500):
            form = verifier.random_form(m, N, seed=1000 * m + 100 * N + t, distribution=dists[t % 2])
            rep = verifier.check_inequality(form, const)
            assert rep.certified
            violations += not rep.satisfied
            worst = max(worst, rep.ratio)
        if m == 2:
            assert worst <= w.ratio + 1e-9
        details.append(f"({m},{N}) max {worst:.4f}/{const:.4f}")
    elapsed = time.perf_counter() - t0
    ok = witness_ok and violations == 0 and elapsed < 60.0
    record("7 inequality sweep", ok,
           f"witness ratio {w.ratio:.15f}; {violations} violations in 3000 forms; "
           + ", ".join(details) + f"; runtime {elapsed:.1f}s")
    assert witness_ok
    assert violations == 0
    assert elapsed < 60.0


def test_c8_conjecture(record):
    target = classical.conjecture_limit()
    gap = classical.conjecture_gap(100000)
    ok = abs(gap) < 5e-5
    record("8 conjecture consistency", ok, f"r_100000 - e^(1-g/2)/sqrt2 = {gap:.3e} (target {target:.7f})")
    assert abs(gap) < 5e-5
    assert abs(target - 1.44025) < 5e-6
