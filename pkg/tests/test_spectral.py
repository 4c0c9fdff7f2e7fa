import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jacobi_asym.sequence import ExplicitTable, FactorialDecay, Geometric, StretchedGeometric, log_a_value
from jacobi_asym.sections import build_truncated, from_log_offdiag
from jacobi_asym.signlog import ZERO, from_log, from_real, to_real
from jacobi_asym.spectral import (
    CertificationError,
    all_positive_eigenvalues,
    certify_eigenvalue,
    count_below_truncation_bound,
    dense_oracle,
    kth_positive_eigenvalue,
    kth_positive_eigenvalue_bracket,
    sturm_count,
)

from oracles import closed_form_4x4, mp_positive_eigenvalues

SG = StretchedGeometric(0.5, 2.0)
FAC = FactorialDecay(1.0)
J2 = from_log_offdiag([0.0])
J3 = from_log_offdiag([0.0, 0.0])
J4 = from_log_offdiag([0.0, math.log(0.5), math.log(0.25)])

log_tables = st.lists(st.floats(min_value=-30.0, max_value=0.0), min_size=1, max_size=11)


def test_sturm_examples():
    assert sturm_count(J2, ZERO) == 1
    assert sturm_count(J2, from_real(2.0)) == 2
    assert sturm_count(J3, from_real(0.5)) == 2


def test_sturm_exact_eigenvalue_is_nudged_upward():
    # lambda = 1 is an eigenvalue of J2; the nudge moves past it
    assert sturm_count(J2, from_real(1.0)) == 2
    assert sturm_count(J2, from_real(-1.0)) == 1


def test_kth_examples():
    v, w = kth_positive_eigenvalue(J2, 1, 1e-12)
    assert to_real(v) == pytest.approx(1.0, rel=1e-12)
    l1, l2 = closed_form_4x4(1.0, 0.5, 0.25)
    assert l1 == pytest.approx(1.1238395103248, rel=1e-12)
    assert l2 == pytest.approx(0.2224516914588, rel=1e-12)
    v1 = to_real(kth_positive_eigenvalue(J4, 1, 1e-12)[0])
    v2 = to_real(kth_positive_eigenvalue(J4, 2, 1e-12)[0])
    assert v1 == pytest.approx(l1, rel=1e-11)
    assert v2 == pytest.approx(l2, rel=1e-11)
    assert v1 * v2 == pytest.approx(0.25, rel=1e-11)


def test_kth_width_respects_tolerance():
    for tol in (1e-3, 1e-8, 1e-12):
        v, w = kth_positive_eigenvalue(J4, 1, tol)
        assert to_real(w) / to_real(v) <= tol


def test_kth_range_errors():
    with pytest.raises(IndexError):
        kth_positive_eigenvalue(J4, 3)
    with pytest.raises(IndexError):
        kth_positive_eigenvalue(build_truncated(SG, 1), 1)


@pytest.mark.parametrize("m", range(1, 16))
def test_smallest_eigenvalue_in_odd_bracket(m):
    # smallest positive eigenvalue of the 2m section sits in [a_{2m+1}, a_{2m-1}]
    J = build_truncated(SG, 2 * m)
    lo, hi = kth_positive_eigenvalue_bracket(J, m, 1e-12)
    assert lo.log_mag >= log_a_value(SG, 2 * m + 1)
    assert hi.log_mag <= log_a_value(SG, 2 * m - 1) + 1e-12 * abs(log_a_value(SG, 2 * m - 1))


def test_all_positive_examples():
    assert all_positive_eigenvalues(build_truncated(SG, 1)).positive_eigenvalues == ()
    (v,) = all_positive_eigenvalues(J3).positive_eigenvalues
    assert to_real(v) == pytest.approx(math.sqrt(2.0), rel=1e-10)
    sl = all_positive_eigenvalues(build_truncated(FAC, 6), 1e-10)
    assert len(sl.positive_eigenvalues) == 3
    logs = sl.log_values
    assert all(b < a for a, b in zip(logs, logs[1:]))
    ref = sorted((x for x in dense_oracle(build_truncated(FAC, 6)) if x > 0), reverse=True)
    np.testing.assert_allclose([math.exp(l) for l in logs], ref, rtol=1e-9)


def test_dense_oracle_examples():
    assert dense_oracle(J2) == pytest.approx([-1.0, 1.0], rel=1e-15)
    ev = dense_oracle(J3)
    assert ev[0] == pytest.approx(-math.sqrt(2)) and ev[2] == pytest.approx(math.sqrt(2))
    assert abs(ev[1]) < 1e-290
    ev = dense_oracle(J4)
    assert len(ev) == 4 and ev[2] * ev[3] == pytest.approx(0.25, rel=1e-14)
    assert ev[0] == pytest.approx(-ev[3], rel=1e-15)


def test_dense_oracle_preconditions():
    with pytest.raises(ValueError):
        dense_oracle(build_truncated(SG, 40))  # a_39 far below exp(-600)
    with pytest.raises(ValueError):
        dense_oracle(build_truncated(FAC, 80))


def test_dense_oracle_matches_numpy_on_moderate_matrices():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 30))
        a = rng.uniform(0.1, 2.0, n - 1)
        J = from_log_offdiag(np.log(a).tolist())
        T = np.diag(a, 1) + np.diag(a, -1)
        np.testing.assert_allclose(dense_oracle(J), np.linalg.eigvalsh(T), rtol=1e-12, atol=1e-13)


@pytest.mark.parametrize("k_size", [(1, 8), (3, 12), (6, 16), (10, 24)])
def test_against_high_precision_oracle(k_size):
    # eigenvalues far below float range: a_{2k-1} of q^(n^2) reaches 2^-361
    _, n = k_size
    J = build_truncated(SG, n)
    ref = mp_positive_eigenvalues(list(J.log_offdiag))
    got = all_positive_eigenvalues(J, 1e-12).log_values
    assert len(got) == len(ref)
    for g, r in zip(got, ref):
        assert abs(math.expm1(g - r)) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(log_tables, st.floats(min_value=-40.0, max_value=2.0), st.floats(min_value=-40, max_value=2.0))
def test_sturm_monotone_and_symmetric(logs, x, y):
    J = from_log_offdiag(logs)
    lo, hi = sorted((x, y))
    assert sturm_count(J, from_log(lo)) <= sturm_count(J, from_log(hi))
    assert sturm_count(J, -from_log(hi)) <= sturm_count(J, -from_log(lo))
    # counts are "at most lambda" after the tie nudge, so an exact eigenvalue adds one
    assert sturm_count(J, from_log(x)) + sturm_count(J, -from_log(x)) in (J.n, J.n + 1)
    big = from_log(J.log_norm_bound + 1.0)
    assert sturm_count(J, -big) == 0
    assert sturm_count(J, big) == J.n


@settings(max_examples=60, deadline=None)
@given(log_tables)
def test_positive_count_is_half_dimension(logs):
    J = from_log_offdiag(logs)
    sl = all_positive_eigenvalues(J, 1e-9)
    assert len(sl.positive_eigenvalues) == J.n // 2
    assert all(v.sign == 1 for v in sl.positive_eigenvalues)


def test_certify_contains_large_section_value():
    # rapidly vanishing tail appended to a short table
    head = [0.0, math.log(0.3), math.log(0.2)]
    tail = [head[-1] - 4.0 * i * i for i in range(1, 40)]
    spec = ExplicitTable(tuple(head + tail))
    enc = certify_eigenvalue(spec, 1, 1e-8)
    big = build_truncated(spec, 4 * (enc.truncation_size // 2))
    ref = max(dense_oracle(big))
    assert enc.contains(from_real(ref))
    assert enc.lo.sign == 1


def test_certify_stretched_first():
    enc = certify_eigenvalue(SG, 1, 1e-6)
    assert enc.rel_width <= 1e-6
    assert to_real(enc.midpoint) == pytest.approx(0.5, rel=0.01)
    finer = certify_eigenvalue(SG, 1, 1e-6, truncation_size=2 * enc.truncation_size)
    assert enc.contains(finer.midpoint)


def test_certify_invariants():
    for k in range(1, 12):
        e = certify_eigenvalue(FAC, k, 1e-9)
        width = to_real(e.hi) - to_real(e.lo)
        assert e.lo.sign == 1 and e.lo <= e.hi
        # endpoints carry a log rounding of about 1e-15 relative
        slack = 1e-14 * to_real(e.hi)
        assert width <= to_real(e.solver_width) + 2 * to_real(e.truncation_term) + slack
        assert e.truncation_size % 2 == 0


def test_certify_error_paths():
    with pytest.raises(CertificationError):
        certify_eigenvalue(ExplicitTable((0.0, -0.1, -0.2, -0.3)), 1, 1e-10)
    with pytest.raises(CertificationError):
        certify_eigenvalue(StretchedGeometric(0.99, 1.01), 1, 1e-10, max_size=60)
    with pytest.raises(IndexError):
        certify_eigenvalue(SG, 0)


def test_count_below_bound_tiny_ratio():
    # a_{n+1}/a_n = 2^-61: the bound rounds to a_n but the count is exact
    D = from_log_offdiag([30 * 30 * math.log(0.5), 31 * 31 * math.log(0.5)])
    assert count_below_truncation_bound(D, 31 * 31 * math.log(0.5)) == 3
