"""The invariant suite behind ``jacobi-asym verify``.

Each check returns a :class:`CheckResult`; the suite passes iff every
non-informational check passes.  Randomized parts draw from
``numpy.random.default_rng(seed)`` so a fixed seed reproduces the report
exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import (
    Verdict,
    product_identity_report,
    smallest_eigenvalue_scan,
)
from .sequence import SequenceSpec, check_condition, max_index
from .sections import (
    TruncatedJacobi,
    build_truncated,
    difference_norm_check,
    from_log_offdiag,
)
from .signlog import ZERO, from_log
from .spectral import (
    DENSE_ORACLE_MAX_LOG,
    all_positive_eigenvalues,
    dense_oracle,
    sturm_count,
)

ORACLE_REL_TOL = 1e-8


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    informational: bool = False

    def to_json(self):
        return {
            "check": self.name,
            "passed": self.passed,
            "informational": self.informational,
            "detail": self.detail,
        }


def random_tables(rng, count: int, min_dim: int = 2, max_dim: int = 12, log_range=(-30.0, 0.0)):
    """Random sections with log-uniform off-diagonal entries."""
    out = []
    for _ in range(count):
        n = int(rng.integers(min_dim, max_dim + 1))
        logs = rng.uniform(log_range[0], log_range[1], size=n - 1)
        out.append(from_log_offdiag([float(v) for v in logs]))
    return out


def representable(J: TruncatedJacobi) -> bool:
    return all(abs(l) <= DENSE_ORACLE_MAX_LOG for l in J.log_offdiag)


def oracle_mismatch(J: TruncatedJacobi, rel_tol: float = 1e-10) -> float:
    """Largest relative gap between sign-log and dense-oracle positive eigenvalues."""
    pos = all_positive_eigenvalues(J, rel_tol).log_values
    dense = dense_oracle(J)
    m = J.n // 2
    ref = sorted(dense, reverse=True)[:m]
    worst = 0.0
    for lv, d in zip(pos, ref):
        if d <= 0.0:
            return math.inf
        worst = max(worst, abs(math.expm1(lv - math.log(d))))
    return worst


def near_zero_threshold(J: TruncatedJacobi) -> float:
    """Half the smallest positive eigenvalue (sign-log route), floored at 1e-300."""
    if J.n < 2:
        return 1e-300
    smallest = all_positive_eigenvalues(J, 1e-6).log_values[-1]
    return max(1e-300, 0.5 * math.exp(smallest)) if smallest > -690 else 1e-300


def symmetry_defect(values: list[float], near_zero: float = 1e-200) -> tuple[float, int]:
    """Pairing error of an ascending spectrum and its number of near-zero values."""
    v = sorted(values)
    worst = 0.0
    for x, y in zip(v, reversed(v)):
        scale = max(abs(x), abs(y))
        if scale > near_zero:
            worst = max(worst, abs(x + y) / scale)
    return worst, sum(1 for x in v if abs(x) <= near_zero)


def _check_product(spec, n_max, rel_tol):
    rows = product_identity_report(spec, n_max, rel_tol)
    bad = [r.n for r in rows if not r.ok]
    worst = max(r.discrepancy for r in rows)
    return CheckResult(
        "product_identity",
        not bad,
        f"n=1..{n_max}; max log discrepancy {worst:.3e}" + (f"; failing n={bad}" if bad else ""),
    )


def _check_symmetry(spec, n_max):
    top = max_index(spec)
    dims = range(1, 2 * n_max + 2)
    failures = []
    for n in dims:
        if top is not None and n - 1 > top:
            break
        J = build_truncated(spec, n)
        if n == 1:
            continue
        sl = all_positive_eigenvalues(J, 1e-10)
        if len(sl.positive_eigenvalues) != n // 2:
            failures.append(n)
            continue
        # shifts between and beyond the positive eigenvalues
        logs = sl.log_values
        shifts = [logs[0] + 1.0] + [0.5 * (a + b) for a, b in zip(logs, logs[1:])] + [logs[-1] - 1.0]
        for i, s in enumerate(shifts):
            x = from_log(s)
            up, down = sturm_count(J, x), sturm_count(J, -x)
            if up + down != n or n - up != i:
                failures.append(n)
                break
        if sturm_count(J, ZERO) != n // 2:
            failures.append(n)
    return CheckResult(
        "spectrum_symmetry",
        not failures,
        f"sections n=1..{2 * n_max + 1}" + (f"; failing n={sorted(set(failures))}" if failures else ""),
    )


def _check_truncation(spec, rng, pairs=20, m_max=40):
    top = max_index(spec)
    if top is not None:
        m_max = min(m_max, top - 1)
    try:
        n0 = check_condition(spec, (1, max(m_max, 2)), eps=0.5).n0_monotone
    except ValueError:
        n0 = None
    if n0 is None or n0 >= m_max:
        return CheckResult("truncation_bound", True, "no monotone range on window; skipped", True)
    candidates = [(n, m) for n in range(n0, m_max) for m in range(n + 1, m_max + 1)]
    idx = rng.choice(len(candidates), size=min(pairs, len(candidates)), replace=False)
    chosen = sorted(candidates[int(i)] for i in idx)
    bad = [(n, m) for n, m in chosen if not difference_norm_check(spec, n, m).holds]
    return CheckResult(
        "truncation_bound",
        not bad,
        f"{len(chosen)} pairs with {n0} <= n < m <= {m_max}" + (f"; failing {bad}" if bad else ""),
    )


def _check_smallest(spec, n_max, rel_tol):
    top = max_index(spec)
    k_max = n_max if top is None else min(n_max, (top + 1) // 2)
    rep = smallest_eigenvalue_scan(spec, k_max, rel_tol)
    tail = rep.rows[len(rep.rows) // 2 :]
    ok = any(r.verdict is Verdict.TRUE for r in tail)
    c = rep.counts
    return CheckResult(
        "smallest_eigenvalue_half_bound",
        ok,
        f"k=1..{k_max}: {c['true']} true, {c['false']} false, {c['inconclusive']} inconclusive; "
        "passes if it holds somewhere in the upper half of the scan",
    )


def _check_oracle(spec, rng, n_max, count):
    worst = 0.0
    pair_worst = 0.0
    bad_zero = []
    mats = random_tables(rng, count)
    top = max_index(spec)
    for n in range(2, 2 * n_max + 1):
        if top is not None and n - 1 > top:
            break
        J = build_truncated(spec, n)
        if representable(J):
            mats.append(J)
    for J in mats:
        worst = max(worst, oracle_mismatch(J))
        d, zeros = symmetry_defect(dense_oracle(J), near_zero_threshold(J))
        pair_worst = max(pair_worst, d)
        if zeros != J.n % 2:
            bad_zero.append(J.n)
    ok = worst <= ORACLE_REL_TOL and pair_worst <= ORACLE_REL_TOL and not bad_zero
    return CheckResult(
        "oracle_equivalence",
        ok,
        f"{len(mats)} matrices; max relative mismatch {worst:.3e}; max pairing defect {pair_worst:.3e}"
        + (f"; zero-count errors at n={bad_zero}" if bad_zero else ""),
    )


def _check_monotone(spec, n_max):
    failures = []
    top = max_index(spec)
    n = 2 * n_max if top is None else min(2 * n_max, top + 1)
    J = build_truncated(spec, n)
    big = J.log_norm_bound + 1.0
    drops = list(range(0, 201, 8))
    grid = [-from_log(big - i) for i in drops] + [ZERO] + [from_log(big - i) for i in reversed(drops)]
    counts = [sturm_count(J, x) for x in grid]
    if any(b < a for a, b in zip(counts, counts[1:])):
        failures.append("nondecreasing")
    if counts[0] != 0 or counts[-1] != n:
        failures.append("extremes")
    return CheckResult(
        "sturm_monotonicity",
        not failures,
        f"n={n}, {len(grid)} shifts" + (f"; failing {failures}" if failures else ""),
    )


def run_verification(
    spec: SequenceSpec, n_max: int = 10, rel_tol: float = 1e-10, seed: int = 0, random_count: int = 20
) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    try:
        cond = check_condition(spec, (1, 50))
        results.append(
            CheckResult(
                "decay_condition",
                cond.satisfied_on_window,
                f"window {cond.window}; n0_monotone={cond.n0_monotone}; n_eps={cond.n_eps} (eps={cond.eps}); "
                + cond.note,
                informational=True,
            )
        )
    except ValueError as exc:
        results.append(CheckResult("decay_condition", False, str(exc), informational=True))
    results.append(_check_product(spec, n_max, rel_tol))
    results.append(_check_symmetry(spec, n_max))
    results.append(_check_truncation(spec, rng))
    results.append(_check_smallest(spec, n_max, rel_tol))
    results.append(_check_oracle(spec, rng, n_max, random_count))
    results.append(_check_monotone(spec, n_max))
    return results


def suite_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results if not r.informational)
