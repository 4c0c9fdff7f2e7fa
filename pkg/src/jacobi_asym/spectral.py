"""Eigenvalues of finite sections and enclosures for the infinite operator.

The workhorse is a Sturm count (Sylvester inertia of ``T - lambda I``)
evaluated in sign-log arithmetic, so eigenvalues spread over thousands of
orders of magnitude are bisected without underflow.  Bisection runs on
``ln lambda``, which refines every eigenvalue to the same relative accuracy.

:func:`dense_oracle` is a separate plain floating point bisection used only
to cross-check small, representable cases.

For the infinite operator ``J`` we use ``lambda_k = s_{2k}(J)`` and
``|s_j(J) - s_j(J_N)| <= ||J - J_N|| <= a_N + a_{N+1}`` (valid once the
sequence is nonincreasing from ``N`` on), which widens a finite-section
bisection bracket into a rigorous enclosure.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

from .sequence import SequenceSpec, check_condition, log_a_value, max_index, truncation_bound
from .sections import TruncatedJacobi, build_truncated
from .signlog import (
    CANCEL_TOL,
    SignLogNumber,
    add,
    compare,
    from_log,
    neg,
    to_real,
)

__all__ = [
    "SturmError",
    "CertificationError",
    "EigenEnclosure",
    "SpectrumSlice",
    "sturm_count",
    "kth_positive_eigenvalue",
    "kth_positive_eigenvalue_bracket",
    "all_positive_eigenvalues",
    "dense_oracle",
    "certify_eigenvalue",
    "count_below_truncation_bound",
    "DENSE_ORACLE_MAX_N",
    "DENSE_ORACLE_MAX_LOG",
]

DENSE_ORACLE_MAX_N = 64
DENSE_ORACLE_MAX_LOG = 600.0

_MAX_NUDGES = 16
_MAX_EXPANSIONS = 64


class SturmError(ArithmeticError):
    """The Sturm recurrence kept hitting an exact zero pivot."""


class CertificationError(RuntimeError):
    """No truncation up to the configured maximum met the accuracy target."""


def _count_below(la, n, s_lam, l_lam, start=0, pivot=None):
    """Negative pivots of ``T - lam I``; None on an exact zero pivot.

    ``la`` holds the off-diagonal logs and ``lam = s_lam * exp(l_lam)``.
    Pivots follow ``d_1 = -lam``, ``d_i = -lam - a_{i-1}^2 / d_{i-1}``.
    ``start``/``pivot`` resume the recurrence from pivot ``start + 1`` given
    as ``(sign, log)`` with ``count`` negatives so far: ``(sign, log, count)``.
    """
    exp = math.exp
    log1p = math.log1p
    ms = -s_lam  # sign of -lam
    if pivot is None:
        ds, dl = ms, l_lam
        count = 1 if ds < 0 else 0
    else:
        ds, dl, count = pivot
    for i in range(start, n - 1):
        # -lam + (-a^2/d): signs ms and -ds
        ts = -ds
        tl = 2.0 * la[i] - dl
        if tl >= l_lam:
            hs, hl, delta = ts, tl, l_lam - tl
        else:
            hs, hl, delta = ms, l_lam, tl - l_lam
        if ts == ms:
            dl = hl + log1p(exp(delta))
        else:
            if -delta <= CANCEL_TOL:
                return None
            dl = hl + log1p(-exp(delta))
        ds = hs
        if ds < 0:
            count += 1
    return count


def _nudged_count(la, n, s_lam, l_lam):
    step = 0.0
    for _ in range(_MAX_NUDGES + 1):
        c = _count_below(la, n, s_lam, l_lam)
        if c is not None:
            return c
        # toward +infinity in value; starts at one ulp of ln|lam| and doubles,
        # since a single ulp can sit inside the CANCEL_TOL tie band
        step = max(2.0 * step, math.ulp(l_lam), sys.float_info.epsilon)
        l_lam = l_lam + step if s_lam > 0 else l_lam - step
    raise SturmError(f"zero pivot persisted after {_MAX_NUDGES} nudges")


def sturm_count(J: TruncatedJacobi, lam: SignLogNumber) -> int:
    """Number of eigenvalues of ``J`` strictly below ``lam``.

    An exact zero pivot means ``lam`` is (numerically) an eigenvalue; the
    shift is moved toward +infinity, starting at one ulp of ``ln|lam|`` and
    doubling, until the recurrence completes.  At ``lam = 0`` the answer is ``n // 2`` by the +/- symmetry
    of the spectrum.
    """
    if lam.sign == 0:
        return J.n // 2
    return _nudged_count(J.log_offdiag, J.n, lam.sign, lam.log_mag)


def count_below_truncation_bound(J: TruncatedJacobi, log_next: float) -> int:
    """Eigenvalues of ``J`` strictly below ``x = b_1 + b_2``.

    ``b_1`` is the first off-diagonal entry of ``J`` and ``b_2 = exp(log_next)``
    the entry that follows it in the sequence.  The second pivot
    ``-x + b_1^2 / x = -b_2 (2 b_1 + b_2) / x`` is formed without
    cancellation, so the count stays exact even when ``b_2 / b_1`` is below
    the rounding level of ``x``.
    """
    if J.n < 2:
        raise ValueError("need a section of size >= 2")
    b1, b2 = J.log_offdiag[0], log_next
    lx = max(b1, b2) + math.log1p(math.exp(-abs(b1 - b2)))
    t = max(b1 + math.log(2.0), b2)
    l2 = b2 + t + math.log1p(math.exp(min(b1 + math.log(2.0), b2) - t)) - lx
    c = _count_below(J.log_offdiag, J.n, 1, lx, start=1, pivot=(-1, l2, 2))
    if c is None:
        raise SturmError("zero pivot at the truncation bound")
    return c


def _check_index(J, k):
    m = J.n // 2
    if not (1 <= k <= m):
        raise IndexError(f"k must lie in 1..{m} for a section of size {J.n}, got {k}")


def _bracket_log(J: TruncatedJacobi, k: int, rel_tol: float) -> tuple[float, float]:
    """Log-domain bracket ``[lo, hi]`` of the k-th largest positive eigenvalue."""
    _check_index(J, k)
    if not (0.0 < rel_tol < 1.0):
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol!r}")
    la = J.log_offdiag
    n = J.n
    target = n - k + 1  # lambda_k < x  iff  count(x) >= target

    def above(x):
        return _nudged_count(la, n, 1, x) >= target

    norm = J.log_norm_bound + 1e-9
    # seeds from lambda_k ~ a_{2k-1}: a_{2k-3} above, a_{2k+1} below
    hi = la[2 * k - 4] if 2 <= k and 2 * k - 3 <= n - 1 else norm
    hi = min(hi, norm)
    lo = la[2 * k] if 2 * k + 1 <= n - 1 else min(la) - math.log(2.0)
    lo = min(lo, hi - 1e-3)

    step = 1.0
    for _ in range(_MAX_EXPANSIONS):
        if above(hi):
            break
        lo = max(lo, hi)
        hi += step
        step *= 2.0
    else:
        raise ArithmeticError("upper bracket expansion failed")
    step = 1.0
    for _ in range(_MAX_EXPANSIONS):
        if not above(lo):
            break
        hi = min(hi, lo)
        lo -= step
        step *= 2.0
    else:
        raise ArithmeticError("lower bracket expansion failed")

    while 2.0 * math.sinh(0.5 * (hi - lo)) > rel_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if above(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def kth_positive_eigenvalue_bracket(
    J: TruncatedJacobi, k: int, rel_tol: float = 1e-10
) -> tuple[SignLogNumber, SignLogNumber]:
    """Bisection bracket ``(lo, hi)`` around the k-th largest positive eigenvalue."""
    lo, hi = _bracket_log(J, k, rel_tol)
    return from_log(lo), from_log(hi)


def kth_positive_eigenvalue(
    J: TruncatedJacobi, k: int, rel_tol: float = 1e-10
) -> tuple[SignLogNumber, SignLogNumber]:
    """k-th largest positive eigenvalue of ``J`` and the final bracket width.

    The value is the log-domain midpoint of the bracket.  Bisection stops
    once width / midpoint <= ``rel_tol`` or the floating point grid in
    ``ln lambda`` is exhausted.
    """
    lo, hi = _bracket_log(J, k, rel_tol)
    value = from_log(0.5 * (lo + hi))
    width = from_log(lo + math.log(math.expm1(hi - lo))) if hi > lo else from_log(-math.inf)
    return value, width


@dataclass(frozen=True)
class SpectrumSlice:
    source: TruncatedJacobi
    positive_eigenvalues: tuple[SignLogNumber, ...]
    rel_tol: float

    @property
    def log_values(self) -> list[float]:
        return [x.log_mag for x in self.positive_eigenvalues]


def all_positive_eigenvalues(J: TruncatedJacobi, rel_tol: float = 1e-10) -> SpectrumSlice:
    """The ``n // 2`` positive eigenvalues of ``J`` in decreasing order.

    Each eigenvalue is bisected separately, so two that agree to within
    ``rel_tol`` may come back with swapped midpoints; the midpoints are
    sorted.  A bracket lying entirely below its successor's is a genuine
    inconsistency and raises.
    """
    brackets = [_bracket_log(J, k, rel_tol) for k in range(1, J.n // 2 + 1)]
    for (_, hi), (lo_next, _) in zip(brackets, brackets[1:]):
        if hi < lo_next:
            raise ArithmeticError("eigenvalue ordering violated by disjoint brackets")
    logs = sorted((0.5 * (lo + hi) for lo, hi in brackets), reverse=True)
    return SpectrumSlice(J, tuple(from_log(l) for l in logs), rel_tol)


def dense_oracle(J: TruncatedJacobi, max_n: int = DENSE_ORACLE_MAX_N) -> list[float]:
    """Whole spectrum of ``J`` in plain floats, ascending.

    Independent of the sign-log kernel: entries are exponentiated and each
    eigenvalue is found by bisection on ``lambda`` itself using the classical
    Sturm recurrence with a LAPACK-style minimum pivot.  Only for tests and
    cross-checks.
    """
    if J.n > max_n:
        raise ValueError(f"dense oracle capped at n={max_n}, got {J.n}")
    if any(abs(l) > DENSE_ORACLE_MAX_LOG for l in J.log_offdiag):
        raise ValueError("entries are not representable as plain floats")
    n = J.n
    a = [math.exp(l) for l in J.log_offdiag]
    if n == 1:
        return [0.0]
    amax = max(a)
    pivmin = sys.float_info.min * max(1.0, min(amax, 1e150) ** 2)
    bound = 0.0
    for i in range(n):
        row = (a[i - 1] if i >= 1 else 0.0) + (a[i] if i < n - 1 else 0.0)
        bound = max(bound, row)
    bound = bound * (1.0 + 4 * sys.float_info.epsilon) + pivmin

    def count(x):
        d = -x
        if abs(d) < pivmin:
            d = -pivmin
        c = 1 if d < 0 else 0
        for ai in a:
            d = -x - ai * (ai / d)
            if abs(d) < pivmin:
                d = -pivmin
            if d < 0:
                c += 1
        return c

    floor = sys.float_info.min / sys.float_info.epsilon
    eps = sys.float_info.epsilon
    out = []
    for j in range(1, n + 1):
        lo, hi = -bound, bound
        while True:
            width = hi - lo
            if width <= 2 * eps * max(abs(lo), abs(hi)) or width <= floor:
                break
            mid = lo + 0.5 * width
            if mid <= lo or mid >= hi:
                break
            if count(mid) >= j:
                hi = mid
            else:
                lo = mid
        out.append(0.5 * (lo + hi))
    return out


@dataclass(frozen=True)
class EigenEnclosure:
    """Interval ``[lo, hi]`` containing ``lambda_k`` of the infinite operator."""

    k: int
    lo: SignLogNumber
    hi: SignLogNumber
    truncation_size: int
    solver_width: SignLogNumber
    truncation_term: SignLogNumber
    section_value: SignLogNumber

    @property
    def midpoint(self) -> SignLogNumber:
        return self.section_value

    @property
    def rel_width(self) -> float:
        width = add(self.hi, neg(self.lo))
        return to_real(from_log(width.log_mag - self.section_value.log_mag)) if width.sign else 0.0

    def contains(self, x: SignLogNumber) -> bool:
        return compare(self.lo, x) <= 0 <= compare(self.hi, x)

    def to_json(self):
        return {
            "k": self.k,
            "lo": self.lo.to_json(),
            "hi": self.hi.to_json(),
            "truncation_size": self.truncation_size,
            "solver_width": self.solver_width.to_json(),
            "truncation_term": self.truncation_term.to_json(),
            "section_value": self.section_value.to_json(),
        }


def _enclose(spec, k, N, rel_tol):
    J = build_truncated(spec, N)
    lo, hi = _bracket_log(J, k, rel_tol)
    term = truncation_bound(spec, N)
    width = from_log(lo + math.log(math.expm1(hi - lo))) if hi > lo else from_log(-math.inf)
    return EigenEnclosure(
        k=k,
        lo=add(from_log(lo), neg(term)),
        hi=add(from_log(hi), term),
        truncation_size=N,
        solver_width=width,
        truncation_term=term,
        section_value=from_log(0.5 * (lo + hi)),
    )


def _monotone_from(spec, max_size):
    top = max_index(spec)
    stop = max_size + 1 if top is None else min(max_size + 1, top - 1)
    if stop < 1:
        return None
    return check_condition(spec, (1, stop), eps=0.5).n0_monotone


def certify_eigenvalue(
    spec: SequenceSpec,
    k: int,
    rel_tol: float = 1e-10,
    *,
    truncation_size: int | None = None,
    max_size: int = 400,
) -> EigenEnclosure:
    """Rigorous enclosure of ``lambda_k`` of the infinite operator.

    The even truncation size ``N = 2(k + delta)`` grows until
    ``a_N + a_{N+1} <= rel_tol * lambda_k^{(N)} / 4`` and the sequence is
    nonincreasing from ``N`` on (as seen on a scan up to ``max_size``).
    The section eigenvalue is bisected to ``rel_tol / 4``; the enclosure is
    the bisection bracket widened by ``a_N + a_{N+1}`` on each side.

    ``truncation_size`` fixes ``N`` instead of searching for it.

    For an :class:`ExplicitTable` the enclosure is valid for every operator
    whose sequence extends the table and stays nonincreasing past ``N``.
    """
    if k < 1:
        raise IndexError(f"k must be >= 1, got {k}")
    if not (0.0 < rel_tol < 1.0):
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol!r}")
    top = max_index(spec)
    n0 = _monotone_from(spec, max_size)
    if n0 is None:
        raise CertificationError("sequence is not eventually nonincreasing on the scanned window")

    if truncation_size is not None:
        N = truncation_size
        if N < 2 * k or N % 2:
            raise ValueError(f"truncation size must be even and >= 2k, got {N}")
        if N < n0:
            raise CertificationError(f"truncation size {N} precedes monotone index {n0}")
        if top is not None and N + 1 > top:
            raise CertificationError(f"table too short for truncation size {N}")
        return _enclose(spec, k, N, rel_tol / 4)

    delta = 1
    while True:
        N = 2 * (k + delta)
        if N > max_size or (top is not None and N + 1 > top):
            raise CertificationError(
                f"lambda_{k} not certifiable to rel_tol={rel_tol:g} within truncation "
                f"size {min(max_size, top or max_size)}; the sequence decays too slowly"
            )
        if N > n0:
            est = _bracket_log(build_truncated(spec, N), k, 1e-3)[0]
            term = log_a_value(spec, N) + math.log1p(
                math.exp(log_a_value(spec, N + 1) - log_a_value(spec, N))
            )
            if term <= math.log(rel_tol / 4) + est:
                return _enclose(spec, k, N, rel_tol / 4)
        delta += 1
