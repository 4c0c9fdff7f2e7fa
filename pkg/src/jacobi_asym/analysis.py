"""Numerical experiments on the eigenvalue asymptotics ``lambda_k ~ a_{2k-1}``.

Every verdict here is three-valued.  A check reads the enclosure endpoints
in the conservative direction: it is ``TRUE`` only if the whole enclosure
satisfies the inequality, ``FALSE`` only if the whole enclosure violates it,
and ``INCONCLUSIVE`` otherwise.  An inconclusive verdict is retried once at
a tenth of the tolerance before it is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .sequence import (
    SequenceSpec,
    StretchedGeometric,
    check_condition,
    log_a_value,
)
from .sections import build_truncated, log_det_product
from .spectral import (
    CertificationError,
    EigenEnclosure,
    all_positive_eigenvalues,
    certify_eigenvalue,
    kth_positive_eigenvalue_bracket,
)

__all__ = [
    "Verdict",
    "AsymptoticsRow",
    "BracketVerdict",
    "ScanRow",
    "ScanReport",
    "EpsilonRow",
    "ProductRow",
    "ConditionNotSatisfied",
    "asymptotic_table",
    "bracket_check",
    "smallest_eigenvalue_scan",
    "epsilon_bounds_check",
    "product_identity_report",
    "trend_summary",
]


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"

    def __str__(self):
        return self.value


class ConditionNotSatisfied(ValueError):
    """The ratio ``a_{n+1}/a_n`` does not tend to zero on the checked window."""

    def __init__(self, report):
        super().__init__(
            f"a_(n+1)/a_n -> 0 not observed on window {report.window} (eps={report.eps})"
        )
        self.report = report


def _above(lo: float, hi: float, t: float, strict: bool) -> Verdict:
    """Is ``x > t`` (or ``>=``) for every ``x`` in ``[exp(lo), exp(hi)]``?"""
    if lo > t or (not strict and lo == t):
        return Verdict.TRUE
    if hi < t or (strict and hi == t):
        return Verdict.FALSE
    return Verdict.INCONCLUSIVE


def _below(lo: float, hi: float, t: float, strict: bool) -> Verdict:
    if hi < t or (not strict and hi == t):
        return Verdict.TRUE
    if lo > t or (strict and lo == t):
        return Verdict.FALSE
    return Verdict.INCONCLUSIVE


def _both(a: Verdict, b: Verdict) -> Verdict:
    if Verdict.FALSE in (a, b):
        return Verdict.FALSE
    if Verdict.INCONCLUSIVE in (a, b):
        return Verdict.INCONCLUSIVE
    return Verdict.TRUE


def _enclosure_logs(enc: EigenEnclosure) -> tuple[float, float]:
    lo = enc.lo.log_mag if enc.lo.sign > 0 else -math.inf
    return lo, enc.hi.log_mag


@dataclass
class AsymptoticsRow:
    k: int
    log_lambda_k: float
    log_a_2km1: float
    ratio: float
    bracket_lower: Verdict
    bracket_upper: Verdict
    enclosure_rel_width: float
    log_lo: float
    log_hi: float
    truncation_size: int
    rel_tol: float
    error: str | None = None

    @property
    def bracket_lower_ok(self) -> bool:
        return self.bracket_lower is Verdict.TRUE

    @property
    def bracket_upper_ok(self) -> bool:
        return self.bracket_upper is Verdict.TRUE

    @property
    def ratio_lo(self) -> float:
        return math.exp(self.log_lo - self.log_a_2km1)

    @property
    def ratio_hi(self) -> float:
        return math.exp(self.log_hi - self.log_a_2km1)

    def to_json(self):
        return {
            "k": self.k,
            "log_lambda_k": self.log_lambda_k,
            "log_a_2km1": self.log_a_2km1,
            "ratio": self.ratio,
            "ratio_lo": self.ratio_lo if self.error is None else None,
            "ratio_hi": self.ratio_hi if self.error is None else None,
            "bracket_lower": str(self.bracket_lower),
            "bracket_upper": str(self.bracket_upper),
            "enclosure_rel_width": self.enclosure_rel_width,
            "log_lo": self.log_lo,
            "log_hi": self.log_hi,
            "truncation_size": self.truncation_size,
            "rel_tol": self.rel_tol,
            "error": self.error,
        }


def _asymptotics_row(spec, k, rel_tol):
    enc = certify_eigenvalue(spec, k, rel_tol)
    lo, hi = _enclosure_logs(enc)
    la_up = log_a_value(spec, 2 * k - 1)
    la_dn = log_a_value(spec, 2 * k + 1)
    mid = enc.section_value.log_mag
    return AsymptoticsRow(
        k=k,
        log_lambda_k=mid,
        log_a_2km1=la_up,
        ratio=math.exp(mid - la_up),
        bracket_lower=_above(lo, hi, la_dn, strict=True),
        bracket_upper=_below(lo, hi, la_up, strict=True),
        enclosure_rel_width=enc.rel_width,
        log_lo=lo,
        log_hi=hi,
        truncation_size=enc.truncation_size,
        rel_tol=rel_tol,
    )


def asymptotic_table(
    spec: SequenceSpec,
    k_max: int,
    rel_tol: float = 1e-10,
    *,
    window: tuple[int, int] = (1, 50),
    require_condition: bool = True,
) -> list[AsymptoticsRow]:
    """Certified ``lambda_k / a_{2k-1}`` for ``k = 1..k_max``.

    Certification failures are recorded in the row's ``error`` field rather
    than raised.  With ``require_condition`` the decay condition is checked on
    ``window`` first and :class:`ConditionNotSatisfied` raised if it fails.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    if require_condition:
        report = check_condition(spec, window)
        if not report.satisfied_on_window:
            raise ConditionNotSatisfied(report)
    rows = []
    for k in range(1, k_max + 1):
        try:
            row = _asymptotics_row(spec, k, rel_tol)
            if Verdict.INCONCLUSIVE in (row.bracket_lower, row.bracket_upper):
                row = _asymptotics_row(spec, k, rel_tol / 10)
        except (CertificationError, IndexError) as exc:
            row = AsymptoticsRow(
                k=k,
                log_lambda_k=math.nan,
                log_a_2km1=_safe_log_a(spec, 2 * k - 1),
                ratio=math.nan,
                bracket_lower=Verdict.INCONCLUSIVE,
                bracket_upper=Verdict.INCONCLUSIVE,
                enclosure_rel_width=math.nan,
                log_lo=math.nan,
                log_hi=math.nan,
                truncation_size=0,
                rel_tol=rel_tol,
                error=str(exc),
            )
        rows.append(row)
    return rows


def _safe_log_a(spec, n):
    try:
        return log_a_value(spec, n)
    except IndexError:
        return math.nan


@dataclass(frozen=True)
class BracketVerdict:
    k: int
    verdict: Verdict
    lower: Verdict
    upper: Verdict
    label: str


PROVEN_FAMILY = "q^(n^s) family"
OUTSIDE_FAMILY = "outside proven family"


def bracket_check(rows: list[AsymptoticsRow], spec: SequenceSpec | None = None) -> list[BracketVerdict]:
    """Per-row verdict on ``a_{2k+1} < lambda_k < a_{2k-1}``.

    The bracket is known to hold for ``a_n = q ** (n ** s)``; rows from any
    other family are still evaluated but labelled as outside that family.
    """
    label = PROVEN_FAMILY if isinstance(spec, StretchedGeometric) else OUTSIDE_FAMILY
    return [
        BracketVerdict(r.k, _both(r.bracket_lower, r.bracket_upper), r.bracket_lower, r.bracket_upper, label)
        for r in rows
    ]


@dataclass
class ScanRow:
    k: int
    log_value: float
    log_threshold: float
    verdict: Verdict
    label: str = ""


@dataclass
class ScanReport:
    check: str
    rows: list[ScanRow] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {v.value: 0 for v in Verdict}
        for r in self.rows:
            out[r.verdict.value] += 1
        return out

    @property
    def fraction_true(self) -> float:
        return self.counts["true"] / len(self.rows) if self.rows else math.nan

    def to_json(self):
        return {
            "check": self.check,
            "rows": [
                {
                    "k": r.k,
                    "log_value": r.log_value,
                    "log_threshold": r.log_threshold,
                    "verdict": str(r.verdict),
                    "label": r.label,
                }
                for r in self.rows
            ],
            "summary": {**self.counts, "fraction_true": self.fraction_true},
        }


def _smallest_row(spec, k, rel_tol):
    J = build_truncated(spec, 2 * k)
    lo, hi = kth_positive_eigenvalue_bracket(J, k, rel_tol)
    t = log_a_value(spec, 2 * k - 1) - math.log(2.0)
    v = _above(lo.log_mag, hi.log_mag, t, strict=False)
    return ScanRow(k, 0.5 * (lo.log_mag + hi.log_mag), t, v)


def smallest_eigenvalue_scan(spec: SequenceSpec, k_max: int, rel_tol: float = 1e-10) -> ScanReport:
    """Test ``lambda_k^{(2k)} >= a_{2k-1} / 2`` for ``k = 1..k_max``.

    ``lambda_k^{(2k)}`` is the smallest positive eigenvalue of the section of
    size ``2k``.  The inequality is only guaranteed for infinitely many ``k``;
    the report gives per-``k`` verdicts and the fraction that hold.
    """
    report = ScanReport("smallest_eigenvalue_half_bound")
    for k in range(1, k_max + 1):
        row = _smallest_row(spec, k, rel_tol)
        if row.verdict is Verdict.INCONCLUSIVE:
            row = _smallest_row(spec, k, rel_tol / 10)
        report.rows.append(row)
    return report


@dataclass
class EpsilonRow:
    k: int
    upper: Verdict
    lower: Verdict
    label: str
    log_lo: float
    log_hi: float
    log_a_2km1: float

    @property
    def verdict(self) -> Verdict:
        return _both(self.upper, self.lower)

    def to_json(self):
        return {
            "k": self.k,
            "upper": str(self.upper),
            "lower": str(self.lower),
            "verdict": str(self.verdict),
            "label": self.label,
            "log_lo": self.log_lo,
            "log_hi": self.log_hi,
            "log_a_2km1": self.log_a_2km1,
        }


def _epsilon_row(spec, k, eps, rel_tol, label):
    enc = certify_eigenvalue(spec, k, rel_tol)
    lo, hi = _enclosure_logs(enc)
    la = log_a_value(spec, 2 * k - 1)
    return EpsilonRow(
        k=k,
        upper=_below(lo, hi, la + math.log1p(eps), strict=False),
        lower=_above(lo, hi, la + math.log1p(-2.0 * eps), strict=False),
        label=label,
        log_lo=lo,
        log_hi=hi,
        log_a_2km1=la,
    )


def epsilon_bounds_check(
    spec: SequenceSpec, eps: float, k_range: range, rel_tol: float = 1e-10
) -> list[EpsilonRow]:
    """Test ``(1 - 2 eps) a_{2k-1} <= lambda_k <= (1 + eps) a_{2k-1}`` per ``k``.

    ``eps`` must lie in ``(0, 1/8)``.  Rows with ``k`` not beyond the first
    index from which ``a_{n+1} <= eps * a_n`` persists are labelled
    informational.
    """
    if not (0.0 < eps < 0.125):
        raise ValueError(f"eps must lie in (0, 1/8), got {eps!r}")
    ks = list(k_range)
    top = max(ks, default=1)
    try:
        n_eps = check_condition(spec, (1, max(50, 2 * top + 2)), eps).n_eps
    except ValueError:
        n_eps = None
    rows = []
    for k in ks:
        if n_eps is None:
            label = "threshold not reached, informational"
        elif k <= n_eps:
            label = "below threshold, informational"
        else:
            label = "beyond threshold"
        row = _epsilon_row(spec, k, eps, rel_tol, label)
        if row.verdict is Verdict.INCONCLUSIVE:
            row = _epsilon_row(spec, k, eps, rel_tol / 10, label)
        rows.append(row)
    return rows


@dataclass
class ProductRow:
    n: int
    sum_log_eigenvalues: float
    sum_log_odd_entries: float
    discrepancy: float
    allowed: float

    @property
    def ok(self) -> bool:
        return self.discrepancy <= self.allowed

    def to_json(self):
        return {
            "n": self.n,
            "sum_log_eigenvalues": self.sum_log_eigenvalues,
            "sum_log_odd_entries": self.sum_log_odd_entries,
            "discrepancy": self.discrepancy,
            "allowed": self.allowed,
            "ok": self.ok,
        }


def product_identity_report(
    spec: SequenceSpec, n_max: int, rel_tol: float = 1e-10, c: float = 10.0
) -> list[ProductRow]:
    """Compare ``sum ln lambda_k^{(2n)}`` with ``sum ln a_{2k-1}`` for ``n <= n_max``.

    The two agree exactly in exact arithmetic for any positive sequence;
    ``allowed`` is ``n * c * rel_tol``.
    """
    rows = []
    for n in range(1, n_max + 1):
        J = build_truncated(spec, 2 * n)
        eig = math.fsum(all_positive_eigenvalues(J, rel_tol).log_values)
        det = log_det_product(J).log_mag
        rows.append(ProductRow(n, eig, det, abs(eig - det), n * c * rel_tol))
    return rows


def trend_summary(rows: list[AsymptoticsRow], tail_fraction: float = 0.5) -> dict:
    """Finite-window summary of ``|ratio - 1|``; not a statement about the limit."""
    good = [r for r in rows if r.error is None]
    dev = [abs(r.ratio - 1.0) for r in good]
    if not dev:
        return {"rows": 0, "note": "no certified rows"}
    tail = dev[max(0, int(len(dev) * (1 - tail_fraction))) :]
    return {
        "rows": len(dev),
        "final_abs_deviation": dev[-1],
        "tail_max_abs_deviation": max(tail),
        "tail_decreasing": all(b < a for a, b in zip(tail, tail[1:])),
        "note": "finite-window proxy for ratio -> 1, not a proof",
    }
