"""Finite sections of the two-diagonal Jacobi operator.

The section of size ``n`` is the ``n x n`` zero-diagonal symmetric
tridiagonal matrix with off-diagonal ``a_1, ..., a_{n-1}``.  Entries are
kept as logs; nothing here exponentiates them.

Permuting odd coordinates before even ones turns an even section of size
``2m`` into ``[[0, C], [C^T, 0]]`` with ``C`` an ``m x m`` bidiagonal matrix
whose diagonal holds ``a_1, a_3, ..., a_{2m-1}``.  Its eigenvalues are
``+/-`` the singular values of ``C``, and ``|det| = prod a_{2k-1} ** 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .sequence import SequenceSpec, log_a_value, truncation_bound
from .signlog import SignLogNumber, from_log

__all__ = [
    "TruncatedJacobi",
    "BidiagonalHalf",
    "build_truncated",
    "from_log_offdiag",
    "split_bidiagonal",
    "log_det_product",
    "difference_section",
    "difference_norm_check",
    "NormCheck",
]


@dataclass(frozen=True)
class TruncatedJacobi:
    n: int
    offdiag: tuple[SignLogNumber, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if len(self.offdiag) != self.n - 1:
            raise ValueError(
                f"a section of size {self.n} needs {self.n - 1} off-diagonal entries, "
                f"got {len(self.offdiag)}"
            )
        for i, x in enumerate(self.offdiag, start=1):
            if x.sign != 1:
                raise ValueError(f"off-diagonal entry {i} must be strictly positive")

    @cached_property
    def log_offdiag(self) -> tuple[float, ...]:
        return tuple(x.log_mag for x in self.offdiag)

    @cached_property
    def log_norm_bound(self) -> float:
        """ln of the largest absolute row sum, an upper bound on the norm."""
        la = self.log_offdiag
        if not la:
            return -math.inf
        best = -math.inf
        for i in range(self.n):
            left = la[i - 1] if i >= 1 else -math.inf
            right = la[i] if i < len(la) else -math.inf
            hi, lo = max(left, right), min(left, right)
            row = hi if lo == -math.inf else hi + math.log1p(math.exp(lo - hi))
            best = max(best, row)
        return best

    def to_json(self):
        return {"n": self.n, "log_offdiag": list(self.log_offdiag)}

    @classmethod
    def from_json(cls, obj):
        return from_log_offdiag(obj["log_offdiag"])


@dataclass(frozen=True)
class BidiagonalHalf:
    m: int
    diag: tuple[SignLogNumber, ...]
    superdiag: tuple[SignLogNumber, ...]

    @property
    def log_abs_det(self) -> float:
        return math.fsum(x.log_mag for x in self.diag)


def from_log_offdiag(log_values) -> TruncatedJacobi:
    """Section whose off-diagonal has the given logs."""
    entries = tuple(from_log(float(v)) for v in log_values)
    return TruncatedJacobi(len(entries) + 1, entries)


def build_truncated(spec: SequenceSpec, n: int) -> TruncatedJacobi:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    return from_log_offdiag([log_a_value(spec, k) for k in range(1, n)])


def split_bidiagonal(J: TruncatedJacobi) -> BidiagonalHalf:
    if J.n % 2:
        raise ValueError(f"bidiagonal split needs an even dimension, got {J.n}")
    return BidiagonalHalf(m=J.n // 2, diag=J.offdiag[0::2], superdiag=J.offdiag[1::2])


def log_det_product(J: TruncatedJacobi) -> SignLogNumber:
    """``prod_{k<=m} a_{2k-1} = |det J_{2m}| ** (1/2)``."""
    return from_log(split_bidiagonal(J).log_abs_det)


def difference_section(spec: SequenceSpec, n: int, m: int) -> TruncatedJacobi:
    """Nonzero block of ``J_m - J_n``: off-diagonal ``a_n, ..., a_{m-1}``."""
    if not (1 <= n < m):
        raise ValueError(f"need 1 <= n < m, got n={n}, m={m}")
    return from_log_offdiag([log_a_value(spec, k) for k in range(n, m)])


@dataclass(frozen=True)
class NormCheck:
    n: int
    m: int
    computed_norm: SignLogNumber
    bound: SignLogNumber
    holds: bool


def difference_norm_check(spec: SequenceSpec, n: int, m: int, rel_tol: float = 1e-12) -> NormCheck:
    """Compare ``||J_m - J_n||`` with ``a_n + a_{n+1}``.

    ``computed_norm`` is the upper end of the bisection bracket for the top
    eigenvalue of the difference block.  ``holds`` comes from the inertia of
    the block shifted by the bound: every eigenvalue strictly below
    ``a_n + a_{n+1}`` (and, by symmetry, above its negative).  That test stays
    exact when ``a_{n+1}/a_n`` is far below the rounding level of ``a_n``,
    where comparing two rounded numbers cannot decide anything.

    Meaningful only for ``n`` past the point where the sequence is monotone.
    """
    from .spectral import count_below_truncation_bound, kth_positive_eigenvalue_bracket

    D = difference_section(spec, n, m)
    _, hi = kth_positive_eigenvalue_bracket(D, 1, rel_tol)
    bound = truncation_bound(spec, n)
    holds = count_below_truncation_bound(D, log_a_value(spec, n + 1)) == D.n
    return NormCheck(n, m, hi, bound, holds)
