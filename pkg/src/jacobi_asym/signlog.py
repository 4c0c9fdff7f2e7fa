"""Signed logarithmic numbers.

A real number ``x`` is carried as ``(sign, log_mag)`` with ``log_mag = ln|x|``.
Products and quotients reduce to sums of logs; sums use a signed
log-sum-exp.  Magnitudes such as ``0.5 ** (40 ** 2)`` that underflow IEEE
doubles stay representable as long as ``|log_mag| <= 1e8``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "DomainError",
    "SignLogNumber",
    "ZERO",
    "ONE",
    "from_real",
    "from_log",
    "to_real",
    "mul",
    "add",
    "sub",
    "div",
    "neg",
    "compare",
    "sqrt_nonneg",
    "signed_logaddexp",
    "CANCEL_TOL",
]

# Sentinel stored in ``log_mag`` for exact zero.
_ZERO_LOG = -math.inf

# Operands of opposite sign whose magnitudes agree to this relative
# tolerance cancel to an exact zero.
CANCEL_TOL = 1e-15


class DomainError(ValueError):
    """Raised for division by zero or the square root of a negative."""


@dataclass(frozen=True, slots=True)
class SignLogNumber:
    sign: int
    log_mag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0:
            object.__setattr__(self, "log_mag", _ZERO_LOG)
        elif math.isnan(self.log_mag) or self.log_mag == math.inf:
            raise ValueError(f"invalid log magnitude {self.log_mag!r}")
        elif self.log_mag == -math.inf:
            object.__setattr__(self, "sign", 0)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __float__(self) -> float:
        return to_real(self)

    def __neg__(self):
        return neg(self)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __lt__(self, other):
        return compare(self, _coerce(other)) < 0

    def __le__(self, other):
        return compare(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return compare(self, _coerce(other)) > 0

    def __ge__(self, other):
        return compare(self, _coerce(other)) >= 0

    def __repr__(self):
        if self.sign == 0:
            return "SignLogNumber(0)"
        return f"SignLogNumber({'+' if self.sign > 0 else '-'}, {self.log_mag!r})"

    def to_json(self):
        return {"sign": self.sign, "log_mag": None if self.sign == 0 else self.log_mag}

    @classmethod
    def from_json(cls, obj):
        if obj["sign"] == 0:
            return ZERO
        return cls(int(obj["sign"]), float(obj["log_mag"]))


ZERO = SignLogNumber(0, _ZERO_LOG)
ONE = SignLogNumber(1, 0.0)


def _coerce(x) -> SignLogNumber:
    if isinstance(x, SignLogNumber):
        return x
    return from_real(float(x))


def from_real(x: float) -> SignLogNumber:
    if not math.isfinite(x):
        raise ValueError(f"cannot represent non-finite value {x!r}")
    if x == 0.0:
        return ZERO
    return SignLogNumber(1 if x > 0 else -1, math.log(abs(x)))


def from_log(log_mag: float, sign: int = 1) -> SignLogNumber:
    """Build a number directly from its log magnitude."""
    return SignLogNumber(sign, log_mag)


def to_real(a: SignLogNumber) -> float:
    """Exponentiate back to a float; may overflow to inf or underflow to 0."""
    if a.sign == 0:
        return 0.0
    try:
        return a.sign * math.exp(a.log_mag)
    except OverflowError:
        return a.sign * math.inf


def signed_logaddexp(s1: int, l1: float, s2: int, l2: float) -> tuple[int, float]:
    """Add ``s1*exp(l1) + s2*exp(l2)`` and return ``(sign, log_mag)``.

    This is the scalar kernel used by :func:`add` and by the Sturm recurrence.
    """
    if s1 == 0:
        return s2, l2
    if s2 == 0:
        return s1, l1
    if l1 >= l2:
        hi_s, hi_l, lo_l = s1, l1, l2
    else:
        hi_s, hi_l, lo_l = s2, l2, l1
    delta = lo_l - hi_l
    if s1 == s2:
        return hi_s, hi_l + math.log1p(math.exp(delta))
    if -delta <= CANCEL_TOL:
        return 0, _ZERO_LOG
    return hi_s, hi_l + math.log1p(-math.exp(delta))


def mul(a: SignLogNumber, b: SignLogNumber) -> SignLogNumber:
    if a.sign == 0 or b.sign == 0:
        return ZERO
    return SignLogNumber(a.sign * b.sign, a.log_mag + b.log_mag)


def add(a: SignLogNumber, b: SignLogNumber) -> SignLogNumber:
    s, l = signed_logaddexp(a.sign, a.log_mag, b.sign, b.log_mag)
    if s == 0:
        return ZERO
    return SignLogNumber(s, l)


def neg(a: SignLogNumber) -> SignLogNumber:
    if a.sign == 0:
        return ZERO
    return SignLogNumber(-a.sign, a.log_mag)


def sub(a: SignLogNumber, b: SignLogNumber) -> SignLogNumber:
    return add(a, neg(b))


def div(a: SignLogNumber, b: SignLogNumber) -> SignLogNumber:
    if b.sign == 0:
        raise DomainError("division by zero")
    if a.sign == 0:
        return ZERO
    return SignLogNumber(a.sign * b.sign, a.log_mag - b.log_mag)


def compare(a: SignLogNumber, b: SignLogNumber) -> int:
    """Return -1, 0 or +1 as ``a`` is less than, equal to or greater than ``b``."""
    if a.sign != b.sign:
        return -1 if a.sign < b.sign else 1
    if a.sign == 0 or a.log_mag == b.log_mag:
        return 0
    bigger = a.log_mag > b.log_mag
    if a.sign > 0:
        return 1 if bigger else -1
    return -1 if bigger else 1


def sqrt_nonneg(a: SignLogNumber) -> SignLogNumber:
    if a.sign < 0:
        raise DomainError("square root of a negative number")
    if a.sign == 0:
        return ZERO
    return SignLogNumber(1, 0.5 * a.log_mag)
