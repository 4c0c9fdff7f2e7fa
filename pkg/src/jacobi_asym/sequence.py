"""Off-diagonal weight sequences ``a_1, a_2, ...`` evaluated in log domain.

Four families are built in::

    StretchedGeometric(q, s)   a_n = q ** (n ** s)
    FactorialDecay(c)          a_n = c ** n / n!
    Geometric(q)               a_n = q ** n       (never superexponential)
    ExplicitTable(log_values)  a_n = exp(log_values[n - 1])

Indices are 1-based throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

from .signlog import SignLogNumber, add, from_log

__all__ = [
    "StretchedGeometric",
    "FactorialDecay",
    "Geometric",
    "ExplicitTable",
    "SequenceSpec",
    "ConditionReport",
    "DEFAULT_EPS",
    "log_a",
    "log_a_value",
    "check_condition",
    "truncation_bound",
    "spec_from_json",
    "spec_to_json",
    "scaled_table",
]

DEFAULT_EPS = 0.125

# Slack on log-ratio comparisons so that exact rational ties such as
# a_8 / a_7 = 1/8 for 1/n! are decided as "<=" despite rounding.
_TIE_SLACK = 1e-12


@dataclass(frozen=True)
class StretchedGeometric:
    q: float
    s: float

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise ValueError(f"q must lie in (0, 1), got {self.q!r}")
        if not (self.s > 0.0 and math.isfinite(self.s)):
            raise ValueError(f"s must be positive, got {self.s!r}")

    family = "stretched_geometric"


@dataclass(frozen=True)
class FactorialDecay:
    c: float

    def __post_init__(self):
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise ValueError(f"c must be positive, got {self.c!r}")

    family = "factorial"


@dataclass(frozen=True)
class Geometric:
    q: float

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise ValueError(f"q must lie in (0, 1), got {self.q!r}")

    family = "geometric"


@dataclass(frozen=True)
class ExplicitTable:
    log_values: tuple[float, ...] = field()

    def __post_init__(self):
        vals = tuple(float(v) for v in self.log_values)
        if not vals:
            raise ValueError("log_values must be non-empty")
        for i, v in enumerate(vals, start=1):
            # -inf would be a_n = 0, violating positivity
            if not math.isfinite(v):
                raise ValueError(
                    f"a_{i} must be a positive finite number (log value {v!r})"
                )
        object.__setattr__(self, "log_values", vals)

    family = "table"

    def __len__(self):
        return len(self.log_values)


SequenceSpec = Union[StretchedGeometric, FactorialDecay, Geometric, ExplicitTable]


def log_a_value(spec: SequenceSpec, n: int) -> float:
    """Return ``ln a_n`` as a float."""
    if n < 1:
        raise IndexError(f"sequence index must be >= 1, got {n}")
    if isinstance(spec, StretchedGeometric):
        return float(n) ** spec.s * math.log(spec.q)
    if isinstance(spec, FactorialDecay):
        return n * math.log(spec.c) - math.lgamma(n + 1)
    if isinstance(spec, Geometric):
        return n * math.log(spec.q)
    if isinstance(spec, ExplicitTable):
        if n > len(spec.log_values):
            raise IndexError(
                f"a_{n} requested but the table only defines a_1..a_{len(spec.log_values)}"
            )
        return spec.log_values[n - 1]
    raise TypeError(f"unknown sequence spec {spec!r}")


def log_a(spec: SequenceSpec, n: int) -> SignLogNumber:
    """Return ``a_n`` (always positive) as a :class:`SignLogNumber`."""
    return from_log(log_a_value(spec, n))


def max_index(spec: SequenceSpec) -> int | None:
    """Largest valid index, or None for the closed-form families."""
    if isinstance(spec, ExplicitTable):
        return len(spec.log_values)
    return None


def truncation_bound(spec: SequenceSpec, n: int) -> SignLogNumber:
    """``a_n + a_{n+1}``, the norm bound on what truncation at ``n`` discards."""
    return add(log_a(spec, n), log_a(spec, n + 1))


@dataclass
class ConditionReport:
    """Finite-window verdict on ``a_{n+1} / a_n -> 0``.

    This is an observation on ``window`` only; a limit cannot be decided
    from finitely many terms.
    """

    satisfied_on_window: bool
    ratios: list[tuple[int, float]]
    n0_monotone: int | None
    n_eps: int | None
    eps: float
    window: tuple[int, int]
    note: str = "window verdict, not a proof"

    def to_json(self):
        return {
            "satisfied_on_window": self.satisfied_on_window,
            "window": list(self.window),
            "eps": self.eps,
            "n0_monotone": self.n0_monotone,
            "n_eps": self.n_eps,
            "ratios": [[n, r] for n, r in self.ratios],
            "note": self.note,
        }


def _first_persistent(ns, flags):
    """First index from which every later flag is true, or None."""
    first = None
    for n, ok in zip(ns, flags):
        if ok:
            if first is None:
                first = n
        else:
            first = None
    return first


def check_condition(
    spec: SequenceSpec, window: tuple[int, int] = (1, 50), eps: float = DEFAULT_EPS
) -> ConditionReport:
    """Scan log ratios ``ln(a_{n+1}/a_n)`` for ``n`` in ``window`` (inclusive).

    The window verdict requires, on its last quarter, every ratio at most
    ``eps`` and a strictly decreasing log ratio.  ``n0_monotone`` is the first
    ``n`` after which ``a_{n+1} <= a_n`` throughout the window and ``n_eps``
    the first after which ``a_{n+1} <= eps * a_n`` throughout.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    lo, hi = window
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid window {window!r}")
    top = max_index(spec)
    if top is not None:
        hi = min(hi, top - 1)
        if hi < lo:
            raise ValueError(
                f"table of length {top} has no ratios inside window {window!r}"
            )

    ns = list(range(lo, hi + 1))
    logs = [log_a_value(spec, n) for n in range(lo, hi + 2)]
    ratios = [(n, logs[i + 1] - logs[i]) for i, n in enumerate(ns)]

    log_eps = math.log(eps)

    def leq(r, bound):
        return r <= bound + _TIE_SLACK * max(1.0, abs(bound))

    n0 = _first_persistent(ns, [leq(r, 0.0) for _, r in ratios])
    n_eps = _first_persistent(ns, [leq(r, log_eps) for _, r in ratios])

    tail_len = max(2, len(ratios) // 4)
    tail = [r for _, r in ratios[-tail_len:]]
    below = all(leq(r, log_eps) for r in tail)
    decreasing = len(tail) >= 2 and all(
        b < a - 1e-9 * max(1.0, abs(a)) for a, b in zip(tail, tail[1:])
    )
    return ConditionReport(
        satisfied_on_window=below and decreasing,
        ratios=ratios,
        n0_monotone=n0,
        n_eps=n_eps,
        eps=eps,
        window=(lo, hi),
    )


def spec_from_json(obj) -> SequenceSpec:
    """Parse a spec from a decoded JSON object.

    ``{"family": "stretched_geometric", "q": 0.5, "s": 2.0}``,
    ``{"family": "factorial", "c": 1.0}``, ``{"family": "geometric", "q": 0.5}``,
    ``{"family": "table", "log_values": [...]}`` or ``{"family": "table",
    "values": [...]}`` with raw positive values.
    """
    if not isinstance(obj, dict):
        raise ValueError("sequence spec must be a JSON object")
    family = obj.get("family")

    def need(name):
        if name not in obj:
            raise ValueError(f"sequence spec for family {family!r} is missing field {name!r}")
        try:
            return float(obj[name])
        except (TypeError, ValueError):
            raise ValueError(f"field {name!r} must be a number, got {obj[name]!r}") from None

    if family == "stretched_geometric":
        return StretchedGeometric(q=need("q"), s=need("s"))
    if family in ("factorial", "factorial_decay"):
        return FactorialDecay(c=need("c"))
    if family == "geometric":
        return Geometric(q=need("q"))
    if family in ("table", "explicit_table"):
        if "log_values" in obj:
            return ExplicitTable(tuple(float(v) for v in obj["log_values"]))
        if "values" in obj:
            vals = [float(v) for v in obj["values"]]
            for i, v in enumerate(vals, start=1):
                if not (v > 0.0 and math.isfinite(v)):
                    raise ValueError(
                        f"a_{i} = {v!r}: the sequence must consist of positive numbers"
                    )
            return ExplicitTable(tuple(math.log(v) for v in vals))
        raise ValueError("table spec is missing field 'log_values' (or 'values')")
    raise ValueError(f"unknown sequence family {family!r}")


def spec_to_json(spec: SequenceSpec) -> dict:
    if isinstance(spec, StretchedGeometric):
        return {"family": spec.family, "q": spec.q, "s": spec.s}
    if isinstance(spec, FactorialDecay):
        return {"family": spec.family, "c": spec.c}
    if isinstance(spec, Geometric):
        return {"family": spec.family, "q": spec.q}
    return {"family": spec.family, "log_values": list(spec.log_values)}


def scaled_table(spec: SequenceSpec, length: int, log_scale: float) -> ExplicitTable:
    """Tabulate ``c * a_n`` for ``n <= length`` where ``ln c = log_scale``."""
    return ExplicitTable(tuple(log_a_value(spec, n) + log_scale for n in range(1, length + 1)))
