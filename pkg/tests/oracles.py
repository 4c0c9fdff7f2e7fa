"""Reference computations that share no code with the package's solvers."""

import math

import mpmath as mp


def mp_positive_eigenvalues(log_offdiag, dps=None):
    """Positive eigenvalues (descending) by mpmath's dense symmetric solver."""
    n = len(log_offdiag) + 1
    if dps is None:
        spread = max((abs(l) for l in log_offdiag), default=0.0) / math.log(10)
        dps = int(40 + 2 * spread)
    with mp.workdps(dps):
        M = mp.zeros(n, n)
        for i, l in enumerate(log_offdiag):
            M[i, i + 1] = M[i + 1, i] = mp.exp(mp.mpf(l))
        ev = mp.eigh(M, eigvals_only=True)
        pos = sorted((x for x in ev if x > 0), reverse=True)[: n // 2]
        return [float(mp.log(x)) for x in pos]


def closed_form_4x4(a1, a2, a3):
    """Positive eigenvalues of the 4x4 zero-diagonal tridiagonal.

    The characteristic polynomial is ``x^4 - (a1^2 + a2^2 + a3^2) x^2 + a1^2 a3^2``.
    """
    s = a1 * a1 + a2 * a2 + a3 * a3
    r = math.sqrt(s * s - 4 * a1 * a1 * a3 * a3)
    return math.sqrt((s + r) / 2), math.sqrt((s - r) / 2)


def float_count_below_bound(scaled, r):
    """Eigenvalues of the block with off-diagonal ``scaled`` strictly below ``1 + r``.

    ``scaled[0]`` must be 1 and ``r`` the next sequence ratio, so that the
    bound ``1 + r`` minus the first entry is exactly ``r``.  Plain floats.
    """
    x = 1.0 + r
    count = 1  # d_1 = -x
    d = -r * (2.0 + r) / (1.0 + r)  # -x + 1/x without cancellation
    count += d < 0
    for a in scaled[1:]:
        d = -x - a * (a / d)
        count += d < 0
    return count
