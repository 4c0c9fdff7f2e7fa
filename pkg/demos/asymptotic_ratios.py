"""Eigenvalues of a two-diagonal Jacobi operator track its odd entries.

For a zero-diagonal Jacobi operator whose off-diagonal ``a_n`` decays
faster than any geometric sequence, the k-th largest positive eigenvalue
behaves like ``a_{2k-1}``.  This script tabulates the certified ratio
``lambda_k / a_{2k-1}`` for two built-in families and shows how fast it
settles.

Run with ``python3 demos/asymptotic_ratios.py``.
"""

# %%
from jacobi_asym import FactorialDecay, StretchedGeometric
from jacobi_asym.analysis import asymptotic_table, bracket_check, trend_summary

# %% [markdown]
# ``a_n = 0.5 ** (n ** 2)`` reaches 2**-400 by n = 20, far below what a
# float can hold.  Everything is carried as logarithms, so the table is
# computed without underflow.

# %%
families = {
    "0.5^(n^2)": StretchedGeometric(q=0.5, s=2.0),
    "1/n!": FactorialDecay(c=1.0),
}

for name, spec in families.items():
    rows = asymptotic_table(spec, k_max=12, rel_tol=1e-10)
    verdicts = bracket_check(rows, spec)
    print(f"\n{name}")
    print(f"{'k':>3} {'ln lambda_k':>14} {'ratio - 1':>12} {'a_(2k+1) < lambda_k < a_(2k-1)':>32}")
    for r, v in zip(rows, verdicts):
        print(f"{r.k:>3} {r.log_lambda_k:>14.6f} {r.ratio - 1:>12.3e} {str(v.verdict):>32}")
    print(trend_summary(rows))

# %% [markdown]
# Observations:
#
# * For 1/n! the deviation shrinks steadily, roughly like k^-3.
# * For 0.5^(n^2) it collapses to round-off by k = 6.  From then on, the
#   two-sided bracket is "inconclusive": a_(2k-1) and lambda_k agree to
#   more digits than a double resolves.
# * At k = 1 the upper bracket fails outright.  lambda_1 is at least
#   sqrt(a_1^2 + a_2^2), which exceeds a_1.
