"""Building M_k(N) and checking its distance law.

Run with ``python demos/01_construction.py``.
"""
# %%
import numpy as np

from naryecoc import build_m1, build_mk, build_walsh, distance_report, format_matrix
from naryecoc.verification import check_theorem12, exhaustive_max_dT

# %% [markdown]
# The base matrix for a prime N is symmetric; every pair of rows differs in
# exactly N - 1 positions.

# %%
m1 = build_m1(3)
print(format_matrix(m1))
print("M_1(3) report:", distance_report(m1).line())

# %% [markdown]
# The recursion replaces entry s of M_1 with M_k shifted by s (mod N).  The
# row and column distance grows to (N-1) N^(k-1).

# %%
for N, k in [(3, 2), (3, 3), (5, 2), (7, 2)]:
    rep = distance_report(build_mk(N, k))
    print(f"M_{k}({N}): {N**k}x{N**k}  d_r={rep.d_r}  d_c={rep.d_c}  expected {(N - 1) * N ** (k - 1)}")

# %% [markdown]
# For N = 2 the recursion is the Sylvester/Walsh doubling, so its first
# column is constant; the distance law still holds.

# %%
assert build_mk(2, 4) == build_walsh(4)
rep = check_theorem12(2, 4)
print("binary:", rep.d_r, rep.d_c, "->", rep.violation)

# %% [markdown]
# A composite base breaks the law: the same recursion with N = 4 gives 16,
# not 2 * (3/4) * 16 = 24.

# %%
rep = check_theorem12(4, 2, unchecked=True)
print("N=4, k=2: d_T =", rep.d_T)

# %% [markdown]
# Exhaustive search over tiny matrices.  Binary 3x3 and 4x4 top out at 4.
# Ternary 3x3 tops out at 6, reached by a Latin square, which is more than
# the 4 of M_1(3): the one-level matrix is not the best 3x3 matrix.

# %%
for base, n in [(2, 3), (2, 4), (3, 3)]:
    res = exhaustive_max_dT(base, n)
    print(f"N={base} n={n}: max d_T={res.max_d_T} over {res.enumerated} matrices")
    print(np.array(res.witness.tolist()))
