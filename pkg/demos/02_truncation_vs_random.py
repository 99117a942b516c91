"""Deterministic truncation against best-of-1000 random search (26 classes).

Truncating M_k(N) keeps most of its distance when N^k is close to the class
count, and loses it when many rows and columns must go.
"""
# %%
from naryecoc import SearchConfig, deterministic_matrix, random_matrix

CLASSES = 26
config = SearchConfig(trials=1000, seed=0)

# %%
print("N   n_k  det d_r  det d_T  rand d_r  rand d_T")
for N in (2, 3, 5, 7, 11, 13):
    det = deterministic_matrix(N, CLASSES, "square")
    rnd = random_matrix(N, CLASSES, "square", config)
    print(f"{N:<3} {N ** det.k:<4} {det.report.d_r:<8} {det.report.d_T:<8} "
          f"{rnd.report.d_r:<9} {rnd.report.d_T}")

# %% [markdown]
# At N = 3 only one row and one column of the 27x27 matrix are dropped and
# the deterministic matrix wins clearly.  At N = 13, 143 of 169 rows go and
# random search overtakes it.

# %%
for policy in ("half", "square", "double"):
    det = deterministic_matrix(3, CLASSES, policy)
    print(f"{policy:>6}: {det.matrix.rows}x{det.matrix.cols} from M_{det.k}(3), "
          f"d_r={det.report.d_r} d_c={det.report.d_c}")
