"""Full clustering runs on synthetic blobs, across discrepancies and modes.

Shows the non-increasing objective trace, the effect of the elastic net on
memberships and centroids, and the unassigned-row report under a strong
sparsity penalty.
"""

import numpy as np

from onmfcluster import ModelSpec, RegularizationParams, SolverConfig, fit

rng = np.random.default_rng(7)

# Three nonnegative blobs.
centers = np.array([[2.0, 2.0], [9.0, 1.0], [5.0, 9.0]])
X = np.vstack([rng.uniform(0, 1.2, (40, 2)) + c for c in centers])

config = SolverConfig(n_clusters=3, seed=11)

for discrepancy in ("l2", "l1"):
    spec = ModelSpec(discrepancy, "binary")
    res = fit(X, spec, config)
    sizes = [int((res.membership.labels == k).sum()) for k in range(3)]
    print(f"{discrepancy} binary: converged={res.converged} after {res.iterations} iterations")
    print(f"  cluster sizes {sizes}")
    print(f"  centroids:\n{np.round(res.centroids, 3)}")
    print(f"  objective trace: {np.round(res.objective_trace, 2)}")
    print()

print("free coefficients with an elastic net on both factors:")
spec = ModelSpec("l2", "c1_free", RegularizationParams(lambda_u=0.5, lambda_v=0.5, mu_u=0.1, mu_v=0.1))
res = fit(X, spec, config)
coeffs = res.membership.coefficients
print(f"  coefficient range [{coeffs.min():.3f}, {coeffs.max():.3f}] (no longer fixed at 1)")
print(f"  trace non-increasing: {bool((np.diff(res.objective_trace) <= 1e-10).all())}")
print()

print("a strong membership penalty leaves outliers unassigned:")
X_out = np.vstack([X, [[0.02, 0.0]]])
spec = ModelSpec("l2", "c1_free", RegularizationParams(lambda_u=4.0, mu_v=1.0))
res = fit(X_out, spec, config)
print(f"  unassigned rows: {sorted(res.unassigned_rows)} (row {len(X_out) - 1} is the outlier)")
