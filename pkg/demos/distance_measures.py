"""The derived distance measures and their closed forms.

The distance between a data point x and a centroid v is the minimum of the
scalar subproblem over the coefficient t: a regularized projection of x onto
the ray of v. For the l2 discrepancy there are three equivalent ways to
evaluate it, and with a sparsity penalty it stops being a metric.
"""

import numpy as np

from onmfcluster import (
    coefficient_l2,
    distance_l1,
    distance_l2,
    distance_l2_angle_form,
    distance_l2_closed_form,
)

x = np.array([2.0, 0.0])
v = np.array([1.0, 0.0])
lam = 2.0

print(f"x = {x}, v = {v}, membership l1 penalty lambda_u = {lam}")
print(f"  coefficient  tau(<x,v>/||v||^2)      = {coefficient_l2(x, v, lam)}")
print(f"  distance (minimized subproblem)      = {distance_l2(x, v, lam)}")
print(f"  distance (closed form)               = {distance_l2_closed_form(x, v, lam)}")
print(f"  distance (angle form, mu = 0)        = {distance_l2_angle_form(x, v, lam)}")

print()
print("the three forms agree everywhere:")
rng = np.random.default_rng(1)
worst = worst_angle = 0.0
for _ in range(2000):
    n = int(rng.integers(1, 9))
    a = rng.uniform(0, 10, n)
    b = rng.uniform(0.01, 10, n)
    lam_i, mu_i = rng.uniform(0, 5, 2)
    worst = max(worst, abs(distance_l2(a, b, lam_i, mu_i) - distance_l2_closed_form(a, b, lam_i, mu_i)))
    if lam_i / 2 <= a @ b:
        worst_angle = max(
            worst_angle, abs(distance_l2(a, b, lam_i) - distance_l2_angle_form(a, b, lam_i))
        )
print(f"  max |direct - closed form| over 2000 draws = {worst:.2e}")
print(f"  max |direct - angle form|  (mu = 0 branch)  = {worst_angle:.2e}")

print()
print("with a sparsity penalty the distance is not a metric:")
w = np.array([1.0, 0.0])
print(f"  l2: dist(x, x)^2 = {distance_l2(w, w, lambda_u=2.0)}  (> 0 although x == v)")
print(f"  l1: dist(x, x)   = {distance_l1([1.0], [1.0], lambda_u=1.0)}")

print()
print("a strong enough penalty disconnects a point from every centroid:")
tiny = np.array([0.05, 0.05])
print(f"  <tiny, v> = {tiny @ v}, lambda_u/2 = {lam / 2}")
print(f"  coefficient = {coefficient_l2(tiny, v, lam)}, distance = ||tiny||^2 = {distance_l2(tiny, v, lam)}")
