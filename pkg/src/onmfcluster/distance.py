"""Membership coefficients and the distance measures they induce.

For a data point x and a centroid v, the coefficient is the exact minimizer
of the scalar subproblem ``D(x, t v) + mu_u t^2 + lambda_u |t|`` over t >= 0
and the distance is the attained minimum (squared units for the l2
discrepancy, plain units for l1). The closed-form and angle-form variants of
the l2 distance are provided for cross-validation; all three agree.

These distances are generally not metrics: with a sparsity penalty,
dist(x, x) can be strictly positive.
"""

from __future__ import annotations

import numpy as np

from .model import ModelSpec
from .scalar_prox import _weighted_reg_median, soft_threshold, weighted_reg_median


class DegenerateCentroidError(ValueError):
    """The centroid row admits no well-defined coefficient for this penalty."""


class NoValidCentroidError(RuntimeError):
    """Every centroid row was degenerate during an assignment."""


def _pair(x, v) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float).ravel()
    v = np.asarray(v, dtype=float).ravel()
    if x.size != v.size:
        raise ValueError("x and v must have equal length")
    return x, v


def coefficient_l2(x, v, lambda_u: float = 0.0, mu_u: float = 0.0) -> float:
    """Soft-thresholded projection coefficient of x onto v (l2 discrepancy)."""
    x, v = _pair(x, v)
    denom = float(v @ v) + mu_u
    if denom <= 0.0:
        raise DegenerateCentroidError("centroid has zero norm and mu_u = 0")
    gamma = lambda_u / (2.0 * denom)
    return soft_threshold(gamma, float(x @ v) / denom)


def distance_l2(x, v, lambda_u: float = 0.0, mu_u: float = 0.0) -> float:
    """Squared regularized projection distance of x onto the ray of v."""
    x, v = _pair(x, v)
    t = coefficient_l2(x, v, lambda_u, mu_u)
    r = x - t * v
    return float(r @ r) + mu_u * t * t + lambda_u * t


def distance_l2_closed_form(x, v, lambda_u: float = 0.0, mu_u: float = 0.0) -> float:
    """Same distance, evaluated without forming the residual.

    Equals ||x||^2 when the threshold suppresses the coefficient
    (lambda_u / 2 > <x, v>), otherwise
    ||x||^2 - (lambda_u - 2 <x, v>)^2 / (4 (||v||^2 + mu_u)).
    """
    x, v = _pair(x, v)
    denom = float(v @ v) + mu_u
    if denom <= 0.0:
        raise DegenerateCentroidError("centroid has zero norm and mu_u = 0")
    xx = float(x @ x)
    xv = float(x @ v)
    if lambda_u / 2.0 > xv:
        return xx
    return xx - (lambda_u - 2.0 * xv) ** 2 / (4.0 * denom)


def distance_l2_angle_form(x, v, lambda_u: float = 0.0) -> float:
    """Angle form of the l2 distance for mu_u = 0 and lambda_u/2 <= <x, v>:

        ||x||^2 sin^2(angle(x, v)) + (lambda_u / ||v||^2)(<x, v> - lambda_u / 4)
    """
    x, v = _pair(x, v)
    xx = float(x @ x)
    vv = float(v @ v)
    if xx == 0.0 or vv == 0.0:
        raise ValueError("angle form requires nonzero x and v")
    xv = float(x @ v)
    cos2 = min(xv * xv / (xx * vv), 1.0)
    return xx * (1.0 - cos2) + (lambda_u / vv) * (xv - lambda_u / 4.0)


def coefficient_l1(x, v, lambda_u: float = 0.0, mu_u: float = 0.0) -> float:
    """Regularized weighted median coefficient of x onto v (l1 discrepancy)."""
    x, v = _pair(x, v)
    return weighted_reg_median(x, v, lambda_u, mu_u)


def distance_l1(x, v, lambda_u: float = 0.0, mu_u: float = 0.0) -> float:
    """Regularized l1 projection distance of x onto the ray of v."""
    x, v = _pair(x, v)
    t = coefficient_l1(x, v, lambda_u, mu_u)
    return float(np.abs(x - t * v).sum()) + mu_u * t * t + lambda_u * t


def coefficient_and_distance(x, v, spec: ModelSpec) -> tuple[float, float]:
    """Mode-appropriate (coefficient, distance) of a point against one centroid.

    Raises :class:`DegenerateCentroidError` where the coefficient is genuinely
    undefined (zero centroid with mu_u = 0 under an active l2 sparsity
    penalty). The unpenalized zero-centroid case is resolved by its limit:
    coefficient 0 with the full-norm distance.
    """
    x, v = _pair(x, v)
    reg = spec.reg
    mode = spec.constraint_mode

    if mode == "binary":
        r = x - v
        if spec.discrepancy == "l2":
            return 1.0, float(r @ r)
        return 1.0, float(np.abs(r).sum())

    if spec.discrepancy == "l2":
        lam = reg.lambda_u if mode == "c1_free" else 0.0
        mu = reg.mu_u if mode == "c1_free" else 0.0
        denom = float(v @ v) + mu
        if denom <= 0.0:
            if lam > 0.0:
                raise DegenerateCentroidError("zero centroid under an l1 penalty")
            return 0.0, float(x @ x)
        t = soft_threshold(lam / (2.0 * denom), float(x @ v) / denom)
        r = x - t * v
        return t, float(r @ r) + mu * t * t + lam * t

    lam = reg.lambda_u if mode == "c1_free" else 0.0
    mu = reg.mu_u if mode == "c1_free" else 0.0
    t, _ = _weighted_reg_median(x, v, lam, mu)
    return t, float(np.abs(x - t * v).sum()) + mu * t * t + lam * t


def assign(x, V, spec: ModelSpec) -> tuple[int, float, float]:
    """Best cluster for a data point: (index, coefficient, distance).

    Evaluates the mode-appropriate distance against every centroid row and
    returns the argmin; ties break toward the lowest index. Degenerate rows
    are skipped; if every row is degenerate, :class:`NoValidCentroidError`
    is raised.
    """
    V = np.atleast_2d(np.asarray(V, dtype=float))
    best: tuple[int, float, float] | None = None
    for k in range(V.shape[0]):
        try:
            coeff, dist = coefficient_and_distance(x, V[k], spec)
        except DegenerateCentroidError:
            continue
        if best is None or dist < best[2]:
            best = (k, coeff, dist)
    if best is None:
        raise NoValidCentroidError("all centroid rows are degenerate for this model")
    return best
