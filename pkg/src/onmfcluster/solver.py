"""Alternating-minimization driver.

Each iteration assigns every data row to its best centroid (exact scalar
minimization of the membership coefficient), recomputes the centroids from
the new memberships, and records the objective. Both block updates are exact
minimizers of their subproblems, so the recorded objective trace is
non-increasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .centroid import EMPTY_CLUSTER_POLICIES, update_centroids
from .distance import assign, coefficient_and_distance
from .model import FactorizationResult, Membership, ModelSpec, as_data_matrix, objective

INIT_METHODS = ("random_rows", "plusplus")
ZERO_ROW_POLICIES = ("keep_last_cluster", "exclude")


class DuplicateRowsError(ValueError):
    """Fewer distinct data rows than requested centroids."""


@dataclass(frozen=True)
class SolverConfig:
    """Run configuration: cluster count, termination, seeding, and policies.

    ``zero_row_policy`` governs rows whose coefficient thresholds to zero:
    ``keep_last_cluster`` keeps the most recent cluster label for reporting
    (the row still contributes nothing to centroid updates), ``exclude``
    drops the label entirely.
    """

    n_clusters: int
    max_iter: int = 300
    tol: float = 1e-9
    seed: int = 0
    init: str = "random_rows"
    empty_cluster_policy: str = "reseed_farthest"
    zero_row_policy: str = "keep_last_cluster"

    def __post_init__(self):
        if self.n_clusters < 1:
            raise ValueError("n_clusters must be >= 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.tol < 0:
            raise ValueError("tol must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.init not in INIT_METHODS:
            raise ValueError(f"init must be one of {INIT_METHODS}")
        if self.empty_cluster_policy not in EMPTY_CLUSTER_POLICIES:
            raise ValueError(f"empty_cluster_policy must be one of {EMPTY_CLUSTER_POLICIES}")
        if self.zero_row_policy not in ZERO_ROW_POLICIES:
            raise ValueError(f"zero_row_policy must be one of {ZERO_ROW_POLICIES}")


def init_centroids(X, config: SolverConfig, spec: ModelSpec) -> np.ndarray:
    """Seeded initial centroids: K distinct data rows.

    ``random_rows`` samples rows uniformly without replacement, skipping
    duplicates of rows already taken. ``plusplus`` draws each next row with
    probability proportional to its distance (under the model's own distance
    measure) to the nearest row chosen so far. Deterministic given the seed.
    """
    X = as_data_matrix(X)
    M = X.shape[0]
    K = config.n_clusters
    if K > M:
        raise ValueError(f"cannot place {K} centroids on {M} data rows")
    rng = np.random.default_rng(config.seed)

    if config.init == "random_rows":
        chosen: list[int] = []
        for idx in rng.permutation(M):
            if any(np.array_equal(X[idx], X[c]) for c in chosen):
                continue
            chosen.append(int(idx))
            if len(chosen) == K:
                break
        if len(chosen) < K:
            raise DuplicateRowsError(f"only {len(chosen)} distinct rows for {K} centroids")
        return X[chosen].copy()

    chosen = [int(rng.integers(M))]
    nearest = np.array([coefficient_and_distance(X[m], X[chosen[0]], spec)[1] for m in range(M)])
    for _ in range(K - 1):
        total = float(nearest.sum())
        if total <= 0.0:
            raise DuplicateRowsError("remaining rows coincide with chosen centroids")
        nxt = int(rng.choice(M, p=nearest / total))
        chosen.append(nxt)
        dist_new = np.array(
            [coefficient_and_distance(X[m], X[nxt], spec)[1] for m in range(M)]
        )
        nearest = np.minimum(nearest, dist_new)
    return X[chosen].copy()


class FitStep(NamedTuple):
    """State after one full iteration (assignment + centroid update)."""

    membership: Membership
    centroids: np.ndarray
    objective: float


def _iterations(X: np.ndarray, spec: ModelSpec, config: SolverConfig) -> Iterator[FitStep]:
    K = config.n_clusters
    M = X.shape[0]
    V = init_centroids(X, config, spec)
    prev_labels = np.full(M, -1, dtype=np.int64)

    for _ in range(config.max_iter):
        labels = np.empty(M, dtype=np.int64)
        coeffs = np.empty(M)
        for m in range(M):
            k, coeff, _ = assign(X[m], V, spec)
            if coeff == 0.0 and config.zero_row_policy == "keep_last_cluster":
                k = int(prev_labels[m]) if prev_labels[m] >= 0 else k
            elif coeff == 0.0:
                k = -1
            labels[m] = k
            coeffs[m] = coeff
        membership = Membership(labels, coeffs, K)
        V = update_centroids(X, membership, K, spec, V, config.empty_cluster_policy)
        yield FitStep(membership, V, objective(X, membership, V, spec))
        prev_labels = labels


def _same_assignments(a: Membership, b: Membership) -> bool:
    return np.array_equal(a.labels, b.labels) and np.array_equal(a.coefficients, b.coefficients)


def _run(X: np.ndarray, spec: ModelSpec, config: SolverConfig) -> tuple[list[FitStep], bool]:
    if config.n_clusters > X.shape[0]:
        raise ValueError(
            f"n_clusters = {config.n_clusters} exceeds the {X.shape[0]} data rows"
        )
    steps: list[FitStep] = []
    for step in _iterations(X, spec, config):
        if not steps:
            steps.append(step)
            continue
        prev = steps[-1]
        steps.append(step)
        if _same_assignments(prev.membership, step.membership):
            return steps, True
        rel = 0.0 if prev.objective <= 0.0 else (prev.objective - step.objective) / prev.objective
        if rel < config.tol:
            return steps, True
    return steps, False


def fit_history(X, spec: ModelSpec, config: SolverConfig) -> list[FitStep]:
    """Run the solver and return the full per-iteration trajectory.

    The trajectory ends when assignments repeat exactly, when the relative
    objective decrease drops below ``config.tol``, or after ``max_iter``
    iterations, whichever comes first.
    """
    return _run(as_data_matrix(X), spec, config)[0]


def fit(X, spec: ModelSpec, config: SolverConfig) -> FactorizationResult:
    """Cluster X by alternating exact block minimization.

    Args:
        X: nonnegative data matrix, rows are data points.
        spec: discrepancy, constraint mode, and penalty weights.
        config: cluster count, termination, seeding, and policies.

    Returns:
        A :class:`FactorizationResult` with the final membership, centroid
        matrix, per-iteration objective trace, and convergence metadata.
        Hitting ``max_iter`` is reported via ``converged=False``, not raised.
    """
    steps, converged = _run(as_data_matrix(X), spec, config)
    last = steps[-1]
    unassigned = frozenset(int(m) for m in np.nonzero(last.membership.coefficients == 0.0)[0])
    return FactorizationResult(
        membership=last.membership,
        centroids=last.centroids,
        objective_trace=np.array([s.objective for s in steps]),
        iterations=len(steps),
        converged=converged,
        unassigned_rows=unassigned,
    )
