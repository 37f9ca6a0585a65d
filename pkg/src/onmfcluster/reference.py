"""Textbook baselines used as independent oracles in tests.

``lloyd_kmeans`` is the classical Lloyd iteration (squared-Euclidean
assignment, mean centroids); ``kmedian`` its l1 counterpart (Manhattan
assignment, coordinate medians with the midpoint convention). Both share the
solver's conventions exactly: lowest-index tie-breaks, reseed-farthest empty
clusters, objective recorded after each full iteration, stop on unchanged
assignments.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np


class BaselineStep(NamedTuple):
    assignments: np.ndarray
    centroids: np.ndarray
    cost: float


def _iterate(
    X: np.ndarray,
    n_clusters: int,
    init: np.ndarray,
    max_iter: int,
    point_costs: Callable[[np.ndarray, np.ndarray], np.ndarray],
    center: Callable[[np.ndarray], np.ndarray],
) -> list[BaselineStep]:
    C = np.asarray(init, dtype=float).copy()
    if C.shape != (n_clusters, X.shape[1]):
        raise ValueError("init must be a K x N centroid matrix")
    steps: list[BaselineStep] = []
    labels = None
    for _ in range(max_iter):
        dist = point_costs(X, C)
        new_labels = dist.argmin(axis=1)
        own = dist[np.arange(X.shape[0]), new_labels]
        new_C = C.copy()
        empty = []
        for k in range(n_clusters):
            members = X[new_labels == k]
            if members.shape[0] == 0:
                empty.append(k)
            else:
                new_C[k] = center(members)
        for k in empty:
            m = int(np.argmax(own))
            new_C[k] = X[m]
            own = own.copy()
            own[m] = -np.inf
        C = new_C
        cost = float(point_costs(X, C)[np.arange(X.shape[0]), new_labels].sum())
        steps.append(BaselineStep(new_labels, C.copy(), cost))
        if labels is not None and np.array_equal(labels, new_labels):
            break
        labels = new_labels
    return steps


def _sq_euclidean(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - C[None, :, :]
    return (diff * diff).sum(axis=2)


def _manhattan(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    return np.abs(X[:, None, :] - C[None, :, :]).sum(axis=2)


def lloyd_kmeans_history(X, n_clusters: int, init, max_iter: int = 300) -> list[BaselineStep]:
    """Per-iteration trajectory of the Lloyd iteration."""
    X = np.asarray(X, dtype=float)
    return _iterate(X, n_clusters, init, max_iter, _sq_euclidean, lambda M: M.mean(axis=0))


def lloyd_kmeans(X, n_clusters: int, init, max_iter: int = 300):
    """Classical K-means: returns (assignments, centroids, cost trace)."""
    steps = lloyd_kmeans_history(X, n_clusters, init, max_iter)
    last = steps[-1]
    return last.assignments, last.centroids, np.array([s.cost for s in steps])


def kmedian_history(X, n_clusters: int, init, max_iter: int = 300) -> list[BaselineStep]:
    """Per-iteration trajectory of the K-median iteration."""
    X = np.asarray(X, dtype=float)
    return _iterate(X, n_clusters, init, max_iter, _manhattan, lambda M: np.median(M, axis=0))


def kmedian(X, n_clusters: int, init, max_iter: int = 300):
    """K-median with coordinate medians: returns (assignments, centroids, cost trace)."""
    steps = kmedian_history(X, n_clusters, init, max_iter)
    last = steps[-1]
    return last.assignments, last.centroids, np.array([s.cost for s in steps])
