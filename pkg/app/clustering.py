"""k-means grouping of fault vectors into diagnosis classes.

Lloyd iteration on dense projections of the term vectors, minimizing the
total within-cluster squared Euclidean distance. Initial centroids are k
distinct inputs drawn with the seed from the id-sorted input, so the
partition does not depend on the order the vectors are supplied in.
Clusters are numbered in order of their smallest member id.
"""

import logging
from collections import Counter
from typing import List, Mapping, Optional, Sequence

import numpy as np

from app.exceptions import DomainError
from app.models import ClusterModel, TermVector

logger = logging.getLogger(__name__)


def dense_matrix(vectors: Mapping[int, TermVector], ids: Sequence[int], vocabulary: Sequence[str]) -> np.ndarray:
    """Rows follow ``ids``, columns follow ``vocabulary``; unlisted terms are dropped."""
    column = {term: j for j, term in enumerate(vocabulary)}
    matrix = np.zeros((len(ids), len(vocabulary)))
    for i, fault_id in enumerate(ids):
        for term, weight in vectors[fault_id].weights.items():
            if term in column:
                matrix[i, column[term]] = weight
    return matrix


def dominant_terms(docs: Mapping[int, Mapping[str, int]], n: int) -> List[str]:
    """The n terms with the most occurrences over all documents.

    Ties go to the alphabetically first term. Used to project the corpus
    onto a few dimensions before clustering.

    Raises:
        DomainError: If n < 1
    """
    if n < 1:
        raise DomainError(f"Number of dominant terms must be at least 1, got {n}", details={"n": n})
    totals = Counter()
    for tfs in docs.values():
        totals.update(tfs)
    ranked = sorted(totals.items(), key=lambda item: (-item[1], item[0]))
    return [term for term, _ in ranked[:n]]


def _canonical_order(labels: np.ndarray, k: int) -> List[int]:
    """Clusters in order of their first member; empty clusters last."""
    order = list(dict.fromkeys(labels.tolist()))
    return order + [cluster for cluster in range(k) if cluster not in order]


def _assign(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    distances = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    # argmin picks the lowest centroid index on ties
    return distances.argmin(axis=1)


def _objective(points: np.ndarray, centroids: np.ndarray, labels: np.ndarray) -> float:
    return float(((points - centroids[labels]) ** 2).sum())


def _update(points: np.ndarray, centroids: np.ndarray, labels: np.ndarray) -> np.ndarray:
    k = len(centroids)
    updated = centroids.copy()
    empty: List[int] = []
    for cluster in range(k):
        members = points[labels == cluster]
        if len(members):
            updated[cluster] = members.mean(axis=0)
        else:
            empty.append(cluster)

    if empty:
        # Reseed each empty cluster at the point farthest from its own centroid
        spread = ((points - centroids[labels]) ** 2).sum(axis=1)
        order = np.argsort(-spread, kind="stable")
        for cluster, point in zip(empty, order):
            logger.debug(f"Reseeding empty cluster {cluster} at point {point}")
            updated[cluster] = points[point]
    return updated


def kmeans(
    vectors: Mapping[int, TermVector],
    k: int,
    max_iter: int,
    seed: int,
    vocabulary: Optional[Sequence[str]] = None,
) -> ClusterModel:
    """Partition fault vectors into k clusters.

    Args:
        vectors: fault id -> term vector
        k: Number of clusters, 1 <= k <= len(vectors)
        max_iter: Maximum assignment rounds (>= 1)
        seed: Seed for choosing the initial centroids
        vocabulary: Dimensions of the dense space; defaults to every term present

    Returns:
        Cluster model with assignments, centroids and objective history

    Raises:
        DomainError: If the input is empty or k / max_iter are out of range
    """
    if not vectors:
        raise DomainError("k-means needs at least one vector")
    if not 1 <= k <= len(vectors):
        raise DomainError(
            f"k must lie between 1 and the number of vectors ({len(vectors)}), got {k}",
            details={"k": k, "vectors": len(vectors)},
        )
    if max_iter < 1:
        raise DomainError(f"max_iter must be at least 1, got {max_iter}", details={"max_iter": max_iter})

    ids = sorted(vectors)
    if vocabulary is None:
        vocabulary = sorted({term for vector in vectors.values() for term in vector.weights})
    points = dense_matrix(vectors, ids, vocabulary)

    rng = np.random.default_rng(seed)
    centroids = points[np.sort(rng.choice(len(ids), size=k, replace=False))].copy()

    labels: Optional[np.ndarray] = None
    history: List[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        new_labels = _assign(points, centroids)
        history.append(_objective(points, centroids, new_labels))
        if labels is not None and np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
        centroids = _update(points, centroids, labels)

    # Number clusters by their smallest fault id so equal partitions print equally
    order = _canonical_order(labels, k)
    relabel = np.empty(k, dtype=int)
    relabel[order] = np.arange(k)
    labels = relabel[labels]
    centroids = centroids[order]

    objective = _objective(points, centroids, labels)
    logger.info(
        f"k-means with k={k} {'converged' if converged else 'stopped'} after {iterations} rounds "
        f"(objective {objective:.6f})"
    )
    return ClusterModel(
        k=k,
        vocabulary=list(vocabulary),
        centroids=centroids.tolist(),
        assignments={fault_id: int(label) for fault_id, label in zip(ids, labels)},
        objective=objective,
        iterations=iterations,
        converged=converged,
        history=history,
    )
