"""Tests for k-means grouping of fault vectors."""

from itertools import product

import numpy as np
import pytest

from app.clustering import dense_matrix, dominant_terms, kmeans
from app.exceptions import DomainError
from app.models import TermVector
from app.reporting import render_clusters_csv
from app.similarity import document_vectors

from tests.conftest import FIXTURES_DIR

GOLDEN_CLUSTERS = FIXTURES_DIR / "clusters_k2_seed42.csv"


def vectors_from_points(points):
    """Fault ids 1..n with coordinates on terms x0, x1, ..."""
    return {
        i: TermVector(weights={f"x{d}": float(value) for d, value in enumerate(point)})
        for i, point in enumerate(points, start=1)
    }


def brute_force_objective(points, k):
    """Lowest within-cluster squared distance over every labelling."""
    points = np.asarray(points, dtype=float)
    best = None
    for labels in product(range(k), repeat=len(points)):
        labels = np.array(labels)
        if len(set(labels.tolist())) < k:
            continue
        total = sum(((points[labels == c] - points[labels == c].mean(axis=0)) ** 2).sum() for c in range(k))
        if best is None or total < best[0]:
            best = (total, labels)
    return best


def partition(assignments):
    groups = {}
    for fault_id, cluster in assignments.items():
        groups.setdefault(cluster, set()).add(fault_id)
    return {frozenset(group) for group in groups.values()}


class TestDenseMatrix:
    """Test suite for the dense projection."""

    def test_rows_and_columns(self):
        vectors = {2: TermVector(weights={"hu": 1.5}), 1: TermVector(weights={"radio": 2.0, "dvd": 9.0})}
        matrix = dense_matrix(vectors, [1, 2], ["hu", "radio"])
        assert matrix.tolist() == [[0.0, 2.0], [1.5, 0.0]]


class TestDominantTerms:
    """Test suite for choosing projection terms."""

    def test_fault_table(self, fixture_index):
        """message and radio occur 18 times each, hu 9 times."""
        assert dominant_terms(fixture_index.docs, 3) == ["message", "radio", "hu"]

    def test_ties_break_by_name(self):
        docs = {1: {"b": 2, "a": 1}, 2: {"a": 1, "c": 2}}
        assert dominant_terms(docs, 2) == ["a", "b"]

    def test_more_terms_than_vocabulary(self):
        assert dominant_terms({1: {"radio": 1}}, 5) == ["radio"]

    def test_invalid_count(self):
        with pytest.raises(DomainError):
            dominant_terms({1: {"radio": 1}}, 0)


class TestKMeans:
    """Test suite for Lloyd iteration."""

    def test_single_cluster_is_mean(self):
        """k = 1 puts the centroid at the mean."""
        model = kmeans(vectors_from_points([[0, 0], [2, 0], [4, 6]]), k=1, max_iter=10, seed=0)
        assert model.centroids[0] == pytest.approx([2.0, 2.0])
        assert set(model.assignments.values()) == {0}
        assert model.objective == pytest.approx(4 + 0 + 4 + 4 + 4 + 16)

    def test_one_cluster_per_point(self):
        """k = n on distinct points gives singletons and zero objective."""
        points = [[0, 0], [1, 0], [0, 1], [5, 5]]
        model = kmeans(vectors_from_points(points), k=4, max_iter=10, seed=3)
        assert sorted(model.assignments.values()) == [0, 1, 2, 3]
        assert model.objective == 0.0
        assert model.converged

    @pytest.mark.parametrize("seed", range(6))
    def test_two_pairs_match_brute_force(self, seed):
        """Every start recovers the optimal split of two separated pairs."""
        points = [[0, 1], [1, 1], [10, 1], [11, 1]]
        model = kmeans(vectors_from_points(points), k=2, max_iter=20, seed=seed)
        best_total, best_labels = brute_force_objective(points, 2)
        assert model.objective == pytest.approx(best_total)
        expected = partition({i + 1: int(label) for i, label in enumerate(best_labels)})
        assert partition(model.assignments) == expected == {frozenset({1, 2}), frozenset({3, 4})}

    @pytest.mark.parametrize("seed", range(6))
    def test_clusters_numbered_by_smallest_id(self, seed):
        """Cluster 0 holds fault 1 whichever centroids the seed starts from."""
        points = [[10, 1], [0, 1], [11, 1], [1, 1]]
        model = kmeans(vectors_from_points(points), k=2, max_iter=20, seed=seed)
        assert model.assignments == {1: 0, 2: 1, 3: 0, 4: 1}
        assert model.centroids[0] == pytest.approx([10.5, 1.0])
        assert model.centroids[1] == pytest.approx([0.5, 1.0])

    def test_objective_never_increases(self):
        """The recorded objective is non-increasing on 100 random datasets."""
        rng = np.random.default_rng(11)
        for trial in range(100):
            n = int(rng.integers(2, 25))
            points = rng.random((n, 3)).round(3) * 10
            k = int(rng.integers(1, min(n, 6) + 1))
            model = kmeans(vectors_from_points(points.tolist()), k=k, max_iter=50, seed=trial)
            history = model.history
            assert all(later <= earlier + 1e-9 for earlier, later in zip(history, history[1:]))
            assert model.objective <= history[-1] + 1e-9
            assert model.iterations == len(history)

    def test_input_order_does_not_matter(self):
        """Supplying the vectors in another order gives the same clustering."""
        rng = np.random.default_rng(5)
        vectors = vectors_from_points(rng.random((12, 2)).tolist())
        shuffled = {fault_id: vectors[fault_id] for fault_id in rng.permutation(sorted(vectors)).tolist()}
        first = kmeans(vectors, k=3, max_iter=50, seed=1)
        second = kmeans(shuffled, k=3, max_iter=50, seed=1)
        assert first.assignments == second.assignments
        assert first.centroids == second.centroids

    def test_duplicate_points(self):
        """Identical inputs still yield k valid clusters."""
        points = [[1, 1], [1, 1], [1, 1], [4, 4]]
        model = kmeans(vectors_from_points(points), k=3, max_iter=20, seed=0)
        assert len(model.centroids) == 3
        assert model.objective == pytest.approx(0.0)

    def test_vocabulary_defaults_to_terms_present(self):
        model = kmeans(vectors_from_points([[1, 2], [3, 4]]), k=1, max_iter=5, seed=0)
        assert model.vocabulary == ["x0", "x1"]

    @pytest.mark.parametrize(
        "k, max_iter",
        [(0, 10), (4, 10), (1, 0)],
    )
    def test_invalid_parameters(self, k, max_iter):
        with pytest.raises(DomainError):
            kmeans(vectors_from_points([[0], [1], [2]]), k=k, max_iter=max_iter, seed=0)

    def test_empty_input(self):
        with pytest.raises(DomainError):
            kmeans({}, k=1, max_iter=10, seed=0)


class TestKMeansOnFaultTable:
    """Clustering the published fault table."""

    def test_deterministic_for_seed(self, fixture_index, weights):
        vectors = document_vectors(fixture_index, weights)
        first = kmeans(vectors, k=2, max_iter=100, seed=42, vocabulary=fixture_index.vocabulary)
        second = kmeans(vectors, k=2, max_iter=100, seed=42, vocabulary=fixture_index.vocabulary)
        assert first == second
        assert sorted(first.assignments) == sorted(fixture_index.docs)

    def test_projection_matches_partition_oracle(self, fixture_index, weights):
        """On the two most frequent terms, k = 2 finds the best of all 2-partitions."""
        vocabulary = dominant_terms(fixture_index.docs, 2)
        vectors = document_vectors(fixture_index, weights)
        ids = sorted(vectors)
        best_total, best_labels = brute_force_objective(dense_matrix(vectors, ids, vocabulary), 2)

        model = kmeans(vectors, k=2, max_iter=100, seed=42, vocabulary=vocabulary)
        assert model.objective == pytest.approx(best_total)
        assert partition(model.assignments) == partition(dict(zip(ids, best_labels.tolist())))
        assert partition(model.assignments) == {
            frozenset({32, 49, 50, 51, 52}),
            frozenset({40, 41, 42, 44, 45, 46, 47, 48, 53}),
        }

    def test_projection_matches_golden_file(self, fixture_index, weights):
        vocabulary = dominant_terms(fixture_index.docs, 2)
        model = kmeans(document_vectors(fixture_index, weights), k=2, max_iter=100, seed=42, vocabulary=vocabulary)
        assert render_clusters_csv(model) == GOLDEN_CLUSTERS.read_text(encoding="utf-8")

    def test_k_equal_to_corpus_size(self, fixture_index, weights):
        """Fourteen clusters hold one fault each apart from exact duplicates."""
        vectors = document_vectors(fixture_index, weights)
        model = kmeans(vectors, k=14, max_iter=100, seed=42, vocabulary=fixture_index.vocabulary)
        assert model.objective == pytest.approx(0.0, abs=1e-12)
