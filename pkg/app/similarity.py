"""Weighted tf-idf vectors and the cosine similarity ranking.

Term weight of term i in text T:

    F_i(T) = 1/2 * (1 + tf_i / max_tf) * log(N / n_i)

Similarity of query A and stored fault B:

    cos(A, B) = sum(alpha_i F_i(A) F_i(B)) / sqrt(sum(alpha_i^2 F_i(A)^2) * sum(alpha_i^2 F_i(B)^2))
"""

import logging
import math
from typing import Dict, List, Mapping, Optional

from app.exceptions import ConfigurationError, DomainError
from app.index import pipeline_for, term_frequencies
from app.models import CorpusIndex, SimilarityResult, TermVector, WeightConfig

logger = logging.getLogger(__name__)


def term_weight(tf: int, max_tf: float, N: int, n_i: float, cfg: WeightConfig) -> float:
    """Weight of one term occurring ``tf`` times in a text.

    Args:
        tf: Occurrences of the term in the text (>= 1)
        max_tf: Normalizer; the largest tf in the text under ``within_text``
        N: Number of database entries
        n_i: Number of entries containing the term
        cfg: Supplies the logarithm base and max_tf mode

    Returns:
        Non-negative weight; 0 for a term present in every entry

    Raises:
        DomainError: If the term cannot be weighted (n_i or max_tf not positive)
    """
    if n_i <= 0 or max_tf <= 0:
        raise DomainError(
            "Term cannot be weighted: n_i and max_tf must be positive",
            details={"n_i": n_i, "max_tf": max_tf},
        )
    if n_i > N:
        raise DomainError(f"n_i={n_i} exceeds corpus size N={N}", details={"n_i": n_i, "N": N})
    if tf < 1:
        raise DomainError(f"Term frequency must be at least 1, got {tf}", details={"tf": tf})
    if cfg.max_tf_mode == "within_text" and tf > max_tf:
        raise DomainError(f"tf={tf} exceeds max_tf={max_tf}", details={"tf": tf, "max_tf": max_tf})

    return 0.5 * (1.0 + tf / max_tf) * math.log(N / n_i, cfg.log_base)


def _check_smoothing(index: CorpusIndex, cfg: WeightConfig) -> None:
    if cfg.unseen_doc_freq is not None and cfg.unseen_doc_freq > index.N:
        raise ConfigurationError(
            f"unseen_doc_freq={cfg.unseen_doc_freq} exceeds corpus size N={index.N}",
            details={"unseen_doc_freq": cfg.unseen_doc_freq, "N": index.N},
        )


def _doc_freq(term: str, index: CorpusIndex, cfg: WeightConfig) -> Optional[float]:
    n_i = index.doc_freq.get(term)
    return n_i if n_i is not None else cfg.unseen_doc_freq


def _max_tf(tokens: Mapping[str, int], index: CorpusIndex, cfg: WeightConfig) -> Optional[float]:
    if cfg.max_tf_mode == "within_text":
        return max(tokens.values())

    # literal_paper: document count of the most frequent weightable term,
    # ties resolved towards the larger count
    best = None
    for term, tf in tokens.items():
        n_i = _doc_freq(term, index, cfg)
        if n_i is not None and (best is None or (tf, n_i) > best):
            best = (tf, n_i)
    return best[1] if best else None


def vectorize(tokens: Mapping[str, int], index: CorpusIndex, cfg: WeightConfig) -> TermVector:
    """Turn term frequencies into a weight vector over the index vocabulary.

    Terms missing from the index get weight 0 unless ``cfg.unseen_doc_freq``
    supplies a smoothing document frequency.

    Raises:
        ConfigurationError: If the smoothing frequency exceeds the corpus size
    """
    _check_smoothing(index, cfg)
    if not tokens:
        return TermVector()

    max_tf = _max_tf(tokens, index, cfg)
    if max_tf is None:
        return TermVector()

    weights: Dict[str, float] = {}
    for term in sorted(tokens):
        n_i = _doc_freq(term, index, cfg)
        if n_i is None:
            continue
        weight = term_weight(tokens[term], max_tf, index.N, n_i, cfg)
        if weight > 0:
            weights[term] = weight
    return TermVector(weights=weights)


def cosine(a: TermVector, b: TermVector, cfg: WeightConfig) -> float:
    """Alpha-weighted cosine similarity, clamped to [0, 1].

    Returns 0 when either vector has zero norm.
    """
    norm_a = math.fsum((cfg.alpha_for(t) * w) ** 2 for t, w in sorted(a.weights.items()))
    norm_b = math.fsum((cfg.alpha_for(t) * w) ** 2 for t, w in sorted(b.weights.items()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0

    common = sorted(a.weights.keys() & b.weights.keys())
    dot = math.fsum(cfg.alpha_for(t) * (a.weights[t] * b.weights[t]) for t in common)
    return min(1.0, max(0.0, dot / math.sqrt(norm_a * norm_b)))


def document_vectors(index: CorpusIndex, cfg: WeightConfig) -> Dict[int, TermVector]:
    """Weight vectors of every indexed fault, keyed by id."""
    return {doc_id: vectorize(tfs, index, cfg) for doc_id, tfs in index.docs.items()}


def rank_query(query: str, index: CorpusIndex, cfg: WeightConfig, k: int) -> List[SimilarityResult]:
    """Rank stored faults by similarity to a symptom text.

    Args:
        query: Free-text fault symptom
        index: Corpus index; its text pipeline is applied to the query
        cfg: Weighting parameters
        k: Maximum number of results

    Returns:
        Up to k results with positive score, by score descending then id ascending.
        Empty when nothing of the query survives the pipeline.

    Raises:
        DomainError: If k < 1
        ConfigurationError: If the smoothing frequency exceeds the corpus size
    """
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}", details={"k": k})
    _check_smoothing(index, cfg)

    tokens = term_frequencies(pipeline_for(index).process(query))
    if not tokens:
        logger.warning(f"Query {query!r} is empty after stop-word removal")
        return []

    query_vector = vectorize(tokens, index, cfg)
    if query_vector.is_zero():
        logger.info(f"Query {query!r} shares no weighted terms with the corpus")
        return []

    scored = []
    for doc_id, doc_vector in document_vectors(index, cfg).items():
        score = cosine(query_vector, doc_vector, cfg)
        if score > 0:
            scored.append(SimilarityResult(id=doc_id, score=score))

    scored.sort(key=lambda result: (-result.score, result.id))
    return scored[:k]
