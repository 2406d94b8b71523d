"""String distances kept as reference baselines next to the cosine ranking.

All functions work on any sequence of hashable items: strings compare
Unicode characters, lists of tokens give word-level distances. None of
them is used by the retrieval path; position-sensitive metrics are a poor
fit for unordered symptom descriptions.
"""

from typing import Hashable, List, Sequence

import numpy as np

from app.exceptions import DomainError
from app.models import Alignment, CostMatrix, EditWeights

Symbols = Sequence[Hashable]


def levenshtein(s: Symbols, t: Symbols) -> int:
    """Minimum number of single-symbol insertions, deletions and substitutions.

    Examples:
        >>> levenshtein("math", "mats")
        1
    """
    if len(s) < len(t):
        s, t = t, s

    # Two rows of the Wagner-Fischer table, sized by the shorter input
    previous = list(range(len(t) + 1))
    for i in range(1, len(s) + 1):
        current = [i] + [0] * len(t)
        for j in range(1, len(t) + 1):
            substitution = previous[j - 1] + (s[i - 1] != t[j - 1])
            current[j] = min(previous[j] + 1, current[j - 1] + 1, substitution)
        previous = current
    return previous[-1]


def damerau_levenshtein(s: Symbols, t: Symbols) -> int:
    """Levenshtein distance where swapping two adjacent symbols costs 1.

    This is the restricted variant (optimal string alignment): a substring
    is never edited again after being transposed, so ("ca", "abc") is 3,
    not 2.
    """
    n, m = len(s), len(t)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        d[i][0] = i
    for j in range(m + 1):
        d[0][j] = j

    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = 0 if s[i - 1] == t[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if i > 1 and j > 1 and s[i - 1] == t[j - 2] and s[i - 2] == t[j - 1]:
                d[i][j] = min(d[i][j], d[i - 2][j - 2] + 1)
    return d[n][m]


def _alignment_table(s: str, t: str, costs: CostMatrix) -> np.ndarray:
    n, m = len(s), len(t)
    table = np.zeros((n + 1, m + 1))
    for i in range(1, n + 1):
        table[i, 0] = table[i - 1, 0] + costs.delete(s[i - 1])
    for j in range(1, m + 1):
        table[0, j] = table[0, j - 1] + costs.insert(t[j - 1])

    for i in range(1, n + 1):
        for j in range(1, m + 1):
            table[i, j] = min(
                table[i - 1, j - 1] + costs.substitute(s[i - 1], t[j - 1]),
                table[i - 1, j] + costs.delete(s[i - 1]),
                table[i, j - 1] + costs.insert(t[j - 1]),
            )
    return table


def needleman_wunsch(s: str, t: str, costs: CostMatrix) -> float:
    """Minimum total cost of transforming s into t under a cost matrix.

    Args:
        s: Source string
        t: Target string
        costs: Insertion/deletion cost per character, substitution cost per pair

    Returns:
        Cost of the cheapest alignment; equals levenshtein under unit costs

    Raises:
        ConfigurationError: If a needed cost entry is missing
    """
    return float(_alignment_table(s, t, costs)[len(s), len(t)])


def needleman_wunsch_align(s: str, t: str, costs: CostMatrix, gap: str = "-") -> Alignment:
    """Cheapest alignment of s and t, rendered with gap characters.

    Ties prefer substitution, then deletion, then insertion.
    """
    table = _alignment_table(s, t, costs)

    i, j = len(s), len(t)
    source: List[str] = []
    target: List[str] = []
    while i > 0 or j > 0:
        if i > 0 and j > 0 and table[i, j] == table[i - 1, j - 1] + costs.substitute(s[i - 1], t[j - 1]):
            source.append(s[i - 1])
            target.append(t[j - 1])
            i, j = i - 1, j - 1
        elif i > 0 and table[i, j] == table[i - 1, j] + costs.delete(s[i - 1]):
            source.append(s[i - 1])
            target.append(gap)
            i -= 1
        else:
            source.append(gap)
            target.append(t[j - 1])
            j -= 1

    return Alignment(
        aligned_source="".join(reversed(source)),
        aligned_target="".join(reversed(target)),
        cost=float(table[len(s), len(t)]),
    )


def hamming(s: Symbols, t: Symbols) -> int:
    """Number of positions at which two equal-length inputs differ.

    Raises:
        DomainError: If the lengths differ
    """
    if len(s) != len(t):
        raise DomainError(
            "Hamming distance is defined for the same length inputs",
            details={"length_s": len(s), "length_t": len(t)},
        )
    return sum(1 for a, b in zip(s, t) if a != b)


def weighted_edit(s: Symbols, t: Symbols, w: EditWeights) -> float:
    """Minimum total weight of an edit script with per-operation weights."""
    n, m = len(s), len(t)
    previous = [j * w.w_insert for j in range(m + 1)]
    for i in range(1, n + 1):
        current = [i * w.w_delete] + [0.0] * m
        for j in range(1, m + 1):
            substitution = previous[j - 1] + (0.0 if s[i - 1] == t[j - 1] else w.w_substitute)
            current[j] = min(previous[j] + w.w_delete, current[j - 1] + w.w_insert, substitution)
        previous = current
    return float(previous[-1])
