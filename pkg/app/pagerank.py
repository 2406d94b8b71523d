"""PageRank power iteration over a page link graph.

A page's rank is the sum, over pages linking to it, of that page's rank
divided by its number of outbound links. Pages without outbound links
spread their rank evenly over every page, so ranks stay a probability
distribution. Damping is optional and off by default.
"""

import logging
import math
from typing import Dict, Optional

from app.exceptions import DomainError
from app.models import PageGraph, PageRankResult, RankVector

logger = logging.getLogger(__name__)


def init_ranks(g: PageGraph) -> RankVector:
    """Uniform starting distribution.

    Raises:
        DomainError: If the graph has no nodes
    """
    if not g.nodes:
        raise DomainError("PageRank needs at least one page")
    share = 1.0 / len(g.nodes)
    return RankVector(ranks={node: share for node in sorted(g.nodes)})


def link_contributions(g: PageGraph, r: RankVector, node: str) -> Dict[str, float]:
    """Vote weight each inbound neighbour passes to ``node``."""
    return {
        source: r.ranks[source] / g.outdegree(source)
        for source in sorted(g.outlinks)
        if node in g.outlinks[source]
    }


def pagerank_step(g: PageGraph, r: RankVector, damping: Optional[float] = None) -> RankVector:
    """One application of the rank recurrence.

    Args:
        g: Link graph
        r: Current ranks, summing to 1
        damping: Probability of following a link; None applies the plain
            recurrence without teleportation

    Returns:
        New ranks, summing to 1
    """
    nodes = sorted(g.nodes)
    n = len(nodes)

    dangling_mass = math.fsum(r.ranks[node] for node in nodes if g.outdegree(node) == 0)
    incoming: Dict[str, list] = {node: [dangling_mass / n] for node in nodes}
    for source in nodes:
        degree = g.outdegree(source)
        if degree:
            share = r.ranks[source] / degree
            for target in g.outlinks[source]:
                incoming[target].append(share)

    ranks = {node: math.fsum(incoming[node]) for node in nodes}
    if damping is not None:
        ranks = {node: (1.0 - damping) / n + damping * value for node, value in ranks.items()}
    return RankVector(ranks=ranks)


def pagerank_solve(
    g: PageGraph,
    tol: float,
    max_iter: int,
    damping: Optional[float] = None,
) -> PageRankResult:
    """Iterate from the uniform distribution until ranks settle.

    Args:
        g: Link graph
        tol: Stop once no rank moves by ``tol`` or more in one step
        max_iter: Step budget; 0 returns the starting distribution
        damping: Optional damping factor in (0, 1]

    Returns:
        Ranks plus iteration count and whether tol was reached. Periodic
        graphs iterated without damping can exhaust max_iter; that is
        reported through ``converged=False`` rather than raised.

    Raises:
        DomainError: If the graph is empty or the parameters are out of range
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}", details={"tol": tol})
    if max_iter < 0:
        raise DomainError(f"max_iter must not be negative, got {max_iter}", details={"max_iter": max_iter})
    if damping is not None and not 0.0 < damping <= 1.0:
        raise DomainError(f"damping must lie in (0, 1], got {damping}", details={"damping": damping})

    ranks = init_ranks(g)
    max_change = 0.0
    for iteration in range(1, max_iter + 1):
        updated = pagerank_step(g, ranks, damping)
        max_change = max(abs(updated.ranks[node] - ranks.ranks[node]) for node in g.nodes)
        ranks = updated
        if max_change < tol:
            logger.info(f"PageRank converged after {iteration} iterations (max change {max_change:.3e})")
            return PageRankResult(ranks=ranks, iterations=iteration, converged=True, max_change=max_change)

    if max_iter:
        logger.warning(f"PageRank did not converge within {max_iter} iterations (max change {max_change:.3e})")
    return PageRankResult(ranks=ranks, iterations=max_iter, converged=False, max_change=max_change)
