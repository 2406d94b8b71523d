"""Text renderings of query, PageRank and clustering results.

Query reports come in three forms: JSON lines for plotting tools, an
aligned table, and ASCII bar charts in the style of the published
similarity figures. All renderings are deterministic for equal input.
"""

import json
from typing import List

from app.models import ClusterModel, PageRankResult, QueryReport

BAR_WIDTH = 50
BAR_CHAR = "#"
OUTPUT_FORMATS = ("jsonl", "table", "bars")


def render_jsonl(report: QueryReport) -> str:
    """One ``{"id", "score", "percent"}`` object per line, full precision scores."""
    lines = [
        json.dumps({"id": result.id, "score": result.score, "percent": result.percent})
        for result in report.results
    ]
    return "".join(f"{line}\n" for line in lines)


def render_table(report: QueryReport) -> str:
    lines = [f"{'RANK':<6}{'DEFECT_ID':<11}{'SCORE':<10}PERCENT"]
    for rank, result in enumerate(report.results, start=1):
        lines.append(f"{rank:<6}{result.id:<11}{result.score:<10.6f}{result.percent}%")
    return "\n".join(lines) + "\n"


def render_bars(report: QueryReport) -> str:
    """Horizontal bar per fault, scaled to its whole-percent similarity."""
    lines: List[str] = [f"Fault similarities with symptom: {report.query}"]
    for result in report.results:
        bar = BAR_CHAR * round(result.percent * BAR_WIDTH / 100)
        lines.append(f"{result.id:>6} |{bar:<{BAR_WIDTH}}| {result.percent:>3}%")
    return "\n".join(lines) + "\n"


def render_report(report: QueryReport, output_format: str) -> str:
    renderers = {"jsonl": render_jsonl, "table": render_table, "bars": render_bars}
    return renderers[output_format](report)


def render_ranks_csv(result: PageRankResult) -> str:
    lines = ["node,rank"]
    for node in sorted(result.ranks.ranks):
        lines.append(f"{node},{result.ranks.ranks[node]:.12g}")
    return "\n".join(lines) + "\n"


def render_clusters_csv(model: ClusterModel) -> str:
    lines = ["defect_id,cluster"]
    for fault_id in sorted(model.assignments):
        lines.append(f"{fault_id},{model.assignments[fault_id]}")
    return "\n".join(lines) + "\n"
