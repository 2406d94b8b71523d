"""Command-line interface for the fault symptom similarity matcher.

Subcommands:
- index     Build a corpus index from a fault database TSV
- query     Rank indexed faults against a symptom text
- distance  Compute one of the reference string distances
- pagerank  Rank the pages of a link graph
- cluster   Group indexed faults into diagnosis classes with k-means

Results go to standard output; logs and summaries go to standard error.

Exit codes:
    0  success
    1  internal error
    2  usage error
    3  parse error (malformed input file)
    4  domain error (violated precondition, unknown id, empty corpus)
    5  I/O error
    6  configuration error (incomplete or inconsistent tables)
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from app import __version__
from app.clustering import dominant_terms, kmeans
from app.config import settings
from app.edit_distance import damerau_levenshtein, hamming, levenshtein, needleman_wunsch, weighted_edit
from app.exceptions import (
    ConfigurationError,
    DomainError,
    FaultMatchError,
    ParseError,
    StorageError,
)
from app.index import build_index
from app.index_storage import IndexStorage
from app.models import EditWeights, QueryReport, WeightConfig
from app.pagerank import pagerank_solve
from app.parser import (
    InputParser,
    load_cost_matrix,
    load_edge_list,
    load_fault_table,
    load_stem_table,
    load_stop_list,
    load_weight_config,
)
from app.reporting import OUTPUT_FORMATS, render_clusters_csv, render_ranks_csv, render_report
from app.similarity import document_vectors, rank_query

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4
EXIT_IO = 5
EXIT_CONFIG = 6

DISTANCE_METRICS = ("levenshtein", "damerau", "nw", "hamming", "weighted")


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(level)


def weight_config_from_args(args: argparse.Namespace) -> WeightConfig:
    """Settings defaults, overridden by a weights file, overridden by flags."""
    fields = {
        "log_base": settings.log_base,
        "max_tf_mode": settings.max_tf_mode,
        "unseen_doc_freq": settings.unseen_doc_freq,
    }
    if args.weights:
        from_file = load_weight_config(args.weights)
        fields.update({name: getattr(from_file, name) for name in from_file.model_fields_set})
    if args.max_tf_mode:
        fields["max_tf_mode"] = InputParser.normalize_max_tf_mode(args.max_tf_mode)
    return WeightConfig(**fields)


def cmd_index(args: argparse.Namespace) -> int:
    """Ingest a fault database and persist its index."""
    records = load_fault_table(args.db_path)
    index = build_index(
        records,
        load_stop_list(args.stopwords),
        load_stem_table(args.stems),
        include_attachment=args.attachment,
    )
    path = IndexStorage.save_index(index, args.out)
    print(f"Indexed {index.N} faults ({len(index.doc_freq)} terms) -> {path}")
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    """Rank stored faults against a symptom and print the report."""
    index = IndexStorage.load_index(args.index_path)
    cfg = weight_config_from_args(args)
    results = rank_query(args.query_text, index, cfg, args.top_k)
    report = QueryReport(query=args.query_text, results=results)
    sys.stdout.write(render_report(report, args.format))
    return EXIT_OK


def format_distance(value: float) -> str:
    """Whole numbers without a decimal point, anything else at full precision."""
    if isinstance(value, int) or value.is_integer():
        return str(int(value))
    return repr(value)


def cmd_distance(args: argparse.Namespace) -> int:
    """Print the distance between two strings."""
    if args.metric == "levenshtein":
        value = levenshtein(args.s, args.t)
    elif args.metric == "damerau":
        value = damerau_levenshtein(args.s, args.t)
    elif args.metric == "hamming":
        value = hamming(args.s, args.t)
    elif args.metric == "nw":
        value = needleman_wunsch(args.s, args.t, load_cost_matrix(args.costs))
    else:
        weights = EditWeights(w_insert=args.w_insert, w_delete=args.w_delete, w_substitute=args.w_substitute)
        value = weighted_edit(args.s, args.t, weights)

    print(format_distance(value))
    return EXIT_OK


def cmd_pagerank(args: argparse.Namespace) -> int:
    """Print node,rank CSV and a convergence summary on stderr."""
    graph = load_edge_list(args.edges_path)
    result = pagerank_solve(graph, args.tol, args.max_iter, args.damping)
    sys.stdout.write(render_ranks_csv(result))
    status = "converged" if result.converged else "not converged"
    print(
        f"pagerank: {status} after {result.iterations} iterations (max change {result.max_change:.3e})",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_cluster(args: argparse.Namespace) -> int:
    """Print defect_id,cluster CSV for the indexed faults."""
    index = IndexStorage.load_index(args.index_path)
    cfg = weight_config_from_args(args)
    vocabulary = dominant_terms(index.docs, args.terms) if args.terms is not None else index.vocabulary
    model = kmeans(document_vectors(index, cfg), args.k, args.max_iter, args.seed, vocabulary=vocabulary)
    sys.stdout.write(render_clusters_csv(model))
    return EXIT_OK


def _add_weight_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--weights", type=Path, help="INI weights file ([weights] and [alpha] sections)")
    parser.add_argument("--max-tf-mode", choices=sorted(InputParser.MAX_TF_MODES), help="max_tf interpretation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faultmatch",
        description="Similarity matching of automotive fault symptoms",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=settings.log_level, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    subparsers = parser.add_subparsers(dest="command", required=True)

    p_index = subparsers.add_parser("index", help="Build an index from a fault database TSV")
    p_index.add_argument("db_path", type=Path)
    p_index.add_argument("--stopwords", type=Path, default=settings.stopwords_path)
    p_index.add_argument("--stems", type=Path, default=settings.stems_path)
    p_index.add_argument("-o", "--out", type=Path, default=settings.index_path)
    p_index.add_argument(
        "--attachment",
        action=argparse.BooleanOptionalAction,
        default=settings.include_attachment,
        help="Index the attachment column as well as the characteristics",
    )
    p_index.set_defaults(handler=cmd_index)

    p_query = subparsers.add_parser("query", help="Rank faults against a symptom")
    p_query.add_argument("index_path", type=Path)
    p_query.add_argument("query_text")
    p_query.add_argument("--top-k", type=int, default=settings.top_k)
    p_query.add_argument("--format", choices=OUTPUT_FORMATS, default=settings.output_format)
    _add_weight_flags(p_query)
    p_query.set_defaults(handler=cmd_query)

    p_distance = subparsers.add_parser("distance", help="String distance between two inputs")
    p_distance.add_argument("metric", choices=DISTANCE_METRICS)
    p_distance.add_argument("s")
    p_distance.add_argument("t")
    p_distance.add_argument("--costs", type=Path, help="Cost matrix TSV (required for nw)")
    p_distance.add_argument("--w-insert", type=float, default=1.0)
    p_distance.add_argument("--w-delete", type=float, default=1.0)
    p_distance.add_argument("--w-substitute", type=float, default=1.0)
    p_distance.set_defaults(handler=cmd_distance)

    p_pagerank = subparsers.add_parser("pagerank", help="PageRank of a link graph")
    p_pagerank.add_argument("edges_path", type=Path)
    p_pagerank.add_argument("--tol", type=float, default=settings.pagerank_tol)
    p_pagerank.add_argument("--max-iter", type=int, default=settings.pagerank_max_iter)
    p_pagerank.add_argument("--damping", type=float, default=settings.pagerank_damping)
    p_pagerank.set_defaults(handler=cmd_pagerank)

    p_cluster = subparsers.add_parser("cluster", help="k-means diagnosis classes")
    p_cluster.add_argument("index_path", type=Path)
    p_cluster.add_argument("--k", type=int, required=True)
    p_cluster.add_argument("--seed", type=int, default=settings.kmeans_seed)
    p_cluster.add_argument("--max-iter", type=int, default=settings.kmeans_max_iter)
    p_cluster.add_argument("--terms", type=int, help="Cluster on the N most frequent terms only")
    _add_weight_flags(p_cluster)
    p_cluster.set_defaults(handler=cmd_cluster)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "distance" and args.metric == "nw" and args.costs is None:
            parser.error("the nw metric requires --costs FILE")
        if args.command == "distance" and min(args.w_insert, args.w_delete, args.w_substitute) < 0:
            parser.error("edit weights must be non-negative")
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(args.log_level)

    try:
        return args.handler(args)

    except ParseError as e:
        logger.error(f"Parse error: {e.message}")
        return EXIT_PARSE

    except DomainError as e:
        logger.error(f"{e.message}")
        return EXIT_DOMAIN

    except StorageError as e:
        logger.error(f"I/O error: {e.message}")
        return EXIT_IO

    except ConfigurationError as e:
        logger.error(f"Configuration error: {e.message}")
        return EXIT_CONFIG

    except FaultMatchError as e:
        logger.error(f"Failed: {e.message}")
        return EXIT_INTERNAL

    except Exception as e:
        # Catch-all for unexpected errors
        logger.exception(f"Unexpected error: {str(e)}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
