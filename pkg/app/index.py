"""Corpus statistics over the fault database.

Builds N, the per-term document frequencies n_i and the per-document term
frequencies that the term weighting function consumes.
"""

import logging
from collections import Counter
from typing import Dict, Iterable, Sequence

from app.exceptions import DuplicateRecordError, EmptyCorpusError, NotFoundError
from app.models import CorpusIndex, FaultRecord, StemTable, StopList
from app.text_pipeline import TextPipeline

logger = logging.getLogger(__name__)


def term_frequencies(tokens: Iterable[str]) -> Dict[str, int]:
    """Count token occurrences; keys come out sorted."""
    counts = Counter(tokens)
    return {term: counts[term] for term in sorted(counts)}


def document_text(record: FaultRecord, include_attachment: bool = True) -> str:
    """Attachment text followed by the fault characteristics."""
    if include_attachment and record.attachment:
        return f"{record.attachment} {record.characteristics}"
    return record.characteristics


def build_index(
    records: Sequence[FaultRecord],
    stops: StopList,
    stems: StemTable,
    include_attachment: bool = True,
) -> CorpusIndex:
    """Index fault records for similarity ranking.

    Args:
        records: Fault database rows with unique ids
        stops: Stop list applied to every document
        stems: Stem table applied to every document
        include_attachment: Prepend the attachment text to each document

    Returns:
        Immutable corpus index

    Raises:
        EmptyCorpusError: If there are no records
        DuplicateRecordError: If two records share an id
    """
    if not records:
        raise EmptyCorpusError("empty corpus: the fault database holds no records")

    pipeline = TextPipeline(stops, stems)
    docs: Dict[int, Dict[str, int]] = {}
    for record in records:
        if record.id in docs:
            raise DuplicateRecordError(
                f"Duplicate defect id {record.id}",
                details={"defect_id": record.id},
            )
        docs[record.id] = term_frequencies(pipeline.process(document_text(record, include_attachment)))

    doc_freq: Counter = Counter()
    for tfs in docs.values():
        doc_freq.update(tfs.keys())

    empty = [doc_id for doc_id, tfs in docs.items() if not tfs]
    if empty:
        logger.warning(f"Documents with no indexable terms: {sorted(empty)}")

    logger.info(f"Indexed {len(docs)} documents, {len(doc_freq)} distinct terms")
    return CorpusIndex(
        N=len(docs),
        doc_freq={term: doc_freq[term] for term in sorted(doc_freq)},
        docs={doc_id: docs[doc_id] for doc_id in sorted(docs)},
        stop_list=stops,
        stem_table=stems,
        include_attachment=include_attachment,
    )


def document_tokens(index: CorpusIndex, fault_id: int) -> Dict[str, int]:
    """Term frequencies stored for one fault.

    Raises:
        NotFoundError: If the id is not indexed
    """
    try:
        return dict(index.docs[fault_id])
    except KeyError:
        raise NotFoundError(f"Fault id {fault_id} not found in index", details={"defect_id": fault_id})


def pipeline_for(index: CorpusIndex) -> TextPipeline:
    """The text pipeline the index was built with."""
    return TextPipeline(index.stop_list, index.stem_table)
