"""Unit tests for corpus indexing."""

from collections import Counter

import pytest

from app.exceptions import DuplicateRecordError, EmptyCorpusError, NotFoundError
from app.index import build_index, document_text, document_tokens, term_frequencies
from app.models import FaultRecord, StemTable, StopList


class TestTermFrequencies:
    """Test suite for term counting."""

    def test_counts_and_sorts(self):
        """Counts come back keyed in sorted order."""
        tfs = term_frequencies(["radio", "hu", "radio"])
        assert tfs == {"hu": 1, "radio": 2}
        assert list(tfs) == ["hu", "radio"]

    def test_empty(self):
        """No tokens, no counts."""
        assert term_frequencies([]) == {}


class TestDocumentText:
    """Test suite for joining the fault columns."""

    def test_attachment_first(self):
        """The attachment precedes the characteristics."""
        record = FaultRecord(id=1, attachment="Y message", characteristics="radio hu")
        assert document_text(record) == "Y message radio hu"

    def test_attachment_excluded(self):
        """Only the characteristics are used when disabled."""
        record = FaultRecord(id=1, attachment="Y message", characteristics="radio hu")
        assert document_text(record, include_attachment=False) == "radio hu"


class TestBuildIndex:
    """Test suite for index construction over the published table."""

    def test_corpus_size(self, fixture_index):
        """All 14 rows are indexed."""
        assert fixture_index.N == 14
        assert len(fixture_index.docs) == 14

    def test_document_frequencies(self, fixture_index):
        """Document counts of the recurring symptom terms."""
        assert fixture_index.doc_freq["radio"] == 12
        assert fixture_index.doc_freq["hu"] == 9
        assert fixture_index.doc_freq["message"] == 9
        assert fixture_index.doc_freq["no"] == 3
        assert fixture_index.doc_freq["sds"] == 3

    def test_stop_words_not_indexed(self, fixture_index):
        """Filtered tokens never reach the vocabulary."""
        for term in ("preconditions", "y", "audio", "the", "does", "not"):
            assert term not in fixture_index.doc_freq

    def test_document_tokens(self, fixture_index):
        """Stored term frequencies of single entries."""
        assert document_tokens(fixture_index, 49) == {"hu": 1, "radio": 1}
        assert document_tokens(fixture_index, 52) == {"radio": 3}
        assert document_tokens(fixture_index, 41) == {"hu": 1, "message": 3, "radio": 3}

    def test_arrow_punctuation(self, fixture_index):
        """"hu -> audio" and "message->" leave only the two symptom words."""
        assert document_tokens(fixture_index, 42) == {"hu": 1, "message": 1}

    def test_sentence_entry(self, fixture_index):
        """Function words drop out of free text and "headunit" stays one term."""
        assert document_tokens(fixture_index, 53) == {"headunit": 1, "message": 1, "radio": 1, "receive": 1}

    def test_stemmed_document(self, fixture_index):
        """Inflected forms are indexed under their root."""
        assert document_tokens(fixture_index, 32) == {"dark": 1, "display": 2, "on": 1, "send": 1, "signal": 1}

    def test_unknown_id(self, fixture_index):
        """Missing ids raise NotFoundError."""
        with pytest.raises(NotFoundError, match="99"):
            document_tokens(fixture_index, 99)

    def test_doc_freq_matches_recount(self, fixture_index):
        """n_i equals a brute-force count over the stored documents."""
        recount = Counter(term for tfs in fixture_index.docs.values() for term in tfs)
        assert fixture_index.doc_freq == dict(recount)

    def test_rebuild_is_deterministic(self, fixture_records, default_stops, default_stems, fixture_index):
        """Building twice yields equal indexes."""
        assert build_index(fixture_records, default_stops, default_stems) == fixture_index

    def test_without_attachment(self, fixture_records, default_stops, default_stems):
        """Attachment-only terms disappear when the column is skipped."""
        index = build_index(fixture_records, default_stops, default_stems, include_attachment=False)
        assert index.doc_freq["sds"] == 1
        assert document_tokens(index, 41) == {"message": 1, "radio": 2}
        assert document_tokens(index, 42) == {"message": 1}
        assert index.include_attachment is False


class TestBuildIndexEdgeCases:
    """Test suite for degenerate corpora."""

    def test_empty_corpus(self):
        """No records is a domain error."""
        with pytest.raises(EmptyCorpusError, match="empty corpus"):
            build_index([], StopList(), StemTable())

    def test_duplicate_id(self):
        """Two records with one id are rejected."""
        records = [
            FaultRecord(id=7, characteristics="radio"),
            FaultRecord(id=7, characteristics="hu"),
        ]
        with pytest.raises(DuplicateRecordError, match="Duplicate defect id 7"):
            build_index(records, StopList(), StemTable())

    def test_single_record(self):
        """N=1 with a repeated term."""
        index = build_index([FaultRecord(id=1, characteristics="radio radio")], StopList(), StemTable())
        assert index.N == 1
        assert index.doc_freq == {"radio": 1}
        assert index.docs == {1: {"radio": 2}}

    def test_disjoint_documents(self):
        """Terms unique to one entry have n_i = 1."""
        records = [
            FaultRecord(id=1, characteristics="radio hu"),
            FaultRecord(id=2, characteristics="display dark"),
        ]
        index = build_index(records, StopList(), StemTable())
        assert set(index.doc_freq.values()) == {1}
        assert index.vocabulary == ["dark", "display", "hu", "radio"]

    def test_document_of_stop_words_only(self):
        """A fully filtered entry is kept with no terms."""
        records = [
            FaultRecord(id=1, characteristics="the"),
            FaultRecord(id=2, characteristics="radio"),
        ]
        index = build_index(records, StopList(entries=frozenset({"the"})), StemTable())
        assert index.N == 2
        assert index.docs[1] == {}
