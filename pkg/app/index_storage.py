"""Persistence of corpus indexes as versioned JSON documents.

The file is plain UTF-8 JSON with sorted keys so golden copies diff cleanly.
It records the pipeline tables the index was built with and a hash of
them, which is checked again on load.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict

from pydantic import ValidationError

from app.exceptions import ParseError, StorageError
from app.models import CorpusIndex, StemTable, StopList

logger = logging.getLogger(__name__)

FORMAT_NAME = "fault-similarity-index"
FORMAT_VERSION = 1


class IndexStorage:
    """Storage manager for corpus index files."""

    @staticmethod
    def pipeline_config(index: CorpusIndex) -> Dict[str, Any]:
        """Canonical description of the text pipeline behind an index."""
        return {
            "include_attachment": index.include_attachment,
            "stem_table": dict(sorted(index.stem_table.mapping.items())),
            "stop_list": sorted(index.stop_list.entries),
        }

    @classmethod
    def config_hash(cls, index: CorpusIndex) -> str:
        """SHA-256 of the canonical pipeline configuration."""
        canonical = json.dumps(cls.pipeline_config(index), sort_keys=True, ensure_ascii=False, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @classmethod
    def to_document(cls, index: CorpusIndex) -> Dict[str, Any]:
        return {
            "format": FORMAT_NAME,
            "format_version": FORMAT_VERSION,
            "N": index.N,
            "doc_freq": index.doc_freq,
            "docs": {str(doc_id): tfs for doc_id, tfs in index.docs.items()},
            "pipeline": cls.pipeline_config(index),
            "config_hash": cls.config_hash(index),
        }

    @classmethod
    def save_index(cls, index: CorpusIndex, path: Path) -> Path:
        """Write an index file with UTF-8 encoding.

        Args:
            index: Index to persist
            path: Destination file; parent directories are created

        Returns:
            Path to the saved file

        Raises:
            StorageError: If the file cannot be written
        """
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8") as f:
                json.dump(cls.to_document(index), f, ensure_ascii=False, indent=2, sort_keys=True)
                f.write("\n")
        except OSError as e:
            logger.error(f"Failed to save index to {path}: {e}")
            raise StorageError(f"Failed to save index: {e}", details={"path": str(path)})

        logger.info(f"Index saved: {path} ({path.stat().st_size} bytes)")
        return path

    @classmethod
    def from_document(cls, document: Dict[str, Any]) -> CorpusIndex:
        """Rebuild an index from its JSON document.

        Raises:
            ParseError: If the document is not a valid index of a known version
        """
        if not isinstance(document, dict) or document.get("format") != FORMAT_NAME:
            raise ParseError("Not a fault similarity index file")
        if document.get("format_version") != FORMAT_VERSION:
            raise ParseError(
                f"Unsupported index format version {document.get('format_version')}",
                details={"supported": FORMAT_VERSION},
            )

        try:
            pipeline = document["pipeline"]
            index = CorpusIndex(
                N=document["N"],
                doc_freq=document["doc_freq"],
                docs={int(doc_id): tfs for doc_id, tfs in document["docs"].items()},
                stop_list=StopList(entries=frozenset(pipeline["stop_list"])),
                stem_table=StemTable(mapping=pipeline["stem_table"]),
                include_attachment=pipeline["include_attachment"],
            )
        except (KeyError, TypeError, ValueError, ValidationError) as e:
            raise ParseError(f"Malformed index file: {e}")

        if cls.config_hash(index) != document.get("config_hash"):
            raise ParseError("Index pipeline configuration does not match its recorded hash")
        return index

    @classmethod
    def load_index(cls, path: Path) -> CorpusIndex:
        """Load an index file.

        Raises:
            StorageError: If the file cannot be read
            ParseError: If the content is not a valid index
        """
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                document = json.load(f)
        except OSError as e:
            raise StorageError(f"Cannot read index {path}: {e}", details={"path": str(path)})
        except json.JSONDecodeError as e:
            raise ParseError(f"Index {path} is not valid JSON: line {e.lineno}", details={"line": e.lineno})

        index = cls.from_document(document)
        logger.info(f"Index loaded: {path} (N={index.N}, {len(index.doc_freq)} terms)")
        return index
