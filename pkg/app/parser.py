"""Parsing and validation of the tab-separated input files.

Handles the fault database, stop list, stem table, cost matrix, link graph
and weight configuration formats. Every format error is reported with the
1-based line number it was found on.
"""

import configparser
import logging
from pathlib import Path
from typing import Dict, List, Set

from pydantic import ValidationError

from app.exceptions import ConfigurationError, ParseError, StorageError
from app.models import CostMatrix, FaultRecord, PageGraph, StemTable, StopList, WeightConfig

logger = logging.getLogger(__name__)


def read_text(path: Path) -> str:
    """Read a UTF-8 file, mapping OS failures to StorageError."""
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise StorageError(f"Cannot read {path}: {e}", details={"path": str(path)})


def _content_lines(text: str):
    """Yield (line_number, line) pairs, skipping blanks and ``#`` comments."""
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield number, line.rstrip("\r\n")


class InputParser:
    """Parsers for every tab-separated input format."""

    FAULT_HEADER = ["attachment", "defect_id", "characteristics"]
    COST_OPERATIONS = ("ins", "del", "sub")
    WILDCARD = "*"
    MAX_TF_MODES = {
        "within": "within_text",
        "within_text": "within_text",
        "literal": "literal_paper",
        "literal_paper": "literal_paper",
    }

    @classmethod
    def parse_fault_table(cls, text: str) -> List[FaultRecord]:
        """Parse the fault database TSV.

        Args:
            text: File content with header ``attachment<TAB>defect_id<TAB>characteristics``

        Returns:
            Records in file order; empty when the file holds only the header

        Raises:
            ParseError: If the header or any row is malformed
        """
        lines = text.lstrip("\ufeff").splitlines()
        # Blank and "#" lines may precede the header
        start = 0
        while start < len(lines) and (not lines[start].strip() or lines[start].lstrip().startswith("#")):
            start += 1
        if start == len(lines):
            return []

        header_number = start + 1
        header = [cell.strip().lower() for cell in lines[start].split("\t")]
        if header != cls.FAULT_HEADER:
            raise ParseError(
                f"Line {header_number}: expected header {'<TAB>'.join(cls.FAULT_HEADER)}",
                details={"line": header_number, "header": header},
            )

        records = []
        for number, line in enumerate(lines[start + 1 :], start=header_number + 1):
            if not line.strip():
                continue
            cells = line.split("\t")
            if len(cells) != 3:
                raise ParseError(
                    f"Line {number}: expected 3 tab-separated fields, got {len(cells)}",
                    details={"line": number},
                )
            attachment, raw_id, characteristics = cells
            try:
                defect_id = int(raw_id.strip())
            except ValueError:
                raise ParseError(
                    f"Line {number}: defect_id is not an integer: {raw_id!r}",
                    details={"line": number, "defect_id": raw_id},
                )
            records.append(
                FaultRecord(id=defect_id, attachment=attachment.strip(), characteristics=characteristics.strip())
            )

        logger.info(f"Parsed {len(records)} fault records")
        return records

    @classmethod
    def parse_stop_list(cls, text: str) -> StopList:
        """One token per line; ``#`` starts a comment."""
        entries = set()
        for _, line in _content_lines(text):
            token = line.split("#", 1)[0].strip().lower()
            if token:
                entries.add(token)
        return StopList(entries=frozenset(entries))

    @classmethod
    def parse_stem_table(cls, text: str) -> StemTable:
        """``inflected<TAB>root`` per line.

        Raises:
            ParseError: If a line does not hold exactly two fields
            ConfigurationError: If the table breaks the root fixed-point rule
        """
        mapping: Dict[str, str] = {}
        for number, line in _content_lines(text):
            cells = [cell.strip().lower() for cell in line.split("\t")]
            if len(cells) != 2 or not all(cells):
                raise ParseError(
                    f"Line {number}: expected inflected<TAB>root",
                    details={"line": number},
                )
            mapping[cells[0]] = cells[1]
        try:
            return StemTable(mapping=mapping)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid stem table: {e.errors()[0]['msg']}")

    @classmethod
    def parse_cost_matrix(cls, text: str) -> CostMatrix:
        """``op<TAB>chars<TAB>cost`` triples with op in ins/del/sub.

        ``ins``/``del`` take one character, ``sub`` takes the source and
        target characters written together; ``*`` sets the default cost
        of an operation.
        """
        tables: Dict[str, dict] = {"ins": {}, "del": {}, "sub": {}}
        defaults: Dict[str, float] = {}

        for number, line in _content_lines(text):
            cells = line.split("\t")
            if len(cells) != 3:
                raise ParseError(
                    f"Line {number}: expected op<TAB>chars<TAB>cost",
                    details={"line": number},
                )
            op, chars, raw_cost = cells[0].strip(), cells[1], cells[2].strip()
            if op not in cls.COST_OPERATIONS:
                raise ParseError(
                    f"Line {number}: unknown operation {op!r}",
                    details={"line": number, "supported": list(cls.COST_OPERATIONS)},
                )
            try:
                cost = float(raw_cost)
            except ValueError:
                raise ParseError(f"Line {number}: cost is not a number: {raw_cost!r}", details={"line": number})
            if cost < 0:
                raise ParseError(f"Line {number}: cost must be non-negative", details={"line": number})

            if chars == cls.WILDCARD:
                defaults[op] = cost
            elif op == "sub" and len(chars) == 2:
                tables[op][(chars[0], chars[1])] = cost
            elif op != "sub" and len(chars) == 1:
                tables[op][chars] = cost
            else:
                raise ParseError(
                    f"Line {number}: {op} expects {'two characters' if op == 'sub' else 'one character'}, got {chars!r}",
                    details={"line": number},
                )

        try:
            return CostMatrix(
                insert_cost=tables["ins"],
                delete_cost=tables["del"],
                substitute_cost=tables["sub"],
                default_insert=defaults.get("ins"),
                default_delete=defaults.get("del"),
                default_substitute=defaults.get("sub"),
            )
        except ValidationError as e:
            raise ConfigurationError(f"Invalid cost matrix: {e.errors()[0]['msg']}")

    @classmethod
    def parse_edge_list(cls, text: str) -> PageGraph:
        """``source<TAB>target`` per line; ``node<TAB>`` declares a node without links."""
        nodes: Set[str] = set()
        links: Dict[str, Set[str]] = {}

        for number, line in _content_lines(text):
            cells = line.split("\t")
            if len(cells) > 2 or not cells[0].strip():
                raise ParseError(
                    f"Line {number}: expected source<TAB>target",
                    details={"line": number},
                )
            source = cells[0].strip()
            target = cells[1].strip() if len(cells) == 2 else ""
            nodes.add(source)
            if target:
                nodes.add(target)
                links.setdefault(source, set()).add(target)

        logger.info(f"Parsed graph with {len(nodes)} nodes and {sum(map(len, links.values()))} links")
        return PageGraph(
            nodes=frozenset(nodes),
            outlinks={source: frozenset(targets) for source, targets in links.items()},
        )

    @classmethod
    def parse_weight_config(cls, text: str) -> WeightConfig:
        """INI-style weights file.

        Example::

            [weights]
            log_base = 10
            max_tf_mode = within_text

            [alpha]
            radio = 2.0
        """
        ini = configparser.ConfigParser()
        try:
            ini.read_string(text)
        except configparser.Error as e:
            raise ParseError(f"Invalid weights file: {e}", details={"line": getattr(e, "lineno", None)})

        fields: Dict[str, object] = {}
        if ini.has_section("weights"):
            section = ini["weights"]
            try:
                if "log_base" in section:
                    fields["log_base"] = section.getfloat("log_base")
                if "unseen_doc_freq" in section:
                    fields["unseen_doc_freq"] = section.getfloat("unseen_doc_freq")
            except ValueError as e:
                raise ParseError(f"Invalid number in [weights]: {e}")
            if "max_tf_mode" in section:
                fields["max_tf_mode"] = cls.normalize_max_tf_mode(section["max_tf_mode"])
        if ini.has_section("alpha"):
            alpha: Dict[str, float] = {}
            for term, raw in ini["alpha"].items():
                try:
                    alpha[term.lower()] = float(raw)
                except ValueError:
                    raise ParseError(f"alpha for {term!r} is not a number: {raw!r}")
            fields["alpha"] = alpha

        try:
            return WeightConfig(**fields)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid weights file: {e.errors()[0]['msg']}")

    @classmethod
    def normalize_max_tf_mode(cls, value: str) -> str:
        """Accept the short CLI spellings ``within``/``literal``."""
        mode = cls.MAX_TF_MODES.get(value.strip().lower())
        if mode is None:
            raise ParseError(
                f"Unknown max_tf_mode {value!r}",
                details={"supported": sorted(cls.MAX_TF_MODES)},
            )
        return mode


def load_fault_table(path: Path) -> List[FaultRecord]:
    return InputParser.parse_fault_table(read_text(path))


def load_stop_list(path: Path) -> StopList:
    return InputParser.parse_stop_list(read_text(path))


def load_stem_table(path: Path) -> StemTable:
    return InputParser.parse_stem_table(read_text(path))


def load_cost_matrix(path: Path) -> CostMatrix:
    return InputParser.parse_cost_matrix(read_text(path))


def load_edge_list(path: Path) -> PageGraph:
    return InputParser.parse_edge_list(read_text(path))


def load_weight_config(path: Path) -> WeightConfig:
    return InputParser.parse_weight_config(read_text(path))
