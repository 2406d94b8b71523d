"""Text normalization for fault descriptions.

Raw fault text goes through three fixed stages: tokenize, remove stop words,
stem by table lookup. Every stage is a pure function; ``TextPipeline``
bundles the two lookup tables and runs the stages in order.
"""

import logging
import re
from typing import Iterable, List

from app.exceptions import ConfigurationError
from app.models import StemTable, StopList

logger = logging.getLogger(__name__)

TokenSeq = List[str]

# Characters removed from tokens. They also act as separators, so
# "message->" yields "message" and a bare "->" yields nothing.
PUNCTUATION = ":;.,!?()->"
SEPARATOR_PATTERN = re.compile(r"[\s" + re.escape(PUNCTUATION) + r"]+")


def tokenize(raw: str) -> TokenSeq:
    """Lowercase and split raw text into punctuation-free tokens.

    Args:
        raw: Fault text in any case; may be empty

    Returns:
        Ordered tokens, none of them empty

    Examples:
        >>> tokenize("radio: radio. message;")
        ['radio', 'radio', 'message']
    """
    return [token for token in SEPARATOR_PATTERN.split(raw.lower()) if token]


def remove_stopwords(tokens: Iterable[str], stops: StopList) -> TokenSeq:
    """Drop stop tokens, keeping order and multiplicity of the rest."""
    return [token for token in tokens if token not in stops.entries]


def stem(tokens: Iterable[str], table: StemTable) -> TokenSeq:
    """Replace each token by its root when the table lists one."""
    return [table.mapping.get(token, token) for token in tokens]


class TextPipeline:
    """tokenize -> remove_stopwords -> stem, with fixed tables."""

    def __init__(self, stops: StopList = None, stems: StemTable = None):
        """Bind the lookup tables.

        Args:
            stops: Stop list (empty when omitted)
            stems: Stem table (empty when omitted)

        Raises:
            ConfigurationError: If a stem root is a stop word or would be
                split by the tokenizer; either breaks idempotence
        """
        self.stops = stops or StopList()
        self.stems = stems or StemTable()

        roots = set(self.stems.mapping.values())
        split_roots = sorted(root for root in roots if tokenize(root) != [root])
        if split_roots:
            raise ConfigurationError(
                f"Stem roots are not single tokens: {', '.join(split_roots)}",
                details={"roots": split_roots},
            )

        stopped_roots = sorted(roots & self.stops.entries)
        if stopped_roots:
            raise ConfigurationError(
                f"Stem roots are also stop words: {', '.join(stopped_roots)}",
                details={"roots": stopped_roots},
            )

        logger.debug(
            f"Text pipeline ready: {len(self.stops.entries)} stop words, "
            f"{len(self.stems.mapping)} stem entries"
        )

    def process(self, raw: str) -> TokenSeq:
        return stem(remove_stopwords(tokenize(raw), self.stops), self.stems)
