"""Pydantic models for fault records, corpus statistics and algorithm results."""

import math
from typing import Dict, FrozenSet, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.exceptions import ConfigurationError

RANK_SUM_TOLERANCE = 1e-9


class StopList(BaseModel):
    """Tokens carrying no discriminative meaning for fault matching."""

    model_config = ConfigDict(frozen=True)

    entries: FrozenSet[str] = Field(default_factory=frozenset, description="Lowercase stop tokens")

    @field_validator("entries")
    def validate_entries(cls, v: FrozenSet[str]) -> FrozenSet[str]:
        """Stop tokens must be lowercase and non-empty."""
        for entry in v:
            if not entry:
                raise ValueError("Stop list contains an empty entry")
            if entry != entry.lower():
                raise ValueError(f"Stop list entry is not lowercase: {entry!r}")
        return v


class StemTable(BaseModel):
    """Lookup table from inflected word forms to their roots."""

    model_config = ConfigDict(frozen=True)

    mapping: Dict[str, str] = Field(default_factory=dict, description="inflected -> root")

    @field_validator("mapping")
    def validate_mapping(cls, v: Dict[str, str]) -> Dict[str, str]:
        """Keys and roots are non-empty lowercase; roots map to themselves."""
        for inflected, root in v.items():
            if not inflected or not root:
                raise ValueError("Stem table contains an empty key or value")
            if inflected != inflected.lower() or root != root.lower():
                raise ValueError(f"Stem table entry is not lowercase: {inflected!r} -> {root!r}")
            if v.get(root, root) != root:
                raise ValueError(
                    f"Stem root {root!r} is itself mapped to {v[root]!r}; roots must be fixed points"
                )
        return v


class FaultRecord(BaseModel):
    """One row of the fault database."""

    model_config = ConfigDict(frozen=True)

    id: int = Field(..., description="Defect identifier, unique within a corpus")
    attachment: str = Field(default="", description="Attachment text (may be empty)")
    characteristics: str = Field(..., description="Fault characteristics text")


class CorpusIndex(BaseModel):
    """Corpus statistics consumed by the term weighting function."""

    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=1, description="Number of database entries")
    doc_freq: Dict[str, int] = Field(..., description="term -> number of entries containing it")
    docs: Dict[int, Dict[str, int]] = Field(..., description="fault id -> term frequencies")
    stop_list: StopList = Field(default_factory=StopList)
    stem_table: StemTable = Field(default_factory=StemTable)
    include_attachment: bool = True

    @model_validator(mode="after")
    def check_statistics(self) -> "CorpusIndex":
        if self.N != len(self.docs):
            raise ValueError(f"N={self.N} does not match {len(self.docs)} indexed documents")
        for term, n_i in self.doc_freq.items():
            if not 1 <= n_i <= self.N:
                raise ValueError(f"Document frequency of {term!r} out of range: {n_i}")
        for doc_id, tfs in self.docs.items():
            for term, tf in tfs.items():
                if term not in self.doc_freq:
                    raise ValueError(f"Term {term!r} of document {doc_id} missing from doc_freq")
                if tf < 1:
                    raise ValueError(f"Term {term!r} of document {doc_id} has frequency {tf}")
        return self

    @property
    def vocabulary(self) -> List[str]:
        """Indexed terms in sorted order."""
        return sorted(self.doc_freq)


class TermVector(BaseModel):
    """Sparse non-negative weight vector; absent terms weigh zero."""

    model_config = ConfigDict(frozen=True)

    weights: Dict[str, float] = Field(default_factory=dict)

    @field_validator("weights")
    def validate_weights(cls, v: Dict[str, float]) -> Dict[str, float]:
        for term, weight in v.items():
            if weight < 0 or math.isnan(weight):
                raise ValueError(f"Negative weight for term {term!r}: {weight}")
        return v

    def scaled(self, factor: float) -> "TermVector":
        return TermVector(weights={t: w * factor for t, w in self.weights.items()})

    def is_zero(self) -> bool:
        return not any(self.weights.values())


class WeightConfig(BaseModel):
    """User-determined parameters of the term weighting and cosine measure."""

    model_config = ConfigDict(frozen=True)

    alpha: Dict[str, float] = Field(default_factory=dict, description="Per-term alpha overrides")
    log_base: float = Field(default=math.e, gt=1.0)
    max_tf_mode: Literal["within_text", "literal_paper"] = "within_text"
    unseen_doc_freq: Optional[float] = Field(
        default=None,
        gt=0.0,
        description="Smoothing n_i for query terms missing from the index; None gives them weight 0",
    )

    @field_validator("alpha")
    def validate_alpha(cls, v: Dict[str, float]) -> Dict[str, float]:
        for term, value in v.items():
            if value <= 0:
                raise ValueError(f"alpha for {term!r} must be positive, got {value}")
        return v

    def alpha_for(self, term: str) -> float:
        return self.alpha.get(term, 1.0)


class SimilarityResult(BaseModel):
    """A stored fault and its similarity to the queried symptom."""

    model_config = ConfigDict(frozen=True)

    id: int
    score: float = Field(..., ge=0.0, le=1.0)

    @property
    def percent(self) -> int:
        return round(self.score * 100)


class QueryReport(BaseModel):
    """Ranked results of one symptom query."""

    query: str
    results: List[SimilarityResult] = Field(default_factory=list)


class CostMatrix(BaseModel):
    """Per-character insertion/deletion costs and per-pair substitution costs.

    ``default_*`` values come from wildcard (``*``) rows and apply to any
    character without an explicit entry.
    """

    model_config = ConfigDict(frozen=True)

    insert_cost: Dict[str, float] = Field(default_factory=dict)
    delete_cost: Dict[str, float] = Field(default_factory=dict)
    substitute_cost: Dict[Tuple[str, str], float] = Field(default_factory=dict)
    default_insert: Optional[float] = Field(default=None, ge=0.0)
    default_delete: Optional[float] = Field(default=None, ge=0.0)
    default_substitute: Optional[float] = Field(default=None, ge=0.0)

    @model_validator(mode="after")
    def check_costs(self) -> "CostMatrix":
        for table in (self.insert_cost, self.delete_cost, self.substitute_cost):
            for key, cost in table.items():
                if cost < 0:
                    raise ValueError(f"Negative cost for {key!r}: {cost}")
        for (a, b), cost in self.substitute_cost.items():
            if a == b and cost != 0:
                raise ValueError(f"Substituting {a!r} with itself must cost 0, got {cost}")
        return self

    @classmethod
    def unit(cls) -> "CostMatrix":
        """Unit costs everywhere: alignment cost equals Levenshtein distance."""
        return cls(default_insert=1.0, default_delete=1.0, default_substitute=1.0)

    def insert(self, char: str) -> float:
        return self._lookup(self.insert_cost, char, self.default_insert, "insertion", char)

    def delete(self, char: str) -> float:
        return self._lookup(self.delete_cost, char, self.default_delete, "deletion", char)

    def substitute(self, a: str, b: str) -> float:
        if a == b:
            return 0.0
        return self._lookup(self.substitute_cost, (a, b), self.default_substitute, "substitution", f"{a}{b}")

    @staticmethod
    def _lookup(table: dict, key, default: Optional[float], op: str, label: str) -> float:
        cost = table.get(key, default)
        if cost is None:
            raise ConfigurationError(
                f"Cost matrix has no {op} cost for {label!r}",
                details={"operation": op, "chars": label},
            )
        return cost


class EditWeights(BaseModel):
    """Uniform per-operation weights of the weighted edit distance."""

    model_config = ConfigDict(frozen=True)

    w_insert: float = Field(default=1.0, ge=0.0)
    w_delete: float = Field(default=1.0, ge=0.0)
    w_substitute: float = Field(default=1.0, ge=0.0)


class Alignment(BaseModel):
    """Gapped rendering of an optimal alignment and its total cost."""

    aligned_source: str
    aligned_target: str
    cost: float


class PageGraph(BaseModel):
    """Directed link graph between pages."""

    model_config = ConfigDict(frozen=True)

    nodes: FrozenSet[str]
    outlinks: Dict[str, FrozenSet[str]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_links(self) -> "PageGraph":
        for source, targets in self.outlinks.items():
            if source not in self.nodes:
                raise ValueError(f"Link source {source!r} is not a declared node")
            missing = targets - self.nodes
            if missing:
                raise ValueError(f"Link targets of {source!r} are not declared nodes: {sorted(missing)}")
        return self

    def outdegree(self, node: str) -> int:
        return len(self.outlinks.get(node, ()))

    def inbound(self) -> Dict[str, List[str]]:
        """node -> sorted list of pages linking to it."""
        result: Dict[str, List[str]] = {node: [] for node in self.nodes}
        for source in sorted(self.outlinks):
            for target in self.outlinks[source]:
                result[target].append(source)
        for sources in result.values():
            sources.sort()
        return result


class RankVector(BaseModel):
    """Probability distribution over the pages of a graph."""

    model_config = ConfigDict(frozen=True)

    ranks: Dict[str, float]

    @field_validator("ranks")
    def validate_distribution(cls, v: Dict[str, float]) -> Dict[str, float]:
        if any(r < 0 for r in v.values()):
            raise ValueError("Ranks must be non-negative")
        total = math.fsum(v.values())
        if v and abs(total - 1.0) > RANK_SUM_TOLERANCE:
            raise ValueError(f"Ranks must sum to 1, got {total!r}")
        return v


class PageRankResult(BaseModel):
    """Outcome of the power iteration and how it terminated."""

    ranks: RankVector
    iterations: int = Field(..., ge=0)
    converged: bool
    max_change: float = Field(..., ge=0.0, description="Largest per-node change of the last step")


class ClusterModel(BaseModel):
    """k-means partition of fault vectors into diagnosis classes."""

    k: int = Field(..., ge=1)
    vocabulary: List[str] = Field(default_factory=list)
    centroids: List[List[float]]
    assignments: Dict[int, int]
    objective: float = Field(..., ge=0.0, description="Total within-cluster squared distance")
    iterations: int = Field(..., ge=0)
    converged: bool
    history: List[float] = Field(default_factory=list, description="Objective after each assignment round")

    @model_validator(mode="after")
    def check_assignments(self) -> "ClusterModel":
        if len(self.centroids) != self.k:
            raise ValueError(f"Expected {self.k} centroids, got {len(self.centroids)}")
        for fault_id, cluster in self.assignments.items():
            if not 0 <= cluster < self.k:
                raise ValueError(f"Fault {fault_id} assigned to invalid cluster {cluster}")
        return self
