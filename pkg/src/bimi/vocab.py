"""Controlled and suggested vocabularies for BiMi Sheets.

Three vocabularies are closed (pipeline-location, composition, guarantee);
the rest are open and merely pre-seeded with suggestions. The composition
vocabulary carries a subsumption lattice (binary <= categorical <= parallel,
with numerical incomparable) and the guarantee vocabulary a total strength
order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

TERM_ID_RE = re.compile(r"^[a-z0-9]+(-[a-z0-9]+)*$")

VOCAB_IDS = (
    "pipeline-location",
    "composition",
    "guarantee",
    "method-type",
    "ml-task",
    "dataset-type",
    "model",
    "fairness-type",
    "fairness-definition",
    "language",
    "package",
    "use-case",
)

CLOSED_VOCAB_IDS = frozenset({"pipeline-location", "composition", "guarantee"})


class VocabError(Exception):
    """Base class for vocabulary lookup errors."""


class UnknownTermError(VocabError):
    def __init__(self, vocab_id: str, term_id: str):
        super().__init__(f"unknown term {term_id!r} in vocabulary {vocab_id!r}")
        self.vocab_id = vocab_id
        self.term_id = term_id


class NoOrderError(VocabError):
    def __init__(self, vocab_id: str):
        super().__init__(f"vocabulary {vocab_id!r} has no total order")
        self.vocab_id = vocab_id


class TermCheck(Enum):
    KNOWN = "known"
    NOVEL_ALLOWED = "novel-allowed"
    REJECTED = "rejected"


def normalize_term(raw: str) -> str:
    """Normalize a hand-authored term to kebab-case before any lookup."""
    return re.sub(r"[\s_]+", "-", raw.strip().casefold())


@dataclass(frozen=True)
class Term:
    id: str
    display: str
    description: str = ""

    def __post_init__(self):
        if not TERM_ID_RE.match(self.id):
            raise ValueError(f"malformed term id: {self.id!r}")


@dataclass(frozen=True)
class Vocabulary:
    id: str
    open: bool
    terms: tuple[Term, ...]
    subsumption: frozenset[tuple[str, str]] = frozenset()  # (child, parent) edges
    order: tuple[str, ...] | None = None  # ascending rank
    _closure: frozenset[tuple[str, str]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ids = [t.id for t in self.terms]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate term ids in vocabulary {self.id!r}")
        if not self.open and not self.terms:
            raise ValueError(f"closed vocabulary {self.id!r} must have terms")
        known = set(ids)
        for child, parent in self.subsumption:
            if child not in known or parent not in known:
                raise ValueError(f"subsumption edge over unknown terms: {child!r} -> {parent!r}")
        closure = _reflexive_transitive_closure(known, self.subsumption)
        for a, b in closure:
            if a != b and (b, a) in closure:
                raise ValueError(f"subsumption of {self.id!r} is not antisymmetric: {a!r}, {b!r}")
        object.__setattr__(self, "_closure", closure)
        if self.order is not None:
            if set(self.order) != known or len(self.order) != len(known):
                raise ValueError(f"order of {self.id!r} must rank every term exactly once")

    def term_ids(self) -> frozenset[str]:
        return frozenset(t.id for t in self.terms)

    def has_term(self, term_id: str) -> bool:
        return term_id in self.term_ids()

    def _require(self, term_id: str) -> str:
        if not self.has_term(term_id):
            raise UnknownTermError(self.id, term_id)
        return term_id


def _reflexive_transitive_closure(
    ids: set[str], edges: frozenset[tuple[str, str]]
) -> frozenset[tuple[str, str]]:
    pairs = {(i, i) for i in ids} | set(edges)
    changed = True
    while changed:
        changed = False
        for a, b in list(pairs):
            for c, d in list(pairs):
                if b == c and (a, d) not in pairs:
                    pairs.add((a, d))
                    changed = True
    return frozenset(pairs)


def subsumes(vocab: Vocabulary, general: str, specific: str) -> bool:
    """True iff `specific` is subsumed by `general` (reflexive-transitive)."""
    vocab._require(general)
    vocab._require(specific)
    return (specific, general) in vocab._closure


def rank(vocab: Vocabulary, term: str) -> int:
    if vocab.order is None:
        raise NoOrderError(vocab.id)
    vocab._require(term)
    return vocab.order.index(term)


def check_term(vocab: Vocabulary, candidate: str) -> TermCheck:
    term_id = normalize_term(candidate)
    if vocab.has_term(term_id):
        return TermCheck.KNOWN
    if vocab.open and TERM_ID_RE.match(term_id):
        return TermCheck.NOVEL_ALLOWED
    return TermCheck.REJECTED


def _t(term_id: str, description: str = "") -> Term:
    display = term_id.replace("-", " ").capitalize()
    return Term(term_id, display, description)


@lru_cache(maxsize=1)
def builtin_vocabularies() -> dict[str, Vocabulary]:
    """The twelve built-in vocabularies, keyed by vocabulary id."""
    vocabs = [
        Vocabulary(
            id="pipeline-location",
            open=False,
            terms=(
                _t("pre-processing", "Intervenes on the data before model training."),
                _t("in-processing", "Modifies the learning algorithm or its objective during training."),
                _t("intra-processing", "Adjusts an already-trained model at inference time, without retraining."),
                _t("post-processing", "Rewrites model outputs to reduce bias."),
            ),
        ),
        Vocabulary(
            id="composition",
            open=False,
            terms=(
                _t("binary-attribute", "A single yes/no group membership attribute."),
                _t("categorical-attributes", "One attribute with several mutually exclusive groups."),
                _t("parallel-attributes", "Several categorical attributes, each treated as its own fairness axis."),
                _t("numerical-attribute", "A continuous-valued sensitive attribute."),
            ),
            subsumption=frozenset(
                {
                    ("binary-attribute", "categorical-attributes"),
                    ("categorical-attributes", "parallel-attributes"),
                }
            ),
        ),
        Vocabulary(
            id="guarantee",
            open=False,
            terms=(
                _t("no-fairness-guarantee", "No formal guarantee and no tunable intervention strength."),
                _t("tunable-fairness-strength", "Exposes a knob trading fairness against other metrics."),
                _t("fairness-guaranteed", "Can enforce satisfaction of a chosen fairness constraint."),
            ),
            order=(
                "no-fairness-guarantee",
                "tunable-fairness-strength",
                "fairness-guaranteed",
            ),
        ),
        Vocabulary(
            id="method-type",
            open=True,
            terms=tuple(
                _t(i)
                for i in (
                    "blinding",
                    "causal-methods",
                    "sampling",
                    "transformation",
                    "relabelling",
                    "perturbation",
                    "reweighing",
                    "adversarial-debiasing",
                    "regularization",
                    "constraint-optimization",
                    "bandits",
                    "calibration",
                    "thresholding",
                    "learning-representations",
                    "model-fine-tuning",
                    "data-augmentation",
                    "prompt-tuning",
                    "loss-function-modification",
                    "auxiliary-module",
                    "model-editing",
                    "decoding-method-modification",
                    "chain-of-thought",
                    "rewriting",
                )
            ),
        ),
        Vocabulary(
            id="ml-task",
            open=True,
            terms=tuple(
                _t(i)
                for i in (
                    "classification",
                    "regression",
                    "clustering",
                    "community-detection",
                    "node-classification",
                    "edge-prediction",
                    "graph-property-prediction",
                    "machine-translation",
                    "sentiment-analysis",
                    "semantic-role-labeling",
                    "named-entity-recognition",
                    "question-answering",
                    "ranking",
                    "recommendation",
                )
            ),
        ),
        Vocabulary(
            id="dataset-type",
            open=True,
            terms=tuple(_t(i) for i in ("tabular", "image", "text", "graph", "recommendation")),
        ),
        Vocabulary(
            id="model",
            open=True,
            terms=tuple(
                _t(i)
                for i in (
                    "logistic-regression",
                    "linear-model",
                    "neural-network",
                    "probabilistic-classifier",
                    "decision-tree",
                    "gradient-boosting",
                    "sample-weight-aware-estimator",
                )
            ),
        ),
        Vocabulary(
            id="fairness-type",
            open=True,
            terms=tuple(
                _t(i)
                for i in (
                    "group-fairness",
                    "individual-fairness",
                    "subgroup-fairness",
                    "counterfactual-fairness",
                    "consumer-fairness",
                    "provider-fairness",
                    "embedding-based-fairness",
                    "probability-based-fairness",
                    "generated-text-based-fairness",
                    "structural-metrics",
                    "representation-fairness",
                    "fair-prediction",
                )
            ),
        ),
        Vocabulary(
            id="fairness-definition",
            open=True,
            terms=tuple(
                _t(i)
                for i in (
                    "demographic-parity",
                    "statistical-parity",
                    "equalized-odds",
                    "equal-opportunity",
                    "calibration-within-groups",
                    "predictive-parity",
                    "disparate-impact",
                )
            ),
        ),
        Vocabulary(
            id="language",
            open=True,
            terms=tuple(_t(i) for i in ("python", "r", "julia", "java")),
        ),
        Vocabulary(
            id="package",
            open=True,
            terms=tuple(
                _t(i)
                for i in (
                    "scikit-learn",
                    "pandas",
                    "numpy",
                    "tensorflow",
                    "pytorch",
                    "folktables",
                )
            ),
        ),
        Vocabulary(
            id="use-case",
            open=True,
            terms=tuple(_t(i) for i in ("adult", "compas", "german-credit")),
        ),
    ]
    result = {v.id: v for v in vocabs}
    assert tuple(result) == VOCAB_IDS
    return result
