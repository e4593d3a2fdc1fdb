from __future__ import annotations

from pathlib import Path

import pytest

from bimi.format import parse
from bimi.model import (
    FairnessSection,
    ImplementationSection,
    Metadata,
    MethodSection,
    PipelineSection,
    Sheet,
    UseCaseSection,
    labels,
    not_applicable,
    unspecified,
)
from bimi.vocab import builtin_vocabularies

REPO_ROOT = Path(__file__).resolve().parent.parent
SEED_DIR = REPO_ROOT / "seed"


@pytest.fixture(scope="session")
def vocabs():
    return builtin_vocabularies()


@pytest.fixture(scope="session")
def seed_texts() -> dict[str, str]:
    return {p.stem: p.read_text(encoding="utf-8") for p in sorted(SEED_DIR.glob("*.bimi"))}


@pytest.fixture(scope="session")
def seed_sheets(seed_texts) -> dict[str, Sheet]:
    return {name: parse(text) for name, text in seed_texts.items()}


def make_sheet(
    *,
    name="Example Method",
    authors=("Example Lab",),
    version="1.0.0",
    license="MIT",
    proposed_in="",
    method_types=("reweighing",),
    ml_tasks=("classification",),
    dataset_types=("tabular",),
    method_text="Does the thing.",
    locations=("pre-processing",),
    models=("logistic-regression",),
    pipeline_text="Fits before training.",
    compositions=("binary-attribute",),
    guarantee=("no-fairness-guarantee",),
    fairness_types=("group-fairness",),
    fairness_definitions=("statistical-parity",),
    fairness_text="Balances groups.",
    language=("python",),
    packages=("scikit-learn",),
    implementation_text="Plain python.",
    datasets=("adult",),
    use_case_text="Tested on adult.",
) -> Sheet:
    """A fully specified, valid sheet with keyword overrides.

    Label arguments accept a tuple of terms, None (unspecified), or a
    NotApplicable-style string "n/a:<reason>".
    """

    def ls(vocab, value):
        if value is None:
            return unspecified(vocab)
        if isinstance(value, str) and value.startswith("n/a:"):
            return not_applicable(vocab, value[4:])
        return labels(vocab, *value)

    return Sheet(
        metadata=Metadata(name, tuple(authors), version, license, proposed_in),
        method=MethodSection(
            ls("method-type", method_types),
            ls("ml-task", ml_tasks),
            ls("dataset-type", dataset_types),
            method_text,
        ),
        pipeline=PipelineSection(
            ls("pipeline-location", locations), ls("model", models), pipeline_text
        ),
        fairness=FairnessSection(
            ls("composition", compositions),
            ls("guarantee", guarantee),
            ls("fairness-type", fairness_types),
            ls("fairness-definition", fairness_definitions),
            fairness_text,
        ),
        implementation=ImplementationSection(
            ls("language", language), ls("package", packages), implementation_text
        ),
        use_cases=UseCaseSection(ls("use-case", datasets), use_case_text),
    )


def table1_mirror_sheets() -> dict[str, Sheet]:
    """Sheets reproducing three known documentation-coverage rows.

    Glyph mapping: found -> populated field, not found -> unspecified,
    not relevant -> explicit n/a.
    """
    reweighing = make_sheet(
        name="Reweighing Mirror",
        authors=("AIF360",),
        method_types=None,
        method_text="",
        models=("sample-weight-aware-estimator",),
        locations=("pre-processing",),
        dataset_types="n/a:dataset-independent",
        compositions=None,
        guarantee=None,
        fairness_types=None,
        fairness_definitions=None,
        fairness_text="",
    )
    gerryfair = make_sheet(
        name="GerryFair Mirror",
        authors=("AIF360",),
        method_types=None,
        method_text="",
        models=("linear-model",),
        locations=("in-processing",),
        dataset_types="n/a:dataset-independent",
        compositions=None,
        guarantee=("fairness-guaranteed",),
        fairness_types=("subgroup-fairness",),
    )
    threshold = make_sheet(
        name="Threshold Optimizer Mirror",
        authors=("Fairlearn",),
        method_types=("thresholding",),
        models=("probabilistic-classifier",),
        locations=("post-processing",),
        dataset_types="n/a:dataset-independent",
        compositions=None,
        guarantee=("fairness-guaranteed",),
    )
    return {"reweighing": reweighing, "gerryfair": gerryfair, "threshold-optimizer": threshold}


@pytest.fixture(scope="session")
def table1_mirrors():
    return table1_mirror_sheets()
