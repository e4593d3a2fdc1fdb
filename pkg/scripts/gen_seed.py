#!/usr/bin/env python3
"""Regenerate the seed corpus under seed/ in canonical form."""

from __future__ import annotations

import sys
from pathlib import Path

from bimi import builtin_vocabularies, serialize, validate
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

ROOT = Path(__file__).resolve().parent.parent


def ls(vocab, values):
    if values is None:
        return unspecified(vocab)
    if isinstance(values, str) and values.startswith("n/a:"):
        return not_applicable(vocab, values[4:])
    if isinstance(values, str):
        values = [values]
    return labels(vocab, *values)


def sheet(
    *, name, authors, version, license, proposed_in="",
    method_types, ml_tasks, dataset_types, method_text,
    locations, models, pipeline_text,
    compositions, guarantee, fairness_types, fairness_definitions, fairness_text,
    language, packages, implementation_text,
    datasets, use_case_text,
):
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


SEEDS = {
    "reweighing": sheet(
        name="Reweighing", authors=["AIF360"], version="0.6.1", license="Apache-2.0",
        proposed_in="Kamiran and Calders, 2012",
        method_types="reweighing", ml_tasks="classification", dataset_types="tabular",
        method_text="Assigns a weight to every training sample based on its group and "
        "label so that the reweighted data shows no dependence between the two.",
        locations="pre-processing", models="sample-weight-aware-estimator",
        pipeline_text="Runs before training. The downstream estimator must accept "
        "per-sample weights; everything else about the pipeline is unchanged.",
        compositions="binary-attribute", guarantee="no-fairness-guarantee",
        fairness_types="group-fairness", fairness_definitions="statistical-parity",
        fairness_text="Reduces the statistical dependence between the sensitive "
        "attribute and the label in the training data. There is no knob for the "
        "intervention strength and no formal guarantee on the trained model.",
        language="python", packages=["scikit-learn", "numpy"],
        implementation_text="Expects a structured dataset with one protected "
        "attribute and a binary label; returns instance weights.",
        datasets=["adult", "german-credit"],
        use_case_text="Evaluated on census income and credit scoring data with "
        "logistic regression downstream.",
    ),
    "adversarial-debiasing": sheet(
        name="Adversarial Debiasing", authors=["AIF360"], version="0.6.1",
        license="Apache-2.0", proposed_in="Zhang, Lemoine and Mitchell, 2018",
        method_types="adversarial-debiasing", ml_tasks="classification",
        dataset_types="tabular",
        method_text="Trains the predictor jointly with an adversary that tries to "
        "recover the sensitive attribute from the predictions; the predictor is "
        "penalised whenever the adversary succeeds.",
        locations="in-processing", models="neural-network",
        pipeline_text="Replaces the training loop entirely, so it only applies when "
        "the model itself can be swapped for the provided network.",
        compositions="binary-attribute", guarantee="tunable-fairness-strength",
        fairness_types="group-fairness", fairness_definitions="equalized-odds",
        fairness_text="The adversary weight trades predictive accuracy against "
        "parity of error rates across groups.",
        language="python", packages="tensorflow",
        implementation_text="Requires a TensorFlow session; the classifier "
        "architecture is fixed to the bundled feed-forward network.",
        datasets=["adult", "compas"],
        use_case_text="Benchmarked on census income and recidivism data.",
    ),
    "calibrated-equalized-odds": sheet(
        name="Calibrated Equalized Odds", authors=["AIF360"], version="0.6.1",
        license="Apache-2.0", proposed_in="Pleiss et al., 2017",
        method_types="calibration", ml_tasks="classification",
        dataset_types="n/a:dataset-independent",
        method_text="Post-processes calibrated scores, randomly flipping a share of "
        "predictions in one group to equalise a chosen error rate.",
        locations="post-processing", models="probabilistic-classifier",
        pipeline_text="Operates on held-out scores only, so any data modality works "
        "as long as the upstream classifier outputs calibrated probabilities.",
        compositions="binary-attribute", guarantee="fairness-guaranteed",
        fairness_types="group-fairness",
        fairness_definitions=["equalized-odds", "calibration-within-groups"],
        fairness_text="Guarantees the selected cost constraint (false positive or "
        "false negative rate) is equal across the two groups while keeping scores "
        "calibrated within each group.",
        language="python", packages="numpy",
        implementation_text="Needs a separate validation split to fit the mixing "
        "rates before applying them to test predictions.",
        datasets="compas",
        use_case_text="Evaluated on recidivism prediction scores.",
    ),
    "disparate-impact-remover": sheet(
        name="Disparate Impact Remover", authors=["AIF360"], version="0.6.1",
        license="Apache-2.0", proposed_in="Feldman et al., 2015",
        method_types="transformation", ml_tasks="classification",
        dataset_types="tabular",
        method_text="Rank-preserving repair of the feature distributions so that "
        "feature values no longer reveal the protected group.",
        locations="pre-processing", models="n/a:model-independent",
        pipeline_text="Pure data transformation; any downstream estimator can "
        "consume the repaired features.",
        compositions="binary-attribute", guarantee="tunable-fairness-strength",
        fairness_types="group-fairness", fairness_definitions="disparate-impact",
        fairness_text="A repair level in [0, 1] interpolates between the original "
        "and fully repaired features, trading accuracy against the 80 percent rule.",
        language="python", packages="pandas",
        implementation_text="Numerical features only; categorical columns must be "
        "encoded beforehand.",
        datasets="adult",
        use_case_text="Evaluated on census income data.",
    ),
    "exponentiated-gradient-reduction": sheet(
        name="Exponentiated Gradient Reduction", authors=["AIF360"], version="0.6.1",
        license="Apache-2.0", proposed_in="Agarwal et al., 2018",
        method_types="constraint-optimization", ml_tasks="classification",
        dataset_types="tabular",
        method_text="Reduces fair classification to a sequence of cost-sensitive "
        "problems solved by a black-box learner, yielding a randomised classifier "
        "that satisfies the chosen constraint.",
        locations="in-processing", models=["logistic-regression", "gradient-boosting"],
        pipeline_text="Wraps any cost-sensitive base learner exposing the standard "
        "fit/predict interface.",
        compositions="categorical-attributes", guarantee="fairness-guaranteed",
        fairness_types="group-fairness",
        fairness_definitions=["demographic-parity", "equalized-odds"],
        fairness_text="The constraint slack is configurable; the returned ensemble "
        "provably meets the constraint up to that slack on the training data.",
        language="python", packages="scikit-learn",
        implementation_text="Base learners must support sample weights.",
        datasets="adult",
        use_case_text="Evaluated on census income data with several base learners.",
    ),
    "gerryfair-classifier": sheet(
        name="GerryFair Classifier", authors=["AIF360"], version="0.6.1",
        license="Apache-2.0", proposed_in="Kearns et al., 2018",
        method_types="constraint-optimization", ml_tasks="classification",
        dataset_types="tabular",
        method_text="Game-theoretic training loop between a learner and an auditor "
        "that searches for subgroups defined over the sensitive features where the "
        "current model violates the fairness constraint.",
        locations="in-processing", models="linear-model",
        pipeline_text="The auditor assumes linear subgroup structure over the "
        "sensitive attributes; the learner is a cost-sensitive linear model.",
        compositions="parallel-attributes", guarantee="fairness-guaranteed",
        fairness_types="subgroup-fairness", fairness_definitions="statistical-parity",
        fairness_text="Targets rich-subgroup fairness: the constraint must hold on "
        "every subgroup the auditor class can express, not only on marginal groups.",
        language="python", packages="scikit-learn",
        implementation_text="Training is iterative and considerably slower than a "
        "single model fit; the constraint strength is a hyperparameter.",
        datasets="compas",
        use_case_text="Evaluated on recidivism data with synthetic subgroup audits.",
    ),
    "lfr": sheet(
        name="Learned Fair Representations", authors=["AIF360"], version="0.6.1",
        license="Apache-2.0", proposed_in="Zemel et al., 2013",
        method_types="learning-representations", ml_tasks="classification",
        dataset_types="tabular",
        method_text="Learns an intermediate representation that encodes the data "
        "well while obfuscating membership in the protected group.",
        locations="pre-processing", models="n/a:model-independent",
        pipeline_text="Any estimator can be trained on the learned representation.",
        compositions="binary-attribute", guarantee="tunable-fairness-strength",
        fairness_types=["group-fairness", "individual-fairness"],
        fairness_definitions="statistical-parity",
        fairness_text="Three loss weights trade reconstruction quality, prediction "
        "accuracy and group parity of the representation.",
        language="python", packages="numpy",
        implementation_text="Optimisation is non-convex; results depend on the "
        "random restart and the number of prototypes.",
        datasets=["adult", "german-credit"],
        use_case_text="Evaluated on census income and credit scoring data.",
    ),
    "prejudice-remover": sheet(
        name="Prejudice Remover", authors=["AIF360"], version="0.6.1",
        license="Apache-2.0", proposed_in="Kamishima et al., 2012",
        method_types="regularization", ml_tasks="classification",
        dataset_types="tabular",
        method_text="Adds a regulariser to logistic regression that penalises "
        "mutual information between the prediction and the sensitive attribute.",
        locations="in-processing", models="logistic-regression",
        pipeline_text="Bound to the bundled logistic regression; it cannot wrap an "
        "arbitrary estimator.",
        compositions="binary-attribute", guarantee="tunable-fairness-strength",
        fairness_types="group-fairness", fairness_definitions="demographic-parity",
        fairness_text="The regulariser weight eta controls how strongly prejudice "
        "is suppressed relative to the data-fit term.",
        language="python", packages="scikit-learn",
        implementation_text="Binary label and single binary sensitive attribute.",
        datasets="adult",
        use_case_text="Evaluated on census income data.",
    ),
    "adversarial-mitigation": sheet(
        name="Adversarial Mitigation", authors=["Fairlearn"], version="0.10.0",
        license="MIT", proposed_in="Zhang, Lemoine and Mitchell, 2018",
        method_types="adversarial-debiasing", ml_tasks=["classification", "regression"],
        dataset_types="tabular",
        method_text="Neural predictor trained against an adversary that predicts "
        "the sensitive feature from the predictor's output.",
        locations="in-processing", models="neural-network",
        pipeline_text="Provides both a PyTorch and a TensorFlow backend; the "
        "predictor and adversary networks are configurable.",
        compositions="categorical-attributes", guarantee="tunable-fairness-strength",
        fairness_types="group-fairness",
        fairness_definitions=["demographic-parity", "equalized-odds"],
        fairness_text="The alpha hyperparameter scales the adversarial loss and "
        "thereby the strength of the fairness pressure.",
        language="python", packages=["pytorch", "tensorflow", "scikit-learn"],
        implementation_text="Follows the scikit-learn estimator API; training "
        "stability requires careful learning-rate scheduling.",
        datasets="adult",
        use_case_text="Evaluated on census income data.",
    ),
    "correlation-remover": sheet(
        name="Correlation Remover", authors=["Fairlearn"], version="0.10.0",
        license="MIT",
        method_types="transformation", ml_tasks="n/a:task-independent",
        dataset_types="tabular",
        method_text="Linearly projects the non-sensitive features so that their "
        "correlation with the sensitive columns is removed.",
        locations="pre-processing", models="n/a:model-independent",
        pipeline_text="A scikit-learn transformer; most effective when the "
        "downstream model is linear, since only linear correlation is removed.",
        compositions="categorical-attributes", guarantee="tunable-fairness-strength",
        fairness_types="group-fairness", fairness_definitions="demographic-parity",
        fairness_text="The alpha parameter interpolates between the original and "
        "the fully decorrelated features.",
        language="python", packages=["scikit-learn", "pandas"],
        implementation_text="Drops the sensitive columns from the transformed "
        "output; categorical features must be one-hot encoded first.",
        datasets="adult",
        use_case_text="Evaluated on census income data with linear models.",
    ),
    "threshold-optimizer": sheet(
        name="Threshold Optimizer", authors=["Fairlearn"], version="0.10.0",
        license="MIT", proposed_in="Hardt, Price and Srebro, 2016",
        method_types="thresholding", ml_tasks="classification",
        dataset_types="n/a:dataset-independent",
        method_text="Picks group-specific decision thresholds (possibly randomised) "
        "over an existing scorer to satisfy a parity constraint.",
        locations="post-processing", models="probabilistic-classifier",
        pipeline_text="Wraps any fitted estimator that exposes scores or "
        "probabilities; only the decision rule changes.",
        compositions="categorical-attributes", guarantee="fairness-guaranteed",
        fairness_types="group-fairness",
        fairness_definitions=["equalized-odds", "equal-opportunity"],
        fairness_text="The chosen constraint is met exactly on the data used to fit "
        "the thresholds; several objective/constraint pairs are supported.",
        language="python", packages="scikit-learn",
        implementation_text="Needs the sensitive feature at prediction time.",
        datasets=["adult", "compas"],
        use_case_text="Evaluated on census income and recidivism data.",
    ),
    "error-parity": sheet(
        name="Error Parity", authors=["error-parity"], version="0.3.11",
        license="MIT", proposed_in="Cruz and Hardt, 2024",
        method_types="thresholding", ml_tasks="classification",
        dataset_types="n/a:dataset-independent",
        method_text="Solves a linear program over group-specific ROC points to "
        "post-process scores to the fairness-optimal randomised thresholds.",
        locations="post-processing", models="probabilistic-classifier",
        pipeline_text="Consumes only predicted scores and group membership, so it "
        "is agnostic to how the upstream model was trained.",
        compositions="categorical-attributes", guarantee="fairness-guaranteed",
        fairness_types="group-fairness", fairness_definitions="equalized-odds",
        fairness_text="Achieves the constraint up to a configurable tolerance and "
        "reports the accuracy cost of doing so.",
        language="python", packages=["scikit-learn", "folktables"],
        implementation_text="Requires calibrated scores for the optimality claim "
        "to hold in practice.",
        datasets="adult",
        use_case_text="Evaluated on census-derived prediction tasks.",
    ),
    "fairret": sheet(
        name="Fairret", authors=["fairret"], version="0.1.0", license="MIT",
        proposed_in="Buyl, Defrance and De Bie, 2024",
        method_types="loss-function-modification", ml_tasks="classification",
        dataset_types="tabular",
        method_text="Provides differentiable fairness regularisation terms that are "
        "added to the training loss of any gradient-based model.",
        locations="in-processing", models="neural-network",
        pipeline_text="Integrates with automatic differentiation; any model trained "
        "by gradient descent can include the term.",
        compositions=["parallel-attributes", "numerical-attribute"],
        guarantee="tunable-fairness-strength",
        fairness_types="group-fairness",
        fairness_definitions=["demographic-parity", "equalized-odds"],
        fairness_text="Statistics are expressed over linear-fractional forms, which "
        "covers many group definitions including continuous attributes; the loss "
        "weight tunes the intervention strength.",
        language="python", packages="pytorch",
        implementation_text="Ships as a small PyTorch library of loss terms.",
        datasets="adult",
        use_case_text="Evaluated on tabular benchmarks with neural networks.",
    ),
    "oxonfair": sheet(
        name="OxonFair", authors=["OxonFair"], version="0.2.0", license="Apache-2.0",
        proposed_in="Delaney et al., 2024",
        method_types="thresholding", ml_tasks="classification",
        dataset_types="n/a:dataset-independent",
        method_text="Optimises group-dependent decision thresholds on validation "
        "data to enforce a chosen fairness measure over an existing classifier.",
        locations="post-processing", models="probabilistic-classifier",
        pipeline_text="Works with tabular, vision and NLP classifiers since only "
        "their output scores are consumed.",
        compositions="categorical-attributes", guarantee="fairness-guaranteed",
        fairness_types="group-fairness",
        fairness_definitions=["equal-opportunity", "demographic-parity"],
        fairness_text="Supports a wide range of group metrics; enforcement is exact "
        "on the validation split used for threshold fitting.",
        language="python", packages="scikit-learn",
        implementation_text="Can tune for utility subject to a fairness constraint "
        "or vice versa.",
        datasets=["adult", "compas"],
        use_case_text="Evaluated on tabular and vision benchmarks.",
    ),
}


def main() -> int:
    vocabs = builtin_vocabularies()
    out_dir = ROOT / "seed"
    out_dir.mkdir(exist_ok=True)
    ok = True
    for name, s in SEEDS.items():
        violations = validate(s, vocabs)
        errors = [v for v in violations if v.is_error]
        if errors:
            print(f"{name}: ERRORS {errors}")
            ok = False
            continue
        text = serialize(s)
        assert parse(text) == s, name
        (out_dir / f"{name}.bimi").write_text(text, encoding="utf-8")
        warn = [v.code for v in violations]
        print(f"{name}: ok{' warnings=' + str(warn) if warn else ''}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
