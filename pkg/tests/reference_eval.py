"""Independent brute-force query evaluator used as a test oracle.

Deliberately re-derives the semantics from scratch: facets are expanded to
their declared string values per sheet, subsumption is recomputed by walking
the chain edges, and the guarantee order is re-stated literally.
"""

from __future__ import annotations

from bimi.model import Sheet
from bimi.query import And, Atom, Node, Not, Or

_FACET_GETTERS = {
    "task": lambda s: s.method.ml_tasks,
    "dataset": lambda s: s.method.dataset_types,
    "location": lambda s: s.pipeline.locations,
    "model": lambda s: s.pipeline.compatible_models,
    "method-type": lambda s: s.method.method_types,
    "composition": lambda s: s.fairness.compositions,
    "guarantee": lambda s: s.fairness.guarantee,
    "fairness-type": lambda s: s.fairness.fairness_types,
    "definition": lambda s: s.fairness.fairness_definitions,
    "language": lambda s: s.implementation.language,
    "package": lambda s: s.implementation.packages,
    "use-case": lambda s: s.use_cases.datasets,
}

_CHAIN = ["binary-attribute", "categorical-attributes", "parallel-attributes"]
_GUARANTEE_ORDER = ["no-fairness-guarantee", "tunable-fairness-strength", "fairness-guaranteed"]


def _composition_at_least(declared: str, wanted: str) -> bool:
    if declared == wanted:
        return True
    if declared in _CHAIN and wanted in _CHAIN:
        return _CHAIN.index(declared) >= _CHAIN.index(wanted)
    return False


def _guarantee_at_least(declared: str, wanted: str) -> bool:
    if declared not in _GUARANTEE_ORDER or wanted not in _GUARANTEE_ORDER:
        return False
    return _GUARANTEE_ORDER.index(declared) >= _GUARANTEE_ORDER.index(wanted)


def _normalize(raw: str) -> str:
    return "-".join(raw.strip().casefold().split())


def reference_eval(node: Node, sheet: Sheet) -> bool:
    if isinstance(node, Not):
        return not reference_eval(node.child, sheet)
    if isinstance(node, And):
        result = True
        for child in node.children:
            result = result and reference_eval(child, sheet)
        return result
    if isinstance(node, Or):
        result = False
        for child in node.children:
            result = result or reference_eval(child, sheet)
        return result
    assert isinstance(node, Atom)
    if node.facet == "name":
        return node.value.casefold() in sheet.metadata.name.casefold()
    if node.facet == "author":
        return any(node.value.casefold() in a.casefold() for a in sheet.metadata.authors)
    declared = _FACET_GETTERS[node.facet](sheet).terms()
    wanted = _normalize(node.value)
    if node.cmp == "match":
        return wanted in declared
    if node.facet == "composition":
        return any(_composition_at_least(d, wanted) for d in declared)
    return any(_guarantee_at_least(d, wanted) for d in declared)
