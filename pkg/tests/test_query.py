import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bimi.query import (
    And,
    Atom,
    Not,
    Or,
    QueryError,
    eval_query,
    parse_query,
    search,
)
from conftest import make_sheet
from reference_eval import reference_eval
from strategies import sheets as sheet_strategy

FACET_TERMS = {
    "task": ["classification", "regression", "clustering"],
    "dataset": ["tabular", "image", "text"],
    "location": ["pre-processing", "in-processing", "post-processing", "intra-processing"],
    "model": ["logistic-regression", "neural-network", "probabilistic-classifier"],
    "method-type": ["reweighing", "thresholding", "adversarial-debiasing"],
    "composition": [
        "binary-attribute",
        "categorical-attributes",
        "parallel-attributes",
        "numerical-attribute",
    ],
    "guarantee": [
        "no-fairness-guarantee",
        "tunable-fairness-strength",
        "fairness-guaranteed",
    ],
    "fairness-type": ["group-fairness", "individual-fairness"],
    "definition": ["statistical-parity", "equalized-odds"],
    "language": ["python", "r"],
    "package": ["scikit-learn", "pandas", "pytorch"],
    "use-case": ["adult", "compas"],
}


def atoms():
    match_atom = st.sampled_from(sorted(FACET_TERMS)).flatmap(
        lambda f: st.sampled_from(FACET_TERMS[f]).map(lambda v: Atom(f, "match", v))
    )
    at_least_atom = st.sampled_from(["composition", "guarantee"]).flatmap(
        lambda f: st.sampled_from(FACET_TERMS[f]).map(lambda v: Atom(f, "at-least", v))
    )
    text_atom = st.sampled_from(["name", "author"]).flatmap(
        lambda f: st.sampled_from(["a", "e", "air", "360", "zzz"]).map(
            lambda v: Atom(f, "match", v)
        )
    )
    return match_atom | at_least_atom | text_atom


def query_asts(max_depth=4):
    return st.recursive(
        atoms(),
        lambda children: st.one_of(
            children.map(Not),
            st.lists(children, min_size=2, max_size=3).map(lambda cs: And(tuple(cs))),
            st.lists(children, min_size=2, max_size=3).map(lambda cs: Or(tuple(cs))),
        ),
        max_leaves=2**max_depth,
    )


class TestParseQuery:
    def test_and_with_at_least(self):
        ast = parse_query("location:pre-processing AND composition>=binary-attribute")
        assert ast == And(
            (
                Atom("location", "match", "pre-processing"),
                Atom("composition", "at-least", "binary-attribute"),
            )
        )

    def test_precedence_and_binds_tighter(self):
        ast = parse_query("task:classification OR task:regression AND language:python")
        assert isinstance(ast, Or)
        assert isinstance(ast.children[1], And)

    def test_parentheses(self):
        ast = parse_query("(task:classification OR task:regression) AND language:python")
        assert isinstance(ast, And)
        assert isinstance(ast.children[0], Or)

    def test_not_chain(self):
        ast = parse_query("NOT NOT location:pre-processing")
        assert ast == Not(Not(Atom("location", "match", "pre-processing")))

    def test_quoted_value(self):
        ast = parse_query('name:"Threshold Optimizer"')
        assert ast == Atom("name", "match", "Threshold Optimizer")

    def test_unbalanced_paren(self):
        with pytest.raises(QueryError) as err:
            parse_query("location:(pre")
        assert err.value.code == "E_Q_SYNTAX"

    def test_unknown_facet(self):
        with pytest.raises(QueryError) as err:
            parse_query("flavour:vanilla")
        assert err.value.code == "E_Q_FACET"

    def test_at_least_unsupported_facet(self):
        with pytest.raises(QueryError) as err:
            parse_query("task>=classification")
        assert err.value.code == "E_CMP_UNSUPPORTED"

    def test_empty_query(self):
        with pytest.raises(QueryError):
            parse_query("   ")

    def test_trailing_garbage(self):
        with pytest.raises(QueryError):
            parse_query("task:classification task:regression AND")


class TestEval:
    def test_subsumption_match(self, vocabs):
        sheet = make_sheet(compositions=("categorical-attributes",))
        ast = parse_query("composition>=binary-attribute")
        assert eval_query(ast, sheet, vocabs)

    def test_subsumption_does_not_reverse(self, vocabs):
        sheet = make_sheet(compositions=("binary-attribute",))
        assert not eval_query(parse_query("composition>=categorical-attributes"), sheet, vocabs)

    def test_guarantee_rank_comparison(self, vocabs):
        sheet = make_sheet(guarantee=("no-fairness-guarantee",))
        assert not eval_query(parse_query("guarantee>=tunable-fairness-strength"), sheet, vocabs)
        strong = make_sheet(guarantee=("fairness-guaranteed",))
        assert eval_query(parse_query("guarantee>=tunable-fairness-strength"), strong, vocabs)

    def test_name_substring(self, vocabs):
        sheet = make_sheet(name="Reweighing")
        assert eval_query(parse_query("name:reweigh"), sheet, vocabs)
        assert not eval_query(parse_query("name:threshold"), sheet, vocabs)

    def test_author_substring(self, vocabs):
        sheet = make_sheet(authors=("AIF360",))
        assert eval_query(parse_query("author:aif"), sheet, vocabs)

    def test_unspecified_never_matches(self, vocabs):
        sheet = make_sheet(compositions=None)
        assert not eval_query(parse_query("composition:binary-attribute"), sheet, vocabs)
        assert not eval_query(parse_query("composition>=binary-attribute"), sheet, vocabs)
        # NOT applies to the computed boolean, so NOT does match
        assert eval_query(parse_query("NOT composition:binary-attribute"), sheet, vocabs)

    def test_not_applicable_never_matches_positively(self, vocabs):
        sheet = make_sheet(models="n/a:model-independent")
        assert not eval_query(parse_query("model:logistic-regression"), sheet, vocabs)

    def test_monotone_along_lattice(self, vocabs):
        sheet = make_sheet(compositions=("parallel-attributes",))
        for value in ("binary-attribute", "categorical-attributes", "parallel-attributes"):
            assert eval_query(parse_query(f"composition>={value}"), sheet, vocabs)

    @settings(max_examples=200, deadline=None)
    @given(ast=query_asts(), sheet=sheet_strategy())
    def test_matches_reference_evaluator(self, vocabs, ast, sheet):
        assert eval_query(ast, sheet, vocabs) == reference_eval(ast, sheet)

    @settings(max_examples=150, deadline=None)
    @given(ast=query_asts(), sheet=sheet_strategy())
    def test_double_negation(self, vocabs, ast, sheet):
        assert eval_query(Not(Not(ast)), sheet, vocabs) == eval_query(ast, sheet, vocabs)

    @settings(max_examples=150, deadline=None)
    @given(a=query_asts(), b=query_asts(), sheet=sheet_strategy())
    def test_de_morgan(self, vocabs, a, b, sheet):
        left = eval_query(Not(And((a, b))), sheet, vocabs)
        right = eval_query(Or((Not(a), Not(b))), sheet, vocabs)
        assert left == right


class TestSearch:
    def test_both_preprocessing_sheets_hit(self, seed_sheets, vocabs):
        corpus = [seed_sheets["reweighing"], seed_sheets["correlation-remover"]]
        hits = search(parse_query("location:pre-processing"), corpus, vocabs)
        assert {h.sheet.metadata.name for h in hits} == {"Reweighing", "Correlation Remover"}

    def test_no_hits(self, seed_sheets, vocabs):
        corpus = [seed_sheets["reweighing"], seed_sheets["correlation-remover"]]
        assert search(parse_query("location:post-processing"), corpus, vocabs) == []

    def test_tautology_hits_everything(self, seed_sheets, vocabs):
        corpus = list(seed_sheets.values())
        q = parse_query("location:pre-processing OR NOT location:pre-processing")
        assert len(search(q, corpus, vocabs)) == len(corpus)

    def test_deterministic_order(self, seed_sheets, vocabs):
        corpus = list(seed_sheets.values())
        q = parse_query("language:python")
        first = [h.id for h in search(q, corpus, vocabs)]
        second = [h.id for h in search(q, list(reversed(corpus)), vocabs)]
        assert first == second
        assert first == sorted(first, key=lambda i: i)  # all scores equal -> name order

    def test_or_scores_rank_hits(self, vocabs):
        both = make_sheet(name="Both", locations=("pre-processing",), language=("python",))
        one = make_sheet(name="One", locations=("pre-processing",), language=("r",))
        q = parse_query("location:pre-processing OR language:python")
        hits = search(q, [one, both], vocabs)
        assert [h.sheet.metadata.name for h in hits] == ["Both", "One"]
        assert hits[0].score == 2 and hits[1].score == 1

    def test_scores_at_least_one(self, seed_sheets, vocabs):
        corpus = list(seed_sheets.values())
        for q in ("language:python", "task:classification AND language:python"):
            for hit in search(parse_query(q), corpus, vocabs):
                assert hit.score >= 1
