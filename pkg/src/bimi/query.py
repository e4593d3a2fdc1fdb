"""Boolean faceted query language over sheets.

Grammar (lowest precedence first): `or := and ('OR' and)*`,
`and := not ('AND' not)*`, `not := 'NOT' not | '(' query ')' | atom`,
`atom := facet (':' | '>=') value`. The `>=` comparator is only defined for
the composition facet (lattice subsumption) and the guarantee facet (strength
order) and is rejected at parse time elsewhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import LabelSet, Sheet, get_field
from .vocab import Vocabulary, normalize_term, rank, subsumes


@dataclass(frozen=True)
class Atom:
    facet: str
    cmp: str  # "match" | "at-least"
    value: str


@dataclass(frozen=True)
class Not:
    child: "Node"


@dataclass(frozen=True)
class And:
    children: tuple["Node", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["Node", ...]


Node = Atom | Not | And | Or


class QueryError(Exception):
    def __init__(self, code: str, position: int, message: str):
        super().__init__(f"{code} at column {position + 1}: {message}")
        self.code = code
        self.position = position
        self.message = message


# facet id -> (sheet field path, text facet?)
FACETS: dict[str, tuple[str, bool]] = {
    "task": ("method.ml_tasks", False),
    "dataset": ("method.dataset_types", False),
    "location": ("pipeline.locations", False),
    "model": ("pipeline.compatible_models", False),
    "method-type": ("method.method_types", False),
    "composition": ("fairness.compositions", False),
    "guarantee": ("fairness.guarantee", False),
    "fairness-type": ("fairness.fairness_types", False),
    "definition": ("fairness.fairness_definitions", False),
    "language": ("implementation.language", False),
    "package": ("implementation.packages", False),
    "use-case": ("use_cases.datasets", False),
    "name": ("metadata.name", True),
    "author": ("metadata.authors", True),
}

ORDERED_FACETS = frozenset({"composition", "guarantee"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<atom>(?P<facet>[a-z][a-z-]*)(?P<op>>=|:)(?P<value>"[^"]*"|[^\s()]+))
  | (?P<word>[A-Z]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # AND | OR | NOT | LPAREN | RPAREN | ATOM
    pos: int
    atom: Atom | None = None


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise QueryError("E_Q_SYNTAX", pos, f"unexpected character {text[pos]!r}")
        if m.lastgroup != "ws":
            if m.group("lparen"):
                tokens.append(_Token("LPAREN", pos))
            elif m.group("rparen"):
                tokens.append(_Token("RPAREN", pos))
            elif m.group("word"):
                word = m.group("word")
                if word not in ("AND", "OR", "NOT"):
                    raise QueryError("E_Q_SYNTAX", pos, f"unknown keyword {word!r}")
                tokens.append(_Token(word, pos))
            else:
                facet = m.group("facet")
                if facet not in FACETS:
                    raise QueryError("E_Q_FACET", pos, f"unknown facet {facet!r}")
                op = m.group("op")
                if op == ">=" and facet not in ORDERED_FACETS:
                    raise QueryError(
                        "E_CMP_UNSUPPORTED", pos, f"facet {facet!r} has no order; '>=' is not defined"
                    )
                value = m.group("value")
                if value.startswith('"'):
                    value = value[1:-1]
                cmp = "at-least" if op == ">=" else "match"
                tokens.append(_Token("ATOM", pos, Atom(facet, cmp, value)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], length: int):
        self.tokens = tokens
        self.i = 0
        self.length = length

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise QueryError("E_Q_SYNTAX", self.length, "unexpected end of query")
        self.i += 1
        return tok

    def parse_or(self) -> Node:
        children = [self.parse_and()]
        while (tok := self.peek()) and tok.kind == "OR":
            self.next()
            children.append(self.parse_and())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def parse_and(self) -> Node:
        children = [self.parse_not()]
        while (tok := self.peek()) and tok.kind == "AND":
            self.next()
            children.append(self.parse_not())
        return children[0] if len(children) == 1 else And(tuple(children))

    def parse_not(self) -> Node:
        tok = self.next()
        if tok.kind == "NOT":
            return Not(self.parse_not())
        if tok.kind == "LPAREN":
            node = self.parse_or()
            closing = self.peek()
            if closing is None or closing.kind != "RPAREN":
                raise QueryError("E_Q_SYNTAX", tok.pos, "unbalanced parenthesis")
            self.next()
            return node
        if tok.kind == "ATOM":
            return tok.atom
        raise QueryError("E_Q_SYNTAX", tok.pos, f"unexpected token {tok.kind}")


def parse_query(text: str) -> Node:
    tokens = _tokenize(text)
    if not tokens:
        raise QueryError("E_Q_SYNTAX", 0, "empty query")
    parser = _Parser(tokens, len(text))
    node = parser.parse_or()
    if (extra := parser.peek()) is not None:
        raise QueryError("E_Q_SYNTAX", extra.pos, "trailing input after query")
    return node


def _eval_atom(atom: Atom, sheet: Sheet, vocabs: dict[str, Vocabulary]) -> bool:
    path, is_text = FACETS[atom.facet]
    field = get_field(sheet, path)
    if is_text:
        needle = atom.value.casefold()
        haystacks = field if isinstance(field, tuple) else (field,)
        return any(needle in h.casefold() for h in haystacks)
    assert isinstance(field, LabelSet)
    declared = field.terms()
    if not declared:  # unspecified or not-applicable never match
        return False
    value = normalize_term(atom.value)
    if atom.cmp == "match":
        return value in declared
    if atom.facet == "composition":
        voc = vocabs["composition"]
        if not voc.has_term(value):
            return False
        return any(voc.has_term(c) and subsumes(voc, c, value) for c in declared)
    voc = vocabs["guarantee"]
    if not voc.has_term(value):
        return False
    return any(voc.has_term(g) and rank(voc, g) >= rank(voc, value) for g in declared)


def eval_query(node: Node, sheet: Sheet, vocabs: dict[str, Vocabulary]) -> bool:
    if isinstance(node, Atom):
        return _eval_atom(node, sheet, vocabs)
    if isinstance(node, Not):
        return not eval_query(node.child, sheet, vocabs)
    if isinstance(node, And):
        return all(eval_query(c, sheet, vocabs) for c in node.children)
    if isinstance(node, Or):
        return any(eval_query(c, sheet, vocabs) for c in node.children)
    raise TypeError(f"not a query node: {node!r}")


@dataclass(frozen=True)
class SearchHit:
    id: str
    score: int
    sheet: Sheet


def search(node: Node, corpus: list[Sheet], vocabs: dict[str, Vocabulary]) -> list[SearchHit]:
    """Matching sheets ranked by satisfied top-level conjuncts, then name."""
    from .model import identity

    hits = []
    for sheet in corpus:
        if not eval_query(node, sheet, vocabs):
            continue
        if isinstance(node, (And, Or)):
            score = sum(1 for c in node.children if eval_query(c, sheet, vocabs))
        else:
            score = 1
        hits.append(SearchHit(identity(sheet), score, sheet))
    hits.sort(key=lambda h: (-h.score, h.sheet.metadata.name.casefold(), h.id))
    return hits
