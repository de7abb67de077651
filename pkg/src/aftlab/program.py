"""Program AST, parser, printer, classification, aggregate evaluation, and the
program-level transformations (GL transformation, GZ reduct).

Grammar (UTF-8, '%' comments to end of line):

    rule    := head ":-" body "." | head "." | head ":- ."
    head    := atom ("|" atom)*
    body    := lit ("," lit)* | formula          (formula only when aggregate-free)
    lit     := ["not"] (atom | agg)
    agg     := "#" func "{" entry (";" entry)* "}" cmp number
    entry   := number ("," number)* ":" atom ("&" atom)*
    func    := "sum" | "count" | "max"
    cmp     := "<" | "<=" | ">" | ">=" | "="
    formula := atom | "not" formula | formula "&" formula | formula "|" formula
             | "(" formula ")" | "#true" | "#false" | "#u" | "#c"

Weights and bounds are exact rationals ("2", "-1", "1/2", "0.5").
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Union

from . import four
from .lattice import AftlabError, ApproxPair, AtomSet, AtomUniverse, InconsistentPairError
from .four import Formula, Truth


class ParseError(AftlabError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class ProgramClassError(AftlabError):
    """A transformation or operator was applied to the wrong program class."""


class AggFunc(Enum):
    SUM = "sum"
    COUNT = "count"
    MAX = "max"


class Comparator(Enum):
    LT = "<"
    LE = "<="
    GE = ">="
    GT = ">"
    EQ = "="


@dataclass(frozen=True)
class SetTermEntry:
    weights: tuple[Fraction, ...]
    condition: tuple[str, ...]  # non-empty conjunction of atoms


@dataclass(frozen=True)
class SetTerm:
    entries: tuple[SetTermEntry, ...]


@dataclass(frozen=True)
class AggregateAtom:
    func: AggFunc
    term: SetTerm
    comparator: Comparator
    bound: Fraction


@dataclass(frozen=True)
class PositiveAtom:
    name: str


@dataclass(frozen=True)
class NegatedAtom:
    name: str


@dataclass(frozen=True)
class PositiveAgg:
    agg: AggregateAtom


@dataclass(frozen=True)
class NegatedAgg:
    agg: AggregateAtom


BodyLiteral = Union[PositiveAtom, NegatedAtom, PositiveAgg, NegatedAgg]


@dataclass(frozen=True)
class Conj:
    items: tuple[BodyLiteral, ...]


@dataclass(frozen=True)
class GeneralFormula:
    formula: Formula


Body = Union[Conj, GeneralFormula]


@dataclass(frozen=True)
class Rule:
    head: tuple[str, ...]  # sorted, deduplicated, non-empty
    body: Body

    def head_set(self) -> AtomSet:
        return frozenset(self.head)


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...]
    universe: AtomUniverse

    @property
    def text(self) -> str:
        return print_program(self)

    def __str__(self) -> str:
        return self.text


SHAPE_NORMAL = "normal"
SHAPE_DISJUNCTIVE = "disjunctively_normal"
SHAPE_GENERAL = "general"


@dataclass(frozen=True)
class Classification:
    shape: str
    has_aggregates: bool
    has_negated_aggregates: bool

    @property
    def aggregate_free(self) -> bool:
        return not self.has_aggregates


def _rule_atoms(rule: Rule) -> set[str]:
    atoms = set(rule.head)
    if isinstance(rule.body, GeneralFormula):
        atoms |= four.formula_atoms(rule.body.formula)
        return atoms
    for lit in rule.body.items:
        if isinstance(lit, (PositiveAtom, NegatedAtom)):
            atoms.add(lit.name)
        else:
            for entry in lit.agg.term.entries:
                atoms.update(entry.condition)
    return atoms


def make_program(rules: tuple[Rule, ...], universe: AtomUniverse | None = None) -> Program:
    if universe is None:
        atoms: set[str] = set()
        for rule in rules:
            atoms |= _rule_atoms(rule)
        universe = AtomUniverse.of(atoms)
    return Program(rules, universe)


def classify(p: Program) -> Classification:
    shape = SHAPE_NORMAL
    has_aggs = False
    has_neg_aggs = False
    for rule in p.rules:
        if isinstance(rule.body, GeneralFormula):
            shape = SHAPE_GENERAL
            continue
        if len(rule.head) > 1 and shape != SHAPE_GENERAL:
            shape = SHAPE_DISJUNCTIVE
        for lit in rule.body.items:
            if isinstance(lit, PositiveAgg):
                has_aggs = True
            elif isinstance(lit, NegatedAgg):
                has_aggs = True
                has_neg_aggs = True
    return Classification(shape, has_aggs, has_neg_aggs)


def program_hash(p: Program) -> str:
    return hashlib.sha256(p.text.encode()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

_PUNCT = (":-", "<=", ">=", ".", "|", ",", ";", ":", "&", "(", ")", "{", "}", "<", ">", "=")
_HASH_CONSTS = {"#true": four.TRUE, "#false": four.FALSE, "#u": four.Const(Truth.U), "#c": four.Const(Truth.C)}
_AGG_FUNCS = {"#sum": AggFunc.SUM, "#count": AggFunc.COUNT, "#max": AggFunc.MAX}


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident" | "number" | "hash" | punctuation literal | "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, pos = 1, 1, 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            line += 1
            col = 1
            pos += 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if ch == "%":
            while pos < n and text[pos] != "\n":
                pos += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            end = pos
            while end < n and (text[end].isalnum() or text[end] == "_"):
                end += 1
            tokens.append(_Token("ident", text[pos:end], start_line, start_col))
            col += end - pos
            pos = end
            continue
        if ch.isdigit() or (ch == "-" and pos + 1 < n and text[pos + 1].isdigit()):
            end = pos + 1
            while end < n and (text[end].isdigit() or text[end] in "./" and end + 1 < n and text[end + 1].isdigit()):
                end += 1
            tokens.append(_Token("number", text[pos:end], start_line, start_col))
            col += end - pos
            pos = end
            continue
        if ch == "#":
            end = pos + 1
            while end < n and text[end].isalpha():
                end += 1
            tokens.append(_Token("hash", text[pos:end], start_line, start_col))
            col += end - pos
            pos = end
            continue
        for punct in _PUNCT:
            if text.startswith(punct, pos):
                tokens.append(_Token(punct, punct, start_line, start_col))
                pos += len(punct)
                col += len(punct)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", start_line, start_col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.next()

    def fail(self, message: str) -> None:
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    def atom_name(self) -> str:
        tok = self.peek()
        if tok.kind != "ident" or tok.text == "not":
            self.fail("expected atom")
        return self.next().text

    def number(self) -> Fraction:
        tok = self.expect("number")
        try:
            return Fraction(tok.text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad number {tok.text!r}", tok.line, tok.col) from None

    # -- rules ------------------------------------------------------------

    def program(self) -> tuple[Rule, ...]:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.rule())
        return tuple(rules)

    def rule(self) -> Rule:
        head = [self.atom_name()]
        while self.peek().kind == "|":
            self.next()
            head.append(self.atom_name())
        if self.peek().kind == ".":
            self.next()
            return Rule(tuple(sorted(set(head))), Conj(()))
        self.expect(":-")
        if self.peek().kind == ".":
            self.next()
            return Rule(tuple(sorted(set(head))), Conj(()))
        body = self.body()
        self.expect(".")
        return Rule(tuple(sorted(set(head))), body)

    def body(self) -> Body:
        if self._body_is_formula():
            return GeneralFormula(self.formula())
        items = [self.literal()]
        while self.peek().kind == ",":
            self.next()
            items.append(self.literal())
        return Conj(tuple(items))

    def _body_is_formula(self) -> bool:
        """Scan ahead to the rule-terminating '.' deciding the body alternative.

        '&', '|' and parentheses at aggregate-brace depth 0 only occur in
        formulas, as do the truth constants.
        """
        depth = 0
        offset = 0
        while True:
            tok = self.peek(offset)
            if tok.kind == "eof":
                raise ParseError("missing '.' at end of rule", tok.line, tok.col)
            if tok.kind == "{":
                depth += 1
            elif tok.kind == "}":
                depth -= 1
            elif tok.kind == "." and depth == 0:
                return False
            elif depth == 0 and (tok.kind in ("&", "|", "(", ")") or tok.text in _HASH_CONSTS):
                return True
            offset += 1

    def literal(self) -> BodyLiteral:
        negated = False
        if self.peek().kind == "ident" and self.peek().text == "not":
            self.next()
            negated = True
        if self.peek().kind == "hash":
            agg = self.aggregate()
            return NegatedAgg(agg) if negated else PositiveAgg(agg)
        name = self.atom_name()
        return NegatedAtom(name) if negated else PositiveAtom(name)

    def aggregate(self) -> AggregateAtom:
        tok = self.expect("hash")
        if tok.text not in _AGG_FUNCS:
            raise ParseError(f"unknown aggregate function symbol {tok.text!r}", tok.line, tok.col)
        func = _AGG_FUNCS[tok.text]
        self.expect("{")
        entries = [self.entry()]
        while self.peek().kind == ";":
            self.next()
            entries.append(self.entry())
        self.expect("}")
        cmp_tok = self.peek()
        if cmp_tok.kind not in ("<", "<=", ">", ">=", "="):
            self.fail("expected comparison operator")
        self.next()
        bound = self.number()
        return AggregateAtom(func, SetTerm(tuple(entries)), Comparator(cmp_tok.kind), bound)

    def entry(self) -> SetTermEntry:
        weights = [self.number()]
        while self.peek().kind == ",":
            self.next()
            weights.append(self.number())
        self.expect(":")
        condition = [self.atom_name()]
        while self.peek().kind == "&":
            self.next()
            condition.append(self.atom_name())
        return SetTermEntry(tuple(weights), tuple(condition))

    # -- formulas ----------------------------------------------------------

    def formula(self) -> Formula:
        return self._or_expr()

    def _or_expr(self) -> Formula:
        out = self._and_expr()
        while self.peek().kind == "|":
            self.next()
            out = four.Or(out, self._and_expr())
        return out

    def _and_expr(self) -> Formula:
        out = self._unary()
        while self.peek().kind == "&":
            self.next()
            out = four.And(out, self._unary())
        return out

    def _unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "not":
            self.next()
            return four.Not(self._unary())
        if tok.kind == "(":
            self.next()
            out = self._or_expr()
            self.expect(")")
            return out
        if tok.kind == "hash":
            if tok.text in _AGG_FUNCS:
                raise ParseError("aggregate atom not allowed in a formula body", tok.line, tok.col)
            if tok.text not in _HASH_CONSTS:
                raise ParseError(f"unknown constant {tok.text!r}", tok.line, tok.col)
            self.next()
            return _HASH_CONSTS[tok.text]
        return four.Atom(self.atom_name())


def parse(text: str) -> Program:
    parser = _Parser(_tokenize(text))
    return make_program(parser.program())


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _format_fraction(value: Fraction) -> str:
    return str(value)


def format_aggregate(agg: AggregateAtom) -> str:
    entries = []
    for entry in agg.term.entries:
        weights = ",".join(_format_fraction(w) for w in entry.weights)
        entries.append(f"{weights}:{' & '.join(entry.condition)}")
    return f"#{agg.func.value}{{{'; '.join(entries)}}} {agg.comparator.value} {_format_fraction(agg.bound)}"


def _format_literal(lit: BodyLiteral) -> str:
    if isinstance(lit, PositiveAtom):
        return lit.name
    if isinstance(lit, NegatedAtom):
        return f"not {lit.name}"
    if isinstance(lit, PositiveAgg):
        return format_aggregate(lit.agg)
    return f"not {format_aggregate(lit.agg)}"


_CONST_TEXT = {Truth.T: "#true", Truth.F: "#false", Truth.U: "#u", Truth.C: "#c"}


def format_formula(f: Formula, _ctx: int = 1) -> str:
    if isinstance(f, four.Atom):
        return f.name
    if isinstance(f, four.Const):
        return _CONST_TEXT[f.value]
    if isinstance(f, four.Not):
        return f"not {format_formula(f.operand, 3)}"
    if isinstance(f, four.Or):
        text, prec = f"{format_formula(f.left, 1)} | {format_formula(f.right, 2)}", 1
    else:
        text, prec = f"{format_formula(f.left, 2)} & {format_formula(f.right, 3)}", 2
    return f"({text})" if prec < _ctx else text


def print_rule(rule: Rule) -> str:
    head = " | ".join(rule.head)
    if isinstance(rule.body, GeneralFormula):
        return f"{head} :- {format_formula(rule.body.formula)}."
    if not rule.body.items:
        return f"{head} :- ."
    return f"{head} :- {', '.join(_format_literal(lit) for lit in rule.body.items)}."


def print_program(p: Program) -> str:
    return "".join(print_rule(rule) + "\n" for rule in p.rules)


# ---------------------------------------------------------------------------
# Aggregate evaluation
# ---------------------------------------------------------------------------


def eval_multiset(x: AtomSet, term: SetTerm) -> tuple[tuple[Fraction, ...], ...]:
    """Weight lists of the entries whose condition holds in x, as a sorted
    multiset; duplicates contribute multiply."""
    picked = [entry.weights for entry in term.entries if set(entry.condition) <= x]
    return tuple(sorted(picked))


def eval_aggregate(x: AtomSet, agg: AggregateAtom) -> tuple[Truth, bool]:
    """Two-valued truth of the positive aggregate atom plus a definedness flag.

    Sum and count are total (empty multiset gives 0); max is undefined on the
    empty multiset, and an undefined value makes the atom false.
    """
    firsts = [weights[0] for weights in eval_multiset(x, agg.term)]
    if agg.func is AggFunc.SUM:
        value = sum(firsts, Fraction(0))
    elif agg.func is AggFunc.COUNT:
        value = Fraction(len(firsts))
    else:
        if not firsts:
            return Truth.F, False
        value = max(firsts)
    holds = {
        Comparator.LT: value < agg.bound,
        Comparator.LE: value <= agg.bound,
        Comparator.GE: value >= agg.bound,
        Comparator.GT: value > agg.bound,
        Comparator.EQ: value == agg.bound,
    }[agg.comparator]
    return (Truth.T if holds else Truth.F), True


def literal_true(u: AtomUniverse, x: AtomSet, lit: BodyLiteral) -> bool:
    if isinstance(lit, PositiveAtom):
        return lit.name in x
    if isinstance(lit, NegatedAtom):
        return lit.name not in x
    truth, defined = eval_aggregate(x, lit.agg)
    if isinstance(lit, PositiveAgg):
        return defined and truth is Truth.T
    return defined and truth is Truth.F


def eval_body(u: AtomUniverse, x: AtomSet, rule: Rule) -> bool:
    """Two-valued truth of a rule body at x."""
    if isinstance(rule.body, GeneralFormula):
        return four.eval_two(u, x, rule.body.formula) is Truth.T
    return all(literal_true(u, x, lit) for lit in rule.body.items)


def body_formula(rule: Rule) -> Formula:
    """Rule body as a formula; only defined for aggregate-free bodies."""
    if isinstance(rule.body, GeneralFormula):
        return rule.body.formula
    parts: list[Formula] = []
    for lit in rule.body.items:
        if isinstance(lit, PositiveAtom):
            parts.append(four.Atom(lit.name))
        elif isinstance(lit, NegatedAtom):
            parts.append(four.Not(four.Atom(lit.name)))
        else:
            raise ProgramClassError("aggregate atom has no formula reading")
    return four.conj(parts)


def head_formula(rule: Rule) -> Formula:
    return four.disj(four.Atom(a) for a in rule.head)


# ---------------------------------------------------------------------------
# Transformations
# ---------------------------------------------------------------------------


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ProgramClassError(message)


def gl_transform(p: Program, i: ApproxPair) -> Program:
    """Replace each negated literal by its four-valued truth constant at i,
    yielding a positive program. Requires a disjunctively normal,
    aggregate-free program and a consistent pair."""
    cls = classify(p)
    _require(cls.shape != SHAPE_GENERAL, "GL transformation needs conjunctive rule bodies")
    _require(cls.aggregate_free, "GL transformation needs an aggregate-free program")
    if not i.is_consistent:
        raise InconsistentPairError("GL transformation needs a consistent pair")
    rules = []
    for rule in p.rules:
        assert isinstance(rule.body, Conj)
        if not any(isinstance(lit, NegatedAtom) for lit in rule.body.items):
            rules.append(rule)
            continue
        parts: list[Formula] = []
        for lit in rule.body.items:
            if isinstance(lit, PositiveAtom):
                parts.append(four.Atom(lit.name))
            else:
                assert isinstance(lit, NegatedAtom)
                value = four.eval_pair(p.universe, i, four.Not(four.Atom(lit.name)))
                parts.append(four.Const(value))
        rules.append(Rule(rule.head, GeneralFormula(four.conj(parts))))
    return Program(tuple(rules), p.universe)


def gz_reduct(p: Program, x: AtomSet) -> Program:
    """GZ reduct at x: drop rules with a false or undefined positive aggregate
    atom, and replace surviving aggregate atoms by the atoms of their x-true
    conditions. Negated atoms must be non-aggregate and are left untouched.

    The result is aggregate-free and keeps the original atom universe.
    """
    cls = classify(p)
    _require(cls.shape != SHAPE_GENERAL, "GZ reduct needs conjunctive rule bodies")
    _require(not cls.has_negated_aggregates, "GZ reduct does not allow negated aggregate atoms")
    rules = []
    for rule in p.rules:
        assert isinstance(rule.body, Conj)
        items: list[BodyLiteral] = []
        deleted = False
        for lit in rule.body.items:
            if isinstance(lit, (PositiveAtom, NegatedAtom)):
                items.append(lit)
                continue
            assert isinstance(lit, PositiveAgg)
            truth, defined = eval_aggregate(x, lit.agg)
            if not defined or truth is not Truth.T:
                deleted = True
                break
            replacement: set[str] = set()
            for entry in lit.agg.term.entries:
                if set(entry.condition) <= x:
                    replacement.update(entry.condition)
            items.extend(PositiveAtom(a) for a in sorted(replacement))
        if not deleted:
            rules.append(Rule(rule.head, Conj(tuple(items))))
    return Program(tuple(rules), p.universe)
