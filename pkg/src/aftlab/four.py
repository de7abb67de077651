"""Four-valued truth algebra (T, F, U, C), formula evaluation under an
approximating pair, and here-and-there satisfaction of rules.

Conjunction is the greatest lower bound and disjunction the least upper bound
of the truth order F < {C, U} < T (C and U incomparable); negation swaps T/F
and fixes C and U.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

from .lattice import (
    AftlabError,
    ApproxPair,
    AtomSet,
    AtomUniverse,
    InconsistentPairError,
    UnknownAtomError,
)


class Truth(Enum):
    F = "F"
    U = "U"
    C = "C"
    T = "T"

    def __str__(self) -> str:
        return self.value


_NEG = {Truth.T: Truth.F, Truth.F: Truth.T, Truth.U: Truth.U, Truth.C: Truth.C}

# Strict relations; reflexivity is added by the predicates below.
_LT_T = {(Truth.F, Truth.C), (Truth.F, Truth.U), (Truth.C, Truth.T), (Truth.U, Truth.T), (Truth.F, Truth.T)}
_LT_I = {(Truth.U, Truth.F), (Truth.U, Truth.T), (Truth.F, Truth.C), (Truth.T, Truth.C), (Truth.U, Truth.C)}


def neg(v: Truth) -> Truth:
    return _NEG[v]


def truth_leq_t(a: Truth, b: Truth) -> bool:
    return a == b or (a, b) in _LT_T


def truth_leq_i(a: Truth, b: Truth) -> bool:
    return a == b or (a, b) in _LT_I


def glb_t(a: Truth, b: Truth) -> Truth:
    if truth_leq_t(a, b):
        return a
    if truth_leq_t(b, a):
        return b
    return Truth.F  # C and U meet at the bottom


def lub_t(a: Truth, b: Truth) -> Truth:
    if truth_leq_t(a, b):
        return b
    if truth_leq_t(b, a):
        return a
    return Truth.T  # C and U join at the top


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Const:
    value: Truth


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Const, Not, And, Or]

TRUE = Const(Truth.T)
FALSE = Const(Truth.F)


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-associated conjunction; the empty conjunction is T."""
    out: Formula | None = None
    for part in parts:
        out = part if out is None else And(out, part)
    return TRUE if out is None else out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-associated disjunction; the empty disjunction is F."""
    out: Formula | None = None
    for part in parts:
        out = part if out is None else Or(out, part)
    return FALSE if out is None else out


def formula_atoms(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset((f.name,))
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, Not):
        return formula_atoms(f.operand)
    return formula_atoms(f.left) | formula_atoms(f.right)


def eval_pair(u: AtomUniverse, i: ApproxPair, f: Formula) -> Truth:
    """Four-valued value of f under (x, y); total on arbitrary pairs."""
    if isinstance(f, Atom):
        if f.name not in u:
            raise UnknownAtomError(f"unknown atom {f.name!r}")
        in_x, in_y = f.name in i.lower, f.name in i.upper
        if in_x and in_y:
            return Truth.T
        if in_x:
            return Truth.C
        if in_y:
            return Truth.U
        return Truth.F
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return neg(eval_pair(u, i, f.operand))
    if isinstance(f, And):
        return glb_t(eval_pair(u, i, f.left), eval_pair(u, i, f.right))
    if isinstance(f, Or):
        return lub_t(eval_pair(u, i, f.left), eval_pair(u, i, f.right))
    raise AftlabError(f"not a formula: {f!r}")


def eval_two(u: AtomUniverse, x: AtomSet, f: Formula) -> Truth:
    """Two-valued evaluation at the total pair (x, x)."""
    return eval_pair(u, ApproxPair(x, x), f)


def ht_satisfies(u: AtomUniverse, i: ApproxPair, f: Formula) -> bool:
    """Here-and-there satisfaction at a consistent pair.

    Atoms hold when in the lower set; a negation holds when the formula is
    not classically true at the upper set; conjunction and disjunction go
    componentwise.
    """
    if not i.is_consistent:
        raise InconsistentPairError("HT satisfaction needs a consistent pair")
    if isinstance(f, Atom):
        if f.name not in u:
            raise UnknownAtomError(f"unknown atom {f.name!r}")
        return f.name in i.lower
    if isinstance(f, Const):
        return f.value is Truth.T
    if isinstance(f, Not):
        return eval_two(u, i.upper, f.operand) is not Truth.T
    if isinstance(f, And):
        return ht_satisfies(u, i, f.left) and ht_satisfies(u, i, f.right)
    if isinstance(f, Or):
        return ht_satisfies(u, i, f.left) or ht_satisfies(u, i, f.right)
    raise AftlabError(f"not a formula: {f!r}")


def ht_satisfies_rule(u: AtomUniverse, i: ApproxPair, body: Formula, head: Iterable[str]) -> bool:
    """HT satisfaction of body -> head-disjunction.

    Requires both the HT implication clause and classical truth of the
    material implication at the upper set.
    """
    head_atoms = tuple(head)
    if not head_atoms:
        raise AftlabError("rule head must be non-empty")
    head_formula = disj(Atom(a) for a in head_atoms)
    here = (not ht_satisfies(u, i, body)) or ht_satisfies(u, i, head_formula)
    there = eval_two(u, i.upper, Or(Not(body), head_formula)) is Truth.T
    return here and there
