"""Consequence operators over the powerset lattice: the head-collecting base
operator, its hitting-set immediate-consequence operator, and the four
non-deterministic approximating operators (four-valued, interval-intersection,
ultimate, trivial) plus the deterministic interval operator.

All operators are pure; applications are memoized per (operator, program,
pair).
"""

from __future__ import annotations

from enum import Enum
from functools import cache

from . import four, program as prog
from .four import Truth
from .lattice import (
    AftlabError,
    ApproxPair,
    AtomSet,
    InconsistentPairError,
    NdPair,
    NdSet,
)
from .program import Program, ProgramClassError, Rule, classify


class OperatorKind(Enum):
    IC = "ic"
    DMT = "dmt"
    ULTIMATE = "ultimate"
    GZ = "gz"
    DMT_DET = "dmt-det"


def consistent_only(kind: OperatorKind) -> bool:
    """Whether the operator is defined only on consistent pairs.

    The four-valued operator is total; the interval-based operators and the
    trivial operator are not extended to inconsistent pairs.
    """
    return kind is not OperatorKind.IC


@cache
def hd(p: Program, x: AtomSet) -> frozenset[AtomSet]:
    """Heads of the rules whose bodies are true at the total interpretation x."""
    return frozenset(r.head_set() for r in p.rules if prog.eval_body(p.universe, x, r))


def hitting_sets(heads: frozenset[AtomSet]) -> NdSet:
    """All subsets of the union of `heads` meeting every member.

    The empty family yields {{}} (the single vacuous hitting set); sets are
    not restricted to minimal ones.
    """
    heads = frozenset(heads)
    for delta in heads:
        if not delta:
            raise AftlabError("empty head set has no hitting sets")
    union = sorted(frozenset().union(*heads)) if heads else []
    out = []
    for m in range(1 << len(union)):
        candidate = frozenset(a for i, a in enumerate(union) if m >> i & 1)
        if all(candidate & delta for delta in heads):
            out.append(candidate)
    return frozenset(out)


@cache
def ic(p: Program, x: AtomSet) -> NdSet:
    """Immediate consequences of x: hitting sets of the activated heads."""
    return hitting_sets(hd(p, x))


def _require_aggregate_free(p: Program) -> None:
    if classify(p).has_aggregates:
        raise ProgramClassError("the four-valued operator needs an aggregate-free program")


def _require_atomic_heads(p: Program) -> None:
    if any(len(r.head) > 1 for r in p.rules):
        raise ProgramClassError("the deterministic operator needs atomic heads")


def _require_consistent(i: ApproxPair) -> None:
    if not i.is_consistent:
        raise InconsistentPairError("operator not defined on inconsistent pairs")


def _heads_at_least(p: Program, i: ApproxPair, threshold: Truth) -> frozenset[AtomSet]:
    out = []
    for rule in p.rules:
        value = four.eval_pair(p.universe, i, prog.body_formula(rule))
        if four.truth_leq_t(threshold, value):
            out.append(rule.head_set())
    return frozenset(out)


@cache
def ic_lower_set(p: Program, i: ApproxPair) -> NdSet:
    """Lower component of the four-valued operator; total on arbitrary pairs."""
    _require_aggregate_free(p)
    return hitting_sets(_heads_at_least(p, i, Truth.C))


@cache
def ic_upper_set(p: Program, i: ApproxPair) -> NdSet:
    _require_aggregate_free(p)
    return hitting_sets(_heads_at_least(p, i, Truth.U))


def ic_ndao(p: Program, i: ApproxPair) -> NdPair:
    """Four-valued approximating operator: lower heads need body value >=_t C,
    upper heads >=_t U."""
    return NdPair(ic_lower_set(p, i), ic_upper_set(p, i))


@cache
def _fired_atoms(p: Program, z: AtomSet) -> AtomSet:
    return frozenset().union(*hd(p, z)) if hd(p, z) else frozenset()


def det_lower(p: Program, w: AtomSet, y: AtomSet) -> AtomSet:
    """Atoms derivable at every interpretation of [w, y]; the empty interval
    (w not below y) yields the full universe, keeping the map monotone."""
    if not w <= y:
        return p.universe.full()
    out = p.universe.full()
    for z in p.universe.interval(w, y):
        out &= _fired_atoms(p, z)
    return out


def det_upper(p: Program, x: AtomSet, z: AtomSet) -> AtomSet:
    """Atoms derivable somewhere in [x, z]; only defined for x <= z."""
    if not x <= z:
        raise InconsistentPairError("upper interval operator needs x <= z")
    out: AtomSet = frozenset()
    for w in p.universe.interval(x, z):
        out |= _fired_atoms(p, w)
    return out


@cache
def dmt_det(p: Program, i: ApproxPair) -> ApproxPair:
    """Deterministic interval operator: intersection / union of derivable
    atoms over [x, y]. Needs atomic heads and a consistent pair."""
    _require_atomic_heads(p)
    _require_consistent(i)
    return ApproxPair(det_lower(p, i.lower, i.upper), det_upper(p, i.lower, i.upper))


@cache
def dmt_ndao(p: Program, i: ApproxPair) -> NdPair:
    """Interval operator at head level: heads activated everywhere in [x, y]
    below, somewhere in [x, y] above, then hitting sets on each side."""
    _require_consistent(i)
    lower_heads: frozenset[AtomSet] | None = None
    upper_heads: frozenset[AtomSet] = frozenset()
    for z in p.universe.interval(i.lower, i.upper):
        heads = hd(p, z)
        lower_heads = heads if lower_heads is None else lower_heads & heads
        upper_heads |= heads
    assert lower_heads is not None
    return NdPair(hitting_sets(lower_heads), hitting_sets(upper_heads))


@cache
def ultimate_ndao(p: Program, i: ApproxPair) -> NdPair:
    """Most precise approximating operator: union of the base operator over
    the interval, on both sides."""
    _require_consistent(i)
    gathered: NdSet = frozenset()
    for z in p.universe.interval(i.lower, i.upper):
        gathered |= ic(p, z)
    return NdPair(gathered, gathered)


@cache
def gz_ndao(p: Program, i: ApproxPair) -> NdPair:
    """Trivial operator: exact on total pairs, least precise elsewhere."""
    _require_consistent(i)
    if i.is_total:
        consequences = ic(p, i.lower)
        return NdPair(consequences, consequences)
    return NdPair(frozenset((frozenset(),)), frozenset((p.universe.full(),)))


def apply(kind: OperatorKind, p: Program, i: ApproxPair) -> NdPair:
    """Uniform dispatch; the deterministic operator is lifted to singletons."""
    if kind is OperatorKind.IC:
        return ic_ndao(p, i)
    if kind is OperatorKind.DMT:
        return dmt_ndao(p, i)
    if kind is OperatorKind.ULTIMATE:
        return ultimate_ndao(p, i)
    if kind is OperatorKind.GZ:
        return gz_ndao(p, i)
    if kind is OperatorKind.DMT_DET:
        pair = dmt_det(p, i)
        return NdPair(frozenset((pair.lower,)), frozenset((pair.upper,)))
    raise AftlabError(f"unknown operator kind {kind!r}")


def lower_set(kind: OperatorKind, p: Program, i: ApproxPair) -> NdSet:
    return apply(kind, p, i).lower_set


def upper_set(kind: OperatorKind, p: Program, i: ApproxPair) -> NdSet:
    return apply(kind, p, i).upper_set


def check_kind_applicable(kind: OperatorKind, p: Program) -> None:
    """Raise when the program falls outside the operator's class."""
    if kind is OperatorKind.IC:
        _require_aggregate_free(p)
    elif kind is OperatorKind.DMT_DET:
        _require_atomic_heads(p)
