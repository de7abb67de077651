"""Fixpoint semantics by exhaustive enumeration: plain and stable fixpoints,
deterministic Kripke-Kleene and well-founded fixpoints, here-and-there pairs,
semi-equilibrium models, three-valued stable models via the GL transformation,
and GZ answer sets via the reduct.

Every solver is a brute-force sweep over the 3^n consistent pairs (or the 2^n
total interpretations), relying on the memoized operators; n is bounded by the
atom cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from . import four, operators as ops, program as prog
from .four import Truth
from .lattice import (
    AftlabError,
    ApproxPair,
    AtomSet,
    CapExceededError,
    NdSet,
    atom_cap,
    gap,
    leq_i,
    leq_t,
    smyth_leq,
)
from .operators import OperatorKind
from .program import Program, ProgramClassError, classify


class WellFoundedAnomalyError(AftlabError):
    """Raised when no unique information-least stable fixpoint exists."""

    def __init__(self, pairs: tuple[ApproxPair, ...]):
        super().__init__(f"no unique information-least stable fixpoint; minimal ones: {pairs}")
        self.pairs = pairs


def _check_cap(p: Program, max_atoms: int | None) -> None:
    cap = atom_cap(max_atoms)
    if len(p.universe) > cap:
        raise CapExceededError(f"universe has {len(p.universe)} atoms, cap is {cap}")


def _consistent_pairs(p: Program, max_atoms: int | None) -> list[ApproxPair]:
    return list(p.universe.consistent_pairs(max_atoms))


def _member(pair: ApproxPair, value: "ops.NdPair") -> bool:
    # "(x, y) in O(x, y)" is componentwise membership.
    return pair.lower in value.lower_set and pair.upper in value.upper_set


def fixpoints(kind: OperatorKind, p: Program, max_atoms: int | None = None) -> list[ApproxPair]:
    """Consistent pairs that are membership fixpoints of the operator."""
    ops.check_kind_applicable(kind, p)
    return [i for i in _consistent_pairs(p, max_atoms) if _member(i, ops.apply(kind, p, i))]


def lower_candidates(kind: OperatorKind, p: Program, y: AtomSet) -> Iterator[AtomSet]:
    if ops.consistent_only(kind):
        return p.universe.interval(frozenset(), y)
    return p.universe.subsets()


def upper_candidates(kind: OperatorKind, p: Program, x: AtomSet) -> Iterator[AtomSet]:
    if ops.consistent_only(kind):
        return p.universe.interval(x, p.universe.full())
    return p.universe.subsets()


def minimal_sets(sets: Iterable[AtomSet]) -> NdSet:
    collected = frozenset(sets)
    return frozenset(s for s in collected if not any(t < s for t in collected))


def complete_lower_stable(kind: OperatorKind, p: Program, y: AtomSet) -> NdSet:
    """Minimal x with x a member of the lower operator at (x, y).

    Candidates range over the operator's domain: everything for the total
    four-valued operator, subsets of y for the interval-based ones.
    """
    ops.check_kind_applicable(kind, p)
    return minimal_sets(
        x
        for x in lower_candidates(kind, p, y)
        if x in ops.lower_set(kind, p, ApproxPair(x, y))
    )


def complete_upper_stable(kind: OperatorKind, p: Program, x: AtomSet) -> NdSet:
    ops.check_kind_applicable(kind, p)
    return minimal_sets(
        y
        for y in upper_candidates(kind, p, x)
        if y in ops.upper_set(kind, p, ApproxPair(x, y))
    )


def stable_fixpoints(kind: OperatorKind, p: Program, max_atoms: int | None = None) -> list[ApproxPair]:
    """Consistent pairs (x, y) with x among the complete lower stable values
    for y and y among the complete upper stable values for x."""
    ops.check_kind_applicable(kind, p)
    lower_cache: dict[AtomSet, NdSet] = {}
    upper_cache: dict[AtomSet, NdSet] = {}
    out = []
    for i in _consistent_pairs(p, max_atoms):
        if i.upper not in lower_cache:
            lower_cache[i.upper] = complete_lower_stable(kind, p, i.upper)
        if i.lower not in upper_cache:
            upper_cache[i.lower] = complete_upper_stable(kind, p, i.lower)
        if i.lower in lower_cache[i.upper] and i.upper in upper_cache[i.lower]:
            out.append(i)
    return out


def total_stable_fixpoints(kind: OperatorKind, p: Program, max_atoms: int | None = None) -> list[AtomSet]:
    return [i.lower for i in stable_fixpoints(kind, p, max_atoms) if i.is_total]


# ---------------------------------------------------------------------------
# Deterministic interval operator: Kripke-Kleene, stable, well-founded
# ---------------------------------------------------------------------------


def kk_fixpoint_det(p: Program) -> ApproxPair:
    """Information-least fixpoint of the deterministic interval operator,
    reached by iterating from the least precise pair."""
    pair = ApproxPair(frozenset(), p.universe.full())
    while True:
        nxt = ops.dmt_det(p, pair)
        if nxt == pair:
            return pair
        pair = nxt


def _lfp_det_lower(p: Program, y: AtomSet) -> AtomSet:
    w: AtomSet = frozenset()
    while True:
        nxt = ops.det_lower(p, w, y)
        if nxt == w:
            return w
        w = nxt


def _lfp_det_upper(p: Program, x: AtomSet) -> AtomSet | None:
    """Least fixpoint of z -> upper(x, z) over the supersets of x, where the
    map is defined; None when no least fixpoint exists there."""
    fixed = [z for z in p.universe.interval(x, p.universe.full()) if ops.det_upper(p, x, z) == z]
    least = [z for z in fixed if all(z <= other for other in fixed)]
    return least[0] if least else None


def det_stable_fixpoints(p: Program, max_atoms: int | None = None) -> list[ApproxPair]:
    """Stable pairs of the deterministic interval operator, via least
    fixpoints of its frozen-side maps."""
    ops.check_kind_applicable(OperatorKind.DMT_DET, p)
    _check_cap(p, max_atoms)
    out = []
    lower_cache: dict[AtomSet, AtomSet] = {}
    upper_cache: dict[AtomSet, AtomSet | None] = {}
    for i in _consistent_pairs(p, max_atoms):
        if i.upper not in lower_cache:
            lower_cache[i.upper] = _lfp_det_lower(p, i.upper)
        if lower_cache[i.upper] != i.lower:
            continue
        if i.lower not in upper_cache:
            upper_cache[i.lower] = _lfp_det_upper(p, i.lower)
        if upper_cache[i.lower] == i.upper:
            out.append(i)
    return out


def wf_fixpoint_det(p: Program, max_atoms: int | None = None) -> ApproxPair:
    """Information-least deterministic stable fixpoint."""
    stable = det_stable_fixpoints(p, max_atoms)
    if not stable:
        raise AftlabError("program has no deterministic stable fixpoint")
    least = [i for i in stable if all(leq_i(i, j) for j in stable)]
    if len(least) == 1:
        return least[0]
    minimal = tuple(i for i in stable if not any(leq_i(j, i) and j != i for j in stable))
    raise WellFoundedAnomalyError(minimal)


# ---------------------------------------------------------------------------
# Here-and-there pairs and semi-equilibrium models
# ---------------------------------------------------------------------------


def _require_disjunctively_normal_aggregate_free(p: Program, what: str) -> None:
    cls = classify(p)
    if cls.shape == prog.SHAPE_GENERAL or cls.has_aggregates:
        raise ProgramClassError(f"{what} needs a disjunctively normal aggregate-free program")


def ht_models_program(p: Program, max_atoms: int | None = None) -> list[ApproxPair]:
    """Pairs satisfying every rule under here-and-there satisfaction."""
    _require_disjunctively_normal_aggregate_free(p, "HT model enumeration")
    out = []
    for i in _consistent_pairs(p, max_atoms):
        if all(
            four.ht_satisfies_rule(p.universe, i, prog.body_formula(r), r.head)
            for r in p.rules
        ):
            out.append(i)
    return out


def ht_pairs(kind: OperatorKind, p: Program, max_atoms: int | None = None) -> list[ApproxPair]:
    """Algebraic HT pairs: y closed under the base operator (in the Smyth
    sense) and x covering the operator's lower value."""
    ops.check_kind_applicable(kind, p)
    out = []
    for i in _consistent_pairs(p, max_atoms):
        if not smyth_leq(ops.ic(p, i.upper), frozenset((i.upper,))):
            continue
        if smyth_leq(ops.lower_set(kind, p, i), frozenset((i.lower,))):
            out.append(i)
    return out


def min_t(pairs: Iterable[ApproxPair]) -> list[ApproxPair]:
    collected = list(pairs)
    return [a for a in collected if not any(b != a and leq_t(b, a) for b in collected)]


def mc(pairs: Iterable[ApproxPair]) -> list[ApproxPair]:
    """Maximal canonical selection: drop pairs whose gap strictly contains
    another pair's gap."""
    collected = list(pairs)
    return [a for a in collected if not any(gap(b) < gap(a) for b in collected)]


def seq(kind: OperatorKind, p: Program, max_atoms: int | None = None) -> list[ApproxPair]:
    """Semi-equilibrium models: maximal canonical truth-minimal HT pairs."""
    return mc(min_t(ht_pairs(kind, p, max_atoms)))


def seq_no_difference(kind: OperatorKind, p: Program, max_atoms: int | None = None) -> list[ApproxPair]:
    """Difference-free approximation: information-maximal truth-minimal HT
    pairs; always a superset of the semi-equilibrium models."""
    minimal = min_t(ht_pairs(kind, p, max_atoms))
    return [a for a in minimal if not any(b != a and leq_i(a, b) for b in minimal)]


# ---------------------------------------------------------------------------
# Three-valued stable models and GZ answer sets
# ---------------------------------------------------------------------------


def is_model(p: Program, i: ApproxPair) -> bool:
    """Three-valued model: every rule head is at least as true as its body."""
    for rule in p.rules:
        body_value = four.eval_pair(p.universe, i, prog.body_formula(rule))
        head_value = four.eval_pair(p.universe, i, prog.head_formula(rule))
        if not four.truth_leq_t(body_value, head_value):
            return False
    return True


def _is_stable_model_of(p: Program, i: ApproxPair, candidates: list[ApproxPair]) -> bool:
    transformed = prog.gl_transform(p, i)
    if not is_model(transformed, i):
        return False
    return not any(
        j != i and leq_t(j, i) and is_model(transformed, j) for j in candidates
    )


def three_valued_stable(p: Program, max_atoms: int | None = None) -> list[ApproxPair]:
    """Truth-minimal models of the program's GL transformation at each pair."""
    _require_disjunctively_normal_aggregate_free(p, "three-valued stable semantics")
    pairs = _consistent_pairs(p, max_atoms)
    return [i for i in pairs if _is_stable_model_of(p, i, pairs)]


def gz_answer_sets(p: Program, max_atoms: int | None = None) -> list[AtomSet]:
    """Sets x whose total pair is an answer set of the GZ reduct at x."""
    cls = classify(p)
    if cls.shape == prog.SHAPE_GENERAL:
        raise ProgramClassError("GZ answer sets need conjunctive rule bodies")
    if cls.has_negated_aggregates:
        raise ProgramClassError("GZ answer sets do not allow negated aggregate atoms")
    _check_cap(p, max_atoms)
    pairs = _consistent_pairs(p, max_atoms)
    out = []
    for x in p.universe.subsets():
        reduct = prog.gz_reduct(p, x)
        if _is_stable_model_of(reduct, ApproxPair(x, x), pairs):
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# Uniform dispatch for the CLI
# ---------------------------------------------------------------------------

SEMANTICS_NAMES = (
    "fixpoints",
    "stable",
    "total-stable",
    "kk",
    "wf",
    "ht",
    "seq",
    "seq-approx",
    "three-valued-stable",
    "gz-answer-sets",
)

OPERATOR_BASED = ("fixpoints", "stable", "total-stable", "ht", "seq", "seq-approx")
DETERMINISTIC = ("kk", "wf")


@dataclass
class SemanticsResult:
    kind: str
    models: tuple[ApproxPair, ...]
    operator: str | None
    program_digest: str
    universe: tuple[str, ...]


def run_semantics(
    name: str,
    p: Program,
    kind: OperatorKind | None = None,
    max_atoms: int | None = None,
) -> SemanticsResult:
    """Run one named semantics; atom sets are reported as total pairs."""
    if name in OPERATOR_BASED and kind is None:
        raise AftlabError(f"semantics {name!r} needs an operator")
    if name == "fixpoints":
        models = tuple(fixpoints(kind, p, max_atoms))
    elif name == "stable":
        models = tuple(stable_fixpoints(kind, p, max_atoms))
    elif name == "total-stable":
        models = tuple(ApproxPair(x, x) for x in total_stable_fixpoints(kind, p, max_atoms))
    elif name == "kk":
        models = (kk_fixpoint_det(p),)
    elif name == "wf":
        models = (wf_fixpoint_det(p, max_atoms),)
    elif name == "ht":
        models = tuple(ht_pairs(kind, p, max_atoms))
    elif name == "seq":
        models = tuple(seq(kind, p, max_atoms))
    elif name == "seq-approx":
        models = tuple(seq_no_difference(kind, p, max_atoms))
    elif name == "three-valued-stable":
        models = tuple(three_valued_stable(p, max_atoms))
    elif name == "gz-answer-sets":
        models = tuple(ApproxPair(x, x) for x in gz_answer_sets(p, max_atoms))
    else:
        raise AftlabError(f"unknown semantics {name!r}")
    if name in DETERMINISTIC:
        operator = OperatorKind.DMT_DET.value
    else:
        operator = kind.value if kind is not None else None
    key = p.universe.pair_key
    return SemanticsResult(
        kind=name,
        models=tuple(sorted(models, key=key)),
        operator=operator,
        program_digest=prog.program_hash(p),
        universe=p.universe.atoms,
    )
