"""Executable law suite: the operator and semantics invariants, run over the
golden corpus plus seeded random programs.

Each law reports the number of checked cases and, on violation, a failure
message with the smallest failing program appended as a reproducer (programs
are visited in increasing size order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import corpus, operators as ops, program as prog, render, semantics as sem
from .generator import GeneratorConfig, generate_program
from .lattice import ApproxPair, aprec_leq, leq_i, leq_t, smyth_leq
from .operators import OperatorKind
from .program import Program, classify

ApplyFn = Callable[[OperatorKind, Program, ApproxPair], "ops.NdPair"]


@dataclass
class LawOutcome:
    name: str
    ok: bool
    cases: int
    failure: str | None


def _ndao_kinds(p: Program) -> list[OperatorKind]:
    kinds = [] if classify(p).has_aggregates else [OperatorKind.IC]
    kinds += [OperatorKind.DMT, OperatorKind.ULTIMATE, OperatorKind.GZ]
    return kinds


def _atomic_heads(p: Program) -> bool:
    return all(len(r.head) == 1 for r in p.rules)


def _pairs(p: Program) -> list[ApproxPair]:
    return list(p.universe.consistent_pairs())


def _law_monotonicity(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    kinds = _ndao_kinds(p) + ([OperatorKind.DMT_DET] if _atomic_heads(p) else [])
    pairs = _pairs(p)
    cases = 0
    for kind in kinds:
        values = {i: apply_fn(kind, p, i) for i in pairs}
        for i1 in pairs:
            for i2 in pairs:
                if not leq_i(i1, i2):
                    continue
                cases += 1
                if not aprec_leq(values[i1], values[i2]):
                    u = p.universe
                    return cases, (
                        f"{kind.value} not precision-monotone: "
                        f"{render.fmt_pair(u, i1)} <=_i {render.fmt_pair(u, i2)}"
                    )
    return cases, None


def _law_exactness(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cases = 0
    for kind in _ndao_kinds(p):
        for x in p.universe.subsets():
            cases += 1
            value = apply_fn(kind, p, ApproxPair(x, x))
            expected = ops.ic(p, x)
            if value.lower_set != expected or value.upper_set != expected:
                return cases, f"{kind.value} not exact at {render.fmt_set(p.universe, x)}"
    return cases, None


def _law_precision_chain(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cases = 0
    for i in _pairs(p):
        cases += 1
        gz = apply_fn(OperatorKind.GZ, p, i)
        dmt = apply_fn(OperatorKind.DMT, p, i)
        ult = apply_fn(OperatorKind.ULTIMATE, p, i)
        if not aprec_leq(gz, dmt):
            return cases, f"gz not below dmt at {render.fmt_pair(p.universe, i)}"
        if not aprec_leq(dmt, ult):
            return cases, f"dmt not below ultimate at {render.fmt_pair(p.universe, i)}"
    return cases, None


def _law_ultimate_max(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    kinds = [k for k in _ndao_kinds(p) if k is not OperatorKind.ULTIMATE]
    cases = 0
    for i in _pairs(p):
        ult = apply_fn(OperatorKind.ULTIMATE, p, i)
        for kind in kinds:
            cases += 1
            if not aprec_leq(apply_fn(kind, p, i), ult):
                return cases, f"{kind.value} not below ultimate at {render.fmt_pair(p.universe, i)}"
    return cases, None


def _law_symmetry(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    if classify(p).has_aggregates:
        return 0, None
    cases = 0
    subsets = list(p.universe.subsets())
    for x in subsets:
        for y in subsets:
            cases += 1
            if ops.ic_lower_set(p, ApproxPair(x, y)) != ops.ic_upper_set(p, ApproxPair(y, x)):
                u = p.universe
                return cases, (
                    f"lower at ({render.fmt_set(u, x)}, {render.fmt_set(u, y)}) "
                    f"differs from upper at the swapped pair"
                )
    return cases, None


def _law_upwards_coherence(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cases = 0
    for kind in _ndao_kinds(p):
        for i in _pairs(p):
            cases += 1
            value = apply_fn(kind, p, i)
            if not value.lower_set or not value.upper_set:
                return cases, f"{kind.value} returned an empty candidate set at {render.fmt_pair(p.universe, i)}"
            if not smyth_leq(value.lower_set, value.upper_set):
                return cases, f"{kind.value} not upwards coherent at {render.fmt_pair(p.universe, i)}"
    return cases, None


def _law_ht_equality(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cls = classify(p)
    if cls.has_aggregates or cls.shape == prog.SHAPE_GENERAL:
        return 0, None
    algebraic = sem.ht_pairs(OperatorKind.IC, p)
    by_rules = sem.ht_models_program(p)
    if algebraic != by_rules:
        return 1, "algebraic HT pairs differ from rule-level HT models"
    return 1, None


def _law_total_stable_ht(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cases = 0
    for kind in _ndao_kinds(p):
        cases += 1
        ht_totals = {i for i in sem.min_t(sem.ht_pairs(kind, p)) if i.is_total}
        stable_totals = {i for i in sem.stable_fixpoints(kind, p) if i.is_total}
        if ht_totals != stable_totals:
            return cases, f"{kind.value}: total truth-minimal HT pairs differ from total stable fixpoints"
    return cases, None


def _law_seq_nonempty(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cases = 0
    for kind in _ndao_kinds(p):
        cases += 1
        models = sem.seq(kind, p)
        if not models:
            return cases, f"{kind.value}: no semi-equilibrium model"
        if any(i.is_total for i in models):
            stable_totals = {i for i in sem.stable_fixpoints(kind, p) if i.is_total}
            if set(models) != stable_totals:
                return cases, f"{kind.value}: semi-equilibrium models differ from total stable fixpoints"
    return cases, None


def _law_stable_t_minimal(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cases = 0
    for kind in _ndao_kinds(p):
        cases += 1
        minimal = set(sem.min_t(sem.fixpoints(kind, p)))
        for i in sem.stable_fixpoints(kind, p):
            if i not in minimal:
                return cases, f"{kind.value}: stable fixpoint {render.fmt_pair(p.universe, i)} not truth-minimal"
    return cases, None


def _law_gz_answer_sets(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cls = classify(p)
    if cls.shape == prog.SHAPE_GENERAL:
        return 0, None
    cases = 1
    non_total = [i for i in sem.min_t(sem.fixpoints(OperatorKind.GZ, p)) if not i.is_total]
    if non_total:
        return cases, (
            f"truth-minimal trivial-operator fixpoint {render.fmt_pair(p.universe, non_total[0])} is not total"
        )
    if not cls.has_negated_aggregates:
        cases += 1
        stable = sorted(sem.total_stable_fixpoints(OperatorKind.GZ, p), key=p.universe.sort_key)
        answer_sets = sorted(sem.gz_answer_sets(p), key=p.universe.sort_key)
        if stable != answer_sets:
            return cases, (
                "trivial-operator total stable fixpoints "
                f"{[render.fmt_set(p.universe, x) for x in stable]} differ from reduct answer sets "
                f"{[render.fmt_set(p.universe, x) for x in answer_sets]}"
            )
    return cases, None


def _law_dmt_det_collapse(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    if not _atomic_heads(p):
        return 0, None
    cases = 0
    for i in _pairs(p):
        cases += 1
        nd = ops.dmt_ndao(p, i)
        det = ops.dmt_det(p, i)
        if frozenset().union(*nd.lower_set) != det.lower or frozenset().union(*nd.upper_set) != det.upper:
            return cases, f"head-level interval operator does not collapse at {render.fmt_pair(p.universe, i)}"
    cases += 1
    if sem.stable_fixpoints(OperatorKind.DMT, p) != sem.det_stable_fixpoints(p):
        return cases, "interval-operator stable fixpoints differ from the deterministic stable pairs"
    return cases, None


def _law_prefixpoint_minimal(p: Program, apply_fn: ApplyFn) -> tuple[int, str | None]:
    cases = 0
    for kind in _ndao_kinds(p):
        for y in p.universe.subsets():
            cases += 1
            candidates = list(sem.lower_candidates(kind, p, y))
            fixed = [x for x in candidates if x in apply_fn(kind, p, ApproxPair(x, y)).lower_set]
            pre = [
                x
                for x in candidates
                if smyth_leq(apply_fn(kind, p, ApproxPair(x, y)).lower_set, frozenset((x,)))
            ]
            if sem.minimal_sets(fixed) != sem.minimal_sets(pre):
                return cases, (
                    f"{kind.value}: minimal fixpoints and minimal pre-fixpoints differ "
                    f"at upper bound {render.fmt_set(p.universe, y)}"
                )
    return cases, None


LAWS: dict[str, Callable[[Program, ApplyFn], tuple[int, str | None]]] = {
    "monotonicity": _law_monotonicity,
    "exactness": _law_exactness,
    "precision-chain": _law_precision_chain,
    "ultimate-max": _law_ultimate_max,
    "symmetry": _law_symmetry,
    "upwards-coherence": _law_upwards_coherence,
    "ht-equality": _law_ht_equality,
    "total-stable-ht": _law_total_stable_ht,
    "seq-nonempty": _law_seq_nonempty,
    "stable-t-minimal": _law_stable_t_minimal,
    "gz-answer-sets": _law_gz_answer_sets,
    "dmt-det-collapse": _law_dmt_det_collapse,
    "prefixpoint-minimal": _law_prefixpoint_minimal,
}

LAW_NAMES = tuple(LAWS)


def suite_programs(count: int = 200, atoms: int = 3, rules: int = 4, seed: int = 0) -> list[Program]:
    """Golden corpus plus `count` seeded random programs."""
    programs = corpus.programs()
    for offset in range(count):
        cfg = GeneratorConfig(
            atoms=atoms,
            rules=1 + (seed + offset) % rules,
            negation_probability=0.4,
            aggregate_probability=0.25 if offset % 2 else 0.0,
            disjunction_width=2,
            seed=seed + offset,
        )
        programs.append(generate_program(cfg))
    return programs


def run_laws(
    programs: Iterable[Program],
    names: Sequence[str] | None = None,
    apply_fn: ApplyFn = ops.apply,
) -> list[LawOutcome]:
    ordered = sorted(programs, key=lambda p: (len(p.rules), len(p.universe), p.text))
    selected = list(names) if names is not None else list(LAW_NAMES)
    unknown = [n for n in selected if n not in LAWS]
    if unknown:
        raise prog.ProgramClassError(f"unknown law name(s): {', '.join(unknown)}")
    outcomes = []
    for name in selected:
        law = LAWS[name]
        cases = 0
        failure = None
        for p in ordered:
            checked, detail = law(p, apply_fn)
            cases += checked
            if detail is not None:
                failure = f"{detail}\nreproducer:\n{p.text}"
                break
        outcomes.append(LawOutcome(name, failure is None, cases, failure))
    return outcomes
