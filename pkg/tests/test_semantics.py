import pytest

from aftlab import corpus, operators as ops, semantics as sem
from aftlab.lattice import ApproxPair, CapExceededError, leq_i
from aftlab.operators import OperatorKind
from aftlab.program import ProgramClassError, classify, parse
from conftest import atoms, pair


def family(*sets):
    return frozenset(frozenset(s) for s in sets)


NDAO_KINDS = (OperatorKind.IC, OperatorKind.DMT, OperatorKind.ULTIMATE, OperatorKind.GZ)


def test_fixpoints_examples(disjunctive_self_defeat):
    fps = sem.fixpoints(OperatorKind.IC, disjunctive_self_defeat)
    assert pair("", "p,q") in fps
    assert pair("p", "p") in fps
    assert sem.fixpoints(OperatorKind.IC, parse("")) == [pair()]


def test_complete_lower_stable_examples(disjunctive_self_defeat):
    assert sem.complete_lower_stable(OperatorKind.IC, disjunctive_self_defeat, atoms("p")) == family({"p"}, {"q"})
    assert sem.complete_lower_stable(OperatorKind.IC, disjunctive_self_defeat, atoms("q")) == family(())
    empty = parse("")
    assert sem.complete_lower_stable(OperatorKind.IC, empty, atoms()) == family(())


def test_complete_upper_stable_examples(disjunctive_self_defeat):
    assert sem.complete_upper_stable(OperatorKind.IC, disjunctive_self_defeat, atoms()) == family({"p"}, {"q"})
    assert sem.complete_upper_stable(OperatorKind.IC, disjunctive_self_defeat, atoms("p")) == family({"p"}, {"q"})
    assert sem.complete_upper_stable(OperatorKind.IC, parse(""), atoms()) == family(())


def test_stable_fixpoints_examples(disjunctive_self_defeat):
    assert sem.stable_fixpoints(OperatorKind.IC, disjunctive_self_defeat) == [pair("", "q"), pair("p", "p")]
    assert pair("p", "p") in sem.stable_fixpoints(OperatorKind.DMT, disjunctive_self_defeat)
    assert sem.stable_fixpoints(OperatorKind.IC, parse("p :- .")) == [pair("p", "p")]


def test_total_stable_examples(disjunctive_self_defeat, sum_chain_program, sum_split_program):
    assert sem.total_stable_fixpoints(OperatorKind.IC, disjunctive_self_defeat) == [atoms("p")]
    assert sem.total_stable_fixpoints(OperatorKind.GZ, sum_split_program) == []
    assert sem.total_stable_fixpoints(OperatorKind.DMT_DET, sum_split_program) == [atoms("p")]


def test_kk_examples(negation_vs_positive_loop):
    assert sem.kk_fixpoint_det(parse("p :- .")) == pair("p", "p")
    assert sem.kk_fixpoint_det(negation_vs_positive_loop) == pair("", "p,q")
    assert sem.kk_fixpoint_det(parse("p :- p.")) == pair("", "p")


def test_kk_is_the_information_least_deterministic_fixpoint(negation_vs_positive_loop):
    for p in (negation_vs_positive_loop, parse("p :- p."), parse("p :- not p."), parse("q :- not q.")):
        kk = sem.kk_fixpoint_det(p)
        det_fixpoints = [
            i for i in p.universe.consistent_pairs() if ops.dmt_det(p, i) == i
        ]
        assert kk in det_fixpoints
        assert all(leq_i(kk, i) for i in det_fixpoints)


def test_wf_examples(negation_vs_positive_loop):
    assert sem.wf_fixpoint_det(parse("p :- not p.")) == pair("", "p")
    assert sem.wf_fixpoint_det(parse("p :- .")) == pair("p", "p")
    assert sem.wf_fixpoint_det(negation_vs_positive_loop) == pair("q", "q")
    assert sem.wf_fixpoint_det(parse("q :- not q.")) == pair("", "q")


def test_wf_is_least_among_det_stable(negation_vs_positive_loop):
    stable = sem.det_stable_fixpoints(negation_vs_positive_loop)
    wf = sem.wf_fixpoint_det(negation_vs_positive_loop)
    assert wf in stable
    assert all(leq_i(wf, i) for i in stable)


def test_det_requires_atomic_heads(disjunctive_self_defeat):
    with pytest.raises(ProgramClassError):
        sem.kk_fixpoint_det(disjunctive_self_defeat)
    with pytest.raises(ProgramClassError):
        sem.wf_fixpoint_det(disjunctive_self_defeat)


def test_ht_models_no_total_stable_program(no_total_stable_program):
    u = no_total_stable_program.universe
    models = sem.ht_models_program(no_total_stable_program)
    expected = [
        i
        for i in u.consistent_pairs()
        if "p" in i.upper
        and i.upper & {"q", "s"}
        and ("s" in i.upper or "q" in i.lower)
        and ("q" in i.upper or "s" in i.lower)
    ]
    assert models == expected


def test_ht_models_edge_cases():
    empty = parse("")
    assert sem.ht_models_program(empty) == [pair()]
    witness = parse("b :- not c.")
    assert pair("", "c") in sem.ht_models_program(witness)
    with pytest.raises(ProgramClassError):
        sem.ht_models_program(parse("p :- #sum{1:q} > 0."))


def test_ht_pairs_matches_rule_level_on_corpus():
    for name in ("disjunctive_self_defeat", "negation_vs_positive_loop", "negation_loop_disjunction", "no_total_stable", "ht_strictness"):
        p = corpus.load(name)
        assert sem.ht_pairs(OperatorKind.IC, p) == sem.ht_models_program(p)


def test_ht_pairs_guarded_choice():
    p = corpus.load("guarded_choice_lt1")
    for kind in (OperatorKind.GZ, OperatorKind.DMT, OperatorKind.ULTIMATE):
        ht = sem.ht_pairs(kind, p)
        assert pair("", "p") in ht and pair("", "q") in ht
        assert pair() not in ht and pair("", "s") not in ht


def test_total_fixpoints_are_ht_pairs(disjunctive_self_defeat, aggregate_cycle):
    for p in (disjunctive_self_defeat, aggregate_cycle):
        for kind in NDAO_KINDS:
            if kind is OperatorKind.IC and classify(p).has_aggregates:
                continue
            ht = set(sem.ht_pairs(kind, p))
            for i in sem.fixpoints(kind, p):
                if i.is_total:
                    assert i in ht


def test_no_total_stable(no_total_stable_program):
    assert sem.min_t(sem.ht_pairs(OperatorKind.IC, no_total_stable_program)) == [
        pair("", "p,q,s"),
        pair("q", "p,q"),
        pair("s", "p,s"),
    ]
    assert sem.seq(OperatorKind.IC, no_total_stable_program) == [pair("q", "p,q"), pair("s", "p,s")]


def test_seq_coincides_with_total_stable_when_total_exists(disjunctive_self_defeat):
    assert sem.seq(OperatorKind.IC, disjunctive_self_defeat) == [pair("p", "p")]


def test_seq_guarded_choice_all_operators():
    p = corpus.load("guarded_choice_lt1")
    for kind in (OperatorKind.GZ, OperatorKind.DMT, OperatorKind.ULTIMATE):
        assert sem.seq(kind, p) == [pair("", "p"), pair("", "q")]


def test_seq_approx_examples(no_total_stable_program):
    assert sem.seq_no_difference(OperatorKind.IC, parse("")) == [pair()]
    for name in ("disjunctive_self_defeat", "negation_vs_positive_loop", "negation_loop_disjunction", "no_total_stable", "ht_strictness"):
        p = corpus.load(name)
        approx = set(sem.seq_no_difference(OperatorKind.IC, p))
        assert approx >= set(sem.seq(OperatorKind.IC, p))
        for x in sem.total_stable_fixpoints(OperatorKind.IC, p):
            assert ApproxPair(x, x) in approx


def test_three_valued_stable_examples(disjunctive_self_defeat):
    models = sem.three_valued_stable(disjunctive_self_defeat)
    assert pair("p", "p") in models and pair("", "q") in models
    assert sem.three_valued_stable(parse("p :- .")) == [pair("p", "p")]
    assert sem.three_valued_stable(parse("p :- not p.")) == [pair("", "p")]
    with pytest.raises(ProgramClassError):
        sem.three_valued_stable(parse("p :- #sum{1:q} > 0."))


def test_gz_answer_sets_examples(sum_chain_program, sum_split_program):
    assert sem.gz_answer_sets(sum_chain_program) == [atoms("p", "q")]
    assert sem.gz_answer_sets(sum_split_program) == []
    with pytest.raises(ProgramClassError):
        sem.gz_answer_sets(parse("p :- not #sum{1:q} > 0."))


def test_gz_answer_sets_equal_total_stable_on_aggregate_free_corpus():
    for name in ("disjunctive_self_defeat", "negation_vs_positive_loop", "negation_loop_disjunction", "no_total_stable", "ht_strictness"):
        p = corpus.load(name)
        assert sem.gz_answer_sets(p) == sem.total_stable_fixpoints(OperatorKind.IC, p)


def test_three_valued_total_equals_ic_total_stable_on_corpus():
    for name in ("disjunctive_self_defeat", "negation_vs_positive_loop", "negation_loop_disjunction", "no_total_stable", "ht_strictness"):
        p = corpus.load(name)
        totals = [i.lower for i in sem.three_valued_stable(p) if i.is_total]
        assert totals == sem.total_stable_fixpoints(OperatorKind.IC, p)


def test_total_stability_needs_only_the_lower_operator():
    from aftlab.generator import GeneratorConfig, generate_program

    programs = [corpus.load(n) for n in ("disjunctive_self_defeat", "negation_vs_positive_loop", "aggregate_cycle", "sum_chain")]
    programs += [generate_program(GeneratorConfig(atoms=3, rules=2, seed=s)) for s in range(10)]
    for p in programs:
        for kind in NDAO_KINDS:
            if kind is OperatorKind.IC and classify(p).has_aggregates:
                continue
            stable_totals = {i.lower for i in sem.stable_fixpoints(kind, p) if i.is_total}
            via_lower = {
                x for x in p.universe.subsets() if x in sem.complete_lower_stable(kind, p, x)
            }
            assert stable_totals == via_lower


def test_cap_is_enforced():
    text = "".join(f"a{i} :- .\n" for i in range(5))
    p = parse(text)
    with pytest.raises(CapExceededError):
        sem.fixpoints(OperatorKind.IC, p, max_atoms=4)
    with pytest.raises(CapExceededError):
        sem.gz_answer_sets(p, max_atoms=4)


def test_run_semantics_dispatch(disjunctive_self_defeat):
    result = sem.run_semantics("stable", disjunctive_self_defeat, OperatorKind.IC)
    assert result.models == (pair("", "q"), pair("p", "p"))
    assert result.operator == "ic"
    assert result.universe == ("p", "q")
    kk = sem.run_semantics("kk", parse("p :- p."))
    assert kk.models == (pair("", "p"),)
    assert kk.operator == "dmt-det"
    with pytest.raises(Exception):
        sem.run_semantics("stable", disjunctive_self_defeat, None)
