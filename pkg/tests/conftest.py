from __future__ import annotations

import pytest

from aftlab import corpus
from aftlab.lattice import ApproxPair


def atoms(*names: str) -> frozenset[str]:
    return frozenset(names)


def pair(lower: str = "", upper: str = "") -> ApproxPair:
    def side(text: str) -> frozenset[str]:
        return frozenset(part for part in text.split(",") if part)

    return ApproxPair(side(lower), side(upper))


@pytest.fixture(scope="session")
def disjunctive_self_defeat():
    return corpus.load("disjunctive_self_defeat")


@pytest.fixture(scope="session")
def negation_vs_positive_loop():
    return corpus.load("negation_vs_positive_loop")


@pytest.fixture(scope="session")
def negation_loop_disjunction():
    return corpus.load("negation_loop_disjunction")


@pytest.fixture(scope="session")
def aggregate_cycle():
    return corpus.load("aggregate_cycle")


@pytest.fixture(scope="session")
def no_total_stable_program():
    return corpus.load("no_total_stable")


@pytest.fixture(scope="session")
def sum_chain_program():
    return corpus.load("sum_chain")


@pytest.fixture(scope="session")
def sum_split_program():
    return corpus.load("sum_split")
