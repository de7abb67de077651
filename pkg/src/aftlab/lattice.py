"""Finite powerset lattice: atom universes, the pair orders, the set-lifted
orders, lattice difference, and deterministic enumeration of intervals and
consistent pairs.

Sets of atoms are plain frozensets; an :class:`AtomUniverse` fixes the atom
ordering (lexicographic) that every enumeration and rendering follows.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

AtomSet = frozenset[str]
NdSet = frozenset[AtomSet]

DEFAULT_ATOM_CAP = 12
ATOM_CAP_ENV = "AFTLAB_MAX_ATOMS"


class AftlabError(Exception):
    """Base class for all library errors."""


class UnknownAtomError(AftlabError):
    pass


class InconsistentPairError(AftlabError):
    pass


class CapExceededError(AftlabError):
    pass


def atom_cap(override: int | None = None) -> int:
    """Effective atom cap: explicit override > AFTLAB_MAX_ATOMS > default 12."""
    if override is not None:
        return override
    env = os.environ.get(ATOM_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise AftlabError(f"bad {ATOM_CAP_ENV} value: {env!r}") from exc
    return DEFAULT_ATOM_CAP


class ApproxPair(NamedTuple):
    """A pair (lower, upper) of atom sets approximating an interval."""

    lower: AtomSet
    upper: AtomSet

    @property
    def is_consistent(self) -> bool:
        return self.lower <= self.upper

    @property
    def is_total(self) -> bool:
        return self.lower == self.upper


class NdPair(NamedTuple):
    """Range element of a non-deterministic approximating operator."""

    lower_set: NdSet
    upper_set: NdSet


@dataclass(frozen=True)
class AtomUniverse:
    """Ordered set of distinct atom names; atom i maps to bit i of a mask."""

    atoms: tuple[str, ...]

    @staticmethod
    def of(names: Iterable[str]) -> "AtomUniverse":
        ordered = tuple(sorted(set(names)))
        for name in ordered:
            if not name:
                raise AftlabError("empty atom name")
        return AtomUniverse(ordered)

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, name: str) -> bool:
        return name in self.atoms

    def index(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError as exc:
            raise UnknownAtomError(f"unknown atom {name!r}") from exc

    def atom_set(self, names: Iterable[str]) -> AtomSet:
        """Validated atom set over this universe."""
        s = frozenset(names)
        for name in s:
            if name not in self.atoms:
                raise UnknownAtomError(f"unknown atom {name!r}")
        return s

    def full(self) -> AtomSet:
        return frozenset(self.atoms)

    def mask(self, s: AtomSet) -> int:
        m = 0
        for name in s:
            m |= 1 << self.index(name)
        return m

    def unmask(self, m: int) -> AtomSet:
        return frozenset(a for i, a in enumerate(self.atoms) if m >> i & 1)

    def sort_key(self, s: AtomSet) -> int:
        return self.mask(s)

    def pair_key(self, pair: ApproxPair) -> tuple[int, int]:
        return (self.mask(pair.lower), self.mask(pair.upper))

    def subsets(self) -> Iterator[AtomSet]:
        """All subsets in mask-counting order (first atom is the low bit)."""
        for m in range(1 << len(self.atoms)):
            yield self.unmask(m)

    def interval(self, x: AtomSet, y: AtomSet) -> Iterator[AtomSet]:
        """All z with x <= z <= y, in lexicographic subset order; 2^|y-x| many."""
        if not x <= y:
            raise InconsistentPairError(f"interval requires x <= y, got {set(x)} !<= {set(y)}")
        free = sorted(y - x, key=self.index)
        for m in range(1 << len(free)):
            yield x | frozenset(a for i, a in enumerate(free) if m >> i & 1)

    def consistent_pairs(self, cap: int | None = None) -> Iterator[ApproxPair]:
        """All 3^n pairs (x, y) with x <= y, ordered by (mask(x), mask(y))."""
        n = len(self.atoms)
        if n > atom_cap(cap):
            raise CapExceededError(f"universe has {n} atoms, cap is {atom_cap(cap)}")
        full = (1 << n) - 1
        for xm in range(full + 1):
            ym = xm
            while True:
                yield ApproxPair(self.unmask(xm), self.unmask(ym))
                if ym == full:
                    break
                ym = (ym + 1) | xm


def leq_t(a: ApproxPair, b: ApproxPair) -> bool:
    """Truth order: (x,y) <=_t (w,z) iff x <= w and y <= z."""
    return a.lower <= b.lower and a.upper <= b.upper


def leq_i(a: ApproxPair, b: ApproxPair) -> bool:
    """Information order: (x,y) <=_i (w,z) iff x <= w and z <= y."""
    return a.lower <= b.lower and b.upper <= a.upper


def smyth_leq(xs: NdSet, ys: NdSet) -> bool:
    """Lower powerdomain order: every y in ys dominates some x in xs."""
    return all(any(x <= y for x in xs) for y in ys)


def hoare_leq(xs: NdSet, ys: NdSet) -> bool:
    """Upper powerdomain order: every x in xs is dominated by some y in ys."""
    return all(any(x <= y for y in ys) for x in xs)


def aprec_leq(a: NdPair, b: NdPair) -> bool:
    """Information precision on operator ranges: lower sets by Smyth, upper
    sets by Hoare reversed."""
    return smyth_leq(a.lower_set, b.lower_set) and hoare_leq(b.upper_set, a.upper_set)


def difference(y: AtomSet, x: AtomSet) -> AtomSet:
    """Unique lattice difference on a powerset: y without x."""
    return y - x


def gap(pair: ApproxPair) -> AtomSet:
    """Undecided atoms of a consistent pair: upper without lower."""
    return difference(pair.upper, pair.lower)
