"""Finite posets with precomputed order closure, degree levels and Reyshas.

Element ids are strings.  The stored relation is always the full
reflexive-transitive closure of whatever generating pairs were given;
cycles are rejected at construction time.  Iteration order everywhere is
the canonical (input) element order, so all derived enumerations are
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class PosetError(ValueError):
    pass


def _transitive_closure(elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> set[tuple[str, str]]:
    below: dict[str, set[str]] = {x: {x} for x in elements}
    for x, y in pairs:
        if x not in below or y not in below:
            raise PosetError(f"relation pair ({x!r}, {y!r}) mentions unknown element")
        below[y].add(x)
    # Floyd-Warshall style saturation; posets here are tiny.
    changed = True
    while changed:
        changed = False
        for y in elements:
            acc = set(below[y])
            for x in list(below[y]):
                acc |= below[x]
            if acc != below[y]:
                below[y] = acc
                changed = True
    return {(x, y) for y in elements for x in below[y]}


@dataclass(frozen=True)
class FinPoset:
    """A finite poset: canonical element list plus closed le relation."""

    elements: tuple[str, ...]
    le_pairs: frozenset[tuple[str, str]]
    _index: dict[str, int] = field(default_factory=dict, compare=False, repr=False)
    _degree: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    @staticmethod
    def make(elements: Sequence[str], pairs: Iterable[tuple[str, str]] = ()) -> "FinPoset":
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise PosetError("duplicate element ids")
        closed = _transitive_closure(elements, pairs)
        for x, y in closed:
            if x != y and (y, x) in closed:
                raise PosetError(f"antisymmetry failure: cycle through {x!r} and {y!r}")
        poset = FinPoset(elements, frozenset(closed))
        object.__setattr__(poset, "_index", {x: i for i, x in enumerate(elements)})
        object.__setattr__(poset, "_degree", poset._compute_degrees())
        return poset

    def _compute_degrees(self) -> dict[str, int]:
        deg: dict[str, int] = {}
        # Longest chain ending at x; computed in an order compatible with <.
        remaining = list(self.elements)
        while remaining:
            progressed = False
            for x in list(remaining):
                preds = [y for y in self.elements if self.lt(y, x)]
                if all(p in deg for p in preds):
                    deg[x] = 1 + max((deg[p] for p in preds), default=-1)
                    remaining.remove(x)
                    progressed = True
            if not progressed:  # pragma: no cover - closure already acyclic
                raise PosetError("degree computation stalled")
        return deg

    def __contains__(self, x: str) -> bool:
        return x in self._index

    def index(self, x: str) -> int:
        return self._index[x]

    def le(self, x: str, y: str) -> bool:
        return (x, y) in self.le_pairs

    def lt(self, x: str, y: str) -> bool:
        return x != y and (x, y) in self.le_pairs

    def degree(self, x: str) -> int:
        """Length of the longest chain ending at x."""
        if x not in self._index:
            raise PosetError(f"unknown element {x!r}")
        return self._degree[x]

    def max_degree(self) -> int:
        return max(self._degree.values(), default=-1)

    def level_set(self, n: int) -> "Reysha":
        """All elements of degree at most n; n = -1 gives the empty Reysha."""
        return Reysha(self, tuple(x for x in self.elements if self._degree[x] <= n))

    def downset(self, x: str) -> tuple[str, ...]:
        return tuple(y for y in self.elements if self.le(y, x))

    def strict_downset(self, x: str) -> tuple[str, ...]:
        return tuple(y for y in self.elements if self.lt(y, x))

    def upper_bounds(self, members: Iterable[str]) -> tuple[str, ...]:
        members = tuple(members)
        return tuple(c for c in self.elements if all(self.le(m, c) for m in members))

    def is_downward_closed(self, members: Iterable[str]) -> bool:
        member_set = set(members)
        if not member_set <= set(self.elements):
            raise PosetError("subset mentions unknown elements")
        return all(y in member_set for x in member_set for y in self.elements if self.lt(y, x))

    def reyshas(self, max_size: int | None = None) -> Iterator["Reysha"]:
        """All downward closed subsets, in canonical subset order."""
        for r in range(len(self.elements) + 1):
            if max_size is not None and r > max_size:
                return
            for combo in itertools.combinations(self.elements, r):
                if self.is_downward_closed(combo):
                    yield Reysha(self, combo)

    def restrict(self, members: Iterable[str]) -> "FinPoset":
        member_set = set(members)
        elems = tuple(x for x in self.elements if x in member_set)
        pairs = [(x, y) for (x, y) in self.le_pairs if x in member_set and y in member_set]
        return FinPoset.make(elems, pairs)

    def in_degree_order(self) -> tuple[str, ...]:
        """Elements sorted by (degree, canonical position)."""
        return tuple(sorted(self.elements, key=lambda x: (self._degree[x], self._index[x])))


@dataclass(frozen=True)
class Reysha:
    """A downward closed subset of a poset."""

    parent: FinPoset
    members: tuple[str, ...]

    def __post_init__(self) -> None:
        ordered = tuple(x for x in self.parent.elements if x in set(self.members))
        if len(set(self.members)) != len(self.members):
            raise PosetError("duplicate members in Reysha")
        object.__setattr__(self, "members", ordered)
        if not self.parent.is_downward_closed(ordered):
            raise PosetError(f"subset {self.members} is not downward closed")

    def __contains__(self, x: str) -> bool:
        return x in set(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def as_poset(self) -> FinPoset:
        return self.parent.restrict(self.members)


def is_reysha(poset: FinPoset, members: Iterable[str]) -> bool:
    return poset.is_downward_closed(members)


def principal_downset(poset: FinPoset, x: str) -> Reysha:
    return Reysha(poset, poset.downset(x))


def is_directed_poset(poset: FinPoset) -> bool:
    """Nonempty, and every pair (hence every finite Reysha) has an upper bound."""
    if not poset.elements:
        return False
    for x, y in itertools.combinations_with_replacement(poset.elements, 2):
        if not poset.upper_bounds((x, y)):
            return False
    return True
