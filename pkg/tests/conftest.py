"""Shared builders and brute-force oracles.

The oracles here share no code with the engine under test: surplus and
matching are recomputed by direct subset or backtracking enumeration, and
counting goes through a naive permanent. Slow on purpose, trusted on sight.
"""

from __future__ import annotations

import itertools

from projclass.family import (
    Constant,
    DisjointBlocks,
    FiniteFamily,
    ProjectionFamily,
)


def triangular(start: int = 1) -> ProjectionFamily:
    # |I_j| = j, consecutive disjoint blocks
    return ProjectionFamily((), DisjointBlocks(1, 0, start))


def padded_triangular() -> ProjectionFamily:
    # two copies of {1} in front, blocks pushed past them
    return ProjectionFamily(
        (frozenset({1}), frozenset({1})), DisjointBlocks(1, 0, 2)
    )


def finite(*sets) -> FiniteFamily:
    return FiniteFamily(tuple(frozenset(s) for s in sets))


def brute_max_surplus(sets, n: int = 1) -> int:
    """max over all subsets F of n|F| - |union F|, empty subset included."""
    best = 0
    masks = _element_masks(sets)
    for choice in range(1, 1 << len(sets)):
        union = 0
        size = 0
        for i, m in enumerate(masks):
            if choice >> i & 1:
                union |= m
                size += 1
        best = max(best, n * size - union.bit_count())
    return best


def _element_masks(sets) -> list[int]:
    ground = sorted(set().union(*sets)) if sets else []
    pos = {e: i for i, e in enumerate(ground)}
    return [sum(1 << pos[e] for e in s) for s in sets]


def brute_max_matching(sets) -> int:
    """Largest injective partial system of representatives, by backtracking."""

    def go(i: int, used: frozenset) -> int:
        if i == len(sets):
            return 0
        best = go(i + 1, used)
        for e in sorted(sets[i] - used):
            best = max(best, 1 + go(i + 1, used | {e}))
        return best

    return go(0, frozenset())


def brute_sdr_count(sets) -> int:
    """Number of full injective choice functions, by backtracking."""

    def go(i: int, used: frozenset) -> int:
        if i == len(sets):
            return 1
        return sum(go(i + 1, used | {e}) for e in sets[i] if e not in used)

    return go(0, frozenset())


def all_subsets(ground) -> list[frozenset]:
    items = sorted(ground)
    return [
        frozenset(c)
        for r in range(len(items) + 1)
        for c in itertools.combinations(items, r)
    ]


CONSTANT_ONE = ProjectionFamily((), Constant(frozenset({1})))
SINGLETON_BLOCKS = ProjectionFamily((), DisjointBlocks(0, 1, 1))
