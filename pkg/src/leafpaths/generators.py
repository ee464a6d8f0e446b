"""Named tree families and seeded random trees.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937)
seeded with the caller's integer, so a ``(family, parameters, seed)`` triple
always yields the same tree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import prufer
from .tree import (
    DegreeSequence,
    RootedTree,
    Tree,
    tree_from_bfs_parents,
    validate_degree_sequence,
)

FAMILIES = ("t_delta_h", "perfect_binary", "binary_random", "degree_seq_random")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    delta: int | None = None
    h: int | None = None
    leaves: int | None = None
    degrees: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.family == "t_delta_h":
            if self.delta is None or self.h is None or self.delta < 3 or self.h < 1:
                raise ValueError("t_delta_h needs delta >= 3 and h >= 1")
        elif self.family == "perfect_binary":
            if self.h is None or self.h < 0:
                raise ValueError("perfect_binary needs a depth h >= 0")
        elif self.family == "binary_random":
            if self.leaves is None or self.leaves < 1:
                raise ValueError("binary_random needs leaves >= 1")
        elif self.degrees is None:
            raise ValueError("degree_seq_random needs a degree sequence")

    def build(self) -> Tree:
        if self.family == "t_delta_h":
            return make_t_delta_h(self.delta, self.h)
        if self.family == "perfect_binary":
            return make_perfect_binary(self.h).tree
        if self.family == "binary_random":
            return random_binary_rooted(self.leaves, self.seed).tree
        return random_tree_with_degrees(validate_degree_sequence(self.degrees), self.seed)


def make_t_delta_h(delta: int, h: int) -> Tree:
    """Root of degree ``delta``, every other internal vertex of degree ``delta``,
    all leaves at depth ``h``. Ids are assigned breadth-first from the root 0."""
    if delta < 3 or h < 1:
        raise ValueError(f"need delta >= 3 and h >= 1, got delta={delta}, h={h}")
    parent = [-1]
    frontier = [0]
    for level in range(h):
        fan = delta if level == 0 else delta - 1
        nxt = []
        for u in frontier:
            for _ in range(fan):
                nxt.append(len(parent))
                parent.append(u)
        frontier = nxt
    return tree_from_bfs_parents(parent)


def make_perfect_binary(depth: int) -> RootedTree:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    n = (1 << (depth + 1)) - 1
    return RootedTree.from_parents([-1] + [(v - 1) // 2 for v in range(1, n)])


def random_tree_with_degrees(s: DegreeSequence | Sequence[int], seed: int) -> Tree:
    """Uniform labeled tree in which vertex ``i`` has degree ``s[i]``.

    Shuffles the Prüfer word containing ``i`` exactly ``s[i] - 1`` times.
    """
    if not isinstance(s, DegreeSequence):
        s = validate_degree_sequence(s)
    word = prufer.word_for_degrees(s.entries)
    random.Random(seed).shuffle(word)
    return prufer.decode(word, s.n)


def random_binary_rooted(leaves: int, seed: int) -> RootedTree:
    """Grow a binary tree by repeatedly giving a uniformly chosen leaf two children."""
    if leaves < 1:
        raise ValueError("need at least one leaf")
    rng = random.Random(seed)
    parent = [-1]
    frontier = [0]
    while len(frontier) < leaves:
        i = rng.randrange(len(frontier))
        u = frontier[i]
        a, b = len(parent), len(parent) + 1
        parent += [u, u]
        frontier[i] = a
        frontier.append(b)
    return RootedTree.from_parents(parent)


def random_degree_sequence(n: int, seed: int) -> DegreeSequence:
    """Degree sequence of a uniformly random labeled tree on ``n`` vertices."""
    if n < 2:
        raise ValueError("need n >= 2")
    rng = random.Random(seed)
    deg = [1] * n
    for _ in range(n - 2):
        deg[rng.randrange(n)] += 1
    return validate_degree_sequence(deg)
