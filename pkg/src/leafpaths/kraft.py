"""Kraft-type sums over leaf-pair distances in rooted binary trees.

For a rooted tree whose internal vertices all have two children, the sum of
``2**-dist(u, v)`` over unordered pairs of distinct leaves is compared with
``(leaves - 1) / 4``. Everything is exact dyadic arithmetic.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterator

from .oracle import _require
from .tree import RootedTree, bfs_distances, root_at, tree_from_bfs_parents

KRAFT_LEAF_CAP = 10


class NotBinaryError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class DyadicRational:
    """``numerator / 2**exponent`` in lowest terms (odd numerator, or 0/2**0)."""

    numerator: int
    exponent: int = 0

    def __post_init__(self) -> None:
        if self.numerator < 0 or self.exponent < 0:
            raise ValueError("numerator and exponent must be non-negative")
        num, exp = self.numerator, self.exponent
        if num == 0:
            exp = 0
        else:
            tz = min((num & -num).bit_length() - 1, exp)
            num >>= tz
            exp -= tz
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def power_of_half(cls, w: int, count: int = 1) -> "DyadicRational":
        return cls(count, w)

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        e = max(self.exponent, other.exponent)
        num = (self.numerator << (e - self.exponent)) + (other.numerator << (e - other.exponent))
        return DyadicRational(num, e)

    def _cmp_key(self, other: "DyadicRational") -> tuple[int, int]:
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return self.numerator == other.numerator and self.exponent == other.exponent

    def __lt__(self, other: "DyadicRational") -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __hash__(self) -> int:
        return hash((self.numerator, self.exponent))

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.exponent}"


def _check_binary(rt: RootedTree, allow_unary: bool = False) -> None:
    allowed = (0, 1, 2) if allow_unary else (0, 2)
    for v, kids in enumerate(rt.children):
        if len(kids) not in allowed:
            raise NotBinaryError(f"vertex {v} has {len(kids)} children; expected one of {allowed}")


def leaf_pair_length_multiset(rt: RootedTree, allow_unary: bool = False) -> Counter:
    """Distances between all unordered pairs of distinct leaves.

    Each internal vertex pairs the leaf-depth counts of its two subtrees, so
    every pair is counted exactly once, at its lowest common ancestor.
    ``allow_unary`` also accepts vertices with a single child.
    """
    _check_binary(rt, allow_unary)
    depths: list[Counter | None] = [None] * rt.n
    out: Counter = Counter()
    for v in reversed(rt.order):
        kids = rt.children[v]
        if not kids:
            depths[v] = Counter({0: 1})
            continue
        if len(kids) == 1:
            depths[v] = Counter({x + 1: c for x, c in depths[kids[0]].items()})
            depths[kids[0]] = None
            continue
        a, b = depths[kids[0]], depths[kids[1]]
        for x, cx in a.items():
            for y, cy in b.items():
                out[x + y + 2] += cx * cy
        merged = Counter({x + 1: c for x, c in a.items()})
        for y, c in b.items():
            merged[y + 1] += c
        depths[v] = merged
        depths[kids[0]] = depths[kids[1]] = None
    return out


def brute_leaf_pair_lengths(rt: RootedTree) -> Counter:
    leaves = rt.leaves()
    out: Counter = Counter()
    for i, u in enumerate(leaves):
        dist = bfs_distances(rt.tree, u)
        for v in leaves[i + 1:]:
            out[dist[v]] += 1
    return out


@dataclass(frozen=True)
class KraftResult:
    total: DyadicRational
    bound: DyadicRational
    leaves: int

    @property
    def holds(self) -> bool:
        return self.total <= self.bound

    @property
    def equality(self) -> bool:
        return self.total == self.bound


def kraft_sum(rt: RootedTree, allow_unary: bool = False) -> KraftResult:
    total = DyadicRational(0)
    for w, c in leaf_pair_length_multiset(rt, allow_unary).items():
        total = total + DyadicRational.power_of_half(w, c)
    ell = len(rt.leaves())
    return KraftResult(total, DyadicRational(ell - 1, 2), ell)


# -- shape enumeration -----------------------------------------------------------

# A binary shape is "L" (a leaf) or a pair (left, right) with left <= right in
# the order of _SHAPES, which makes the nested-tuple form canonical.


def _encode(shape) -> str:
    if shape == "L":
        return "L"
    return "(" + _encode(shape[0]) + "," + _encode(shape[1]) + ")"


_SHAPES: list[list] = [[], ["L"]]


def binary_shapes(leaves: int) -> list:
    """Canonical forms of every rooted binary shape with ``leaves`` leaves."""
    while len(_SHAPES) <= leaves:
        m = len(_SHAPES)
        level = []
        for a in range(1, m // 2 + 1):
            b = m - a
            left, right = _SHAPES[a], _SHAPES[b]
            for i, x in enumerate(left):
                for j in range(i if a == b else 0, len(right)):
                    level.append((x, right[j]))
        _SHAPES.append(level)
    return _SHAPES[leaves]


def shape_to_rooted(shape) -> RootedTree:
    parent = [-1]
    queue = [shape]
    i = 0
    while i < len(queue):
        s = queue[i]
        v = i
        i += 1
        if s != "L":
            for child in s:
                parent.append(v)
                queue.append(child)
    return root_at(tree_from_bfs_parents(parent), 0)


def _is_perfect(shape) -> bool:
    def depth_set(s, d) -> set:
        if s == "L":
            return {d}
        return depth_set(s[0], d + 1) | depth_set(s[1], d + 1)

    return len(depth_set(shape, 0)) == 1


@dataclass(frozen=True)
class SurveyRow:
    leaves: int
    shape_id: str
    total: DyadicRational
    bound: DyadicRational
    equality: bool
    holds: bool
    perfect: bool
    every_internal_has_2_children: bool


def kraft_survey(leaf_cap: int) -> Iterator[SurveyRow]:
    """Exact Kraft check on every binary shape with at most ``leaf_cap`` leaves."""
    if leaf_cap < 1:
        raise ValueError(f"leaf_cap must be positive, got {leaf_cap}")
    _require(leaf_cap, KRAFT_LEAF_CAP, "leaf_cap")
    for ell in range(1, leaf_cap + 1):
        for shape in binary_shapes(ell):
            rt = shape_to_rooted(shape)
            res = kraft_sum(rt)
            full = all(len(c) in (0, 2) for c in rt.children)
            yield SurveyRow(
                ell, _encode(shape), res.total, res.bound, res.equality, res.holds,
                _is_perfect(shape), full,
            )
