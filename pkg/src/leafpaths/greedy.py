"""Greedy layered realizations: minimum radius rad(s), minimum height h(s+),
and the constrained minimum height h(s+, k).

Every construction places the largest remaining (out-)degrees in the
shallowest free slots. Vertex ids are handed out layer by layer, so layer
``j`` is a contiguous id range and ids within a layer ascend left to right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .tree import (
    DegreeSequence,
    OutDegreeSequence,
    RootedTree,
    TreeError,
    validate_degree_sequence,
    validate_out_degree_sequence,
)


@dataclass(frozen=True)
class LayeredWitness:
    rooted: RootedTree
    layers: tuple[tuple[int, ...], ...]
    value: int


def _build(out_degrees: Sequence[int]) -> LayeredWitness:
    """Lay out a non-increasing out-degree list breadth-first.

    Parents in layer ``j`` take their children, in id order, from the next
    block of entries; the last non-empty layer index is the height.
    """
    n = len(out_degrees)
    parent = [-1] * n
    layers = [(0,)]
    nxt = 1
    while nxt < n:
        start = nxt
        for u in layers[-1]:
            for _ in range(out_degrees[u]):
                parent[nxt] = u
                nxt += 1
        if nxt == start:
            raise TreeError("out-degrees exhausted before all vertices were placed")
        layers.append(tuple(range(start, nxt)))
    rooted = RootedTree.from_parents(parent)
    return LayeredWitness(rooted, tuple(layers), len(layers) - 1)


def min_height(s_plus: OutDegreeSequence | Sequence[int]) -> tuple[int, LayeredWitness]:
    """h(s+): minimum height of a rooted tree with out-degree multiset ``s_plus``."""
    if not isinstance(s_plus, OutDegreeSequence):
        s_plus = validate_out_degree_sequence(s_plus)
    w = _build(s_plus.entries)
    return w.value, w


def min_radius(s: DegreeSequence | Sequence[int]) -> tuple[int, LayeredWitness]:
    """rad(s) by the layered greedy construction on degrees.

    The center takes ``d_1`` neighbours; every later vertex of degree ``d``
    opens ``d - 1`` slots in the next layer. Counting is done on degrees
    directly; the witness is laid out from the matching out-degrees.
    """
    if not isinstance(s, DegreeSequence):
        s = validate_degree_sequence(s)
    d = s.entries
    n = len(d)
    slots = d[0]
    used = 1
    value = 0
    while used < n:
        take = min(slots, n - used)
        layer = d[used:used + take]
        used += take
        value += 1
        slots = sum(x - 1 for x in layer)
    out = (d[0],) + tuple(x - 1 for x in d[1:])
    w = _build(out)
    assert w.value == value
    return value, w


def choose_prefix(s_plus: OutDegreeSequence, k: int) -> int:
    """Smallest p with ``d_1 + ... + d_p - (p - 1) >= k`` (entries non-increasing)."""
    total = 0
    for p, x in enumerate(s_plus.entries, start=1):
        total += x
        if total - (p - 1) >= k:
            return p
    raise ValueError(f"no prefix of {s_plus} yields {k} leaves")


def min_height_k(
    s_plus: OutDegreeSequence | Sequence[int], k: int
) -> tuple[int, int, LayeredWitness]:
    """h(s+, k): minimum height of a rooted tree with at least ``k`` leaves
    whose out-degree sequence is a subsequence of ``s_plus``.

    Returns ``(value, p, witness)``. The optimal subsequence keeps the ``p``
    largest entries and exactly ``sum - (p - 1)`` zeros. For ``k == 1`` the
    answer is the lone root, reported with ``p = 0``.
    """
    if not isinstance(s_plus, OutDegreeSequence):
        s_plus = validate_out_degree_sequence(s_plus)
    ell = s_plus.leaves
    if not 1 <= k <= ell:
        raise ValueError(f"k={k} outside 1..{ell}")
    if k == 1:
        _, w = min_height((0,))
        return 0, 0, w
    p = choose_prefix(s_plus, k)
    head = s_plus.entries[:p]
    zeros = sum(head) - (p - 1)
    value, w = min_height(OutDegreeSequence(head + (0,) * zeros))
    return value, p, w


def subsequence_for_k(s_plus: OutDegreeSequence, k: int) -> OutDegreeSequence:
    """The out-degree sequence realized by the ``min_height_k`` witness."""
    _, _, w = min_height_k(s_plus, k)
    return OutDegreeSequence(tuple(sorted(w.rooted.out_degrees(), reverse=True)))


def rooted_form(s: DegreeSequence) -> OutDegreeSequence:
    """``(d_1, d_2 - 1, ..., d_n - 1)``: out-degrees when rooting at a max-degree vertex."""
    d = s.entries
    return OutDegreeSequence(tuple(sorted((d[0],) + tuple(x - 1 for x in d[1:]), reverse=True)))


def identity_eq1_check(s: DegreeSequence | Sequence[int]) -> bool:
    if not isinstance(s, DegreeSequence):
        s = validate_degree_sequence(s)
    return min_height(rooted_form(s))[0] == min_radius(s)[0]
