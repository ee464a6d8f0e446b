"""Prüfer words: the bijection between labeled trees on n vertices and words
of length n-2 over ``0..n-1``. Vertex ``i`` appears ``deg(i) - 1`` times."""

from __future__ import annotations

import heapq
from typing import Iterator, Sequence

from .tree import Tree, TreeError


def decode(word: Sequence[int], n: int | None = None) -> Tree:
    if n is None:
        n = len(word) + 2
    if n == 1 and not word:
        return Tree._trusted(1, ((),))
    if len(word) != n - 2:
        raise TreeError(f"a Prüfer word for n={n} has length {n - 2}, got {len(word)}")
    degree = [1] * n
    for x in word:
        if not 0 <= x < n:
            raise TreeError(f"letter {x} outside 0..{n - 1}")
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for x in word:
        leaf = heapq.heappop(heap)
        nbrs[leaf].append(x)
        nbrs[x].append(leaf)
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    u, v = heapq.heappop(heap), heapq.heappop(heap)
    nbrs[u].append(v)
    nbrs[v].append(u)
    return Tree._trusted(n, tuple(tuple(sorted(a)) for a in nbrs))


def encode(tree: Tree) -> list[int]:
    n = tree.n
    if n <= 2:
        return []
    degree = tree.degrees()
    removed = [False] * n
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    word = []
    for _ in range(n - 2):
        leaf = heapq.heappop(heap)
        removed[leaf] = True
        (p,) = [v for v in tree.adjacency[leaf] if not removed[v]]
        word.append(p)
        degree[p] -= 1
        if degree[p] == 1:
            heapq.heappush(heap, p)
    return word


def distinct_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct permutations of a multiset in lexicographic order."""
    a = sorted(items)
    m = len(a)
    while True:
        yield tuple(a)
        i = m - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = m - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def word_for_degrees(degrees: Sequence[int]) -> list[int]:
    """The sorted multiset word in which vertex ``i`` appears ``degrees[i]-1`` times."""
    return [v for v, d in enumerate(degrees) for _ in range(d - 1)]
