"""Exhaustive enumeration and brute-force reference implementations.

Nothing here calls the greedy constructions or the bit-vector DP, except
:func:`gap_record`, which is a consumer of both rather than an oracle.

Two enumerators:

* labeled trees, straight from Prüfer words (trivially complete, exponential);
* unlabeled shapes, generated directly as centroid-rooted canonical forms so
  each free tree appears exactly once.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import prufer
from .tree import (
    DegreeSequence,
    OutDegreeSequence,
    Tree,
    bfs_distances,
    degree_sequence_of,
    metrics,
    root_at,
    tree_from_bfs_parents,
    validate_degree_sequence,
    validate_out_degree_sequence,
)

LABELED_CAP = 10
DEDUPED_CAP = 16
BRUTE_RADIUS_CAP = 9
BRUTE_HEIGHT_CAP = 12
BRUTE_LP_CAP = 5000
CAP_ENV = "LEAFPATHS_CAP_OVERRIDE"


class CapExceededError(ValueError):
    pass


class NoTreeInScopeError(ValueError):
    pass


def cap(default: int) -> int:
    """``default``, or the integer in ``$LEAFPATHS_CAP_OVERRIDE`` when set."""
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else default


def _require(value: int, limit: int, what: str) -> None:
    limit = cap(limit)
    if value > limit:
        raise CapExceededError(f"{what}={value} exceeds cap {limit} (set {CAP_ENV} to raise it)")


# -- canonical forms ---------------------------------------------------------


def centroids(tree: Tree) -> list[int]:
    n = tree.n
    rt = root_at(tree, 0)
    size = [1] * n
    for v in reversed(rt.order):
        if v != rt.root:
            size[rt.parent[v]] += size[v]
    worst = []
    for v in range(n):
        w = n - size[v]
        for c in rt.children[v]:
            w = max(w, size[c])
        worst.append(w)
    best = min(worst)
    return [v for v in range(n) if worst[v] == best]


def rooted_encoding(tree: Tree, root: int) -> str:
    """AHU parenthesis encoding; equal strings iff isomorphic as rooted trees."""
    rt = root_at(tree, root)
    enc = [""] * tree.n
    for v in reversed(rt.order):
        enc[v] = "(" + "".join(sorted(enc[c] for c in rt.children[v])) + ")"
    return enc[root]


def canonical_form(tree: Tree) -> str:
    """Isomorphism-invariant string: smallest rooted encoding over the centroids."""
    return min(rooted_encoding(tree, c) for c in centroids(tree))


# -- unlabeled shapes ----------------------------------------------------------

# A rooted shape is identified by a key (size, index); _ROOTED[size][index] is
# its non-increasing tuple of child keys.
_ROOTED: list[list[tuple[tuple[int, int], ...]]] = [[], [()]]


def _rooted(size: int) -> list[tuple[tuple[int, int], ...]]:
    while len(_ROOTED) <= size:
        m = len(_ROOTED)
        _ROOTED.append(list(_child_multisets(m - 1, (m - 1, len(_rooted(m - 1)) - 1))))
    return _ROOTED[size]


def _child_multisets(total: int, bound: tuple[int, int]) -> Iterator[tuple[tuple[int, int], ...]]:
    """Non-increasing key tuples with sizes summing to ``total``, each key <= ``bound``."""
    if total == 0:
        yield ()
        return
    for s in range(min(total, bound[0]), 0, -1):
        top = bound[1] if s == bound[0] else len(_rooted(s)) - 1
        for idx in range(top, -1, -1):
            key = (s, idx)
            for rest in _child_multisets(total - s, key):
                yield (key,) + rest


def _shape_to_tree(top: Sequence[tuple[int, int]], pair: bool) -> Tree:
    """Lay out a shape breadth-first. ``pair`` joins two rooted keys by an edge."""
    parent = [-1]
    queue: list[tuple[int, int]] = []
    if pair:
        parent.append(0)
        queue = [top[0], top[1]]
        ids = [0, 1]
    else:
        queue = [(-1, -1)]
        ids = [0]
    i = 0
    while i < len(queue):
        key, v = queue[i], ids[i]
        i += 1
        kids = top if key == (-1, -1) else _ROOTED[key[0]][key[1]]
        for c in kids:
            ids.append(len(parent))
            parent.append(v)
            queue.append(c)
    return tree_from_bfs_parents(parent)


def free_trees(n: int) -> Iterator[Tree]:
    """Every unlabeled tree on ``n`` vertices exactly once.

    Unicentroidal trees are roots whose branches all have fewer than ``n/2``
    vertices; bicentroidal trees are unordered pairs of rooted trees on
    ``n/2`` vertices joined at their roots.
    """
    if n < 1:
        return
    half = (n - 1) // 2
    if half >= 1:
        for branches in _child_multisets(n - 1, (half, len(_rooted(half)) - 1)):
            yield _shape_to_tree(branches, pair=False)
    elif n == 1:
        yield Tree._trusted(1, ((),))
    if n % 2 == 0:
        m = n // 2
        count = len(_rooted(m))
        for i in range(count):
            for j in range(i, count):
                yield _shape_to_tree(((m, i), (m, j)), pair=True)


def labeled_trees(n: int, first: int | None = None) -> Iterator[Tree]:
    """All ``n**(n-2)`` labeled trees in lexicographic Prüfer order.

    ``first`` restricts to words starting with that letter (a partition).
    """
    if n <= 2:
        if first is None or first == 0:
            yield prufer.decode([], n)
        return
    heads = range(n) if first is None else [first]
    for a in heads:
        for tail in itertools.product(range(n), repeat=n - 3):
            yield prufer.decode((a,) + tail, n)


def trees_with_degrees(degrees: Sequence[int], first: int | None = None) -> Iterator[Tree]:
    """All labeled trees in which vertex ``i`` has degree ``degrees[i]``."""
    word = prufer.word_for_degrees(degrees)
    n = len(degrees)
    if not word:
        if first is None or first == 0:
            yield prufer.decode([], n)
        return
    if first is None:
        for w in prufer.distinct_permutations(word):
            yield prufer.decode(w, n)
        return
    if first not in word:
        return
    rest = list(word)
    rest.remove(first)
    for w in prufer.distinct_permutations(rest):
        yield prufer.decode((first,) + w, n)


# -- enumeration scopes ---------------------------------------------------------

MODES = ("all_trees_n", "trees_with_degree_sequence", "no_degree2_diameter_D")


@dataclass(frozen=True)
class EnumerationScope:
    """What to enumerate.

    ``all_trees_n``: trees with ``n_min <= n' <= n`` vertices (``n_min``
    defaults to ``n``). ``trees_with_degree_sequence``: labeled realizations
    of ``sequence``. ``no_degree2_diameter_D``: shapes with no degree-2 vertex,
    diameter ``D`` and at most ``n_cap`` vertices. ``no_degree2`` filters any
    mode.
    """

    mode: str = "all_trees_n"
    n: int | None = None
    n_min: int | None = None
    sequence: tuple[int, ...] | None = None
    D: int | None = None
    n_cap: int | None = None
    dedupe: bool = True
    no_degree2: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "all_trees_n" and (self.n is None or self.n < 1):
            raise ValueError("all_trees_n needs n >= 1")
        if self.mode == "trees_with_degree_sequence" and self.sequence is None:
            raise ValueError("trees_with_degree_sequence needs a sequence")
        if self.mode == "no_degree2_diameter_D" and (self.D is None or self.n_cap is None):
            raise ValueError("no_degree2_diameter_D needs D and n_cap")

    def check_caps(self) -> None:
        if self.mode == "all_trees_n":
            if self.dedupe:
                _require(self.n, DEDUPED_CAP, "n")
            else:
                _require(self.n, LABELED_CAP, "n")
        elif self.mode == "trees_with_degree_sequence":
            _require(len(self.sequence), LABELED_CAP, "n")
        else:
            _require(self.n_cap, DEDUPED_CAP, "n_cap")

    def sizes(self) -> range:
        if self.mode == "all_trees_n":
            lo = self.n if self.n_min is None else self.n_min
            return range(lo, self.n + 1)
        if self.mode == "trees_with_degree_sequence":
            return range(len(self.sequence), len(self.sequence) + 1)
        return range(2, self.n_cap + 1)

    def parts(self) -> list[tuple]:
        """Disjoint pieces whose concatenation is the full enumeration, in order."""
        out: list[tuple] = []
        if self.mode == "trees_with_degree_sequence":
            if self.dedupe:
                return [("all",)]
            return [("first", a) for a in range(len(self.sequence))]
        for size in self.sizes():
            if self.mode == "all_trees_n" and not self.dedupe and size >= 3:
                out.extend(("size-first", size, a) for a in range(size))
            else:
                out.append(("size", size))
        return out


def _no_degree2(tree: Tree) -> bool:
    return all(len(a) != 2 for a in tree.adjacency)


def _iter_part(scope: EnumerationScope, part: tuple) -> Iterator[Tree]:
    if scope.mode == "trees_with_degree_sequence":
        degrees = validate_degree_sequence(scope.sequence).entries
        first = part[1] if part[0] == "first" else None
        source = trees_with_degrees(degrees, first)
        if scope.dedupe:
            source = _dedupe(source)
    elif part[0] == "size-first":
        source = labeled_trees(part[1], part[2])
    elif scope.dedupe:
        source = free_trees(part[1])
    else:
        source = labeled_trees(part[1])
    for t in source:
        if (scope.no_degree2 or scope.mode == "no_degree2_diameter_D") and not _no_degree2(t):
            continue
        if scope.mode == "no_degree2_diameter_D" and metrics(t).diameter != scope.D:
            continue
        yield t


def _dedupe(trees: Iterable[Tree]) -> Iterator[Tree]:
    seen: set[str] = set()
    for t in trees:
        key = canonical_form(t)
        if key not in seen:
            seen.add(key)
            yield t


def enumerate_trees(scope: EnumerationScope) -> Iterator[Tree]:
    """Stream every tree in ``scope``; caps are checked before the first tree."""
    scope.check_caps()
    return _stream(scope)


def _stream(scope: EnumerationScope) -> Iterator[Tree]:
    for part in scope.parts():
        yield from _iter_part(scope, part)


# -- brute-force references ---------------------------------------------------------


def brute_lp(tree: Tree, limit: int = BRUTE_LP_CAP):
    """``{0} | {dist(u, v) : u != v leaves}`` by BFS from every leaf."""
    from .pathlens import LengthSet

    _require(tree.n, limit, "n")
    leaves = tree.leaves()
    lengths = {0}
    for u in leaves:
        dist = bfs_distances(tree, u)
        lengths.update(dist[v] for v in leaves if v != u)
    return LengthSet.of(lengths)


def brute_radius(tree: Tree) -> int:
    return min(max(bfs_distances(tree, v)) for v in range(tree.n))


def brute_min_radius(s: DegreeSequence | Sequence[int], limit: int = BRUTE_RADIUS_CAP) -> int:
    """Minimum radius over every labeled realization of ``s``."""
    if not isinstance(s, DegreeSequence):
        s = validate_degree_sequence(s)
    _require(s.n, limit, "n")
    return min(brute_radius(t) for t in trees_with_degrees(s.entries))


def _sub_multisets(items: tuple[int, ...], size: int) -> Iterator[tuple[int, ...]]:
    """Distinct sub-multisets of the sorted tuple ``items`` with ``size`` elements."""
    values = sorted(set(items), reverse=True)
    counts = [items.count(v) for v in values]

    def rec(i: int, left: int) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield ()
            return
        if i == len(values):
            return
        for c in range(min(counts[i], left), -1, -1):
            for rest in rec(i + 1, left - c):
                yield (values[i],) * c + rest

    yield from rec(0, size)


def _remove(items: tuple[int, ...], sub: tuple[int, ...]) -> tuple[int, ...]:
    rest = list(items)
    for x in sub:
        rest.remove(x)
    return tuple(rest)


@lru_cache(maxsize=None)
def _layers_below(remaining: tuple[int, ...], slots: int) -> int | None:
    """Fewest further layers that place all of ``remaining`` when the next
    layer has exactly ``slots`` vertices; ``None`` if impossible."""
    if slots == 0:
        return 0 if not remaining else None
    if slots > len(remaining):
        return None
    best = None
    for layer in _sub_multisets(remaining, slots):
        r = _layers_below(_remove(remaining, layer), sum(layer))
        if r is not None and (best is None or r + 1 < best):
            best = r + 1
    return best


def exhaustive_min_height(out_degrees: Sequence[int]) -> int:
    """Minimum height over all rooted trees with this out-degree multiset.

    A rooted tree is, up to height, an assignment of entries to layers where
    each layer's size is the out-degree total of the layer above; every such
    assignment is realizable, and all of them are searched.
    """
    items = tuple(sorted(out_degrees, reverse=True))
    if sum(items) != len(items) - 1:
        raise ValueError(f"{items} is not an out-degree sequence")
    best = None
    for root in set(items):
        r = _layers_below(_remove(items, (root,)), root)
        if r is not None and (best is None or r < best):
            best = r
    return best


def brute_min_height_k(
    s_plus: OutDegreeSequence | Sequence[int], k: int, limit: int = BRUTE_HEIGHT_CAP
) -> int:
    """Literal h(s+, k): scan every sub-multiset of ``s_plus`` that is an
    out-degree sequence with at least ``k`` zeros."""
    if not isinstance(s_plus, OutDegreeSequence):
        s_plus = validate_out_degree_sequence(s_plus)
    items = s_plus.entries
    _require(len(items), limit, "entries")
    if not 1 <= k <= s_plus.leaves:
        raise ValueError(f"k={k} outside 1..{s_plus.leaves}")
    best = None
    for size in range(1, len(items) + 1):
        for sub in _sub_multisets(items, size):
            if sum(sub) != size - 1 or sub.count(0) < k:
                continue
            h = exhaustive_min_height(sub)
            if best is None or h < best:
                best = h
    return best


# -- f(D) ----------------------------------------------------------------------------


@dataclass(frozen=True)
class FDResult:
    """Smallest lp seen among no-degree-2 trees of diameter ``D`` with at most
    ``n_cap`` vertices. ``value`` is an upper bound on the infimum, not the
    infimum itself."""

    D: int
    n_cap: int
    value: int
    witness: Tree
    trees_seen: int
    kind: str = "upper_bound"

    @property
    def lower_bound(self) -> float:
        return self.D ** (2 / 3) / 3

    @property
    def consistent(self) -> bool:
        # value >= D^(2/3)/3 in integers
        return 27 * self.value**3 >= self.D**2


def f_of_D_upper(D: int, n_cap: int) -> FDResult:
    from .pathlens import lp

    if D < 2:
        raise ValueError("D must be at least 2")
    scope = EnumerationScope(mode="no_degree2_diameter_D", D=D, n_cap=n_cap)
    best: tuple[int, Tree] | None = None
    seen = 0
    for t in enumerate_trees(scope):
        seen += 1
        value = lp(t)
        if best is None or value < best[0]:
            best = (value, t)
    if best is None:
        raise NoTreeInScopeError(f"no tree without degree-2 vertices has diameter {D} and n <= {n_cap}")
    return FDResult(D, n_cap, best[0], best[1], seen)


# -- conjecture gap statistics ---------------------------------------------------------


@dataclass(frozen=True)
class GapRecord:
    n: int
    degree_sequence: tuple[int, ...]
    rad_s: int
    rad_s_prime: int
    lp: int
    diameter: int
    max_degree: int
    leaves: int
    leaf_bound_ok: bool | None
    theorem2_bound: float | None
    radius_bound_ok: bool | None
    diameter_ok: bool | None

    @property
    def no_degree2(self) -> bool:
        return 2 not in self.degree_sequence

    @property
    def gap(self) -> int:
        return self.rad_s - self.lp

    @property
    def gap_prime(self) -> int:
        return self.rad_s_prime - self.lp

    @property
    def satisfied(self) -> bool:
        return all(x is not False for x in (self.leaf_bound_ok, self.radius_bound_ok, self.diameter_ok))


def gap_record(tree: Tree) -> GapRecord:
    from .greedy import min_radius
    from .pathlens import (
        diameter_bound_holds,
        lp,
        lp_lower_bound_theorem2,
        theorem1_holds,
    )

    s = degree_sequence_of(tree)
    lp_value = lp(tree)
    diam = metrics(tree).diameter
    if tree.n == 1:
        return GapRecord(1, s.entries, 0, 0, lp_value, 0, 0, 1, None, None, None, None)
    rad_s = min_radius(s)[0]
    s_prime = validate_degree_sequence([d for d in s.entries if d != 2])
    rad_s_prime = min_radius(s_prime)[0]
    delta = s.entries[0]
    t1 = theorem1_holds(lp_value, delta, s.leaves) if delta >= 3 else None
    if 2 in s.entries:
        t2_bound = t2 = dia = None
    else:
        b = lp_lower_bound_theorem2(s)
        t2_bound, t2 = b.value, b.holds(lp_value)
        dia = diameter_bound_holds(lp_value, diam)
    return GapRecord(
        tree.n, s.entries, rad_s, rad_s_prime, lp_value, diam, delta, s.leaves, t1, t2_bound, t2, dia
    )


@dataclass
class GapReport:
    records: list[GapRecord]

    @property
    def max_gap(self) -> int | None:
        """max of rad(s) - lp over records without degree-2 vertices."""
        gaps = [r.gap for r in self.records if r.no_degree2 and r.n >= 2]
        return max(gaps) if gaps else None

    @property
    def max_gap_prime(self) -> int | None:
        """max of rad(s') - lp over all records, s' = s without its 2 entries."""
        gaps = [r.gap_prime for r in self.records if r.n >= 2]
        return max(gaps) if gaps else None

    @property
    def violations(self) -> list[GapRecord]:
        return [r for r in self.records if not r.satisfied]


def _records_for_part(args: tuple[EnumerationScope, tuple]) -> list[GapRecord]:
    scope, part = args
    return [gap_record(t) for t in _iter_part(scope, part)]


def iter_gap_records(scope: EnumerationScope, workers: int = 1) -> Iterator[GapRecord]:
    """Stream records in enumeration order. With ``workers > 1`` the scope's
    parts are evaluated in separate processes and re-joined in part order."""
    scope.check_caps()
    if workers <= 1:
        for t in _stream(scope):
            yield gap_record(t)
        return
    tasks = [(scope, part) for part in scope.parts()]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk in pool.map(_records_for_part, tasks):
            yield from chunk


def conjecture_gap_report(
    source: EnumerationScope | Iterable[Tree], workers: int = 1
) -> GapReport:
    if isinstance(source, EnumerationScope):
        return GapReport(list(iter_gap_records(source, workers)))
    return GapReport([gap_record(t) for t in source])


def multinomial_count(degrees: Sequence[int]) -> int:
    """Labeled trees with vertex degrees ``degrees``: (n-2)! / prod (d_i - 1)!."""
    n = len(degrees)
    out = math.factorial(n - 2)
    for d in degrees:
        out //= math.factorial(d - 1)
    return out
