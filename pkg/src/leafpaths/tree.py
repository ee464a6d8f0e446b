"""Tree data model: undirected trees, rooted views, degree sequences.

Vertices are dense integer ids ``0..n-1``. Adjacency lists are kept sorted so
every traversal (and therefore every witness and every CSV row) is
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class TreeError(ValueError):
    """Base class for invalid trees and sequences."""


class EdgeCountError(TreeError):
    pass


class DisconnectedError(TreeError):
    pass


class CycleError(TreeError):
    pass


class VertexRangeError(TreeError):
    pass


class MalformedLineError(TreeError):
    pass


class DegreeSequenceError(TreeError):
    pass


class SequenceTooShortError(DegreeSequenceError):
    pass


class NonPositiveEntryError(DegreeSequenceError):
    pass


class DegreeSumError(DegreeSequenceError):
    pass


@dataclass(frozen=True, eq=False)
class Tree:
    """Undirected tree on vertices ``0..n-1``.

    ``adjacency[v]`` is the ascending tuple of neighbours of ``v``.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n, adj = self.n, self.adjacency
        if n < 1:
            raise EdgeCountError("a tree needs at least one vertex")
        if len(adj) != n:
            raise EdgeCountError(f"adjacency has {len(adj)} rows, expected {n}")
        half_edges = 0
        for u, nbrs in enumerate(adj):
            half_edges += len(nbrs)
            for v in nbrs:
                if not 0 <= v < n:
                    raise VertexRangeError(f"vertex {v} out of range 0..{n - 1}")
                if v == u:
                    raise CycleError(f"self-loop at vertex {u}")
        if half_edges != 2 * (n - 1):
            raise EdgeCountError(f"{half_edges // 2} edges, a tree on {n} vertices has {n - 1}")
        for u, nbrs in enumerate(adj):
            if len(set(nbrs)) != len(nbrs):
                raise CycleError(f"parallel edges at vertex {u}")
            for v in nbrs:
                if u not in adj[v]:
                    raise TreeError(f"adjacency not symmetric for edge {u}-{v}")
        if len(_bfs_order(adj, 0)) != n:
            raise DisconnectedError("graph is not connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tree":
        """Build a tree from an edge list, rejecting cycles before anything else."""
        edges = list(edges)
        if len(edges) != max(n - 1, 0):
            raise EdgeCountError(f"{len(edges)} edges, a tree on {n} vertices has {n - 1}")
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge {u}-{v} has a vertex outside 0..{n - 1}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise CycleError(f"edge {u}-{v} closes a cycle")
            parent[ru] = rv
            nbrs[u].append(v)
            nbrs[v].append(u)
        return cls._trusted(n, tuple(tuple(sorted(a)) for a in nbrs))

    @classmethod
    def _trusted(cls, n: int, adjacency: tuple[tuple[int, ...], ...]) -> "Tree":
        # Skips re-validation for adjacency already known to form a tree.
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "adjacency", adjacency)
        return obj

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def leaves(self) -> list[int]:
        """Vertices of degree at most one."""
        return [v for v, a in enumerate(self.adjacency) if len(a) <= 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, a in enumerate(self.adjacency) for v in a if u < v]

    def max_degree(self) -> int:
        return max(len(a) for a in self.adjacency)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={self.edges()})"


def _bfs_order(adj: Sequence[Sequence[int]], source: int) -> list[int]:
    seen = [False] * len(adj)
    seen[source] = True
    order = [source]
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                order.append(v)
    return order


def tree_from_bfs_parents(parent: Sequence[int]) -> Tree:
    """Tree from a parent array in which every parent id precedes its
    children and sibling ids ascend (vertex 0 is the root)."""
    n = len(parent)
    kids: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        p = parent[v]
        if not 0 <= p < v:
            raise TreeError(f"parent of {v} must precede it, got {p}")
        kids[p].append(v)
    adj = tuple(tuple(kids[v]) if v == 0 else (parent[v], *kids[v]) for v in range(n))
    return Tree._trusted(n, adj)


def bfs_distances(tree: Tree, source: int) -> list[int]:
    adj = tree.adjacency
    dist = [-1] * tree.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


@dataclass(frozen=True)
class DegreeSequence:
    entries: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def leaves(self) -> int:
        return self.entries.count(1)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))


@dataclass(frozen=True)
class OutDegreeSequence:
    entries: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def leaves(self) -> int:
        """Number of zero entries, i.e. leaves of any realizing rooted tree."""
        return self.entries.count(0)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))


def validate_degree_sequence(entries: Iterable[int]) -> DegreeSequence:
    """Sort ``entries`` non-increasingly and check they are a tree's degrees."""
    d = sorted((int(x) for x in entries), reverse=True)
    n = len(d)
    if n < 2:
        raise SequenceTooShortError(f"a tree degree sequence needs n >= 2 entries, got {n}")
    if d[-1] < 1:
        raise NonPositiveEntryError(f"entry {d[-1]} is not positive")
    if sum(d) != 2 * (n - 1):
        raise DegreeSumError(f"sum {sum(d)} != 2(n-1) = {2 * (n - 1)}")
    return DegreeSequence(tuple(d))


def validate_out_degree_sequence(entries: Iterable[int]) -> OutDegreeSequence:
    d = sorted((int(x) for x in entries), reverse=True)
    n = len(d)
    if n < 1:
        raise SequenceTooShortError("an out-degree sequence needs at least one entry")
    if d[-1] < 0:
        raise NonPositiveEntryError(f"entry {d[-1]} is negative")
    if sum(d) != n - 1:
        raise DegreeSumError(f"sum {sum(d)} != n-1 = {n - 1}")
    return OutDegreeSequence(tuple(d))


def parse_sequence(text: str) -> list[int]:
    """Parse a comma-separated integer list such as ``"3,3,1,1,1,1"``."""
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as exc:
        raise MalformedLineError(f"not a comma-separated integer list: {text!r}") from exc


def degree_sequence_of(tree: Tree) -> DegreeSequence:
    return DegreeSequence(tuple(sorted(tree.degrees(), reverse=True)))


@dataclass(frozen=True, eq=False)
class RootedTree:
    """Out-tree view of ``tree`` with all edges directed away from ``root``."""

    tree: Tree
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]
    order: tuple[int, ...] = field(repr=False)  # BFS order from the root

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def height(self) -> int:
        return self.depth[self.order[-1]]

    def leaves(self) -> list[int]:
        """Vertices without children (the root counts only when n == 1)."""
        return [v for v in range(self.n) if not self.children[v]]

    def out_degrees(self) -> list[int]:
        return [len(c) for c in self.children]

    @classmethod
    def from_parents(cls, parent: Sequence[int]) -> "RootedTree":
        """Build from a parent array where exactly one entry is -1 (the root)."""
        roots = [v for v, p in enumerate(parent) if p < 0]
        if len(roots) != 1:
            raise TreeError(f"expected exactly one root, found {len(roots)}")
        tree = Tree.from_edges(len(parent), [(p, v) for v, p in enumerate(parent) if p >= 0])
        return root_at(tree, roots[0])


def root_at(tree: Tree, r: int) -> RootedTree:
    if not 0 <= r < tree.n:
        raise VertexRangeError(f"root {r} out of range 0..{tree.n - 1}")
    adj = tree.adjacency
    n = tree.n
    parent = [-1] * n
    depth = [0] * n
    children: list[tuple[int, ...]] = [()] * n
    order = [r]
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        pu = parent[u]
        kids = tuple(v for v in adj[u] if v != pu)
        children[u] = kids
        du = depth[u] + 1
        for v in kids:
            parent[v] = u
            depth[v] = du
        order.extend(kids)
    return RootedTree(tree, r, tuple(parent), tuple(children), tuple(depth), tuple(order))


def out_degree_sequence_of(rt: RootedTree) -> OutDegreeSequence:
    return OutDegreeSequence(tuple(sorted(rt.out_degrees(), reverse=True)))


@dataclass(frozen=True)
class Metrics:
    radius: int
    diameter: int
    centers: frozenset[int]


def metrics(tree: Tree) -> Metrics:
    """Radius, diameter and centers by a double BFS sweep.

    In a tree the centers are the middle vertex (or the two middle vertices)
    of any longest path, and the radius is ``ceil(diameter / 2)``.
    """
    if tree.n == 1:
        return Metrics(0, 0, frozenset({0}))
    d0 = bfs_distances(tree, 0)
    a = max(range(tree.n), key=d0.__getitem__)
    rt = root_at(tree, a)
    b = rt.order[-1]
    diam = rt.depth[b]
    path = [b]
    while path[-1] != a:
        path.append(rt.parent[path[-1]])
    centers = {path[diam // 2], path[(diam + 1) // 2]}
    return Metrics((diam + 1) // 2, diam, frozenset(centers))


def eccentricities(tree: Tree) -> list[int]:
    """Every vertex's eccentricity, from the two ends of a diameter path.

    For a tree, ``ecc(v) = max(dist(v, a), dist(v, b))`` for a diametral pair.
    """
    if tree.n == 1:
        return [0]
    d0 = bfs_distances(tree, 0)
    a = max(range(tree.n), key=d0.__getitem__)
    da = bfs_distances(tree, a)
    b = max(range(tree.n), key=da.__getitem__)
    db = bfs_distances(tree, b)
    return [max(x, y) for x, y in zip(da, db)]


def lca(rt: RootedTree, u: int, v: int) -> int:
    """Lowest common ancestor by walking the deeper vertex up."""
    parent, depth = rt.parent, rt.depth
    while depth[u] > depth[v]:
        u = parent[u]
    while depth[v] > depth[u]:
        v = parent[v]
    while u != v:
        u, v = parent[u], parent[v]
    return u


def lca_many(rt: RootedTree, vertices: Iterable[int]) -> int:
    it = iter(vertices)
    acc = next(it)
    for v in it:
        acc = lca(rt, acc, v)
    return acc


def parse_tree(text: str) -> Tree:
    """Parse the edge-list format: first line ``n``, then ``n-1`` lines ``u v``.

    Blank lines are ignored. Error messages carry 1-based line numbers.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, ln) for no, ln in lines if ln]
    if not lines:
        raise MalformedLineError("line 1: empty input, expected vertex count")
    no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise MalformedLineError(f"line {no}: expected vertex count, got {head!r}") from None
    if n < 1:
        raise MalformedLineError(f"line {no}: vertex count must be positive")
    edges = []
    for no, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedLineError(f"line {no}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"line {no}: non-integer vertex in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"line {no}: vertex id out of range 0..{n - 1}")
        edges.append((u, v))
    return Tree.from_edges(n, edges)


def serialize_tree(tree: Tree) -> str:
    out = [str(tree.n)]
    out.extend(f"{u} {v}" for u, v in tree.edges())
    return "\n".join(out) + "\n"
