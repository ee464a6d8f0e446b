"""Leaf-to-leaf path lengths.

A set of lengths is a Python ``int`` used as a bit vector: bit ``i`` is set
iff length ``i`` occurs. Sumsets are shift-OR over the sparser operand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .greedy import min_height_k, min_radius
from .tree import (
    DegreeSequence,
    RootedTree,
    Tree,
    degree_sequence_of,
    metrics,
    out_degree_sequence_of,
    root_at,
    validate_degree_sequence,
)


class LengthOverflowError(ValueError):
    pass


def _bits_sumset(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out |= b << (low.bit_length() - 1)
        a ^= low
    return out


@dataclass(frozen=True)
class LengthSet:
    """Set of non-negative lengths. ``cap=None`` means unbounded."""

    bits: int = 0
    cap: int | None = None

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise ValueError("bit vector must be non-negative")
        if self.cap is not None and self.bits.bit_length() - 1 > self.cap:
            raise LengthOverflowError(f"length {self.bits.bit_length() - 1} exceeds cap {self.cap}")

    @classmethod
    def of(cls, lengths: Iterable[int], cap: int | None = None) -> "LengthSet":
        bits = 0
        for x in lengths:
            if x < 0:
                raise ValueError(f"negative length {x}")
            bits |= 1 << x
        return cls(bits, cap)

    def __contains__(self, x: int) -> bool:
        return x >= 0 and (self.bits >> x) & 1 == 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def max(self) -> int:
        if not self.bits:
            raise ValueError("empty length set")
        return self.bits.bit_length() - 1

    def __or__(self, other: "LengthSet") -> "LengthSet":
        return LengthSet(self.bits | other.bits, _merge_caps(self.cap, other.cap))

    def __add__(self, other: "LengthSet") -> "LengthSet":
        return sumset(self, other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LengthSet):
            return self.bits == other.bits
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.bits)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def _merge_caps(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def sumset(a: LengthSet, b: LengthSet) -> LengthSet:
    """``{x + y : x in a, y in b}``, raising if it would exceed the cap."""
    cap = _merge_caps(a.cap, b.cap)
    if not a.bits or not b.bits:
        return LengthSet(0, cap)
    if cap is not None and a.max() + b.max() > cap:
        raise LengthOverflowError(f"sum {a.max() + b.max()} exceeds cap {cap}")
    return LengthSet(_bits_sumset(a.bits, b.bits), cap)


def lp_set(tree: Tree) -> LengthSet:
    """Exact set of leaf-to-leaf path lengths, including the trivial 0.

    Rooted at a maximum-degree vertex, each vertex carries the set of
    absolute depths of the leaves below it. At vertex ``v`` the running
    union of its children's sets is combined with each next child's set;
    a pair of leaves at depths ``x`` and ``y`` meeting at ``v`` are
    ``x + y - 2 depth(v)`` apart.
    """
    n = tree.n
    if n == 1:
        return LengthSet(1, 0)
    adj = tree.adjacency
    root = max(range(n), key=lambda v: len(adj[v]))
    rt = root_at(tree, root)
    children, depth = rt.children, rt.depth
    below = [0] * n
    found = 1
    for v in reversed(rt.order):
        kids = children[v]
        acc = 1 << depth[v] if len(adj[v]) <= 1 else 0
        shift = 2 * depth[v]
        for c in kids:
            cs = below[c]
            below[c] = 0
            if acc:
                found |= _bits_sumset(acc, cs) >> shift
                acc |= cs
            else:
                acc = cs
        below[v] = acc
    return LengthSet(found, found.bit_length() - 1)


def lp(tree: Tree) -> int:
    return len(lp_set(tree))


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Witness for ``lp(T) >= bound``.

    ``kind == "depth-count"``: ``depths`` are distinct depths of rooted
    leaves, ``bound = len(depths)``. ``kind == "equal-depth-class"``:
    ``class_size`` leaves share ``depth`` and ``bound = h_value + 1`` where
    ``h_value = h(s+, class_size)``.
    """

    kind: str
    rooting: int
    bound: int
    depths: tuple[int, ...] = ()
    depth: int | None = None
    class_size: int | None = None
    h_value: int | None = None

    def recompute(self) -> int:
        if self.kind == "depth-count":
            return len(set(self.depths))
        return self.h_value + 1

    def describe(self) -> str:
        if self.kind == "depth-count":
            return f"depth-count root={self.rooting} depths={{{','.join(map(str, self.depths))}}}"
        return (
            f"equal-depth-class root={self.rooting} depth={self.depth} "
            f"k={self.class_size} h(s+,k)={self.h_value}"
        )


def rooting_certificates(rt: RootedTree) -> list[LowerBoundCertificate]:
    """Every bound available from one rooting: the distinct-depth count and
    one equal-depth-class bound per depth."""
    by_depth: dict[int, int] = {}
    for v in rt.leaves():
        by_depth[rt.depth[v]] = by_depth.get(rt.depth[v], 0) + 1
    depths = tuple(sorted(by_depth))
    certs = [LowerBoundCertificate("depth-count", rt.root, len(depths), depths=depths)]
    s_plus = out_degree_sequence_of(rt)
    for dep in depths:
        k = by_depth[dep]
        h = min_height_k(s_plus, k)[0]
        certs.append(
            LowerBoundCertificate(
                "equal-depth-class", rt.root, h + 1, depth=dep, class_size=k, h_value=h
            )
        )
    return certs


def certified_lower_bound(tree: Tree) -> LowerBoundCertificate:
    """Best certified bound when rooting at the first maximum-degree vertex."""
    root = max(range(tree.n), key=tree.degree)
    certs = rooting_certificates(root_at(tree, root))
    return max(certs, key=lambda c: c.bound)


# Lower bounds on lp. Each has a float value for display and an
# exact integer test used for every verdict.


@dataclass(frozen=True)
class RadiusBound:
    """``rad - log2(rad)`` for a degree sequence without entries equal to 2."""

    rad: int

    @property
    def value(self) -> float:
        return self.rad - math.log2(self.rad)

    def __float__(self) -> float:
        return self.value

    def holds(self, lp_value: int) -> bool:
        # lp >= r - log2 r  <=>  2**(r - lp) <= r
        gap = self.rad - lp_value
        return gap <= 0 or (1 << gap) <= self.rad


def lp_lower_bound_theorem2(s: DegreeSequence | Iterable[int]) -> RadiusBound:
    if not isinstance(s, DegreeSequence):
        s = validate_degree_sequence(s)
    if 2 in s.entries:
        raise ValueError("the rad - log2(rad) bound needs a sequence without entries equal to 2")
    return RadiusBound(min_radius(s)[0])


def lp_lower_bound_theorem1(delta: int, leaves: int) -> float:
    """``log_{delta-1}((delta-2) * leaves)``."""
    if delta < 3:
        raise ValueError(f"maximum degree must be at least 3, got {delta}")
    if leaves < 2:
        raise ValueError(f"need at least 2 leaves, got {leaves}")
    return math.log((delta - 2) * leaves) / math.log(delta - 1)


def theorem1_holds(lp_value: int, delta: int, leaves: int) -> bool:
    return (delta - 1) ** lp_value >= (delta - 2) * leaves


def ceil_log(base: int, x: int) -> int:
    """Smallest integer ``m >= 0`` with ``base**m >= x``."""
    m, p = 0, 1
    while p < x:
        p *= base
        m += 1
    return m


def diameter_bound(diameter: int) -> float:
    """``diameter**(2/3) / 3``."""
    return diameter ** (2 / 3) / 3


def diameter_bound_holds(lp_value: int, diameter: int) -> bool:
    # lp >= D^(2/3)/3  <=>  27 lp^3 >= D^2
    return 27 * lp_value**3 >= diameter**2


def tree_bound_checks(tree: Tree, lp_value: int | None = None, diameter: int | None = None) -> dict:
    """Applicable bound verdicts for one tree; keys absent when a hypothesis fails."""
    if lp_value is None:
        lp_value = lp(tree)
    if diameter is None:
        diameter = metrics(tree).diameter
    s = degree_sequence_of(tree)
    out = {}
    delta = s.entries[0]
    if delta >= 3:
        out["leaf_bound"] = theorem1_holds(lp_value, delta, s.leaves)
    if 2 not in s.entries and tree.n >= 2:
        out["radius_bound"] = lp_lower_bound_theorem2(s).holds(lp_value)
        out["diameter"] = diameter_bound_holds(lp_value, diameter)
    return out
