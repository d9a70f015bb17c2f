"""Exact Boolean algebra of clopen sets.

A clopen set is stored as a radius M and a boolean mask over L_{2M}, the
admissible centered windows z with z[k] = x_{k-M}.  The cylinder (w, i) is
T^i[.w], i.e. the points with x_{j-i} = w_j for 0 <= j < |w|.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotInLanguage, RadiusTooSmall
from .subshift import Subshift, Word


@dataclass(frozen=True, order=True)
class Cylinder:
    word: Word
    offset: int

    @property
    def radius(self) -> int:
        """Least window radius that sees every fixed coordinate."""
        return max(self.offset, len(self.word) - self.offset, 0)

    def shifted(self, k: int) -> Cylinder:
        return Cylinder(self.word, self.offset + k)

    def format(self, system: Subshift | None = None) -> str:
        if system is None:
            body = " ".join(str(s) for s in self.word)
        else:
            body = system.format_word(self.word)
        return f"({body}, {self.offset})"

    def __str__(self):
        return self.format()


def bracket(u: Word, v: Word) -> Cylinder:
    """[u.v]: u sits just left of the origin, v starts at it."""
    return Cylinder(tuple(u) + tuple(v), len(u))


def _readonly(mask: np.ndarray) -> np.ndarray:
    mask.flags.writeable = False
    return mask


class ClopenSet:
    __slots__ = ("system", "radius", "mask")

    def __init__(self, system: Subshift, radius: int, mask: np.ndarray):
        if len(mask) != len(system.words(2 * radius)):
            raise ValueError("mask does not match the window table")
        self.system = system
        self.radius = radius
        self.mask = _readonly(np.asarray(mask, dtype=bool))

    @classmethod
    def empty(cls, system: Subshift) -> ClopenSet:
        return cls(system, 0, np.zeros(1, dtype=bool))

    @classmethod
    def full(cls, system: Subshift) -> ClopenSet:
        return cls(system, 0, np.ones(1, dtype=bool))

    @property
    def members(self) -> frozenset[Word]:
        words = self.system.words(2 * self.radius)
        return frozenset(words[i] for i in np.flatnonzero(self.mask))

    def mask_at(self, radius: int) -> np.ndarray:
        if radius == self.radius:
            return self.mask
        if radius < self.radius:
            raise RadiusTooSmall(f"cannot coarsen radius {self.radius} to {radius}")
        return self.mask[self.system.window_map(radius, self.radius)]

    def at_radius(self, radius: int) -> ClopenSet:
        return ClopenSet(self.system, radius, self.mask_at(radius))

    def minimized(self) -> ClopenSet:
        for m in range(self.radius):
            proj = self.system.window_map(self.radius, m)
            rep = np.zeros(len(self.system.words(2 * m)), dtype=bool)
            rep[proj] = self.mask
            if np.array_equal(rep[proj], self.mask):
                return ClopenSet(self.system, m, rep)
        return self

    def _pair(self, other: ClopenSet) -> tuple[np.ndarray, np.ndarray, int]:
        if other.system is not self.system:
            raise ValueError("clopen sets live in different systems")
        r = max(self.radius, other.radius)
        return self.mask_at(r), other.mask_at(r), r

    def __or__(self, other):
        a, b, r = self._pair(other)
        return ClopenSet(self.system, r, a | b)

    def __and__(self, other):
        a, b, r = self._pair(other)
        return ClopenSet(self.system, r, a & b)

    def __sub__(self, other):
        a, b, r = self._pair(other)
        return ClopenSet(self.system, r, a & ~b)

    def complement(self) -> ClopenSet:
        return ClopenSet(self.system, self.radius, ~self.mask)

    __invert__ = complement

    def is_empty(self) -> bool:
        return not self.mask.any()

    def issubset(self, other: ClopenSet) -> bool:
        a, b, _ = self._pair(other)
        return not (a & ~b).any()

    __le__ = issubset

    def isdisjoint(self, other: ClopenSet) -> bool:
        a, b, _ = self._pair(other)
        return not (a & b).any()

    def __eq__(self, other):
        if not isinstance(other, ClopenSet):
            return NotImplemented
        a, b, _ = self._pair(other)
        return np.array_equal(a, b)

    def __hash__(self):
        m = self.minimized()
        return hash((m.radius, m.mask.tobytes()))

    def shift(self, k: int) -> ClopenSet:
        """T^k of this set: x is in it iff T^{-k} x is in self."""
        if k == 0:
            return self
        r = self.radius + abs(k)
        return ClopenSet(self.system, r, self.mask[self.system.window_map(r, self.radius, -k)])

    def dilate3(self) -> ClopenSet:
        return self | self.shift(1) | self.shift(2)

    def contains_window(self, left: Word, right: Word) -> bool:
        """Whether a point with x[-|left|:0] = left and x[0:|right|] = right lies
        in the set; the window must reach the set's radius on both sides."""
        r = self.radius
        if len(left) < r or len(right) < r:
            raise RadiusTooSmall("point window too short for this set")
        z = tuple(left[len(left) - r:]) + tuple(right[:r])
        idx = self.system.index(2 * r).get(z)
        if idx is None:
            raise NotInLanguage("point window is not admissible")
        return bool(self.mask[idx])

    def __repr__(self):
        return f"ClopenSet(radius={self.radius}, size={int(self.mask.sum())})"


def to_clopen(system: Subshift, c: Cylinder, radius: int | None = None) -> ClopenSet:
    """The cylinder as a mask over L_{2M}; M defaults to the least valid radius."""
    need = max(c.radius, 1)
    if radius is None:
        radius = need
    if radius < need:
        raise RadiusTooSmall(f"radius {radius} is below {need} for {c}")
    lo = radius - c.offset
    hi = lo + len(c.word)
    w = tuple(c.word)
    mask = np.fromiter((z[lo:hi] == w for z in system.words(2 * radius)), dtype=bool,
                       count=len(system.words(2 * radius)))
    return ClopenSet(system, radius, mask)


def shift_clopen(s: ClopenSet, k: int) -> ClopenSet:
    return s.shift(k)


def is_subset(system: Subshift, c1: Cylinder, c2: Cylinder) -> bool:
    """(v, j) <= (w, i), decided as (v, 0) <= (w, i - j)."""
    a = c1.shifted(-c1.offset)
    b = c2.shifted(-c1.offset)
    radius = max(len(a.word), len(b.word)) + abs(b.offset) + 1
    return to_clopen(system, a, radius).issubset(to_clopen(system, b, radius))


def three_disjoint(u: ClopenSet, v: ClopenSet) -> bool:
    return u.dilate3().isdisjoint(v.dilate3())


def are_3disjoint(system: Subshift, c1: Cylinder, c2: Cylinder) -> bool:
    a = c1.shifted(-c1.offset)
    b = c2.shifted(-c1.offset)
    radius = max(len(a.word), len(b.word)) + abs(b.offset) + 3
    return three_disjoint(to_clopen(system, a, radius), to_clopen(system, b, radius))


def verify_cylinder_partition(system: Subshift, target: Cylinder, parts) -> bool:
    """Whether ``parts`` is a partition of ``target`` into nonempty cylinders."""
    parts = list(parts)
    if not system.contains(target.word):
        return not parts
    if any(not system.contains(p.word) for p in parts):
        return False
    radius = (max((len(p.word) + abs(p.offset) for p in parts), default=0)
              + len(target.word) + abs(target.offset) + 1)
    t = to_clopen(system, target, radius).mask
    count = np.zeros(len(t), dtype=np.intp)
    for p in parts:
        m = to_clopen(system, p, radius).mask
        if (m & ~t).any():
            return False
        count += m
    return bool(np.all(count[t] == 1))


def canonical_refinements(system: Subshift, c: Cylinder) -> tuple[list[Cylinder], list[Cylinder]]:
    """One-symbol left and right refinements of (w, i)."""
    if not system.contains(c.word):
        raise NotInLanguage(f"{c.format(system)} is empty")
    left = [Cylinder((a,) + c.word, c.offset + 1) for a in system.left_extensions(c.word)]
    right = [Cylinder(c.word + (b,), c.offset) for b in system.right_extensions(c.word)]
    return left, right
