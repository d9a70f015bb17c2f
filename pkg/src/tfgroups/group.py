"""Exact arithmetic in the topological full group.

An element S is stored through its orbit cocycle f, with S(x) = T^{f(x)} x:
a radius M and an integer array over L_{2M}.  Elements are kept at the least
radius on which f is defined, which makes the representation canonical, so
equality and hashing are array comparisons.  Products act on the left:
``g * h`` applies h first.

The identity test ``f == 0`` is only sound on aperiodic systems, and every
constructor refuses systems that fail the aperiodicity witness.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .clopen import ClopenSet, Cylinder, are_3disjoint, canonical_refinements, to_clopen
from .errors import (AperiodicityRequired, DaggerRequired, NotAPartition, NotBijective,
                     OverlapViolation, TooShort)
from .subshift import Subshift, Word


def _require_aperiodic(system: Subshift) -> None:
    if not system.aperiodic:
        raise AperiodicityRequired(
            f"{system!r} fails the aperiodicity witness to depth {system.aperiodicity_depth}")


class GroupElement:
    __slots__ = ("system", "radius", "shifts")

    def __init__(self, system: Subshift, radius: int, shifts: np.ndarray):
        # callers pass arrays already minimized; use GroupElement.build otherwise
        self.system = system
        self.radius = radius
        shifts.flags.writeable = False
        self.shifts = shifts

    @classmethod
    def build(cls, system: Subshift, radius: int, shifts) -> GroupElement:
        """Canonical element from a cocycle given at some radius."""
        shifts = np.asarray(shifts, dtype=np.int64)
        for m in range(radius):
            proj = system.window_map(radius, m)
            rep = np.zeros(len(system.words(2 * m)), dtype=np.int64)
            rep[proj] = shifts
            if np.array_equal(rep[proj], shifts):
                return cls(system, m, rep)
        return cls(system, radius, shifts.copy())

    @property
    def max_shift(self) -> int:
        return int(np.abs(self.shifts).max())

    def cocycle_at(self, radius: int) -> np.ndarray:
        if radius == self.radius:
            return self.shifts
        return self.shifts[self.system.window_map(radius, self.radius)]

    def value(self, window: Word) -> int:
        """f at any point whose centered window is ``window``."""
        r = len(window) // 2
        if r < self.radius:
            raise ValueError("window narrower than the element's radius")
        z = tuple(window[r - self.radius:r + self.radius])
        return int(self.shifts[self.system.index(2 * self.radius)[z]])

    def is_identity(self) -> bool:
        return self.radius == 0 and self.shifts[0] == 0

    def support(self) -> ClopenSet:
        return ClopenSet(self.system, self.radius, self.shifts != 0)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return compose(self, other)

    def __pow__(self, n: int) -> GroupElement:
        if n < 0:
            return inverse(self) ** (-n)
        result = identity(self.system)
        for _ in range(n):
            result = compose(result, self)
        return result

    def inverse(self) -> GroupElement:
        return inverse(self)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (self.system is other.system and self.radius == other.radius
                and np.array_equal(self.shifts, other.shifts))

    def __hash__(self):
        return hash((self.radius, self.shifts.tobytes()))

    def __repr__(self):
        if self.is_identity():
            return "GroupElement(identity)"
        return f"GroupElement(radius={self.radius}, moved={int((self.shifts != 0).sum())}/{len(self.shifts)})"


def identity(system: Subshift) -> GroupElement:
    _require_aperiodic(system)
    return GroupElement(system, 0, np.zeros(1, dtype=np.int64))


def shift_element(system: Subshift, k: int = 1) -> GroupElement:
    """T^k, the constant cocycle k."""
    _require_aperiodic(system)
    return GroupElement(system, 0, np.full(1, k, dtype=np.int64))


def from_cocycle(pieces) -> GroupElement:
    """Element that moves each piece U by its shift k.

    The pieces must partition the space and their images T^k U must
    partition it as well.
    """
    pieces = [(u, int(k)) for u, k in pieces]
    if not pieces:
        raise NotAPartition("no pieces")
    system = pieces[0][0].system
    _require_aperiodic(system)
    radius = max(max(u.radius for u, _ in pieces), 1)
    count = np.zeros(len(system.words(2 * radius)), dtype=np.intp)
    shifts = np.zeros(len(count), dtype=np.int64)
    for u, k in pieces:
        m = u.mask_at(radius)
        count += m
        shifts[m] = k
    if not np.all(count == 1):
        raise NotAPartition("pieces overlap or leave points uncovered")
    reach = radius + max(abs(k) for _, k in pieces)
    cover = np.zeros(len(system.words(2 * reach)), dtype=np.intp)
    for u, k in pieces:
        cover += u.shift(k).mask_at(reach)
    if not np.all(cover == 1):
        raise NotBijective("images of the pieces do not partition the space")
    return GroupElement.build(system, radius, shifts)


def sigma(u: ClopenSet) -> GroupElement:
    """The 3-cycle U -> TU -> T^2 U -> U, identity elsewhere."""
    system = u.system
    _require_aperiodic(system)
    if u.is_empty():
        return identity(system)
    tu, t2u = u.shift(1), u.shift(2)
    if not (u.isdisjoint(tu) and u.isdisjoint(t2u) and tu.isdisjoint(t2u)):
        raise OverlapViolation("U, TU, T^2U are not pairwise disjoint")
    radius = t2u.radius
    shifts = np.zeros(len(system.words(2 * radius)), dtype=np.int64)
    shifts[(u | tu).mask_at(radius)] = 1
    shifts[t2u.mask_at(radius)] = -2
    return GroupElement.build(system, radius, shifts)


def sigma_cylinder(system: Subshift, c: Cylinder) -> GroupElement:
    """sigma of a cylinder; the identity when the cylinder is empty."""
    key = (c.word, c.offset)
    cache = system.memo.setdefault("sigma", {})
    g = cache.get(key)
    if g is None:
        if system.contains(c.word):
            g = sigma(to_clopen(system, c))
        else:
            g = identity(system)
        cache[key] = g
    return g


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """g * h, i.e. f(x) = f_g(h x) + f_h(x)."""
    if g.system is not h.system:
        raise ValueError("elements of different systems")
    if g.is_identity():
        return h
    if h.is_identity():
        return g
    system = h.system
    kmax = h.max_shift
    radius = max(h.radius, g.radius + kmax)
    fh = h.cocycle_at(radius)
    out = fh.copy()
    for k in np.unique(fh):
        rows = np.flatnonzero(fh == k)
        out[rows] += g.shifts[system.window_map(radius, g.radius, int(k))[rows]]
    return GroupElement.build(system, radius, out)


def inverse(g: GroupElement) -> GroupElement:
    """Read the preimage shift off each window of radius M + max|f|.

    Exactly one candidate k must satisfy f(T^{-k} y) = k for every y;
    anything else means g was not a bijection.
    """
    if g.is_identity():
        return g
    system = g.system
    kmax = g.max_shift
    radius = g.radius + kmax
    n = len(system.words(2 * radius))
    hits = np.zeros(n, dtype=np.intp)
    out = np.zeros(n, dtype=np.int64)
    for k in range(-kmax, kmax + 1):
        ok = g.shifts[system.window_map(radius, g.radius, -k)] == k
        hits += ok
        out[ok] = -k
    if not np.all(hits == 1):
        raise NotBijective("cocycle does not define a bijection")
    return GroupElement.build(system, radius, out)


def equals(g: GroupElement, h: GroupElement) -> bool:
    r = max(g.radius, h.radius)
    return g.system is h.system and np.array_equal(g.cocycle_at(r), h.cocycle_at(r))


def is_identity(g: GroupElement) -> bool:
    return not g.shifts.any()


def star(r: GroupElement, s: GroupElement) -> GroupElement:
    """r * s = s r^-1 s^-1 r."""
    if r.is_identity() or s.is_identity():
        return identity(r.system)
    return product([s, inverse(r), inverse(s), r])


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """[a, b] = a b a^-1 b^-1."""
    return product([a, b, inverse(a), inverse(b)])


def product(elements) -> GroupElement:
    """Left-to-right product by successive composition."""
    elements = list(elements)
    return reduce(compose, elements[1:], elements[0])


def trace_product(system: Subshift, elements) -> GroupElement:
    """Product of many elements by following every window through the word.

    Each radius-R window is pushed through the factors from the right,
    accumulating its total shift.  If some window drifts too far to read
    the next factor, R grows and the pass restarts.  Equivalent to
    :func:`product`, much faster on long words of small elements.
    """
    elements = [e for e in elements if not e.is_identity()]
    if not elements:
        return identity(system)
    base = max(e.radius for e in elements)
    slack = 4
    while True:
        radius = base + slack
        n = len(system.words(2 * radius))
        rows = np.arange(n)
        p = np.zeros(n, dtype=np.int64)
        bound = 0
        for e in reversed(elements):
            span = radius - e.radius
            if bound > span:
                bound = int(np.abs(p).max())
                if bound > span:
                    break
            if e.radius == 0:
                p = p + e.shifts[0]
            else:
                p = p + e.shifts[system.window_stack(radius, e.radius)[p + span, rows]]
            bound += e.max_shift
        else:
            return GroupElement.build(system, radius, p)
        slack *= 2


# -- generator words ----------------------------------------------------------

_TOKEN = re.compile(r"s\[\(([0-9]+(?:-[0-9]+)*)?\),(-?\d+)\](\^-1)?$")


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    cylinder: Cylinder
    exponent: int = field(default=1)

    def __post_init__(self):
        if self.exponent not in (1, -1):
            raise ValueError("exponent must be +1 or -1")

    def inverse(self) -> GeneratorSymbol:
        return GeneratorSymbol(self.cylinder, -self.exponent)

    def token(self) -> str:
        w = "-".join(str(s) for s in self.cylinder.word)
        tail = "^-1" if self.exponent == -1 else ""
        return f"s[({w}),{self.cylinder.offset}]{tail}"

    __str__ = token

    @classmethod
    def parse(cls, token: str) -> GeneratorSymbol:
        m = _TOKEN.match(token.strip())
        if not m:
            raise ValueError(f"bad generator token {token!r}")
        word = tuple(int(s) for s in m.group(1).split("-")) if m.group(1) else ()
        return cls(Cylinder(word, int(m.group(2))), -1 if m.group(3) else 1)


def parse_generator_word(text: str) -> list[GeneratorSymbol]:
    return [GeneratorSymbol.parse(tok) for tok in text.split()]


def format_generator_word(word) -> str:
    return " ".join(s.token() for s in word)


def invert_word(word) -> list[GeneratorSymbol]:
    return [s.inverse() for s in reversed(word)]


def symbol_element(system: Subshift, s: GeneratorSymbol) -> GroupElement:
    g = sigma_cylinder(system, s.cylinder)
    if s.exponent == 1:
        return g
    cache = system.memo.setdefault("sigma_inv", {})
    key = (s.cylinder.word, s.cylinder.offset)
    if key not in cache:
        cache[key] = inverse(g)
    return cache[key]


def evaluate_word(system: Subshift, word) -> GroupElement:
    """The group element named by a list of generator symbols.

    Symbols whose cylinder word is outside the language are the identity.
    """
    return trace_product(system, [symbol_element(system, s) for s in word])


def star_word(r: list, s: list) -> list:
    """Generator word for r * s = s r^-1 s^-1 r."""
    return list(s) + invert_word(r) + invert_word(s) + list(r)


def commutator_word(a: list, b: list) -> list:
    return list(a) + list(b) + invert_word(a) + invert_word(b)


# -- word problem -------------------------------------------------------------

def _require_dagger(system: Subshift) -> None:
    if not system.satisfies_dagger():
        raise DaggerRequired("some word of length five repeats a letter; recode first")


def membership_element(system: Subshift, w: Word) -> GroupElement:
    """sigma_[.w0w1] * (sigma_[.w1w2] * ( ... * sigma_[w_{n-3}.w_{n-2}w_{n-1}]))."""
    w = tuple(w)
    if len(w) < 4:
        raise TooShort("need a word of length at least 4")
    acc = sigma_cylinder(system, Cylinder(w[-3:], 1))
    for j in range(len(w) - 4, -1, -1):
        acc = star(sigma_cylinder(system, Cylinder(w[j:j + 2], 0)), acc)
    return acc


def membership_via_identity(system: Subshift, w: Word) -> bool:
    """Decide w in L by asking whether the nested star product is nontrivial."""
    _require_dagger(system)
    return not membership_element(system, w).is_identity()


def word_problem(system: Subshift, word) -> bool:
    """True iff the generator word is the identity."""
    return evaluate_word(system, word).is_identity()


@dataclass
class RelationCheck:
    relation: str
    instance: str
    passed: bool


@dataclass
class SchemaReport:
    checks: list[RelationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.checks:
            out[c.relation] = out.get(c.relation, 0) + 1
        return out

    def __bool__(self):
        return self.passed


def check_relation_schema(system: Subshift, max_word_len: int = 3, offsets: tuple[int, int] | None = None,
                          commutation: bool = True) -> SchemaReport:
    """Check the sigma relations directly on group elements.

    Cylinders (w, i) range over admissible w with 1 <= |w| <= max_word_len
    and i in ``offsets`` (default 0..|w|).
    """
    _require_dagger(system)
    report = SchemaReport()
    e = identity(system)

    def s(c):
        return sigma_cylinder(system, c)

    def add(name, c, ok):
        report.checks.append(RelationCheck(name, c if isinstance(c, str) else c.format(system), bool(ok)))

    cylinders = []
    for m in range(1, max_word_len + 1):
        for w in system.words(m):
            lo, hi = offsets if offsets is not None else (0, m)
            cylinders.extend(Cylinder(w, i) for i in range(lo, hi + 1))

    for c in cylinders:
        g = s(c)
        add("order3", c, (g ** 3) == e)
        c1, c2 = c.shifted(1), c.shifted(2)
        sets = [to_clopen(system, x) for x in (c, c1, c2)]
        if all(a.isdisjoint(b) for a, b in ((sets[0], sets[1]), (sets[0], sets[2]), (sets[1], sets[2]))):
            add("square", c, product([g, s(c1)]) ** 2 == e)
            add("star-shift", c, s(c1) == star(g, s(c2)))
        left, right = canonical_refinements(system, c)
        add("partition-left", c, g == product([s(p) for p in left]))
        add("partition-right", c, g == product([s(p) for p in right]))
    if commutation:
        for a_i, a in enumerate(cylinders):
            for b in cylinders[a_i + 1:]:
                if are_3disjoint(system, a, b):
                    add("commute", f"{a.format(system)} {b.format(system)}",
                        commutator(s(a), s(b)).is_identity())
    return report
