"""Return words, Kakutani-Rokhlin partitions and tower permutations.

For a point omega and a level n, u = omega[-n, -1] and v = omega[0, n]
(so |u| = n and |v| = n + 1).  The towers of the level-n partition are
indexed by the return words r to u.v; the atoms of tower r are
T^i[u.rv] = (urv, |u| + i) for 0 <= i < |r|.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clopen import ClopenSet, Cylinder, bracket, to_clopen
from .errors import (InvalidSeed, NotInLanguage, SearchCeilingExceeded, SeedOrbitNotSeparated,
                     TowerTooShort)
from .group import GeneratorSymbol, GroupElement, evaluate_word, identity, sigma_cylinder, trace_product
from .subshift import Subshift, SubstitutionSubshift, Word


class SeedPoint:
    """Two-sided point of a substitution, grown from the admissible pair
    ``left.right`` by the power ``p`` of the substitution that fixes the
    first letter of ``right`` and the last letter of ``left``."""

    def __init__(self, system: SubstitutionSubshift, left: int, right: int, power: int):
        sub = system.substitution
        if power < 1:
            raise InvalidSeed("power must be positive")
        if not system.contains((left, right)):
            raise InvalidSeed(f"{system.format_word((left, right))} is not admissible")
        lw, rw = sub.iterate((left,), power), sub.iterate((right,), power)
        if rw[0] != right or lw[-1] != left:
            raise InvalidSeed("the power does not fix the seed letters")
        if len(lw) < 2 or len(rw) < 2:
            raise InvalidSeed("seed letters do not grow under the power")
        self.system = system
        self.left, self.right, self.power = left, right, power
        self._lw: Word = (left,)
        self._rw: Word = (right,)

    @classmethod
    def parse(cls, system: SubstitutionSubshift, text: str) -> SeedPoint:
        """Read ``b.a:p``."""
        try:
            pair, power = text.split(":")
            b, a = pair.split(".")
            return cls(system, system.alphabet.index(b), system.alphabet.index(a), int(power))
        except ValueError as exc:
            raise InvalidSeed(f"bad seed point {text!r}: {exc}") from None

    def _grow(self, left_len: int, right_len: int) -> None:
        sub = self.system.substitution
        while len(self._lw) < left_len:
            self._lw = sub.iterate(self._lw, self.power)
        while len(self._rw) < right_len:
            self._rw = sub.iterate(self._rw, self.power)

    def segment(self, lo: int, hi: int) -> Word:
        """omega[lo:hi]."""
        self._grow(max(-lo, 0), max(hi, 0))
        out = []
        for k in range(lo, hi):
            out.append(self._rw[k] if k >= 0 else self._lw[k])
        return tuple(out)

    def window(self, n: int) -> Word:
        """omega[-n..n], length 2n + 1."""
        return self.segment(-n, n + 1)

    def __eq__(self, other):
        return (isinstance(other, SeedPoint) and self.system is other.system
                and (self.left, self.right, self.power) == (other.left, other.right, other.power))

    def __hash__(self):
        return hash((id(self.system), self.left, self.right, self.power))

    def __repr__(self):
        names = self.system.alphabet.names
        return f"SeedPoint({names[self.left]}.{names[self.right]}:{self.power})"


def point_window(seed, n: int) -> Word:
    return seed.window(n)


def recurrence_bound(system: Subshift, w: Word, ceiling: int = 4096) -> int:
    """Least l such that every word of L_l contains w."""
    w = tuple(w)
    if not system.contains(w):
        raise NotInLanguage("word is not in the language")
    k = len(w)
    for ell in range(max(k, 1), ceiling + 1):
        if all(any(x[j:j + k] == w for j in range(ell - k + 1)) for x in system.factors(ell)):
            return ell
    raise SearchCeilingExceeded(f"recurrence bound exceeds {ceiling}")


def return_words(system: Subshift, u: Word, v: Word) -> tuple[Word, ...]:
    """Return words to u.v, shortest first."""
    u, v = tuple(u), tuple(v)
    uv = u + v
    if not system.contains(uv):
        raise NotInLanguage("uv is not in the language")
    limit = len(u) + recurrence_bound(system, uv) + len(v)
    found = set()
    frontier = [uv]
    while frontier:
        grown = []
        for x in frontier:
            for b in system.right_extensions(x):
                y = x + (b,)
                if y[-len(uv):] == uv:
                    found.add(y[len(u):len(y) - len(v)])
                elif len(y) >= limit:
                    raise SearchCeilingExceeded("return-word search exceeded the recurrence bound")
                else:
                    grown.append(y)
        frontier = grown
    return tuple(sorted(found, key=lambda r: (len(r), r)))


@dataclass
class KRPartition:
    system: Subshift
    level: int
    u: Word
    v: Word
    returns: tuple[Word, ...]

    @property
    def heights(self) -> dict[Word, int]:
        return {r: len(r) for r in self.returns}

    @property
    def towers(self) -> dict[Word, tuple[Cylinder, int]]:
        """return word -> (base cylinder [u.rv], height)."""
        return {r: (bracket(self.u, r + self.v), len(r)) for r in self.returns}

    def atom(self, r: Word, i: int) -> Cylinder:
        """T^i[u.rv]."""
        return Cylinder(self.u + r + self.v, len(self.u) + i)

    def atoms(self) -> list[tuple[Word, int, Cylinder]]:
        return [(r, i, self.atom(r, i)) for r in self.returns for i in range(len(r))]

    @property
    def base(self) -> Cylinder:
        return bracket(self.u, self.v)

    @property
    def min_height(self) -> int:
        return min(len(r) for r in self.returns)

    def radius(self) -> int:
        return max(c.radius for _, _, c in self.atoms())

    def table(self, radius: int | None = None) -> list[tuple[str, int, int]]:
        """(return word, height, base members at ``radius``)."""
        if radius is None:
            radius = self.radius()
        out = []
        for r in self.returns:
            base = to_clopen(self.system, self.atom(r, 0), radius)
            out.append((self.system.format_word(r), len(r), int(base.mask.sum())))
        return out


def kr_partition(point, n: int) -> KRPartition:
    if n < 1:
        raise ValueError("level must be at least 1")
    system = point.system
    u, v = point.segment(-n, 0), point.segment(0, n + 1)
    return KRPartition(system, n, u, v, return_words(system, u, v))


@dataclass
class KRReport:
    partition: bool
    tower_mapping: bool
    top_returns: bool
    refines: bool | None = None
    base_nested: bool | None = None
    details: list[str] = field(default_factory=list)

    def __bool__(self):
        return all(x is not False for x in
                   (self.partition, self.tower_mapping, self.top_returns, self.refines, self.base_nested))


def verify_kr(p: KRPartition, finer: KRPartition | None = None) -> KRReport:
    """Check the partition axioms, and refinement/base nesting against the next level."""
    system = p.system
    radius = p.radius() + 1
    if finer is not None:
        radius = max(radius, finer.radius() + 1)
    masks = {(r, i): to_clopen(system, c, radius) for r, i, c in p.atoms()}
    count = sum(m.mask.astype(np.intp) for m in masks.values())
    partition = bool(np.all(count == 1))
    tower_mapping = all(masks[(r, i)].shift(1) == to_clopen(system, p.atom(r, i + 1))
                        for r in p.returns for i in range(len(r) - 1))
    base = to_clopen(system, p.base)
    top_returns = all(masks[(r, len(r) - 1)].shift(1).issubset(base) for r in p.returns)
    report = KRReport(partition, tower_mapping, top_returns)
    if finer is not None:
        fine = [to_clopen(system, c, radius) for _, _, c in finer.atoms()]
        coarse = list(masks.values())
        report.refines = all(sum(a.issubset(b) for b in coarse) == 1 for a in fine)
        report.base_nested = to_clopen(system, finer.base).issubset(base)
    return report


def decompositions(r: Word, blocks) -> list[tuple[Word, ...]]:
    """All ways to write r as a concatenation of words from ``blocks``."""
    blocks = list(blocks)
    ways: list[list[tuple[Word, ...]]] = [[] for _ in range(len(r) + 1)]
    ways[0] = [()]
    for k in range(1, len(r) + 1):
        for b in blocks:
            if len(b) <= k and r[k - len(b):k] == b:
                ways[k].extend(w + (b,) for w in ways[k - len(b)])
    return ways[len(r)]


def unique_decomposition(r: Word, blocks) -> tuple[Word, ...] | None:
    ways = decompositions(r, blocks)
    return ways[0] if len(ways) == 1 else None


def tower_cylinders(p: KRPartition) -> list[tuple[Word, int, Cylinder]]:
    """The cylinders (u.rv, i), 0 <= i <= |r| - 3, carrying the tower 3-cycles."""
    if p.min_height < 3:
        raise TowerTooShort(f"level {p.level} has a tower of height {p.min_height}")
    return [(r, i, p.atom(r, i)) for r in p.returns for i in range(len(r) - 2)]


def tower_3cycles(p: KRPartition) -> list[GroupElement]:
    return [sigma_cylinder(p.system, c) for _, _, c in tower_cylinders(p)]


def first_tall_level(point, height: int = 3, start: int = 1, ceiling: int = 64) -> int:
    """Least level >= start whose towers all have height >= ``height``."""
    for n in range(start, ceiling + 1):
        if kr_partition(point, n).min_height >= height:
            return n
    raise SearchCeilingExceeded(f"no level <= {ceiling} has towers of height {height}")


def embedding_factors(coarse: KRPartition, fine: KRPartition, c: Cylinder) -> list[Cylinder]:
    system = coarse.system
    target = to_clopen(system, c)
    return [d for _, _, d in tower_cylinders(fine) if to_clopen(system, d).issubset(target)]


def level_embedding_check(point, n: int) -> bool:
    """sigma_(u_n.rv_n, i) equals the product of the level-(n+1) tower
    3-cycles whose cylinders lie inside (u_n.rv_n, i)."""
    coarse, fine = kr_partition(point, n), kr_partition(point, n + 1)
    system = coarse.system
    for _, _, c in tower_cylinders(coarse):
        parts = embedding_factors(coarse, fine, c)
        rhs = evaluate_word(system, [GeneratorSymbol(d) for d in parts])
        if rhs != sigma_cylinder(system, c):
            return False
    return True


# -- P.Q factorization -------------------------------------------------------

def orbits_separated(point, other, depth: int = 64, radius: int | None = None) -> bool:
    """Finite-depth heuristic: for every shift |s| <= depth, the windows of
    ``other`` at 0 and ``point`` at s differ within ``radius`` (default 2 * depth).

    Points in one orbit always fail for a large enough depth; points in
    distinct orbits can fail for a small radius, so this certifies nothing.
    """
    if radius is None:
        radius = 2 * depth
    target = other.segment(-radius, radius + 1)
    return all(point.segment(s - radius, s + radius + 1) != target for s in range(-depth, depth + 1))


@dataclass
class Factorization:
    p_word: list[GeneratorSymbol]
    q_word: list[GeneratorSymbol]
    level: int
    partition: KRPartition
    boundary: ClopenSet

    def __iter__(self):
        return iter((self.p_word, self.q_word))


def _cached_partition(point, n):
    cache = point.system.memo.setdefault("kr", {})
    key = (point, n)
    if key not in cache:
        cache[key] = kr_partition(point, n)
    return cache[key]


def _inside_or_disjoint(a: ClopenSet, b: ClopenSet) -> bool:
    return a.issubset(b) or a.isdisjoint(b)


def choose_level(word, point, other, start: int = 1, ceiling: int = 48) -> int:
    """Least level satisfying the separation conditions for a k-letter product."""
    system = point.system
    k = len(word)
    targets = [to_clopen(system, s.cylinder) for s in word]
    for n in range(start, ceiling + 1):
        base_cyl = bracket(point.segment(-n, 0), point.segment(0, n + 1))
        base = to_clopen(system, base_cyl)
        layers = [base.shift(i) for i in range(-3 * k, 3 * k + 3)]
        # (i): all layers pairwise disjoint, i.e. no return to the base within 6k + 2 steps
        if not all(base.isdisjoint(base.shift(d)) for d in range(1, 6 * k + 3)):
            continue
        # (iii): layers -3k..3k lie inside or outside each generator cylinder
        if not all(_inside_or_disjoint(layers[i], t) for i in range(6 * k + 1) for t in targets):
            continue
        boundary = layers[0]
        for layer in layers[1:]:
            boundary = boundary | layer
        r = boundary.radius
        if boundary.contains_window(other.segment(-r, 0), other.segment(0, r)):
            continue
        # (ii): the partition refines every generator cylinder
        p = _cached_partition(point, n)
        if all(_inside_or_disjoint(to_clopen(system, c), t) for _, _, c in p.atoms() for t in targets):
            return n
    raise SearchCeilingExceeded(f"no level <= {ceiling} separates the product")


def factor_product(word, point, other, orbit_depth: int = 64, ceiling: int = 48) -> Factorization:
    """Split a product of sigma generators as P * Q.

    P is a product of 3-cycles inside the towers of a KR partition around
    ``point``; Q is a product of sigma over the layers T^i[u.v] near the
    base, a set that avoids ``other``.
    """
    word = list(word)
    system = point.system
    if not orbits_separated(point, other, orbit_depth):
        raise SeedOrbitNotSeparated(f"points agree up to a shift within depth {orbit_depth}")
    word = [s for s in word if system.contains(s.cylinder.word)]
    if not word:
        return Factorization([], [], 0, None, ClopenSet.empty(system))
    k = len(word)
    n = choose_level(word, point, other, ceiling=ceiling)
    p = _cached_partition(point, n)
    u, v = p.u, p.v
    layer = {i: Cylinder(u + v, len(u) + i) for i in range(-3 * k, 3 * k + 3)}
    boundary = to_clopen(system, layer[-3 * k])
    for i in range(-3 * k + 1, 3 * k + 3):
        boundary = boundary | to_clopen(system, layer[i])

    p_word: list[GeneratorSymbol] = []
    q_word: list[GeneratorSymbol] = []
    for m, s in enumerate(word, start=1):
        target = to_clopen(system, s.cylinder)
        for r in p.returns:
            for i in range(3 * m, len(r) - 3 * m):
                c = p.atom(r, i)
                if to_clopen(system, c).issubset(target):
                    p_word.append(GeneratorSymbol(c, s.exponent))
        for i in range(-3 * m, 3 * m):
            if to_clopen(system, layer[i]).issubset(target):
                q_word.append(GeneratorSymbol(layer[i], s.exponent))
    return Factorization(p_word, q_word, n, p, boundary)


def is_tower_interior(g: GroupElement, p: KRPartition) -> bool:
    """Cocycle constant on atoms and never carrying a point past the top or
    below the base of its tower."""
    system = p.system
    radius = max(g.radius, p.radius())
    f = g.cocycle_at(radius)
    for r, i, c in p.atoms():
        vals = np.unique(f[to_clopen(system, c, radius).mask])
        if len(vals) != 1 or not 0 <= i + int(vals[0]) <= len(r) - 1:
            return False
    return True


def supported_in(g: GroupElement, s: ClopenSet) -> bool:
    return g.support().issubset(s)


def check_factorization(word, fac: Factorization) -> bool:
    system = fac.boundary.system
    whole = evaluate_word(system, word)
    pe, qe = evaluate_word(system, fac.p_word), evaluate_word(system, fac.q_word)
    if trace_product(system, [pe, qe]) != whole:
        return False
    if fac.partition is None:
        return pe == identity(system) and qe == identity(system)
    return is_tower_interior(pe, fac.partition) and supported_in(qe, fac.boundary)
