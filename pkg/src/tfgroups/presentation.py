"""Finite truncations of the presentation of the commutator subgroup.

Base generators are x_(w,1) for w in L_3, in lexicographic order.  A free
word is a tuple of (generator index, exponent) pairs.  Every other symbol
x_(w,k) is reached by Tietze expansion:

    x_[a.]   = prod_{bc} x_(abc,1)        x_[.bc] = prod_a x_(abc,1)
    x_(w,1)  = x_[.w0w1] * (x_[.w1w2] * ( ... * x_(w_{n-3}w_{n-2}w_{n-1},1)))
    x_(w,k)  = ((x_(w,1) * x_[w2.]) * x_[w3.]) ... * x_[wk.]

with r * s = s r^-1 s^-1 r.  Offsets outside 1..|w|-1 and words shorter
than three are first refined into one-symbol extensions.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .clopen import Cylinder, are_3disjoint, canonical_refinements, to_clopen
from .errors import DaggerRequired, UnsupportedOffset
from .group import GeneratorSymbol, GroupElement, format_generator_word, sigma_cylinder, trace_product
from .subshift import Subshift, Word

FreeWord = tuple[tuple[int, int], ...]

TAGS = ("R1", "R2", "R3", "R4", "R5")
_TAG_ORDER = {t: i for i, t in enumerate(TAGS)}


def free_reduce(w) -> FreeWord:
    out: list[tuple[int, int]] = []
    for g, e in w:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def free_inverse(w) -> FreeWord:
    return tuple((g, -e) for g, e in reversed(w))


def free_star(r, s) -> FreeWord:
    """r * s = s r^-1 s^-1 r."""
    if not r or not s:
        return ()
    return free_reduce(tuple(s) + free_inverse(r) + free_inverse(s) + tuple(r))


def free_commutator(a, b) -> FreeWord:
    return free_reduce(tuple(a) + tuple(b) + free_inverse(a) + free_inverse(b))


def _require_dagger(system: Subshift) -> None:
    if not system.satisfies_dagger():
        raise DaggerRequired("some word of length five repeats a letter; recode first")


def base_generators(system: Subshift) -> tuple[Word, ...]:
    return system.words(3)


class TietzeExpander:
    """Memoized rewriting of x_(w,k) into base generators."""

    def __init__(self, system: Subshift, refine: bool = True):
        _require_dagger(system)
        self.system = system
        self.refine = refine
        self.generators = base_generators(system)
        self._gen_index = {w: i for i, w in enumerate(self.generators)}
        self._memo: dict[tuple[Word, int], FreeWord] = {}

    def left_letter(self, a: int) -> FreeWord:
        """x_[a.]"""
        return tuple((self._gen_index[w], 1) for w in self.generators if w[0] == a)

    def right_pair(self, b: int, c: int) -> FreeWord:
        """x_[.bc]"""
        return tuple((self._gen_index[w], 1) for w in self.generators if w[1:] == (b, c))

    def expand(self, w: Word, k: int) -> FreeWord:
        w = tuple(w)
        key = (w, k)
        if key not in self._memo:
            self._memo[key] = self._expand(w, k)
        return self._memo[key]

    def _expand(self, w: Word, k: int) -> FreeWord:
        system = self.system
        if not system.contains(w):
            return ()
        n = len(w)
        if n >= 3 and 1 <= k <= n - 1:
            if n == 3 and k == 1:
                return ((self._gen_index[w], 1),)
            if k == 1:
                acc = self.expand(w[-3:], 1)
                for j in range(n - 4, -1, -1):
                    acc = free_star(self.right_pair(w[j], w[j + 1]), acc)
                return acc
            return free_star(self.expand(w, k - 1), self.left_letter(w[k]))
        if not self.refine:
            raise UnsupportedOffset(f"offset {k} outside 1..{n - 1} for a word of length {n}")
        left, right = canonical_refinements(system, Cylinder(w, k))
        parts = left if k <= 0 else right
        out: tuple = ()
        for c in parts:
            out += self.expand(c.word, c.offset)
        return free_reduce(out)


def tietze_expand(system: Subshift, w: Word, k: int, refine: bool = True) -> FreeWord:
    """x_(w,k) as a free word over the base generators x_(v,1), v in L_3."""
    return TietzeExpander(system, refine).expand(tuple(w), k)


def evaluate_free_word(system: Subshift, w, generators: tuple[Word, ...] | None = None) -> GroupElement:
    if generators is None:
        generators = base_generators(system)
    elements = []
    for g, e in w:
        s = sigma_cylinder(system, Cylinder(generators[g], 1))
        elements.append(s if e == 1 else s.inverse())
    return trace_product(system, elements)


def free_word_tokens(w, generators: tuple[Word, ...]) -> str:
    return format_generator_word(GeneratorSymbol(Cylinder(generators[g], 1), e) for g, e in w)


@dataclass(frozen=True)
class Relator:
    tag: str
    schema: tuple[tuple[Cylinder, int], ...]
    expanded: FreeWord

    def describe(self, system: Subshift) -> str:
        return " ".join(c.format(system) + ("^-1" if e == -1 else "") for c, e in self.schema)


@dataclass
class Presentation:
    system: Subshift
    generators: tuple[Word, ...]
    relators: list[Relator]
    max_word_len: int
    depth: int
    offsets: tuple[int, int] | None = None
    skipped: dict[str, int] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        out = {t: 0 for t in TAGS}
        for r in self.relators:
            out[r.tag] += 1
        return out


def _cylinders(system: Subshift, max_word_len: int, offsets) -> list[Cylinder]:
    out = []
    for m in range(3, max_word_len + 1):
        lo, hi = (1, m - 1) if offsets is None else (max(offsets[0], 1), min(offsets[1], m - 1))
        for w in system.words(m):
            out.extend(Cylinder(w, i) for i in range(lo, hi + 1))
    return out


def refinement_partitions(system: Subshift, c: Cylinder, depth: int) -> list[tuple[Cylinder, ...]]:
    """Distinct partitions reached by 1..depth uniform one-symbol refinements."""
    seen = set()
    out = []
    for d in range(1, depth + 1):
        for seq in itertools.product("LR", repeat=d):
            atoms = [c]
            for side in seq:
                nxt = []
                for a in atoms:
                    left, right = canonical_refinements(system, a)
                    nxt.extend(left if side == "L" else right)
                atoms = nxt
            key = tuple(sorted(atoms))
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out


def _disjoint_translates(system: Subshift, c: Cylinder) -> bool:
    sets = [to_clopen(system, c.shifted(j), c.radius + 2) for j in range(3)]
    return all(a.isdisjoint(b) for a, b in itertools.combinations(sets, 2))


def enumerate_relators(system: Subshift, max_word_len: int, depth: int = 0,
                       offsets: tuple[int, int] | None = None) -> Presentation:
    """All relator instances within the bounds, ordered by (|w|, w, i, tag).

    Cylinders (w, i) have 3 <= |w| <= max_word_len and 1 <= i <= |w|-1
    (intersected with ``offsets``).  R2 and R3 are emitted only when the
    cylinders they mention stay in that offset range and their translates
    are pairwise disjoint.
    """
    ex = TietzeExpander(system)
    cylinders = _cylinders(system, max_word_len, offsets)
    present = set(cylinders)
    rels: list[tuple[tuple, Relator]] = []
    skipped = {"R2": 0, "R3": 0}

    def x(c):
        return ex.expand(c.word, c.offset)

    def add(anchor, tag, schema, expanded):
        order = (len(anchor.word), anchor.word, anchor.offset, _TAG_ORDER[tag])
        rels.append((order, Relator(tag, tuple(schema), free_reduce(expanded))))

    for c in cylinders:
        xc = x(c)
        add(c, "R1", [(c, 1)] * 3, xc * 3)
        c1, c2 = c.shifted(1), c.shifted(2)
        if c1 in present:
            if _disjoint_translates(system, c):
                add(c, "R2", [(c, 1), (c1, 1)] * 2, (xc + x(c1)) * 2)
            else:
                skipped["R2"] += 1
        if c2 in present:
            if _disjoint_translates(system, c):
                # x_(w,i+1)^-1 (x_(w,i) * x_(w,i+2))
                schema = [(c1, -1), (c2, 1), (c, -1), (c2, -1), (c, 1)]
                add(c, "R3", schema, free_inverse(x(c1)) + free_star(xc, x(c2)))
            else:
                skipped["R3"] += 1
        for parts in refinement_partitions(system, c, depth):
            expanded = free_inverse(xc)
            for p in parts:
                expanded += x(p)
            add(c, "R4", [(c, -1)] + [(p, 1) for p in parts], expanded)
    for a_i, a in enumerate(cylinders):
        for b in cylinders[a_i + 1:]:
            if are_3disjoint(system, a, b):
                xa, xb = x(a), x(b)
                add(a, "R5", [(a, 1), (b, 1), (a, -1), (b, -1)], free_commutator(xa, xb))
    rels.sort(key=lambda t: t[0])
    return Presentation(system, ex.generators, [r for _, r in rels], max_word_len, depth, offsets, skipped)


@dataclass
class RelatorReport:
    checked: int
    failures: list[tuple[int, Relator]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed


def verify_relators(p: Presentation) -> RelatorReport:
    """Evaluate every expanded relator; any non-identity is a failure."""
    failures = []
    for i, r in enumerate(p.relators):
        if not evaluate_free_word(p.system, r.expanded, p.generators).is_identity():
            failures.append((i, r))
    return RelatorReport(len(p.relators), failures)


def export_presentation(p: Presentation, system_file: str | None = None) -> str:
    system = p.system
    name = system_file or getattr(system, "name", None) or "-"
    n0 = getattr(system, "n0", 0)
    lines = [f"# system={name} n0={n0} W={p.max_word_len} depth={p.depth}"]
    for k, w in enumerate(p.generators):
        lines.append(f"gen {k}: x[({'-'.join(str(s) for s in w)}),1]")
    for r in p.relators:
        lines.append(f"rel {r.tag}: {free_word_tokens(r.expanded, p.generators)}")
    return "\n".join(lines) + "\n"


# -- the alternating group oracle -------------------------------------------

def _three_cycle(n: int, i: int) -> tuple[int, ...]:
    p = list(range(n))
    p[i], p[i + 1], p[i + 2] = i + 1, i + 2, i
    return tuple(p)


def _mul(p, q):
    """(pq)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def _inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


@dataclass
class AltReport:
    n: int
    relations: dict[str, bool]
    order: int

    @property
    def expected_order(self) -> int:
        f = 1
        for k in range(2, self.n + 1):
            f *= k
        return f // 2

    @property
    def passed(self) -> bool:
        return all(self.relations.values()) and self.order == self.expected_order

    def __bool__(self):
        return self.passed


def alt_report(n: int) -> AltReport:
    """y_i = (i, i+1, i+2), i = 0..n-3, against the four relation families."""
    if n < 5:
        raise ValueError("n must be at least 5")
    e = tuple(range(n))
    y = [_three_cycle(n, i) for i in range(n - 2)]

    def star(r, s):
        return _mul(_mul(_mul(s, _inv(r)), _inv(s)), r)

    rel = {
        "order3": all(_mul(_mul(g, g), g) == e for g in y),
        "square": all(_mul(p := _mul(y[i], y[i + 1]), p) == e for i in range(n - 3)),
        "commute": all(_mul(y[i], y[j]) == _mul(y[j], y[i])
                       for i in range(n - 2) for j in range(n - 2) if abs(i - j) > 2),
        "star": all(y[i + 1] == star(y[i], y[i + 2]) for i in range(n - 4)),
    }
    seen = {e}
    queue = deque([e])
    while queue:
        p = queue.popleft()
        for g in y:
            q = _mul(g, p)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return AltReport(n, rel, len(seen))


def alt_presentation_check(n: int) -> bool:
    return alt_report(n).passed
