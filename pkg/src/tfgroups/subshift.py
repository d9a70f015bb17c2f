"""Primitive substitution subshifts and their factor languages.

Words are tuples of alphabet indices throughout.  A :class:`Subshift` is a
language oracle: it answers ``factors(m)`` and ``contains(w)`` and, on top of
that, keeps the index tables that the clopen and group layers use to move
between centered windows of different radii.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NotPrimitive

Word = tuple[int, ...]

DEFAULT_APERIODICITY_DEPTH = 16


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate symbol names in {self.names}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown symbol {name!r}") from None

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.names)

    def parse(self, text: str) -> Word:
        """Read a word: plain characters for one-character alphabets,
        otherwise whitespace- or dash-separated symbol names."""
        text = text.strip()
        if self.single_char and " " not in text and "-" not in text:
            return tuple(self.index(c) for c in text)
        return tuple(self.index(tok) for tok in text.replace("-", " ").split())

    def format(self, w: Word, sep: str | None = None) -> str:
        if sep is None:
            sep = "" if self.single_char else " "
        return sep.join(self.names[s] for s in w)


@dataclass(frozen=True)
class Substitution:
    alphabet: Alphabet
    rules: tuple[Word, ...]

    def __post_init__(self):
        n = len(self.alphabet)
        if len(self.rules) != n:
            raise ValueError("need exactly one rule per symbol")
        for s, image in enumerate(self.rules):
            if not image:
                raise ValueError(f"empty image for {self.alphabet.names[s]!r}")
            if any(not 0 <= x < n for x in image):
                raise ValueError(f"image of {self.alphabet.names[s]!r} leaves the alphabet")

    @classmethod
    def from_dict(cls, data: dict) -> Substitution:
        alphabet = Alphabet(tuple(data["alphabet"]))
        rules = data["rules"]
        missing = set(alphabet.names) - set(rules)
        if missing:
            raise ValueError(f"no rule for {sorted(missing)}")
        return cls(alphabet, tuple(alphabet.parse(rules[a]) for a in alphabet.names))

    @classmethod
    def from_json(cls, path) -> Substitution:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.names),
            "rules": {a: self.alphabet.format(self.rules[i]) for i, a in enumerate(self.alphabet.names)},
        }

    def apply(self, w: Word) -> Word:
        out: list[int] = []
        for s in w:
            out.extend(self.rules[s])
        return tuple(out)

    def iterate(self, w: Word, k: int) -> Word:
        for _ in range(k):
            w = self.apply(w)
        return w

    def incidence_matrix(self) -> np.ndarray:
        """``M[i, j]`` counts occurrences of symbol i in the image of j."""
        n = len(self.alphabet)
        m = np.zeros((n, n), dtype=np.int64)
        for j, image in enumerate(self.rules):
            for i in image:
                m[i, j] += 1
        return m


def is_primitive(sub: Substitution) -> bool:
    """True iff some power k <= (|A|-1)^2 + 1 of the incidence matrix is positive."""
    n = len(sub.alphabet)
    base = (sub.incidence_matrix() > 0).astype(np.int64)
    power = base.copy()
    for _ in range((n - 1) ** 2 + 1):
        if power.all():
            return True
        power = ((power @ base) > 0).astype(np.int64)
    return False


def _subwords(w: Word, m: int) -> set[Word]:
    return {w[i:i + m] for i in range(len(w) - m + 1)}


def admissible_two_blocks(sub: Substitution) -> frozenset[Word]:
    """L_2 of the subshift, as the least fixpoint of the two-block map."""
    if not is_primitive(sub):
        raise NotPrimitive("substitution is not primitive")
    n = len(sub.alphabet)
    w: Word = (0,)
    while len(set(w)) < n:
        w = sub.apply(w)
    blocks = _subwords(w, 2)
    while True:
        grown = set(blocks)
        for x, y in blocks:
            grown |= _subwords(sub.rules[x] + sub.rules[y], 2)
        if grown == blocks:
            return frozenset(blocks)
        blocks = grown


def factors(sub: Substitution, m: int, two_blocks: frozenset[Word] | None = None) -> frozenset[Word]:
    """L_m: the length-m factors of rules^t(xy) over admissible two-blocks xy."""
    if m < 1:
        raise ValueError("m must be positive")
    if two_blocks is None:
        two_blocks = admissible_two_blocks(sub)
    images: tuple[Word, ...] = tuple((s,) for s in range(len(sub.alphabet)))
    while min(len(x) for x in images) < m:
        images = tuple(sub.apply(x) for x in images)
    out: set[Word] = set()
    for x, y in two_blocks:
        out |= _subwords(images[x] + images[y], m)
    return frozenset(out)


class Subshift:
    """Language oracle plus window bookkeeping shared by concrete systems.

    Subclasses implement ``_compute_factors(m)`` for m >= 1.  Results are
    memoized under a lock, so instances can be shared between threads.
    """

    def __init__(self, alphabet: Alphabet, aperiodicity_depth: int = DEFAULT_APERIODICITY_DEPTH):
        self.alphabet = alphabet
        self.aperiodicity_depth = aperiodicity_depth
        self._lock = threading.RLock()
        self._factors: dict[int, frozenset[Word]] = {0: frozenset({()})}
        self._words: dict[int, tuple[Word, ...]] = {}
        self._index: dict[int, dict[Word, int]] = {}
        self._maps: dict[tuple[int, int, int], np.ndarray] = {}
        self._stacks: dict[tuple[int, int], np.ndarray] = {}
        self._aperiodic: bool | None = None
        # derived objects keyed by the layer that owns them (sigma cache, ...)
        self.memo: dict = {}

    def _compute_factors(self, m: int) -> frozenset[Word]:
        raise NotImplementedError

    # -- language ---------------------------------------------------------

    def factors(self, m: int) -> frozenset[Word]:
        if m < 0:
            raise ValueError("m must be nonnegative")
        with self._lock:
            if m not in self._factors:
                self._factors[m] = self._compute_factors(m)
            return self._factors[m]

    def contains(self, w: Word) -> bool:
        return tuple(w) in self.factors(len(w))

    def words(self, m: int) -> tuple[Word, ...]:
        """L_m in lexicographic order."""
        with self._lock:
            if m not in self._words:
                self._words[m] = tuple(sorted(self.factors(m)))
            return self._words[m]

    def index(self, m: int) -> dict[Word, int]:
        with self._lock:
            if m not in self._index:
                self._index[m] = {w: i for i, w in enumerate(self.words(m))}
            return self._index[m]

    def right_extensions(self, w: Word) -> list[int]:
        ext = self.factors(len(w) + 1)
        return [b for b in range(len(self.alphabet)) if w + (b,) in ext]

    def left_extensions(self, w: Word) -> list[int]:
        ext = self.factors(len(w) + 1)
        return [a for a in range(len(self.alphabet)) if (a,) + w in ext]

    @property
    def aperiodic(self) -> bool:
        if self._aperiodic is None:
            self._aperiodic = aperiodicity_check(self, self.aperiodicity_depth)
        return self._aperiodic

    def satisfies_dagger(self) -> bool:
        """No word of length five has a repeated letter."""
        return all(len(set(w)) == 5 for w in self.factors(5))

    def format_word(self, w: Word) -> str:
        return self.alphabet.format(w)

    def parse_word(self, text: str) -> Word:
        return self.alphabet.parse(text)

    # -- centered windows -------------------------------------------------
    # A window of radius R is a word z of length 2R with z[k] = x_{k-R}.

    def window_map(self, radius: int, m: int, p: int = 0) -> np.ndarray:
        """For each radius-``radius`` window of x, the index of the
        radius-``m`` window of T^p x."""
        if m + abs(p) > radius:
            raise ValueError(f"cannot read radius {m} at shift {p} from radius {radius}")
        key = (radius, m, p)
        with self._lock:
            arr = self._maps.get(key)
            if arr is None:
                idx = self.index(2 * m)
                lo = radius - m + p
                arr = np.fromiter((idx[z[lo:lo + 2 * m]] for z in self.words(2 * radius)),
                                  dtype=np.intp, count=len(self.words(2 * radius)))
                arr.flags.writeable = False
                self._maps[key] = arr
            return arr

    def window_stack(self, radius: int, m: int) -> np.ndarray:
        """``window_map(radius, m, p)`` stacked over p = -(radius-m)..radius-m."""
        key = (radius, m)
        with self._lock:
            arr = self._stacks.get(key)
            if arr is None:
                span = radius - m
                arr = np.stack([self.window_map(radius, m, p) for p in range(-span, span + 1)])
                arr.flags.writeable = False
                self._stacks[key] = arr
            return arr


class SubstitutionSubshift(Subshift):
    """The subshift of a primitive substitution."""

    def __init__(self, sub: Substitution, aperiodicity_depth: int = DEFAULT_APERIODICITY_DEPTH,
                 name: str | None = None):
        if not is_primitive(sub):
            raise NotPrimitive("substitution is not primitive")
        super().__init__(sub.alphabet, aperiodicity_depth)
        self.substitution = sub
        self.name = name
        self.two_blocks = admissible_two_blocks(sub)

    @classmethod
    def from_json(cls, path, **kw) -> SubstitutionSubshift:
        return cls(Substitution.from_json(path), name=Path(path).name, **kw)

    def _compute_factors(self, m: int) -> frozenset[Word]:
        return factors(self.substitution, m, self.two_blocks)

    def __repr__(self):
        rules = ", ".join(f"{a}->{self.alphabet.format(self.substitution.rules[i])}"
                          for i, a in enumerate(self.alphabet.names))
        return f"SubstitutionSubshift({rules})"


def contains(oracle: Subshift, w: Word) -> bool:
    if len(w) < 1:
        raise ValueError("word must be nonempty")
    return oracle.contains(w)


def aperiodicity_check(oracle: Subshift | Substitution, depth: int = DEFAULT_APERIODICITY_DEPTH) -> bool:
    """Morse-Hedlund witness: |L_n| >= n + 1 for every n <= depth.

    This certifies nothing beyond ``depth``; an eventually periodic language
    with a long transient would pass.
    """
    if isinstance(oracle, Substitution):
        oracle = SubstitutionSubshift(oracle, aperiodicity_depth=depth)
    return all(len(oracle.factors(n)) >= n + 1 for n in range(1, depth + 1))


def substitution_from_strings(rules: dict[str, str], alphabet: list[str] | None = None) -> Substitution:
    if alphabet is None:
        alphabet = list(rules)
    return Substitution.from_dict({"alphabet": alphabet, "rules": rules})


def fibonacci() -> SubstitutionSubshift:
    return SubstitutionSubshift(substitution_from_strings({"a": "ab", "b": "a"}), name="fibonacci")


def thue_morse() -> SubstitutionSubshift:
    return SubstitutionSubshift(substitution_from_strings({"a": "ab", "b": "ba"}), name="thue-morse")
