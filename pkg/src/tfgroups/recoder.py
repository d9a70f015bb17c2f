"""Higher-block recoding to a conjugate system without short self-overlaps.

The new alphabet is L_{n0}(X); a point x is sent to the sequence of its
length-n0 windows, so y_k = x_k ... x_{k+n0-1}.
"""
from __future__ import annotations

from .errors import NotInLanguage, SearchCeilingExceeded, TooShort
from .subshift import Alphabet, Subshift, Word


def _has_short_overlap(words_long: frozenset[Word], n: int) -> bool:
    for x in words_long:
        head = x[:n]
        for i in range(1, 5):
            if x[i:i + n] == head:
                return True
    return False


def find_n0(oracle: Subshift, ceiling: int = 32) -> int:
    """Least n0 with T^i[.w] disjoint from [.w] for i = 1..4 and all w in L_{n0}."""
    for n in range(1, ceiling + 1):
        if not _has_short_overlap(oracle.factors(n + 4), n):
            return n
    raise SearchCeilingExceeded(f"no block length <= {ceiling} separates 5-windows")


class RecodedSubshift(Subshift):
    """The image of ``base`` under the length-n0 sliding block code.

    Symbol k of the new alphabet names the k-th word of L_{n0}(base) in
    lexicographic order.
    """

    def __init__(self, base: Subshift, n0: int | None = None, ceiling: int = 32):
        if n0 is None:
            n0 = find_n0(base, ceiling)
        self.base = base
        self.n0 = n0
        self.alphabetB: tuple[Word, ...] = base.words(n0)
        self._symbol = {w: k for k, w in enumerate(self.alphabetB)}
        super().__init__(Alphabet(tuple(str(k) for k in range(len(self.alphabetB)))),
                         base.aperiodicity_depth)
        self.name = getattr(base, "name", None)

    def _compute_factors(self, m: int) -> frozenset[Word]:
        return frozenset(self.encode_word(w) for w in self.base.factors(m + self.n0 - 1))

    def contains(self, z: Word) -> bool:
        z = tuple(z)
        if not z:
            return True
        if any(not 0 <= s < len(self.alphabetB) for s in z):
            return False
        try:
            w = self.decode_word(z)
        except NotInLanguage:
            return False
        return self.base.contains(w)

    def encode_word(self, w: Word) -> Word:
        """Sliding length-n0 windows of an X-word."""
        w = tuple(w)
        if len(w) < self.n0:
            raise TooShort(f"need at least {self.n0} symbols, got {len(w)}")
        try:
            return tuple(self._symbol[w[j:j + self.n0]] for j in range(len(w) - self.n0 + 1))
        except KeyError:
            raise NotInLanguage(f"{self.base.format_word(w)} is not in the base language") from None

    def decode_word(self, z: Word) -> Word:
        """Overlap the named X-words back into one X-word of length |z| + n0 - 1."""
        z = tuple(z)
        if not z:
            return ()
        blocks = [self.alphabetB[s] for s in z]
        for a, b in zip(blocks, blocks[1:]):
            if a[1:] != b[:-1]:
                raise NotInLanguage("consecutive symbols do not overlap")
        return blocks[0] + tuple(b[-1] for b in blocks[1:])

    def format_word(self, w: Word) -> str:
        return self.alphabet.format(w, " ")

    def symbol_table(self) -> list[str]:
        return [f"{k}: {self.base.format_word(w)}" for k, w in enumerate(self.alphabetB)]

    def encode_point(self, point) -> RecodedPoint:
        return RecodedPoint(self, point)

    def __repr__(self):
        return f"RecodedSubshift({self.base!r}, n0={self.n0})"


def recode(oracle: Subshift, ceiling: int = 32) -> RecodedSubshift:
    return RecodedSubshift(oracle, ceiling=ceiling)


class RecodedPoint:
    """The image of a base-system point under the block code."""

    def __init__(self, system: RecodedSubshift, base_point):
        self.system = system
        self.base_point = base_point

    def segment(self, lo: int, hi: int) -> Word:
        """omega[lo:hi]."""
        return self.system.encode_word(self.base_point.segment(lo, hi + self.system.n0 - 1))

    def window(self, n: int) -> Word:
        return self.segment(-n, n + 1)

    def __eq__(self, other):
        return (isinstance(other, RecodedPoint) and self.system is other.system
                and self.base_point == other.base_point)

    def __hash__(self):
        return hash((id(self.system), self.base_point))

    def __repr__(self):
        return f"RecodedPoint({self.base_point!r}, n0={self.system.n0})"
