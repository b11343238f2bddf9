"""
Reduced words in the surface group of S_{g,1}.

Letters are indexed by the symplectic sides sigma_1 .. sigma_4g of the standard
polygon domain::

    sigma_{4k+1} = b_{g-k}    sigma_{4k+2} = a_{g-k}
    sigma_{4k+3} = B_{g-k}    sigma_{4k+4} = A_{g-k}

so that sigma_1 sigma_2 ... sigma_4g is the inverse of the boundary word
[a_1, b_1] ... [a_g, b_g].  Capital tokens denote inverses.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import UnknownLetter

_TOKEN = re.compile(r"^([abAB])([1-9][0-9]*)$")


MAX_GENUS = 63   # letters are stored as single bytes


def inverse_letter(i: int) -> int:
    # the inverse pairing is genus independent: 1 <-> 3 and 2 <-> 4 (mod 4)
    return i + 2 if (i - 1) % 4 < 2 else i - 2


_INVERSE = bytes([0] + [inverse_letter(i) for i in range(1, 4 * MAX_GENUS + 1)] + [0] * (255 - 4 * MAX_GENUS))


_INVERSE_ARRAY = np.frombuffer(_INVERSE, dtype=np.uint8)


class Word(bytes):
    """
    An immutable reduced word, stored as bytes of sigma-indices.

    ``Word.reduced(seq)`` freely reduces an arbitrary sequence; the plain
    constructor trusts its input and is meant for already reduced data.
    Multiplication is ``u * v`` and inversion is ``~w``.
    """

    __slots__ = ()

    @classmethod
    def reduced(cls, letters) -> "Word":
        out = []
        for x in letters:
            if out and out[-1] == _INVERSE[x]:
                out.pop()
            else:
                out.append(x)
        return cls(out)

    def __mul__(self, other: "Word") -> "Word":
        k = cancellation_depth(self, other)
        return Word(self[:len(self) - k] + other[k:])

    def __invert__(self) -> "Word":
        return Word(self[::-1].translate(_INVERSE))

    def __getitem__(self, key):
        out = bytes.__getitem__(self, key)
        return Word(out) if isinstance(key, slice) else out

    def __repr__(self):
        return "Word(%s)" % (list(self),)

    def is_identity(self) -> bool:
        return not self

    def is_reduced(self) -> bool:
        if len(self) < 2:
            return True
        a = np.frombuffer(self, dtype=np.uint8)
        return not np.any(_INVERSE_ARRAY[a[:-1]] == a[1:])


IDENTITY = Word()


def multiply(*words: Word) -> Word:
    out = IDENTITY
    for w in words:
        out = out * w
    return out


def invert(w: Word) -> Word:
    return ~w


def cancellation_depth(u: Word, v: Word) -> int:
    """Number of letters cancelled between the end of u and the start of v."""
    n = min(len(u), len(v))
    if n == 0 or v[0] != _INVERSE[u[-1]]:
        return 0
    tail = bytes(u[len(u) - n:])[::-1].translate(_INVERSE)
    head = bytes(v[:n])
    if tail == head:
        return n
    # longest common prefix by doubling then bisection on slice equality
    lo, hi = 1, 2
    while hi < n and tail[:hi] == head[:hi]:
        lo, hi = hi, 2 * hi
    hi = min(hi, n)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail[:mid] == head[:mid]:
            lo = mid
        else:
            hi = mid
    return lo


def energy_compare(u: Word, v: Word) -> int:
    """
    Compare energies of two reduced words; returns -1, 0 or 1.

    Every letter value is at most 4g, strictly below the base 4g+1, so the
    energy order is length first and then lexicographic on sigma-indices.
    """
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    if u == v:
        return 0
    return -1 if bytes(u) < bytes(v) else 1


def energy_sum_compare(lhs, rhs, base: int) -> int:
    """
    Compare sum(energy(w) for w in lhs) with the same sum over rhs.

    Digit differences are accumulated from the most significant end.  With
    M = max(len(lhs), len(rhs)) every remaining tail is bounded by
    M * base**remaining, so the scan stops as soon as the accumulator reaches
    M in absolute value.  No big integers are formed.
    """
    n = max([len(w) for w in lhs] + [len(w) for w in rhs] + [0])
    bound = max(len(lhs), len(rhs), 1)
    lhs = [(n - len(w), w) for w in lhs]
    rhs = [(n - len(w), w) for w in rhs]
    acc = 0
    for j in range(n):
        delta = 0
        for off, w in lhs:
            if j >= off:
                delta += w[j - off]
        for off, w in rhs:
            if j >= off:
                delta -= w[j - off]
        acc = acc * base + delta
        if acc >= bound:
            return 1
        if acc <= -bound:
            return -1
    return (acc > 0) - (acc < 0)


def energy_key(w: Word):
    """Sort key realising the energy order."""
    return (len(w), bytes(w))


@dataclass(frozen=True)
class GenusContext:
    """The genus g together with its alphabet and boundary words."""

    g: int

    def __post_init__(self):
        if not isinstance(self.g, int) or not 1 <= self.g <= MAX_GENUS:
            raise ValueError("genus must be an integer in 1..%d, got %r" % (MAX_GENUS, self.g))

    @property
    def rank(self) -> int:
        return 4 * self.g

    # letters ---------------------------------------------------------------

    def letter(self, kind: str, i: int, inverse: bool = False) -> int:
        """sigma-index of a_i / b_i (kind 'a' or 'b'), or of its inverse."""
        if not 1 <= i <= self.g:
            raise UnknownLetter("%s%d" % (kind, i))
        k = self.g - i
        base = 4 * k + (2 if kind == "a" else 1)
        return base + 2 if inverse else base

    def token(self, idx: int) -> str:
        if not 1 <= idx <= self.rank:
            raise UnknownLetter(str(idx))
        k, r = divmod(idx - 1, 4)
        name = "ba"[r % 2] + str(self.g - k)
        return name if r < 2 else name.upper()

    def letter_info(self, idx: int):
        """Return (kind, generator number, sign) for a sigma-index."""
        tok = self.token(idx)
        return tok[0].lower(), int(tok[1:]), (1 if tok[0].islower() else -1)

    @cached_property
    def _token_table(self):
        return {self.token(i): i for i in range(1, self.rank + 1)}

    # words -----------------------------------------------------------------

    def parse(self, text: str) -> Word:
        """Parse whitespace separated tokens (``"b1 a1 B1"``) and reduce."""
        table = self._token_table
        letters = []
        for tok in text.split():
            if tok not in table:
                if _TOKEN.match(tok) is None:
                    raise UnknownLetter("malformed token %r" % tok)
                raise UnknownLetter("token %r outside the genus %d alphabet" % (tok, self.g))
            letters.append(table[tok])
        return Word.reduced(letters)

    def reduce_word(self, tokens) -> Word:
        """Reduce a sequence of sigma-indices or tokens."""
        letters = []
        for t in tokens:
            if isinstance(t, str):
                letters.extend(self.parse(t))
            else:
                if not 1 <= t <= self.rank:
                    raise UnknownLetter("letter index %r outside 1..%d" % (t, self.rank))
                letters.append(t)
        return Word.reduced(letters)

    @cached_property
    def _names(self):
        return ("",) + tuple(self.token(i) for i in range(1, self.rank + 1))

    def format(self, w: Word) -> str:
        names = self._names
        return " ".join([names[x] for x in w])

    def generator(self, kind: str, i: int) -> Word:
        return Word((self.letter(kind, i),))

    @cached_property
    def boundary_inverse(self) -> Word:
        return Word(range(1, self.rank + 1))

    @cached_property
    def boundary(self) -> Word:
        return ~self.boundary_inverse

    @cached_property
    def generator_names(self):
        """Names of the 2g generators in abelianization order a1..ag, b1..bg."""
        return ["a%d" % i for i in range(1, self.g + 1)] + ["b%d" % i for i in range(1, self.g + 1)]

    # invariants ------------------------------------------------------------

    def energy_value(self, w: Word) -> int:
        base = self.rank + 1
        e = 0
        for x in w:
            e = e * base + x
        return e

    @cached_property
    def _abelian_table(self):
        table = {}
        for x in range(1, self.rank + 1):
            kind, i, sign = self.letter_info(x)
            table[x] = ((i - 1) + (0 if kind == "a" else self.g), sign)
        return table

    def abelianize(self, w: Word):
        """Exponent sums over (a_1, .., a_g, b_1, .., b_g)."""
        vec = [0] * (2 * self.g)
        table = self._abelian_table
        for x, count in Counter(w).items():
            col, sign = table[x]
            vec[col] += sign * count
        return tuple(vec)
