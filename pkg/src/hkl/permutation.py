"""
Permutations of {1, ..., n} in one-line notation.

A `Permutation` stores its word ``w(1) w(2) ... w(n)``.  Products compose
right to left, ``(a * b)(i) == a(b(i))``, so left multiplication by a
transposition ``(i j)`` swaps the *values* i and j in the word, while right
multiplication swaps *positions*.

>>> w = Permutation.parse("3412")
>>> w.length
4
>>> sorted(w.descents("right"))
[2]
>>> bruhat_leq(Permutation.parse("1324"), w)
True
"""

from __future__ import annotations

from functools import lru_cache, total_ordering
from itertools import permutations as _itertools_permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "identity",
    "multiply",
    "transposition",
    "as_transposition",
    "simple_reflection",
    "bruhat_leq",
    "all_permutations",
    "all_transpositions",
    "longest_element",
]


@total_ordering
class Permutation:
    """An immutable permutation, ordered by (length, word)."""

    __slots__ = ("word", "_length", "_hash", "_inverse")

    def __init__(self, word: Iterable[int]):
        word = tuple(int(a) for a in word)
        n = len(word)
        if n == 0 or sorted(word) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {word}")
        self.word = word
        self._length = _count_inversions(word)
        self._hash = hash(word)
        self._inverse = None

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Accepts ``"3412"`` and ``"3,6,1,2,4,5"`` (spaces ignored)."""
        text = text.strip().replace(" ", "")
        if not text:
            raise ValueError("empty permutation")
        if "," in text:
            parts = text.split(",")
        else:
            parts = list(text)
        try:
            return cls(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"cannot parse permutation {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        """Number of inversions."""
        return self._length

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return multiply(self, other)

    def inverse(self) -> "Permutation":
        if self._inverse is None:
            inv = [0] * self.n
            for pos, val in enumerate(self.word, start=1):
                inv[val - 1] = pos
            self._inverse = Permutation(inv)
        return self._inverse

    def position(self, value: int) -> int:
        """``w^{-1}(value)``."""
        return self.word.index(value) + 1

    def left_transpose(self, i: int, j: int) -> "Permutation":
        """``(i j) * self``: swap the values i and j."""
        word = list(self.word)
        pi, pj = word.index(i), word.index(j)
        word[pi], word[pj] = j, i
        return Permutation(word)

    def right_transpose(self, i: int, j: int) -> "Permutation":
        """``self * (i j)``: swap the entries at positions i and j."""
        word = list(self.word)
        word[i - 1], word[j - 1] = word[j - 1], word[i - 1]
        return Permutation(word)

    def descents(self, side: str = "right") -> frozenset[int]:
        """Indices i with s_i in the right (or left) descent set."""
        if side == "right":
            w = self.word
        elif side == "left":
            w = self.inverse().word
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word (indices of simple reflections), by bubble sort."""
        word = list(self.word)
        letters = []
        # peel right descents: w = w' s_i
        while True:
            for i in range(len(word) - 1):
                if word[i] > word[i + 1]:
                    word[i], word[i + 1] = word[i + 1], word[i]
                    letters.append(i + 1)
                    break
            else:
                break
        return tuple(reversed(letters))

    def is_identity(self) -> bool:
        return self._length == 0

    def sort_key(self) -> tuple:
        return (self._length, self.word)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.word == other.word

    def __lt__(self, other: "Permutation"):
        if not isinstance(other, Permutation):
            return NotImplemented
        return (self._length, self.word) < (other._length, other.word)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __str__(self):
        if self.n <= 9:
            return "".join(str(a) for a in self.word)
        return ",".join(str(a) for a in self.word)

    def __repr__(self):
        return f"Permutation({str(self)!r})"

    def __reduce__(self):
        return (Permutation, (self.word,))


def _count_inversions(word: Sequence[int]) -> int:
    n = len(word)
    return sum(1 for i in range(n) for j in range(i + 1, n) if word[i] > word[j])


def identity(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(range(1, n + 1))


def multiply(a: Permutation, b: Permutation) -> Permutation:
    """The composition ``a o b``, i.e. ``i -> a(b(i))``."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: S_{a.n} vs S_{b.n}")
    aw = a.word
    return Permutation(aw[j - 1] for j in b.word)


def transposition(i: int, j: int, n: int) -> Permutation:
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got ({i}, {j}) with n={n}")
    word = list(range(1, n + 1))
    word[i - 1], word[j - 1] = j, i
    return Permutation(word)


def simple_reflection(i: int, n: int) -> Permutation:
    return transposition(i, i + 1, n)


def as_transposition(w: Permutation) -> tuple[int, int] | None:
    """Return (i, j) with i < j if w is the transposition (i j), else None."""
    moved = [p for p, a in enumerate(w.word, start=1) if a != p]
    if len(moved) == 2 and w(moved[0]) == moved[1]:
        return moved[0], moved[1]
    return None


@lru_cache(maxsize=None)
def _leq_words(x: tuple[int, ...], y: tuple[int, ...]) -> bool:
    # tableau criterion: sorted prefixes compared entrywise
    xs: list[int] = []
    ys: list[int] = []
    for k in range(len(x) - 1):
        _insort(xs, x[k])
        _insort(ys, y[k])
        for a, b in zip(xs, ys):
            if a > b:
                return False
    return True


def _insort(seq: list[int], value: int) -> None:
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    seq.insert(lo, value)


def bruhat_leq(x: Permutation, y: Permutation) -> bool:
    """x <= y in Bruhat order."""
    if x.n != y.n:
        raise ValueError(f"size mismatch: S_{x.n} vs S_{y.n}")
    if x.length > y.length:
        return False
    if x.length == y.length:
        return x.word == y.word
    return _leq_words(x.word, y.word)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """All of S_n, sorted by (length, word)."""
    return tuple(sorted(Permutation(p) for p in _itertools_permutations(range(1, n + 1))))


@lru_cache(maxsize=None)
def all_transpositions(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def longest_element(n: int) -> Permutation:
    return Permutation(range(n, 0, -1))
