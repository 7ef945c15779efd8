"""
Permutations of [n] = {1, ..., n} in one-line notation and their statistics.

Positions and values are 1-indexed throughout.  Descents are taken over
positions 1..n-1; only double descents (and the step types used by ``psi``)
look at the virtual boundary values sigma(0) = sigma(n+1) = 0.

>>> s = parse_permutation("432189765")
>>> inv(s), exc(s), nes_vector(s)
(15, 4, (0, 1, 1, 0, 0, 0, 2, 1, 0))
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import IndexOutOfRange, InvalidFamilyParams, NotAPermutation, ParseError

__all__ = [
    "Permutation", "Family",
    "make_permutation", "parse_permutation", "format_permutation", "identity",
    "inverse", "exc_set", "exc", "des_set", "des", "dd_count", "inv",
    "cros_k", "nest_k", "cros", "nest",
    "pattern_31_2", "pattern_2_13", "pattern_31_2_at", "pattern_2_13_at",
    "shifted_double_excedances", "val_vector", "pos_vector", "nes_vector",
    "is_down_up", "all_permutations", "family",
]


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of [n] stored as its one-line word."""

    word: tuple[int, ...]
    _inv: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        word = tuple(self.word)
        n = len(word)
        if n == 0:
            raise NotAPermutation("empty word")
        seen = [False] * (n + 1)
        for x in word:
            if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= n:
                raise NotAPermutation(f"value {x!r} is not in [1, {n}]")
            if seen[x]:
                raise NotAPermutation(f"value {x} is repeated")
            seen[x] = True
        inv_word = [0] * n
        for i, x in enumerate(word, 1):
            inv_word[x - 1] = i
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "_inv", tuple(inv_word))

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        """sigma(i) with the boundary convention sigma(0) = sigma(n+1) = 0."""
        if i == 0 or i == len(self.word) + 1:
            return 0
        if not 1 <= i <= len(self.word):
            raise IndexOutOfRange(f"position {i} outside [0, {len(self.word) + 1}]")
        return self.word[i - 1]

    def preimage(self, value: int) -> int:
        """sigma^{-1}(value)."""
        if not 1 <= value <= len(self.word):
            raise IndexOutOfRange(f"value {value} outside [1, {len(self.word)}]")
        return self._inv[value - 1]

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self) -> Iterator[int]:
        return iter(self.word)

    def __str__(self) -> str:
        return format_permutation(self)


def make_permutation(word: Iterable[int]) -> Permutation:
    return Permutation(tuple(word))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def parse_permutation(text: str) -> Permutation:
    """Parse a compact digit string ("4312") or a comma list ("4,3,1,2")."""
    text = text.strip()
    if not text:
        raise ParseError("empty permutation")
    if "," in text:
        parts = text.split(",")
        word = []
        pos = 0
        for part in parts:
            token = part.strip()
            if not token.isdigit():
                raise ParseError(f"bad entry {part!r}", pos)
            word.append(int(token))
            pos += len(part) + 1
    else:
        for pos, ch in enumerate(text):
            if not ch.isdigit():
                raise ParseError(f"bad character {ch!r}", pos)
        word = [int(ch) for ch in text]
    try:
        return Permutation(tuple(word))
    except NotAPermutation as e:
        raise ParseError(f"not a permutation: {e}") from e


def format_permutation(sigma: Permutation) -> str:
    if sigma.n <= 9:
        return "".join(map(str, sigma.word))
    return ",".join(map(str, sigma.word))


def _check_index(sigma: Permutation, k: int) -> None:
    if not 1 <= k <= sigma.n:
        raise IndexOutOfRange(f"index {k} outside [1, {sigma.n}]")


def inverse(sigma: Permutation) -> Permutation:
    return Permutation(sigma._inv)


# -- excedances, descents, inversions ----------------------------------------

def exc_set(sigma: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(sigma.word, 1) if i < x)


def exc(sigma: Permutation) -> int:
    return sum(1 for i, x in enumerate(sigma.word, 1) if i < x)


def des_set(sigma: Permutation) -> frozenset[int]:
    w = sigma.word
    return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])


def des(sigma: Permutation) -> int:
    w = sigma.word
    return sum(1 for i in range(1, len(w)) if w[i - 1] > w[i])


def dd_count(sigma: Permutation) -> int:
    w = (0,) + sigma.word + (0,)
    return sum(1 for i in range(1, len(w) - 1) if w[i - 1] > w[i] > w[i + 1])


def inv(sigma: Permutation) -> int:
    w = sigma.word
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


# -- crossings and nestings --------------------------------------------------

def cros_k(sigma: Permutation, k: int) -> int:
    _check_index(sigma, k)
    w, wi = sigma.word, sigma._inv
    s_k = w[k - 1]
    if s_k <= k:
        # sigma(k) < l <= k < sigma^{-1}(l)
        return sum(1 for l in range(s_k + 1, k + 1) if wi[l - 1] > k)
    # l < k < sigma(l) < sigma(k)
    return sum(1 for l in range(1, k) if k < w[l - 1] < s_k)


def nest_k(sigma: Permutation, k: int) -> int:
    _check_index(sigma, k)
    w, wi = sigma.word, sigma._inv
    s_k = w[k - 1]
    if s_k <= k:
        # l < sigma(k) <= k < sigma^{-1}(l)
        return sum(1 for l in range(1, s_k) if wi[l - 1] > k)
    # l < k < sigma(k) < sigma(l)
    return sum(1 for l in range(1, k) if w[l - 1] > s_k)


def cros(sigma: Permutation) -> int:
    return sum(cros_k(sigma, k) for k in range(1, sigma.n + 1))


def nest(sigma: Permutation) -> int:
    return sum(nest_k(sigma, k) for k in range(1, sigma.n + 1))


# -- generalized patterns ----------------------------------------------------

def pattern_31_2(sigma: Permutation) -> int:
    """Pairs (i, j), 2 <= i < j <= n, with sigma(i-1) > sigma(j) > sigma(i)."""
    w = sigma.word
    n = len(w)
    return sum(
        1
        for i in range(2, n + 1)
        for j in range(i + 1, n + 1)
        if w[i - 2] > w[j - 1] > w[i - 1]
    )


def pattern_2_13(sigma: Permutation) -> int:
    """Pairs (i, j), 1 <= i < j <= n, with sigma(j) > sigma(i) > sigma(j-1).

    The lone letter may sit at position 1 (as in 213); this keeps the total
    equal to the sum of ``pattern_2_13_at`` over all values.
    """
    w = sigma.word
    n = len(w)
    return sum(
        1
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if w[j - 1] > w[i - 1] > w[j - 2]
    )


def pattern_31_2_at(sigma: Permutation, k: int) -> int:
    """Occurrences of 31-2 whose lone letter '2' is the value k."""
    _check_index(sigma, k)
    w = sigma.word
    j = sigma._inv[k - 1]
    return sum(1 for i in range(1, j - 1) if w[i] < k < w[i - 1])


def pattern_2_13_at(sigma: Permutation, k: int) -> int:
    """Occurrences of 2-13 whose lone letter '2' is the value k."""
    _check_index(sigma, k)
    w = sigma.word
    j = sigma._inv[k - 1]
    return sum(1 for i in range(j + 2, len(w) + 1) if w[i - 2] < k < w[i - 1])


# -- excedance bookkeeping vectors -------------------------------------------

def shifted_double_excedances(sigma: Permutation) -> frozenset[int]:
    w, wi = sigma.word, sigma._inv
    return frozenset(
        i for i in range(1, len(w)) if i < w[i - 1] and wi[i] < i + 1
    )


def val_vector(sigma: Permutation) -> tuple[int, ...]:
    """v_i = 1 iff the value i is an excedance value, i.e. i > sigma^{-1}(i)."""
    return tuple(int(i > j) for i, j in enumerate(sigma._inv, 1))


def pos_vector(sigma: Permutation) -> tuple[int, ...]:
    """p_i = 1 iff i is an excedance position."""
    return tuple(int(x > i) for i, x in enumerate(sigma.word, 1))


def nes_vector(sigma: Permutation) -> tuple[int, ...]:
    return tuple(nest_k(sigma, k) for k in range(1, sigma.n + 1))


def is_down_up(sigma: Permutation) -> bool:
    """sigma(1) > sigma(2) < sigma(3) > ..."""
    w = sigma.word
    return all((w[i] > w[i + 1]) == (i % 2 == 0) for i in range(len(w) - 1))


# -- enumeration -------------------------------------------------------------

class Family(enum.Enum):
    ALL = "Sn"
    DD = "DD"
    DE = "DE"
    ALTERNATING = "ALT"


def all_permutations(n: int, prefix: Sequence[int] = ()) -> Iterator[Permutation]:
    """Lexicographic stream of S_n, optionally restricted to words starting with
    ``prefix`` (distinct prefixes give disjoint sub-ranges for parallel scans)."""
    if n < 1:
        raise InvalidFamilyParams(f"n must be >= 1, got {n}")
    prefix = tuple(prefix)
    rest = sorted(set(range(1, n + 1)) - set(prefix))
    if len(rest) + len(prefix) != n:
        raise InvalidFamilyParams(f"prefix {prefix} is not a partial word of S_{n}")
    for tail in itertools.permutations(rest):
        yield Permutation(prefix + tail)


def family(n: int, kind: Family | str, k: int | None = None) -> Iterator[Permutation]:
    """Lexicographic stream of DD_{n,k}, DE_{n,k}, the down-up permutations, or S_n."""
    kind = Family(kind) if isinstance(kind, str) else kind
    if n < 1:
        raise InvalidFamilyParams(f"n must be >= 1, got {n}")
    if kind in (Family.DD, Family.DE):
        if k is None or not 0 <= k <= (n - 1) // 2:
            raise InvalidFamilyParams(f"k must be in [0, {(n - 1) // 2}] for {kind.value}, got {k}")
    perms = all_permutations(n)
    if kind is Family.ALL:
        return perms
    if kind is Family.ALTERNATING:
        return (s for s in perms if is_down_up(s))
    if kind is Family.DD:
        return (s for s in perms if des(s) == k and dd_count(s) == 0)
    return (s for s in perms if exc(s) == k and not shifted_double_excedances(s))
