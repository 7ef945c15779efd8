"""
2-Motzkin paths, Laguerre histories and the level-step toggle action.

Steps are single characters: ``U`` (up), ``D`` (down), ``0`` (level L0) and
``1`` (level L1), so ``"U1D0UUDD"`` is both the text form and the internal
representation.  ``heights[i-1]`` is the height *before* step i, so the first
step always sits at height 0, and ``area`` is the sum of those heights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import (
    IndexOutOfRange,
    InvalidFamilyParams,
    MuOutOfRange,
    ParseError,
    PathBelowAxis,
    PathNotClosed,
)

__all__ = [
    "UP", "DOWN", "L0", "L1", "STEP_ORDER",
    "TwoMotzkinPath", "LaguerreHistory",
    "make_path", "make_history", "parse_mu", "format_mu", "history_key",
    "height", "area", "u_set", "l1_set", "level_steps",
    "toggle", "act", "orbit", "canonical",
    "all_paths", "all_histories", "orbit_reps",
]

UP, DOWN, L0, L1 = "U", "D", "0", "1"
# enumeration order U < D < L0 < L1
STEP_ORDER = {UP: 0, DOWN: 1, L0: 2, L1: 3}
_FLIP = {L0: L1, L1: L0}


@dataclass(frozen=True)
class TwoMotzkinPath:
    steps: str
    heights: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        h = 0
        heights = []
        for i, s in enumerate(self.steps, 1):
            if s not in STEP_ORDER:
                raise ParseError(f"bad step {s!r}", i - 1)
            heights.append(h)
            if s == UP:
                h += 1
            elif s == DOWN:
                h -= 1
                if h < 0:
                    raise PathBelowAxis(i)
        if h != 0:
            raise PathNotClosed(h)
        object.__setattr__(self, "heights", tuple(heights))

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.steps


@dataclass(frozen=True)
class LaguerreHistory:
    path: TwoMotzkinPath
    mu: tuple[int, ...]

    def __post_init__(self):
        mu = tuple(self.mu)
        if len(mu) != len(self.path):
            raise ParseError(f"mu has length {len(mu)}, path has length {len(self.path)}")
        for i, (m, h) in enumerate(zip(mu, self.path.heights), 1):
            if not 0 <= m <= h:
                raise MuOutOfRange(i, m, h)
        object.__setattr__(self, "mu", mu)

    @property
    def n(self) -> int:
        return len(self.mu)

    @property
    def steps(self) -> str:
        return self.path.steps

    @property
    def weight(self) -> int:
        """area + sum(mu), the q-exponent carried by the history."""
        return area(self.path) + sum(self.mu)

    def __str__(self) -> str:
        return f"{self.path.steps} {format_mu(self.mu)}"


def make_path(steps: str | Iterable[str]) -> TwoMotzkinPath:
    return TwoMotzkinPath("".join(steps))


def make_history(path: TwoMotzkinPath | str, mu: Iterable[int]) -> LaguerreHistory:
    if not isinstance(path, TwoMotzkinPath):
        path = make_path(path)
    return LaguerreHistory(path, tuple(mu))


def parse_mu(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    pos = 0
    for part in text.split(","):
        token = part.strip()
        if not token.isdigit():
            raise ParseError(f"bad mu entry {part!r}", pos)
        out.append(int(token))
        pos += len(part) + 1
    return tuple(out)


def format_mu(mu: Iterable[int]) -> str:
    return ",".join(map(str, mu))


def history_key(h: LaguerreHistory) -> tuple:
    """Sort key matching the enumeration order of ``all_histories``."""
    return tuple(STEP_ORDER[s] for s in h.path.steps), h.mu


# -- path statistics ---------------------------------------------------------

def _path(w: TwoMotzkinPath | LaguerreHistory) -> TwoMotzkinPath:
    return w.path if isinstance(w, LaguerreHistory) else w


def height(w: TwoMotzkinPath | LaguerreHistory, i: int) -> int:
    w = _path(w)
    if not 1 <= i <= len(w):
        raise IndexOutOfRange(f"step {i} outside [1, {len(w)}]")
    return w.heights[i - 1]


def area(w: TwoMotzkinPath | LaguerreHistory) -> int:
    return sum(_path(w).heights)


def u_set(w: TwoMotzkinPath | LaguerreHistory) -> frozenset[int]:
    return frozenset(i for i, s in enumerate(_path(w).steps, 1) if s == UP)


def l1_set(w: TwoMotzkinPath | LaguerreHistory) -> frozenset[int]:
    return frozenset(i for i, s in enumerate(_path(w).steps, 1) if s == L1)


def level_steps(w: TwoMotzkinPath | LaguerreHistory) -> tuple[int, ...]:
    return tuple(i for i, s in enumerate(_path(w).steps, 1) if s in _FLIP)


# -- the Z_2^n action --------------------------------------------------------

def toggle(h: LaguerreHistory, i: int) -> LaguerreHistory:
    """Swap the label of step i if it is a level step; otherwise return h."""
    if not 1 <= i <= h.n:
        raise IndexOutOfRange(f"step {i} outside [1, {h.n}]")
    s = h.path.steps[i - 1]
    if s not in _FLIP:
        return h
    steps = h.path.steps
    return LaguerreHistory(TwoMotzkinPath(steps[: i - 1] + _FLIP[s] + steps[i:]), h.mu)


def act(h: LaguerreHistory, subset: Iterable[int]) -> LaguerreHistory:
    subset = set(subset)
    for i in subset:
        if not 1 <= i <= h.n:
            raise IndexOutOfRange(f"step {i} outside [1, {h.n}]")
    steps = "".join(
        _FLIP[s] if i in subset and s in _FLIP else s
        for i, s in enumerate(h.path.steps, 1)
    )
    if steps == h.path.steps:
        return h
    return LaguerreHistory(TwoMotzkinPath(steps), h.mu)


def orbit(h: LaguerreHistory) -> frozenset[LaguerreHistory]:
    levels = level_steps(h)
    return frozenset(
        act(h, subset)
        for r in range(len(levels) + 1)
        for subset in itertools.combinations(levels, r)
    )


def canonical(h: LaguerreHistory) -> LaguerreHistory:
    """The orbit member whose level steps are all L0."""
    return act(h, l1_set(h))


# -- enumeration -------------------------------------------------------------

def all_paths(n: int) -> Iterator[TwoMotzkinPath]:
    """2-Motzkin paths of length n in lexicographic order U < D < L0 < L1."""
    if n < 0:
        raise InvalidFamilyParams(f"n must be >= 0, got {n}")

    def extend(prefix: list[str], h: int) -> Iterator[str]:
        remaining = n - len(prefix)
        if remaining == 0:
            yield "".join(prefix)
            return
        for s in (UP, DOWN, L0, L1):
            nh = h + (s == UP) - (s == DOWN)
            if 0 <= nh <= remaining - 1:
                prefix.append(s)
                yield from extend(prefix, nh)
                prefix.pop()

    for steps in extend([], 0):
        yield TwoMotzkinPath(steps)


def _histories_on(path: TwoMotzkinPath) -> Iterator[LaguerreHistory]:
    for mu in itertools.product(*(range(h + 1) for h in path.heights)):
        yield LaguerreHistory(path, mu)


def all_histories(n: int) -> Iterator[LaguerreHistory]:
    """Every Laguerre history of length n; there are (n+1)! of them."""
    for path in all_paths(n):
        yield from _histories_on(path)


def orbit_reps(n: int, k: int) -> Iterator[LaguerreHistory]:
    """Histories of length n with k up steps and every level step labelled L0."""
    if n < 0 or not 0 <= k <= n // 2:
        raise InvalidFamilyParams(f"k must be in [0, {max(n, 0) // 2}], got {k}")
    for path in all_paths(n):
        if L1 not in path.steps and path.steps.count(UP) == k:
            yield from _histories_on(path)
