"""
Two encodings of S_n by Laguerre histories of length n-1.

``phi`` reads excedance data: step i is decided by whether i is an excedance
position and whether i+1 is an excedance value, and mu_i is the nesting index
on i.  It carries (inv - exc, EXC) to (area + sum(mu), U and L1 steps).

``psi`` is a modified Francon-Viennot map and is indexed by VALUE: step i
describes where the value i sits relative to its neighbours in 0 sigma 0, and
mu_i counts 2-13 occurrences whose lone letter is i.  It carries
(2*(2-13) + (31-2), des) to the same pair of path statistics.
"""

from __future__ import annotations

from .errors import InternalInconsistency, NotInImage, LagpermError
from .laguerre import DOWN, L0, L1, UP, LaguerreHistory, TwoMotzkinPath
from .perm import (
    Permutation,
    nes_vector,
    pattern_2_13_at,
    pos_vector,
    val_vector,
)

__all__ = ["phi", "phi_inverse", "psi", "psi_inverse"]

# (v_{i+1}, p_i) -> step
_PHI_STEP = {(0, 1): UP, (1, 0): DOWN, (1, 1): L1, (0, 0): L0}
_PHI_FLAGS = {s: f for f, s in _PHI_STEP.items()}


def _history(steps: str, mu) -> LaguerreHistory:
    try:
        return LaguerreHistory(TwoMotzkinPath(steps), tuple(mu))
    except LagpermError as e:
        raise InternalInconsistency(f"constructed an invalid history {steps!r} {mu}: {e}") from e


def phi(sigma: Permutation) -> LaguerreHistory:
    """
    >>> from lagperm.perm import parse_permutation
    >>> str(phi(parse_permutation("432189765")))
    'U1D0UUDD 0,1,1,0,0,0,2,1'
    """
    v = val_vector(sigma)
    p = pos_vector(sigma)
    n = sigma.n
    steps = "".join(_PHI_STEP[v[i], p[i - 1]] for i in range(1, n))
    return _history(steps, nes_vector(sigma)[: n - 1])


def phi_inverse(h: LaguerreHistory) -> Permutation:
    """Rebuild sigma from its history by the two greedy passes.

    Positions that are not excedances are filled left to right, each taking the
    (mu_k + 1)-th smallest unused non-excedance value; excedance positions are
    filled right to left with the (mu_k + 1)-th largest unused excedance value.
    """
    n = h.n + 1
    v = [0] * n
    p = [0] * n
    for i, s in enumerate(h.path.steps):
        v[i + 1], p[i] = _PHI_FLAGS[s]
    if v.count(0) != p.count(0):
        raise InternalInconsistency(f"val/pos zero counts differ for {h}")
    mu = h.mu + (0,)

    word = [0] * n
    free = [i + 1 for i in range(n) if v[i] == 0]
    for k in range(1, n + 1):
        if p[k - 1] == 0:
            r = mu[k - 1]
            if r >= len(free) or free[r] > k:
                raise InternalInconsistency(f"no admissible value for position {k} in {h}")
            word[k - 1] = free.pop(r)

    free = [i + 1 for i in range(n) if v[i] == 1]
    for k in range(n, 0, -1):
        if p[k - 1] == 1:
            r = mu[k - 1]
            if r >= len(free) or free[-1 - r] <= k:
                raise InternalInconsistency(f"no admissible value for position {k} in {h}")
            word[k - 1] = free.pop(-1 - r)

    return Permutation(tuple(word))


def _psi_step(left: int, value: int, right: int) -> str:
    if left > value < right:
        return UP
    if left < value > right:
        return DOWN
    if left > value > right:
        return L1
    return L0


def psi(sigma: Permutation) -> LaguerreHistory:
    """
    >>> from lagperm.perm import parse_permutation
    >>> str(psi(parse_permutation("321")))
    '11 0,0'
    """
    n = sigma.n
    steps = []
    for value in range(1, n):
        j = sigma.preimage(value)
        steps.append(_psi_step(sigma(j - 1), value, sigma(j + 1)))
    mu = [pattern_2_13_at(sigma, value) for value in range(1, n)]
    return _history("".join(steps), mu)


_HOLE = None


def psi_inverse(h: LaguerreHistory) -> Permutation:
    """Insert the values 1, 2, ..., n into a word with holes.

    Each hole stands for a maximal run of not-yet-placed (larger) values.  Value
    i goes into the hole h_i - mu_i counted from the left, since mu_i counts the
    runs lying to its right; its step type says which of its neighbours are
    still larger and hence which sides keep a hole.
    """
    n = h.n + 1
    word: list = [_HOLE]
    for value, (s, hi, m) in enumerate(zip(h.path.steps, h.path.heights, h.mu), 1):
        holes = [idx for idx, x in enumerate(word) if x is _HOLE]
        if len(holes) != hi + 1:
            raise NotInImage(f"hole count {len(holes)} disagrees with height {hi} at value {value}")
        at = holes[hi - m]
        if s == UP:
            piece = [_HOLE, value, _HOLE]
        elif s == DOWN:
            piece = [value]
        elif s == L0:
            piece = [value, _HOLE]
        else:
            piece = [_HOLE, value]
        word[at:at + 1] = piece
    holes = [idx for idx, x in enumerate(word) if x is _HOLE]
    if len(holes) != 1:
        raise NotInImage(f"{len(holes)} holes left for the value {n}")
    word[holes[0]] = n
    sigma = Permutation(tuple(word))
    if psi(sigma) != h:
        raise NotInImage(f"{h} has no preimage under psi in S_{n}")
    return sigma
