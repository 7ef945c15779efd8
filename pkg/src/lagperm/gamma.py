"""
Exact (q, t) polynomials, the q-Eulerian generating functions over S_n, and
their expansion in the gamma basis t^k (1+t)^(n-1-2k).
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from . import perm as P
from .errors import NotGammaExpandable, SizeTooLarge

__all__ = [
    "QTPolynomial", "GammaExpansion",
    "poly_add", "poly_mul", "poly_eval_t", "eval_t_laurent",
    "scan_sn", "qt_eulerian", "qt_inv_exc", "qt_descent_polynomial",
    "gamma_expand", "gamma_de", "gamma_dd",
    "q_tangent_via_sign", "q_tangent_via_de", "q_tangent_via_alternating",
    "tangent_number",
    "MAX_N",
]

MAX_N = 9


@dataclass(frozen=True)
class QTPolynomial:
    """Integer polynomial in q and t, keyed by (q-degree, t-degree)."""

    terms: tuple[tuple[tuple[int, int], int], ...]

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[tuple[int, int], int] = {}
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative degree ({a}, {b})")
            acc[a, b] = acc.get((a, b), 0) + c
        terms = tuple(sorted(((k, c) for k, c in acc.items() if c), key=lambda kc: (kc[0][1], kc[0][0])))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def const(cls, c: int) -> QTPolynomial:
        return cls({(0, 0): c})

    @classmethod
    def q(cls, power: int = 1) -> QTPolynomial:
        return cls({(power, 0): 1})

    @classmethod
    def t(cls, power: int = 1) -> QTPolynomial:
        return cls({(0, power): 1})

    @classmethod
    def from_q_coeffs(cls, coeffs: Iterable[int]) -> QTPolynomial:
        return cls({(j, 0): c for j, c in enumerate(coeffs)})

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def t_degree(self) -> int:
        return max((b for (_, b), _ in self.terms), default=-1)

    def t_coeff(self, b: int) -> QTPolynomial:
        """The q-polynomial multiplying t^b."""
        return QTPolynomial({(a, 0): c for (a, bb), c in self.terms if bb == b})

    def q_coeffs(self) -> list[int]:
        """Coefficient list of a t-free polynomial, index = q-degree."""
        if any(b for (_, b), _ in self.terms):
            raise ValueError("polynomial depends on t")
        if not self.terms:
            return []
        out = [0] * (max(a for (a, _), _ in self.terms) + 1)
        for (a, _), c in self.terms:
            out[a] = c
        return out

    def at_q1(self) -> QTPolynomial:
        return QTPolynomial(((0, b), c) for (_, b), c in self.terms)

    def __add__(self, other: QTPolynomial | int) -> QTPolynomial:
        return poly_add(self, _lift(other))

    __radd__ = __add__

    def __neg__(self) -> QTPolynomial:
        return QTPolynomial(((k, -c) for k, c in self.terms))

    def __sub__(self, other: QTPolynomial | int) -> QTPolynomial:
        return poly_add(self, -_lift(other))

    def __rsub__(self, other: int) -> QTPolynomial:
        return poly_add(_lift(other), -self)

    def __mul__(self, other: QTPolynomial | int) -> QTPolynomial:
        return poly_mul(self, _lift(other))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QTPolynomial:
        out = QTPolynomial.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, b), c in self.terms:
            mono = _power("q", a) + _power("t", b)
            mag = abs(c)
            body = mono if mono and mag == 1 else f"{mag}{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self, n: int | None = None) -> dict:
        return {
            "n": n,
            "terms": [{"q": a, "t": b, "c": c} for (a, b), c in self.terms],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> QTPolynomial:
        return cls({(d["q"], d["t"]): d["c"] for d in data["terms"]})


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def _lift(x: QTPolynomial | int) -> QTPolynomial:
    return x if isinstance(x, QTPolynomial) else QTPolynomial.const(x)


def poly_add(a: QTPolynomial, b: QTPolynomial) -> QTPolynomial:
    return QTPolynomial(a.terms + b.terms)


def poly_mul(a: QTPolynomial, b: QTPolynomial) -> QTPolynomial:
    acc: dict[tuple[int, int], int] = {}
    for (a1, b1), c1 in a.terms:
        for (a2, b2), c2 in b.terms:
            key = (a1 + a2, b1 + b2)
            acc[key] = acc.get(key, 0) + c1 * c2
    return QTPolynomial(acc)


def poly_eval_t(p: QTPolynomial, t0: int) -> QTPolynomial:
    """Substitute the integer t0 for t; the result is a q-polynomial."""
    return QTPolynomial(((a, 0), c * t0 ** b) for (a, b), c in p.terms)


def eval_t_laurent(p: QTPolynomial, coeff: int, q_shift: int) -> dict[int, int]:
    """Substitute t = coeff * q^q_shift.  Returns {q-exponent: coefficient},
    exponents possibly negative, zero coefficients dropped."""
    out: Counter = Counter()
    for (a, b), c in p.terms:
        out[a + q_shift * b] += c * coeff ** b
    return {e: c for e, c in sorted(out.items()) if c}


# -- sums over S_n -----------------------------------------------------------

def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise SizeTooLarge(f"n must be in [1, {MAX_N}], got {n}")


def _scan_chunk(args) -> Counter:
    n, first, weight = args
    return Counter(weight(s) for s in P.all_permutations(n, (first,)))


def scan_sn(n: int, weight: Callable[[P.Permutation], tuple[int, int]], workers: int = 1) -> QTPolynomial:
    """Sum q^a t^b over S_n where (a, b) = weight(sigma).

    With workers > 1 the scan is split by first letter across processes;
    ``weight`` must then be a picklable module-level function.
    """
    _check_size(n)
    if workers > 1 and n >= 6:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan_chunk, [(n, f, weight) for f in range(1, n + 1)])
            total: Counter = sum(parts, Counter())
    else:
        total = Counter(weight(s) for s in P.all_permutations(n))
    return QTPolynomial(total)


def _w_eulerian(s: P.Permutation) -> tuple[int, int]:
    e = P.exc(s)
    return P.inv(s) - e, e


def _w_inv_exc(s: P.Permutation) -> tuple[int, int]:
    return P.inv(s), P.exc(s)


def _w_descent(s: P.Permutation) -> tuple[int, int]:
    return 2 * P.pattern_2_13(s) + P.pattern_31_2(s), P.des(s)


def qt_eulerian(n: int, workers: int = 1) -> QTPolynomial:
    """Sum over S_n of q^(inv - exc) t^exc."""
    return scan_sn(n, _w_eulerian, workers)


def qt_inv_exc(n: int, workers: int = 1) -> QTPolynomial:
    """Sum over S_n of q^inv t^exc."""
    return scan_sn(n, _w_inv_exc, workers)


def qt_descent_polynomial(n: int, workers: int = 1) -> QTPolynomial:
    """Sum over S_n of q^(2 (2-13) + (31-2)) t^des."""
    return scan_sn(n, _w_descent, workers)


# -- gamma expansions --------------------------------------------------------

@dataclass(frozen=True)
class GammaExpansion:
    n: int
    gammas: tuple[QTPolynomial, ...]

    def reconstruct(self) -> QTPolynomial:
        one_plus_t = QTPolynomial({(0, 0): 1, (0, 1): 1})
        total = QTPolynomial()
        for k, g in enumerate(self.gammas):
            total = total + g * QTPolynomial.t(k) * one_plus_t ** (self.n - 1 - 2 * k)
        return total

    def is_positive(self) -> bool:
        return all(c >= 0 for g in self.gammas for _, c in g.terms)

    def at_q1(self) -> tuple[int, ...]:
        return tuple(sum(c for _, c in g.terms) for g in self.gammas)

    def to_json(self) -> dict:
        return {"n": self.n, "gamma": [g.q_coeffs() for g in self.gammas]}

    @classmethod
    def from_json(cls, data: Mapping) -> GammaExpansion:
        return cls(data["n"], tuple(QTPolynomial.from_q_coeffs(c) for c in data["gamma"]))

    def __str__(self) -> str:
        return " | ".join(f"k={k}: {g}" for k, g in enumerate(self.gammas))


def gamma_expand(p: QTPolynomial, n: int) -> GammaExpansion:
    """Write p = sum_k gamma_k(q) t^k (1+t)^(n-1-2k) by peeling off the
    constant term in t and dividing the remainder by t."""
    if p.t_degree > n - 1:
        raise NotGammaExpandable(f"t-degree {p.t_degree} exceeds {n - 1}")
    one_plus_t = QTPolynomial({(0, 0): 1, (0, 1): 1})
    rest = p
    gammas = []
    d = n - 1
    while d >= 0:
        if rest.t_degree > d:
            raise NotGammaExpandable(f"remainder {rest} has t-degree above {d}")
        g = rest.t_coeff(0)
        gammas.append(g)
        rest = rest - g * one_plus_t ** d
        if rest.t_coeff(0).terms:
            raise NotGammaExpandable(f"remainder {rest} is not divisible by t")
        rest = QTPolynomial(((a, b - 1), c) for (a, b), c in rest.terms)
        d -= 2
    if not rest.is_zero():
        raise NotGammaExpandable(f"nonzero remainder {rest}")
    out = GammaExpansion(n, tuple(gammas))
    if out.reconstruct() != p:
        raise NotGammaExpandable(f"expansion of {p} does not reconstruct it")
    return out


def _model_sum(n: int, kind: P.Family, weight: Callable[[P.Permutation], int]) -> GammaExpansion:
    _check_size(n)
    gammas = []
    for k in range((n - 1) // 2 + 1):
        gammas.append(QTPolynomial(Counter(((weight(s), 0) for s in P.family(n, kind, k)))))
    return GammaExpansion(n, tuple(gammas))


def gamma_de(n: int) -> GammaExpansion:
    """gamma_k = sum over DE_{n,k} of q^(inv - exc)."""
    return _model_sum(n, P.Family.DE, lambda s: P.inv(s) - P.exc(s))


def gamma_dd(n: int) -> GammaExpansion:
    """gamma_k = sum over DD_{n,k} of q^(2 (2-13) + (31-2))."""
    return _model_sum(n, P.Family.DD, lambda s: 2 * P.pattern_2_13(s) + P.pattern_31_2(s))


# -- q-tangent numbers -------------------------------------------------------

def q_tangent_via_sign(n: int) -> QTPolynomial:
    """Sum over S_n of (-1/q)^exc q^inv, evaluated as a Laurent polynomial."""
    laurent = eval_t_laurent(qt_inv_exc(n), -1, -1)
    if any(e < 0 for e in laurent):
        raise ValueError(f"negative q-exponent in {laurent}")
    return QTPolynomial(((e, 0), c) for e, c in laurent.items())


def q_tangent_via_de(n: int) -> QTPolynomial:
    """(-1)^((n-1)/2) times the sum over DE_{n,(n-1)/2} of q^(inv - exc); 0 for even n."""
    _check_size(n)
    if n % 2 == 0:
        return QTPolynomial()
    k = (n - 1) // 2
    total = Counter(P.inv(s) - P.exc(s) for s in P.family(n, P.Family.DE, k))
    return (-1) ** k * QTPolynomial(((e, 0), c) for e, c in total.items())


def q_tangent_via_alternating(n: int) -> QTPolynomial:
    """(-1)^((n-1)/2) times the sum over down-up sigma of q^(2 (2-13) + (31-2)); 0 for even n."""
    _check_size(n)
    if n % 2 == 0:
        return QTPolynomial()
    k = (n - 1) // 2
    total = Counter(
        2 * P.pattern_2_13(s) + P.pattern_31_2(s) for s in P.family(n, P.Family.ALTERNATING)
    )
    return (-1) ** k * QTPolynomial(((e, 0), c) for e, c in total.items())


def tangent_number(k: int) -> int:
    """T_k = |down-up permutations of length 2k-1|, from tan(t) = sum T_k t^(2k-1)/(2k-1)!,
    computed by the Euler-Bernoulli boustrophedon."""
    if k < 1:
        raise ValueError("k must be >= 1")
    row = [1]
    for i in range(1, 2 * k):
        nxt = [0]
        for x in reversed(row):
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]

