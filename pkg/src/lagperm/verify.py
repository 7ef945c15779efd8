"""
Exhaustive verification harness.

Each registered check walks every n in its range and either finds nothing
wrong or returns the first counterexample, recorded with enough data
(``input`` in the package's text formats) to be replayed by hand.  The maps
under test are supplied through :class:`Impl` so that deliberately broken
versions (``MUTATIONS``) can demonstrate that a check is able to fail.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable

from . import bijection, gamma, laguerre as L, perm as P
from .errors import LagpermError, SizeTooLarge, UnknownCheck

__all__ = [
    "Impl", "MUTATIONS", "CheckReport", "CHECKS", "PASS", "FAIL",
    "run_check", "run_all", "format_table", "perm_table",
    "GOLDEN_DE_4_0", "GOLDEN_DE_4_1", "GOLDEN_DE_5_2", "TANGENT_NUMBERS",
]

PASS, FAIL = "PASS", "FAIL"

# printed in the source listings, kept verbatim
GOLDEN_DE_4_0 = ("1234",)
GOLDEN_DE_4_1 = ("1423", "1432", "3124", "3214", "4123", "4132", "4213", "4231")
GOLDEN_DE_5_2 = (
    "54231", "54213", "54123", "54132", "54312", "54321", "45231", "45213",
    "45123", "45132", "45312", "45321", "32541", "32514", "31524", "31542",
)
# coefficients of tan(t): T_1, T_2, ...
TANGENT_NUMBERS = (1, 2, 16, 272, 7936)


@dataclass(frozen=True)
class Impl:
    phi: Callable = bijection.phi
    phi_inverse: Callable = bijection.phi_inverse
    psi: Callable = bijection.psi
    psi_inverse: Callable = bijection.psi_inverse


def _phi_corrupt_mu(sigma: P.Permutation) -> L.LaguerreHistory:
    """phi with mu raised by one at the first index that has room."""
    h = bijection.phi(sigma)
    mu = list(h.mu)
    for i, (m, ht) in enumerate(zip(mu, h.path.heights)):
        if m < ht:
            mu[i] += 1
            break
    return L.LaguerreHistory(h.path, tuple(mu))


MUTATIONS: dict[str, Impl] = {
    "phi-mu": Impl(phi=_phi_corrupt_mu),
}


@dataclass
class CheckReport:
    check_name: str
    n_range: tuple[int, int]
    status: str
    counterexample: dict | None = None
    elapsed: float = 0.0
    details: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status == FAIL and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> str:
        d = asdict(self)
        d["n_range"] = list(self.n_range)
        return json.dumps(d, sort_keys=True)


# -- cached per-n data -------------------------------------------------------

@dataclass(frozen=True)
class PermStats:
    perm: P.Permutation
    inv: int
    exc_set: frozenset[int]
    des: int
    dd: int
    cros: tuple[int, ...]
    nes: tuple[int, ...]
    p31_2: int
    p2_13: int
    sde: frozenset[int]

    @property
    def exc(self) -> int:
        return len(self.exc_set)


@lru_cache(maxsize=2)
def perm_table(n: int) -> tuple[PermStats, ...]:
    """Statistics of every sigma in S_n, computed once and shared by all checks."""
    out = []
    for s in P.all_permutations(n):
        out.append(PermStats(
            perm=s,
            inv=P.inv(s),
            exc_set=P.exc_set(s),
            des=P.des(s),
            dd=P.dd_count(s),
            cros=tuple(P.cros_k(s, k) for k in range(1, n + 1)),
            nes=P.nes_vector(s),
            p31_2=P.pattern_31_2(s),
            p2_13=P.pattern_2_13(s),
            sde=P.shifted_double_excedances(s),
        ))
    return tuple(out)


def _ce(n: int, inp, prop: str, expected, actual, **extra) -> dict:
    d = {"n": n, "input": str(inp), "property": prop, "expected": _jsonable(expected),
         "actual": _jsonable(actual)}
    d.update({k: _jsonable(v) for k, v in extra.items()})
    return d


def _jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    if isinstance(x, (int, str, list, dict, bool)) or x is None:
        return x
    return str(x)


def _call(fn, arg):
    try:
        return fn(arg), None
    except LagpermError as e:
        return None, f"{type(e).__name__}: {e}"


# -- checks ------------------------------------------------------------------
# Each takes (n, impl, details) and returns a counterexample dict or None.

def _check_cardinality(n, impl, details):
    count = sum(1 for _ in L.all_histories(n))
    if count != math.factorial(n + 1):
        return _ce(n, f"L_{n}", "|L_n| == (n+1)!", math.factorial(n + 1), count)
    return None


def _check_bijection(fwd_name, inv_name):
    def check(n, impl, details):
        fwd, back = getattr(impl, fwd_name), getattr(impl, inv_name)
        images = {}
        for st in perm_table(n):
            h, err = _call(fwd, st.perm)
            if err:
                return _ce(n, st.perm, f"{fwd_name} defined", "a history", err)
            if h in images:
                return _ce(n, st.perm, f"{fwd_name} injective", f"image of {images[h]} differs",
                           str(h), collides_with=str(images[h]))
            images[h] = st.perm
            s2, err = _call(back, h)
            if s2 != st.perm:
                return _ce(n, st.perm, f"{inv_name}({fwd_name}(s)) == s", str(st.perm),
                           err or str(s2), history=str(h))
        for h in L.all_histories(n - 1):
            if h not in images:
                return _ce(n, h, f"{fwd_name} surjective onto L_(n-1)", "a preimage", "none")
            s2, err = _call(back, h)
            if s2 != images[h]:
                return _ce(n, h, f"{fwd_name}({inv_name}(h)) == h", str(images[h]), err or str(s2))
        return None
    return check


def _check_phi_stats(n, impl, details):
    for st in perm_table(n):
        h, err = _call(impl.phi, st.perm)
        if err:
            return _ce(n, st.perm, "phi defined", "a history", err)
        u, l1 = L.u_set(h), L.l1_set(h)
        if u & l1 or (u | l1) != st.exc_set:
            return _ce(n, st.perm, "EXC == U(w) disjoint-union L1(w)", st.exc_set, u | l1,
                       history=str(h))
        if st.inv - st.exc != h.weight:
            return _ce(n, st.perm, "inv - exc == area + sum(mu)", st.inv - st.exc, h.weight,
                       history=str(h))
        if (not st.sde) != (L.L1 not in h.path.steps):
            return _ce(n, st.perm, "no shifted double excedance <=> no L1 step",
                       not st.sde, L.L1 not in h.path.steps, history=str(h))
    return None


def _check_height_claim(n, impl, details):
    for st in perm_table(n):
        h, err = _call(impl.phi, st.perm)
        if err:
            return _ce(n, st.perm, "phi defined", "a history", err)
        for i in range(1, n):
            if h.path.heights[i - 1] != st.cros[i - 1] + st.nes[i - 1]:
                return _ce(n, st.perm, f"h_{i}(w) == cros_{i} + nest_{i}",
                           st.cros[i - 1] + st.nes[i - 1], h.path.heights[i - 1], history=str(h))
    return None


def _check_inv_decomp(n, impl, details):
    for st in perm_table(n):
        rhs = st.exc + sum(st.cros) + 2 * sum(st.nes)
        if st.inv != rhs:
            return _ce(n, st.perm, "inv == exc + cros + 2 nest", st.inv, rhs)
        v, p = P.val_vector(st.perm), P.pos_vector(st.perm)
        if st.nes[-1] != 0 or v[0] != 0 or p[-1] != 0:
            return _ce(n, st.perm, "nest_n == v_1 == p_n == 0", (0, 0, 0), (st.nes[-1], v[0], p[-1]))
        if sum(v) != st.exc or sum(p) != st.exc:
            return _ce(n, st.perm, "#ones(val) == #ones(pos) == exc", st.exc, (sum(v), sum(p)))
    return None


def _check_psi_stats(n, impl, details):
    for st in perm_table(n):
        s = st.perm
        h, err = _call(impl.psi, s)
        if err:
            return _ce(n, s, "psi defined", "a history", err)
        nu, nl1 = len(L.u_set(h)), len(L.l1_set(h))
        if st.des != nu + nl1:
            return _ce(n, s, "des == #U + #L1", st.des, nu + nl1, history=str(h))
        if st.dd != nl1:
            return _ce(n, s, "dd == #L1", st.dd, nl1, history=str(h))
        if 2 * st.p2_13 + st.p31_2 != h.weight:
            return _ce(n, s, "2 (2-13) + (31-2) == area + sum(mu)", 2 * st.p2_13 + st.p31_2,
                       h.weight, history=str(h))
        r31 = sum(P.pattern_31_2_at(s, k) for k in range(1, n + 1))
        r213 = sum(P.pattern_2_13_at(s, k) for k in range(1, n + 1))
        if (r31, r213) != (st.p31_2, st.p2_13):
            return _ce(n, s, "refined pattern counts sum to the totals", (st.p31_2, st.p2_13),
                       (r31, r213))
    return None


def _check_action_expansion(n, impl, details):
    one_plus_t = gamma.QTPolynomial({(0, 0): 1, (0, 1): 1})
    lhs = gamma.QTPolynomial(Counter(
        (h.weight, len(L.u_set(h)) + len(L.l1_set(h))) for h in L.all_histories(n)
    ))
    rhs = gamma.QTPolynomial()
    covered = set()
    orbit_total = 0
    for k in range(n // 2 + 1):
        inner = Counter()
        for rep in L.orbit_reps(n, k):
            inner[rep.weight, 0] += 1
            orb = L.orbit(rep)
            if len(orb) != 2 ** (n - 2 * k):
                return _ce(n, rep, "|orbit| == 2^(#level steps)", 2 ** (n - 2 * k), len(orb))
            if any(L.canonical(h) != rep for h in orb):
                return _ce(n, rep, "unique all-L0 member per orbit", str(rep), "another")
            stat = Counter(len(L.u_set(h)) + len(L.l1_set(h)) for h in orb)
            want = {k + j: math.comb(n - 2 * k, j) for j in range(n - 2 * k + 1)}
            if stat != want:
                return _ce(n, rep, "#U + #L1 over the orbit is k + Binomial(n-2k)", want, dict(stat))
            covered |= orb
            orbit_total += len(orb)
        rhs = rhs + gamma.QTPolynomial(inner) * gamma.QTPolynomial.t(k) * one_plus_t ** (n - 2 * k)
    if orbit_total != math.factorial(n + 1) or len(covered) != orbit_total:
        return _ce(n, f"L_{n}", "orbits partition L_n", math.factorial(n + 1), orbit_total)
    if lhs != rhs:
        return _ce(n, f"L_{n}", "action expansion", str(lhs), str(rhs))
    return None


def _check_thm_main_gamma(n, impl, details):
    lhs = gamma.gamma_expand(gamma.qt_eulerian(n), n)
    rhs = gamma.gamma_de(n)
    details.append(f"n={n} expand: {lhs}")
    details.append(f"n={n} DE:     {rhs}")
    if lhs != rhs:
        return _ce(n, f"S_{n}", "gamma(qt_eulerian) == DE model", str(rhs), str(lhs))
    if not rhs.is_positive():
        return _ce(n, f"S_{n}", "gamma-positivity", "nonnegative", str(rhs))
    total = sum(g * 2 ** (n - 1 - 2 * k) for k, g in enumerate(rhs.at_q1()))
    if total != math.factorial(n):
        return _ce(n, f"S_{n}", "sum gamma_k(1) 2^(n-1-2k) == n!", math.factorial(n), total)
    return None


def _check_thm_shin_zeng(n, impl, details):
    lhs = gamma.gamma_expand(gamma.qt_descent_polynomial(n), n)
    rhs = gamma.gamma_dd(n)
    details.append(f"n={n} DD: {rhs}")
    if lhs != rhs:
        return _ce(n, f"S_{n}", "gamma(qt_descent_polynomial) == DD model", str(rhs), str(lhs))
    if not rhs.is_positive():
        return _ce(n, f"S_{n}", "gamma-positivity", "nonnegative", str(rhs))
    return None


def _check_equidistribution(n, impl, details):
    table = perm_table(n)
    by_des = Counter(st.des for st in table)
    by_exc = Counter(st.exc for st in table)
    if by_des != by_exc:
        return _ce(n, f"S_{n}", "des and exc equidistributed", dict(by_des), dict(by_exc))
    a = gamma.qt_eulerian(n)
    b = gamma.qt_descent_polynomial(n)
    if a != b:
        return _ce(n, f"S_{n}", "q^(inv-exc) t^exc == t^des q^(2(2-13)+(31-2))", str(a), str(b))
    one_plus_t = gamma.QTPolynomial({(0, 0): 1, (0, 1): 1})
    eulerian = gamma.QTPolynomial(((0, d), c) for d, c in by_des.items())
    classical = gamma.QTPolynomial()
    for k in range((n - 1) // 2 + 1):
        size = sum(1 for _ in P.family(n, P.Family.DD, k))
        classical = classical + size * gamma.QTPolynomial.t(k) * one_plus_t ** (n - 1 - 2 * k)
    if eulerian != classical:
        return _ce(n, f"S_{n}", "A_n(t) == sum |DD_n,k| t^k (1+t)^(n-1-2k)", str(eulerian),
                   str(classical))
    return None


def _check_tangent(n, impl, details):
    sign = gamma.q_tangent_via_sign(n)
    de = gamma.q_tangent_via_de(n)
    alt = gamma.q_tangent_via_alternating(n)
    if n % 2 == 0:
        if not sign.is_zero():
            return _ce(n, f"S_{n}", "signed sum vanishes for even n", "0", str(sign))
        return None
    if not sign == de == alt:
        return _ce(n, f"S_{n}", "q-tangent expressions agree", str(sign), f"{de} / {alt}")
    k = (n - 1) // 2
    want = (-1) ** k * TANGENT_NUMBERS[k]
    got = sum(c for _, c in sign.terms)
    details.append(f"n={n} q=1 value: {got}")
    if got != want:
        return _ce(n, f"S_{n}", "q=1 value is (-1)^k T_(k+1)", want, got)
    sizes = (sum(1 for _ in P.family(n, P.Family.DE, k)),
             sum(1 for _ in P.family(n, P.Family.ALTERNATING)))
    if sizes != (TANGENT_NUMBERS[k],) * 2:
        return _ce(n, f"S_{n}", "|DE_n,(n-1)/2| == |A_n| == T", TANGENT_NUMBERS[k], sizes)
    return None


def _check_de_lists(n, impl, details):
    golden = {4: {0: GOLDEN_DE_4_0, 1: GOLDEN_DE_4_1}, 5: {2: GOLDEN_DE_5_2}}.get(n, {})
    for k, listed in golden.items():
        got = [str(s) for s in P.family(n, P.Family.DE, k)]
        if got != sorted(listed):
            return _ce(n, f"DE_{n},{k}", "matches the printed list", sorted(listed), got)
    return None


@dataclass(frozen=True)
class Check:
    name: str
    fn: Callable
    min_n: int = 1


CHECKS: dict[str, Check] = {c.name: c for c in (
    Check("CARDINALITY", _check_cardinality, min_n=0),
    Check("PHI_BIJECTION", _check_bijection("phi", "phi_inverse")),
    Check("PSI_BIJECTION", _check_bijection("psi", "psi_inverse")),
    Check("PHI_STATS", _check_phi_stats),
    Check("HEIGHT_CLAIM", _check_height_claim),
    Check("INV_DECOMP", _check_inv_decomp),
    Check("PSI_STATS", _check_psi_stats),
    Check("ACTION_EXPANSION", _check_action_expansion, min_n=0),
    Check("THM_MAIN_GAMMA", _check_thm_main_gamma),
    Check("THM_SHIN_ZENG", _check_thm_shin_zeng),
    Check("EQUIDISTRIBUTION", _check_equidistribution),
    Check("TANGENT", _check_tangent),
    Check("DE_LISTS", _check_de_lists),
)}


def _resolve_impl(impl: Impl | str | None) -> Impl:
    if impl is None:
        return Impl()
    if isinstance(impl, str):
        try:
            return MUTATIONS[impl]
        except KeyError:
            raise UnknownCheck(f"mutation {impl}") from None
    return impl


def run_check(name: str, max_n: int, impl: Impl | str | None = None) -> CheckReport:
    if name not in CHECKS:
        raise UnknownCheck(name)
    if not 1 <= max_n <= gamma.MAX_N:
        raise SizeTooLarge(f"max_n must be in [1, {gamma.MAX_N}], got {max_n}")
    check = CHECKS[name]
    impl = _resolve_impl(impl)
    details: list[str] = []
    start = time.perf_counter()
    ce = None
    for n in range(check.min_n, max_n + 1):
        ce = check.fn(n, impl, details)
        if ce is not None:
            break
    elapsed = time.perf_counter() - start
    return CheckReport(name, (check.min_n, max_n), FAIL if ce else PASS, ce, elapsed, details)


def _run_check_args(args) -> CheckReport:
    return run_check(*args)


def run_all(max_n: int, impl: Impl | str | None = None, workers: int = 1) -> list[CheckReport]:
    """Run every registered check; a failure in one never stops the others."""
    if not 1 <= max_n <= gamma.MAX_N:
        raise SizeTooLarge(f"max_n must be in [1, {gamma.MAX_N}], got {max_n}")
    jobs = [(name, max_n, impl) for name in CHECKS]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_check_args, jobs))
    return [run_check(*job) for job in jobs]


def format_table(reports: list[CheckReport]) -> str:
    width = max(len(r.check_name) for r in reports) if reports else 10
    lines = [f"{'check':<{width}}  {'n':<6}  status  seconds"]
    for r in reports:
        lo, hi = r.n_range
        lines.append(f"{r.check_name:<{width}}  {f'{lo}..{hi}':<6}  {r.status:<6}  {r.elapsed:7.3f}")
        if r.counterexample:
            lines.append(f"  counterexample: {json.dumps(r.counterexample, sort_keys=True)}")
    return "\n".join(lines)
