"""Verification and classification of minimal value set polynomials.

The two faces of the theory live here side by side:

- is_minimal evaluates F on the whole field and compares |V_F| against
  floor((Q-1)/deg F) + 1; it is the slow, assumption-free ground truth.
- mills_check tests the polynomial identity T(F) = theta*(x^Q - x)*F' for
  theta among -T'(gamma) over the roots gamma of T; by the Mills criterion
  this holds exactly when F is a minimal value set polynomial whose value
  set is the root set of T.

Everything else (additive reductions, power lifts, low degree normal forms,
root profiles) is built from those two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linearized as lin
from . import poly
from .errors import GuardError, InputError


@dataclass(frozen=True)
class MvspReport:
    is_mvsp: bool
    value_set: frozenset | None
    deg: int
    bound: int | None
    theta: tuple | None
    theta_candidates: tuple
    is_member: bool
    reason: str = ""


@dataclass(frozen=True)
class ReductionWitness:
    """T(x^v + gamma) / x^(v-1) is the additive polynomial A at level base."""
    v: int
    base: int
    gamma: tuple
    A: lin.AdditivePoly


@dataclass(frozen=True)
class FormWitness:
    shape: str          # "linearized_power" or "sqrt_plus_one_power"
    alpha: tuple
    v: int
    gamma: tuple
    L: dict             # the inner polynomial (monic), or x + beta for the sqrt shape
    beta: tuple | None = None


# ---------------------------------------------------------------------------
# value polynomial validation (cached per context)
# ---------------------------------------------------------------------------

def validate_value_poly(ctx, T: dict):
    """Roots and theta candidates of T, after checking the standing
    hypothesis: monic, separable, degree > 2, splits over the field.  The
    quadratic x^2 - x is admitted when q = 2, which the subfield-valued
    theory needs.  Returns (roots, thetas), both in canonical order."""
    cache = ctx._caches.setdefault("value_poly", {})
    key = frozenset(T.items())
    if key in cache:
        val = cache[key]
        if isinstance(val, Exception):
            raise val
        return val
    try:
        result = _validate_value_poly(ctx, T)
    except InputError as exc:
        cache[key] = exc
        raise
    cache[key] = result
    return result


def _validate_value_poly(ctx, T):
    d = poly.degree(T)
    if d is poly.NEG_INF or d < 1:
        raise InputError("value polynomial must be nonconstant")
    if not poly.is_monic(ctx, T):
        raise InputError("value polynomial must be monic")
    carve_out = (ctx.q == 2 and T == {2: ctx.one, 1: ctx.one})
    if d <= 2 and not carve_out:
        raise InputError("value polynomial must have degree > 2 "
                         "(only x^2 - x at q = 2 is admitted)")
    if d > ctx.Q:
        raise InputError("value polynomial degree exceeds the field size")
    g = poly.field_gcd(ctx, T)
    if poly.degree(g) != d:
        raise InputError("value polynomial does not split into distinct roots over the field")
    roots = tuple(a for a in ctx.elements() if poly.eval_at(ctx, T, a) == ctx.zero)
    assert len(roots) == d
    dT = poly.derivative(ctx, T)
    thetas = []
    for r in roots:
        th = ctx.neg(poly.eval_at(ctx, dT, r))
        if th not in thetas:
            thetas.append(th)
    return roots, tuple(thetas)


# ---------------------------------------------------------------------------
# the two membership tests
# ---------------------------------------------------------------------------

def is_minimal(ctx, F: dict) -> MvspReport:
    """Exhaustive minimality test: evaluate F everywhere."""
    d = poly.degree(F)
    if d is poly.NEG_INF or d < 1:
        raise InputError("minimality is defined for nonconstant polynomials")
    vs = poly.value_set(ctx, F)
    bound = (ctx.Q - 1) // d + 1
    ok = len(vs) == bound
    return MvspReport(is_mvsp=ok, value_set=vs, deg=d, bound=bound,
                      theta=None, theta_candidates=(), is_member=ok,
                      reason="" if ok else "value set larger than the bound")


def _compose_value_poly(ctx, T, F):
    """T(F), with a termwise fast path when T is additive."""
    cache = ctx._caches.setdefault("value_poly_additive", {})
    key = frozenset(T.items())
    if key not in cache:
        cache[key] = lin.detect_additive(ctx, T)
    a = cache[key]
    if a is not None:
        return lin.apply_poly(ctx, a, F)
    return poly.compose(ctx, T, F)


def mills_check(ctx, F: dict, T: dict) -> MvspReport:
    """Membership of F in the space of T-minimal polynomials.

    For nonconstant F the polynomial identity is tested exactly; the degree
    equation deg T * deg F = Q + deg F' filters hopeless inputs before any
    composition happens.  Constants are members exactly when they are roots
    of T."""
    roots, thetas = validate_value_poly(ctx, T)
    dT = poly.degree(T)
    dF = poly.degree(F)
    if dF is poly.NEG_INF or dF == 0:
        c = F.get(0, ctx.zero)
        member = poly.eval_at(ctx, T, c) == ctx.zero
        return MvspReport(is_mvsp=False, value_set=frozenset({c}), deg=0 if F else 0,
                          bound=None, theta=None, theta_candidates=thetas,
                          is_member=member,
                          reason="" if member else "constant is not a root")
    bound = (ctx.Q - 1) // dF + 1
    dFp = poly.degree(poly.derivative(ctx, F))
    if dFp is poly.NEG_INF or dT * dF != ctx.Q + dFp:
        return MvspReport(is_mvsp=False, value_set=None, deg=dF, bound=bound,
                          theta=None, theta_candidates=thetas, is_member=False,
                          reason="value set mismatch")
    lhs = _compose_value_poly(ctx, T, F)
    dFpoly = poly.derivative(ctx, F)
    rhs = poly.mul(ctx, {ctx.Q: ctx.one, 1: ctx.neg(ctx.one)}, dFpoly)
    # theta is forced by the leading coefficients, then checked everywhere
    lead = ctx.Q + dFp
    theta = ctx.div(lhs.get(lead, ctx.zero), rhs[lead])
    if theta == ctx.zero or theta not in thetas or lhs != poly.scale(ctx, rhs, theta):
        return MvspReport(is_mvsp=False, value_set=None, deg=dF, bound=bound,
                          theta=None, theta_candidates=thetas, is_member=False,
                          reason="value set mismatch")
    return MvspReport(is_mvsp=True, value_set=frozenset(roots), deg=dF, bound=bound,
                      theta=theta, theta_candidates=thetas, is_member=True)


# ---------------------------------------------------------------------------
# additive reduction and the power lift
# ---------------------------------------------------------------------------

def find_additive_reduction(ctx, T: dict) -> list[ReductionWitness]:
    """All (v, base, gamma) with T(x^v + gamma)/x^(v-1) additive at that base,
    scanning base in 1..N, v over divisors of p^base - 1, gamma over the
    roots of T.  An empty list certifies that no nonconstant member of the
    T-space can exist."""
    roots, _ = validate_value_poly(ctx, T)
    out = []
    for base in range(1, ctx.N + 1):
        mod = ctx.p ** base - 1
        for v in sorted(d for d in range(1, mod + 1) if mod % d == 0):
            for gamma in roots:
                shifted = poly.compose(ctx, T, {v: ctx.one, 0: gamma} if gamma != ctx.zero
                                       else {v: ctx.one})
                if 0 in shifted:
                    continue
                quotient = {e - (v - 1): c for e, c in shifted.items()}
                if min(quotient) < 1:
                    continue
                a = lin.detect_additive(ctx, quotient)
                if a is None or a.is_zero() or a.base % base != 0:
                    continue
                out.append(ReductionWitness(v=v, base=base, gamma=gamma,
                                            A=lin.rebase(ctx, a, base)))
    return out


def power_lift(ctx, F: dict, v: int, T: dict) -> dict:
    """F -> F^v carrying members of the additive space A = T(x^v)/x^(v-1)
    into the T-space; the image is re-verified with the forced theta."""
    validate_value_poly(ctx, T)
    if 0 in T:
        raise InputError("power lift needs x | T")
    if v < 1:
        raise InputError("v must be positive")
    shifted = poly.compose(ctx, T, {v: ctx.one})
    if 0 in shifted:
        raise InputError("T(x^v) is not divisible by x^(v-1)")
    quotient = {e - (v - 1): c for e, c in shifted.items()}
    a = lin.detect_additive(ctx, quotient)
    if a is None or a.is_zero():
        raise InputError("T(x^v)/x^(v-1) is not additive")
    if not any(a.base % b == 0 and (ctx.p ** b - 1) % v == 0
               for b in range(1, a.base + 1)):
        raise InputError("v does not divide p^b - 1 at any additivity level of A")
    if not lin.is_star(ctx, a):
        raise InputError("the additive reduction of T fails the standing hypothesis")
    asp = lin.to_sparse(ctx, a)
    rep = mills_check(ctx, F, asp)
    if not rep.is_member:
        raise InputError("F is not a member of the additive space")
    image = poly.pow_(ctx, F, v)
    check = mills_check(ctx, image, T)
    if not check.is_member:
        raise AssertionError("power lift image failed verification")
    if poly.degree(F) >= 1:
        omega0 = lin.as_context_base(ctx, a).coeffs[0]
        expected = ctx.neg(ctx.div(omega0, ctx.int_elem(v)))
        if check.theta != expected:
            raise AssertionError("power lift produced an unexpected theta")
    return image


# ---------------------------------------------------------------------------
# low degree normal forms
# ---------------------------------------------------------------------------

def _vth_root_monic(ctx, g: dict, v: int):
    """Formal v-th root of a monic polynomial, or None.  v is prime to p."""
    dg = poly.degree(g)
    if dg % v != 0:
        return None
    m = dg // v
    h = {m: ctx.one}
    vel = ctx.int_elem(v)
    for _ in range(m + 1):
        r = poly.sub(ctx, g, poly.pow_(ctx, h, v))
        if not r:
            return h
        e = poly.degree(r)
        j = e - (v - 1) * m
        if j < 0 or j >= m or j in h:
            return None
        h[j] = ctx.div(r[e], vel)
    r = poly.sub(ctx, g, poly.pow_(ctx, h, v))
    return h if not r else None


def _count_distinct_roots(ctx, f: dict) -> int:
    return sum(1 for a in ctx.elements() if poly.eval_at(ctx, f, a) == ctx.zero)


def extract_linearized_power_form(ctx, F: dict) -> FormWitness | None:
    """Try to exhibit F = alpha * L^v + gamma with L a monic additive-plus-
    constant polynomial splitting into distinct linear factors and v dividing
    p^b - 1 at an additivity level b of L.  First witness in scan order."""
    dF = poly.degree(F)
    if dF is poly.NEG_INF or dF < 1:
        raise InputError("form extraction needs a nonconstant polynomial")
    values = sorted(poly.value_set(ctx, F), key=ctx.elem_to_int)
    alpha = poly.lc(ctx, F)
    for gamma in values:
        g = poly.sub(ctx, F, poly.const(ctx, gamma))
        gm = poly.monic(ctx, g)
        for v in sorted(d for d in range(1, dF + 1) if dF % d == 0):
            if not any((ctx.p ** b - 1) % v == 0 for b in range(1, ctx.N + 1)):
                continue
            h = gm if v == 1 else _vth_root_monic(ctx, gm, v)
            if h is None:
                continue
            c0 = h.get(0, ctx.zero)
            core = poly.sub(ctx, h, poly.const(ctx, c0))
            a = lin.detect_additive(ctx, core)
            if a is None or a.is_zero():
                continue
            if not any(a.base % b == 0 and (ctx.p ** b - 1) % v == 0
                       for b in range(1, a.base + 1)):
                continue
            if _count_distinct_roots(ctx, h) != poly.degree(h):
                continue
            return FormWitness(shape="linearized_power", alpha=alpha, v=v,
                               gamma=gamma, L=h)
    return None


def extract_shift_power_form(ctx, F: dict) -> FormWitness | None:
    """Try F = alpha*(x + beta)^(s+1) + gamma where s = sqrt(Q)."""
    s = math.isqrt(ctx.Q)
    if s * s != ctx.Q or poly.degree(F) != s + 1:
        return None
    alpha = poly.lc(ctx, F)
    beta = ctx.div(poly.coeff(ctx, F, s), alpha)   # (s+1 choose s) = 1 in char p
    gamma = poly.eval_at(ctx, F, ctx.neg(beta))
    candidate = poly.add(
        ctx,
        poly.scale(ctx, poly.pow_(ctx, {1: ctx.one, 0: beta} if beta != ctx.zero
                                   else {1: ctx.one}, s + 1), alpha),
        poly.const(ctx, gamma))
    if candidate != F:
        return None
    return FormWitness(shape="sqrt_plus_one_power", alpha=alpha, v=s + 1,
                       gamma=gamma, L={1: ctx.one, 0: beta} if beta != ctx.zero
                       else {1: ctx.one}, beta=beta)


def classify_low_degree(ctx, F: dict) -> FormWitness | None:
    """Normal form of a candidate of degree <= sqrt(Q) + 1, or None."""
    d = poly.degree(F)
    if d is poly.NEG_INF or d < 1:
        raise InputError("classification needs a nonconstant polynomial")
    s = math.isqrt(ctx.Q)
    if d == s + 1 and s * s == ctx.Q:
        return extract_shift_power_form(ctx, F)
    if d <= s:
        return extract_linearized_power_form(ctx, F)
    raise InputError("degree out of the classification range")


def affine_equivalent(ctx, F: dict, G: dict):
    """First (a, b) in canonical scan order with G = F(ax + b), or None."""
    if poly.degree(F) != poly.degree(G):
        return None
    if ctx.Q > 4096:
        raise GuardError("affine search refused above 4096 elements")
    for a in ctx.elements():
        if a == ctx.zero:
            continue
        for b in ctx.elements():
            inner = {1: a} if b == ctx.zero else {1: a, 0: b}
            if poly.compose(ctx, F, inner) == G:
                return a, b
    return None


# ---------------------------------------------------------------------------
# root profile diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootProfile:
    gamma: tuple
    distinct_field_roots: int
    multiplicities: tuple          # per field root, canonical order
    has_simple_root: bool


@dataclass(frozen=True)
class ProfileReport:
    per_root: tuple
    multiplicities_coprime_p: bool
    simple_root_count: int
    required_simple_roots: int
    has_required_simple_roots: bool


def mills_profile(ctx, F: dict, T: dict) -> ProfileReport:
    """Per root gamma of T: the number of distinct field roots of F - gamma
    (cross-checkable as deg gcd(F - gamma, x^Q - x)), their multiplicities by
    repeated division, and whether a simple root exists.  Field roots of a
    member must have multiplicity prime to p, and at least r = |roots| - 1
    of the shifts must admit a simple root."""
    roots, _ = validate_value_poly(ctx, T)
    if len(roots) <= 2:
        raise InputError("profile needs more than two values")
    rep = mills_check(ctx, F, T)
    if not rep.is_member or poly.degree(F) < 1:
        raise InputError("profile is only defined for nonconstant members")
    per = []
    coprime = True
    simple_count = 0
    for gamma in roots:
        shifted = poly.sub(ctx, F, poly.const(ctx, gamma))
        l = poly.degree(poly.field_gcd(ctx, shifted))
        froots = [a for a in ctx.elements() if poly.eval_at(ctx, shifted, a) == ctx.zero]
        assert len(froots) == l
        mults = []
        for a in froots:
            m = 0
            cur = shifted
            linear = {1: ctx.one, 0: ctx.neg(a)} if a != ctx.zero else {1: ctx.one}
            while True:
                qt, rm = poly.divmod_(ctx, cur, linear)
                if rm:
                    break
                cur = qt
                m += 1
            mults.append(m)
            if m % ctx.p == 0:
                coprime = False
        has_simple = any(m == 1 for m in mults)
        if has_simple:
            simple_count += 1
        per.append(RootProfile(gamma=gamma, distinct_field_roots=l,
                               multiplicities=tuple(mults),
                               has_simple_root=has_simple))
    r = len(roots) - 1
    return ProfileReport(per_root=tuple(per),
                         multiplicities_coprime_p=coprime,
                         simple_root_count=simple_count,
                         required_simple_roots=r,
                         has_required_simple_roots=simple_count >= r)
