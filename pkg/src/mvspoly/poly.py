"""Sparse univariate polynomials over a FieldCtx.

A polynomial is a plain dict mapping exponent -> coefficient tuple, with no
zero coefficients stored.  The zero polynomial is the empty dict; its degree
is the marker NEG_INF.  Exponents may be huge (up to 2^62), which is the
point of the sparse form: the interesting polynomials here look like
x^(q^4+q) - x^(q^3+1).
"""

from __future__ import annotations

from .errors import GuardError, InputError

NEG_INF = float("-inf")
EXP_LIMIT = 1 << 62
DENSE_GUARD = 1 << 20


def zero() -> dict:
    return {}


def const(ctx, c) -> dict:
    return {} if c == ctx.zero else {0: c}


def monomial(ctx, e: int, c) -> dict:
    if e < 0:
        raise InputError("negative exponent")
    return {} if c == ctx.zero else {e: c}


def x_poly(ctx) -> dict:
    return {1: ctx.one}


def degree(f: dict):
    return max(f) if f else NEG_INF


def lc(ctx, f: dict):
    """Leading coefficient; zero element for the zero polynomial."""
    return f[max(f)] if f else ctx.zero


def is_monic(ctx, f: dict) -> bool:
    return bool(f) and lc(ctx, f) == ctx.one


def coeff(ctx, f: dict, e: int):
    return f.get(e, ctx.zero)


def add(ctx, f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        s = ctx.add(out.get(e, ctx.zero), c)
        if s == ctx.zero:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def neg(ctx, f: dict) -> dict:
    return {e: ctx.neg(c) for e, c in f.items()}


def sub(ctx, f: dict, g: dict) -> dict:
    return add(ctx, f, neg(ctx, g))


def scale(ctx, f: dict, c) -> dict:
    if c == ctx.zero:
        return {}
    return {e: ctx.mul(v, c) for e, v in f.items()}


def mul(ctx, f: dict, g: dict) -> dict:
    if not f or not g:
        return {}
    if degree(f) + degree(g) > EXP_LIMIT:
        raise InputError("exponent overflow beyond 2^62")
    out = {}
    zero_e = ctx.zero
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = e1 + e2
            s = ctx.add(out.get(e, zero_e), ctx.mul(c1, c2))
            if s == zero_e:
                out.pop(e, None)
            else:
                out[e] = s
    return out


def frob_power(ctx, f: dict, m: int) -> dict:
    """f^(p^m), computed termwise (valid in characteristic p)."""
    if m == 0:
        return dict(f)
    pe = ctx.p ** m
    if f and degree(f) * pe > EXP_LIMIT:
        raise InputError("exponent overflow beyond 2^62")
    return {e * pe: ctx.frobenius_p(c, m) for e, c in f.items()}


def pow_(ctx, f: dict, e: int) -> dict:
    """f^e using the base-p digits of e, so p-th powers stay termwise."""
    if e < 0:
        raise InputError("negative exponent")
    if e == 0:
        return {0: ctx.one}
    if not f:
        return {}
    out = {0: ctx.one}
    level = dict(f)
    while e:
        d = e % ctx.p
        for _ in range(d):
            out = mul(ctx, out, level)
        e //= ctx.p
        if e:
            level = frob_power(ctx, level, 1)
    return out


def compose(ctx, f: dict, g: dict) -> dict:
    """f(g(x)) by Horner steps over f's exponents in decreasing order; the
    gaps are bridged with base-p powers of g, so sparse f at huge degree is
    as cheap as its number of terms."""
    if not f:
        return {}
    exps = sorted(f, reverse=True)
    out = const(ctx, f[exps[0]])
    prev = exps[0]
    for e in exps[1:]:
        out = mul(ctx, out, pow_(ctx, g, prev - e))
        out = add(ctx, out, const(ctx, f[e]))
        prev = e
    if prev:
        out = mul(ctx, out, pow_(ctx, g, prev))
    return out


def derivative(ctx, f: dict) -> dict:
    out = {}
    for e, c in f.items():
        if e == 0:
            continue
        s = ctx.smul(e, c)
        if s != ctx.zero:
            out[e - 1] = s
    return out


def reduce_mod_field(ctx, f: dict) -> dict:
    """Canonical representative of f mod (x^Q - x): exponent 0 is fixed and
    e >= 1 maps to ((e-1) mod (Q-1)) + 1."""
    M = ctx.Q - 1
    out = {}
    for e, c in f.items():
        r = 0 if e == 0 else ((e - 1) % M) + 1
        s = ctx.add(out.get(r, ctx.zero), c)
        if s == ctx.zero:
            out.pop(r, None)
        else:
            out[r] = s
    return out


def divmod_(ctx, f: dict, g: dict):
    if not g:
        raise InputError("division by the zero polynomial")
    df, dg = degree(f), degree(g)
    if df == NEG_INF or df < dg:
        return {}, dict(f)
    if df - dg > DENSE_GUARD:
        raise GuardError("quotient degree beyond the dense guard")
    inv_lead = ctx.inv(lc(ctx, g))
    r = dict(f)
    qout = {}
    while r:
        dr = degree(r)
        if dr < dg:
            break
        c = ctx.mul(r[dr], inv_lead)
        e = dr - dg
        qout[e] = c
        for eg, cg in g.items():
            ee = eg + e
            s = ctx.sub(r.get(ee, ctx.zero), ctx.mul(c, cg))
            if s == ctx.zero:
                r.pop(ee, None)
            else:
                r[ee] = s
    return qout, r


def monic(ctx, f: dict) -> dict:
    if not f:
        return {}
    return scale(ctx, f, ctx.inv(lc(ctx, f)))


def gcd(ctx, f: dict, g: dict) -> dict:
    if not f and not g:
        raise InputError("gcd(0, 0) is undefined")
    a, b = dict(f), dict(g)
    while b:
        a, b = b, divmod_(ctx, a, b)[1]
    return monic(ctx, a)


def field_gcd(ctx, f: dict) -> dict:
    """gcd(f, x^Q - x) without materialising x^Q - x: reduce x^Q mod f by N
    successive p-th powers, then run Euclid on polynomials of degree < deg f."""
    if not f:
        raise InputError("gcd(0, x^Q - x) is undefined")
    if degree(f) == 0:
        return {0: ctx.one}
    s = x_poly(ctx)
    for _ in range(ctx.N):
        s = divmod_(ctx, frob_power(ctx, s, 1), f)[1]
    return gcd(ctx, f, sub(ctx, s, x_poly(ctx)))


def eval_at(ctx, f: dict, a):
    acc = ctx.zero
    for e, c in f.items():
        acc = ctx.add(acc, ctx.mul(c, ctx.pow_elem(a, e)))
    return acc


def value_set(ctx, f: dict) -> frozenset:
    return frozenset(eval_at(ctx, f, a) for a in ctx.elements())


def interpolate(ctx, points) -> dict:
    """Unique polynomial of degree < len(points) through the given
    (abscissa, value) pairs."""
    pts = list(points)
    xs = [a for a, _ in pts]
    if len(set(xs)) != len(xs):
        raise InputError("repeated abscissa")
    master = {0: ctx.one}
    for a in xs:
        master = mul(ctx, master, {1: ctx.one, 0: ctx.neg(a)} if a != ctx.zero
                     else {1: ctx.one})
    dm = derivative(ctx, master)
    out = {}
    for a, y in pts:
        if y == ctx.zero:
            continue
        li = divmod_(ctx, master, {1: ctx.one, 0: ctx.neg(a)} if a != ctx.zero
                     else {1: ctx.one})[0]
        w = ctx.mul(y, ctx.inv(eval_at(ctx, dm, a)))
        out = add(ctx, out, scale(ctx, li, w))
    return out


# ---------------------------------------------------------------------------
# text and JSON forms
# ---------------------------------------------------------------------------

def to_text(ctx, f: dict) -> str:
    if not f:
        return "0"
    parts = []
    for e in sorted(f, reverse=True):
        c = f[e]
        cs = ctx.format_elem(c)
        if e == 0:
            parts.append(cs)
        else:
            xs = "x" if e == 1 else f"x^{e}"
            parts.append(xs if c == ctx.one else f"{cs}*{xs}")
    return " + ".join(parts)


def from_text(ctx, s: str) -> dict:
    """Parse "c*x^e + ..." with coefficients as comma digit strings or "g";
    a bare coefficient is a constant and a bare x power has coefficient 1.
    Minus signs negate the following term."""
    text = s.strip()
    if not text:
        raise InputError("empty polynomial text")
    if text == "0":
        return {}
    # tokenize into signed terms
    terms = []
    sign = 1
    buf = ""
    for ch in text:
        if ch in "+-":
            if buf.strip():
                terms.append((sign, buf.strip()))
            elif terms or buf.strip():
                pass
            sign = 1 if ch == "+" else -1
            buf = ""
        else:
            buf += ch
    if buf.strip():
        terms.append((sign, buf.strip()))
    if not terms:
        raise InputError(f"bad polynomial text {s!r}")
    out = {}
    for sg, term in terms:
        cpart, _, xpart = term.partition("x")
        cpart = cpart.strip().rstrip("*").strip()
        if _ == "":                       # no x: constant term
            c = ctx.parse_elem(cpart)
            e = 0
        else:
            c = ctx.parse_elem(cpart) if cpart else ctx.one
            xpart = xpart.strip()
            if xpart == "":
                e = 1
            elif xpart.startswith("^"):
                e = int(xpart[1:])
            else:
                raise InputError(f"bad term {term!r}")
        if sg < 0:
            c = ctx.neg(c)
        cur = ctx.add(out.get(e, ctx.zero), c)
        if cur == ctx.zero:
            out.pop(e, None)
        else:
            out[e] = cur
    return out


def to_json_obj(ctx, f: dict) -> dict:
    return {"terms": [{"e": e, "c": list(f[e])} for e in sorted(f, reverse=True)]}


def from_json_obj(ctx, obj) -> dict:
    out = {}
    for t in obj["terms"]:
        e = int(t["e"])
        c = tuple(int(d) for d in t["c"])
        if len(c) != ctx.N or any(d < 0 or d >= ctx.p for d in c):
            raise InputError("bad coefficient digits")
        if c != ctx.zero:
            out[e] = c
    return out
