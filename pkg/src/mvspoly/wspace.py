"""Explicit structure of the member spaces W(x^(q^d) - alpha*x | F_{q^n}).

Members with values in a Frobenius-stable subfield are sums of orbit traces
of monomials whose exponents have 0/1 digits base q', q' = q^d.  The orbit
decomposition of those exponent vectors under cyclic digit rotation gives a
direct sum of components, one per necklace, and an explicit F_q-basis of
size d * 2^(n/d).  The lift pipeline pushes that basis through M(x) from a
binomial factorization gamma * A(M(x)) to generate the member space of a
general split additive polynomial A, with rank d*2^(n/d) - d + t.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linearized as lin
from . import mvsp
from . import poly
from .errors import GuardError, InputError
from .linalg import FpSpan

ENUM_HARD_GUARD = 1 << 24
ORBIT_GUARD = 24


@dataclass(frozen=True)
class Orbit:
    bits: tuple        # digits of the representative, low q-power first
    exponent: int      # its value sum bits[i] * q^i (the least in the orbit)
    size: int


@dataclass(frozen=True)
class OrbitTable:
    q: int
    n: int
    orbits: tuple
    counts: dict       # orbit size -> number of orbits of that size


def _necklaces(n: int):
    """All binary necklaces of length n with their periods, lex order
    (the classic prenecklace generation, constant amortized time)."""
    a = [0] * (n + 1)
    out = []

    def gen(t, per):
        if t > n:
            if n % per == 0:
                out.append((tuple(a[1:n + 1]), per))
            return
        a[t] = a[t - per]
        gen(t + 1, per)
        for v in range(a[t - per] + 1, 2):
            a[t] = v
            gen(t + 1, t)

    gen(1, 1)
    return out


def orbit_table(q: int, n: int) -> OrbitTable:
    """Necklace orbits of {0,1}^n under digit rotation, i.e. of 0/1-digit
    exponents under e -> q*e mod (q^n - 1).  The stored representative is
    the rotation with the smallest exponent value."""
    if n < 1:
        raise InputError("n must be positive")
    if n > ORBIT_GUARD:
        raise GuardError(f"orbit enumeration refused beyond n = {ORBIT_GUARD}")
    M = q ** n - 1
    orbits = []
    counts = {}
    for bits, per in _necklaces(n):
        e = sum(b * q ** i for i, b in enumerate(bits))
        best = e
        cur = e
        for _ in range(per - 1):
            cur = cur * q % M if cur else 0
            if cur < best:
                best = cur
        digits = tuple((best // q ** i) % q for i in range(n))
        orbits.append(Orbit(bits=digits, exponent=best, size=per))
        counts[per] = counts.get(per, 0) + 1
    orbits.sort(key=lambda o: o.exponent)
    return OrbitTable(q=q, n=n, orbits=tuple(orbits), counts=counts)


# ---------------------------------------------------------------------------
# the explicit basis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisElem:
    elem: dict          # the reduced polynomial
    orbit_exponent: int
    orbit_size: int
    beta: tuple         # the subfield scalar that seeds the orbit trace


@dataclass(frozen=True)
class WBasis:
    d: int
    alpha: tuple
    scale: tuple        # beta with beta^(q^d - 1) = alpha; members are beta * (plain members)
    elems: tuple
    dim: int


def build_basis(ctx, d: int, alpha) -> WBasis:
    """F_q-basis of W(x^(q^d) - alpha*x | F_{q^n}).

    Per orbit of exponents with 0/1 digits base q' = q^d and per F_q-basis
    element beta_j of F_{q'^size}, emit the orbit trace
    sum_l (beta_j x^k)^(q'^l) reduced mod x^Q - x, then scale everything by
    a beta with beta^(q'-1) = alpha when alpha != 1."""
    if ctx.n % d != 0:
        raise InputError(f"d = {d} does not divide n = {ctx.n}")
    qd = ctx.q ** d
    if qd <= 2 and not (qd == 2 and alpha == ctx.one):
        raise InputError("binomial degree must exceed 2 (only x^2 - x at q = 2 is admitted)")
    beta = ctx.solve_power(alpha, qd - 1) if alpha != ctx.one else ctx.one
    if beta is None:
        raise InputError("alpha is not a (q^d - 1)-th power; the binomial does not split")
    nprime = ctx.n // d
    table = orbit_table(qd, nprime)
    M = ctx.Q - 1
    elems = []
    for orbit in table.orbits:
        for bj in ctx.subfield_basis(d * orbit.size):
            f = {}
            e = orbit.exponent
            for l in range(orbit.size):
                f[e if e else 0] = ctx.frobenius(bj, d * l)
                e = e * qd % M if e else 0
            if beta != ctx.one:
                f = poly.scale(ctx, f, beta)
            elems.append(BasisElem(elem=f, orbit_exponent=orbit.exponent,
                                   orbit_size=orbit.size, beta=bj))
    dim = d * 2 ** nprime
    assert len(elems) == dim
    return WBasis(d=d, alpha=alpha, scale=beta, elems=tuple(elems), dim=dim)


def target_binomial(ctx, wb: WBasis) -> dict:
    return lin.to_sparse(ctx, lin.binomial(ctx, wb.d, wb.alpha))


def membership_coordinates(ctx, F: dict, wb: WBasis):
    """Per-orbit coordinates of F in the basis, or None.

    After unscaling, every exponent must have 0/1 digits base q', and the
    coefficients along each orbit must follow the Frobenius chain
    c(rot^j(k)) = c(k)^(q'^j) with the whole orbit present."""
    for e in F:
        if e < 0 or e > ctx.Q - 1:
            raise InputError("membership needs a polynomial reduced mod x^Q - x")
    qd = ctx.q ** wb.d
    nprime = ctx.n // wb.d
    M = ctx.Q - 1
    g = F if wb.scale == ctx.one else poly.scale(ctx, F, ctx.inv(wb.scale))
    seen = set()
    coords = {}
    for e in sorted(g):
        if e in seen:
            continue
        digits = [(e // qd ** i) % qd for i in range(nprime)]
        if any(dig > 1 for dig in digits):
            return None
        # walk the rotation cycle
        cycle = [e]
        cur = e * qd % M if e else 0
        while cur != e:
            cycle.append(cur)
            cur = cur * qd % M if cur else 0
        rep = min(cycle)
        size = len(cycle)
        c = g.get(rep)
        if c is None:
            return None
        if ctx.frobenius(c, wb.d * size) != c:
            return None
        cur = rep
        for j in range(size):
            expected = ctx.frobenius(c, wb.d * j)
            if g.get(cur) != expected:
                return None
            seen.add(cur)
            cur = cur * qd % M if cur else 0
        coords[rep] = c
    return coords


def reconstruct_from_coordinates(ctx, wb: WBasis, coords: dict) -> dict:
    qd = ctx.q ** wb.d
    M = ctx.Q - 1
    f = {}
    for rep, c in coords.items():
        e = rep
        j = 0
        while True:
            f[e] = ctx.frobenius(c, wb.d * j)
            e = e * qd % M if e else 0
            j += 1
            if e == rep:
                break
    if wb.scale != ctx.one:
        f = poly.scale(ctx, f, wb.scale)
    return {e: c for e, c in f.items() if c != ctx.zero}


def span_iter(ctx, polys, limit=ENUM_HARD_GUARD):
    """All F_q-linear combinations of the given polynomials, no duplicates
    when the inputs are independent."""
    dim = len(polys)
    count = ctx.q ** dim
    if count > min(limit, ENUM_HARD_GUARD):
        raise GuardError(f"enumeration of {count} span elements refused")
    fq = ctx.subfield_elements(1)
    for digits in itertools.product(fq, repeat=dim):
        f = {}
        for c, g in zip(digits, polys):
            if c != ctx.zero:
                f = poly.add(ctx, f, poly.scale(ctx, g, c))
        yield f


def enumerate_w(ctx, wb: WBasis, limit=ENUM_HARD_GUARD):
    """Stream of all members of the basis span."""
    return span_iter(ctx, [b.elem for b in wb.elems], limit)


# ---------------------------------------------------------------------------
# the lift pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftReport:
    witness: lin.LiftWitness
    basis: WBasis
    generators: tuple
    dim_lower: int


def _flatten(ctx, f: dict, exponents: list) -> list:
    row = []
    for e in exponents:
        row.extend(f.get(e, ctx.zero))
    return row


def lift_pipeline(ctx, a: lin.AdditivePoly) -> LiftReport:
    """Generators of the member space of A from the binomial one.

    Composes M from the binomial factorization with every basis element of
    the binomial space, reduces, and removes F_q-dependencies; the surviving
    rank is exactly d*2^(n/d) - d + t (the kernel of the map is the root
    space of M, which consists of constants), and every generator is
    re-verified against A by the Mills criterion."""
    aq = lin.as_context_base(ctx, a)
    if not lin.is_star(ctx, aq):
        raise InputError("lift pipeline needs a monic split separable A of degree > 2")
    d, alpha = lin.minimal_binomial_multiple(ctx, aq)
    witness = lin.factor_through_binomial(ctx, aq, d, alpha)
    wb = build_basis(ctx, d, alpha)
    raw = [poly.reduce_mod_field(ctx, lin.apply_poly(ctx, witness.M, b.elem))
           for b in wb.elems]
    exponents = sorted({e for f in raw for e in f})
    width = max(1, len(exponents) * ctx.N)
    span = FpSpan(ctx.p, width)
    fpq = ctx.fp_basis_of_fq()
    kept = []
    for g in raw:
        if not g:
            continue
        vec = _flatten(ctx, g, exponents)
        if span.contains(vec):
            continue
        kept.append(g)
        for u in fpq:
            span.add(_flatten(ctx, poly.scale(ctx, g, u), exponents))
    bound = d * 2 ** (ctx.n // d) - d + witness.t
    if len(kept) != bound:
        raise AssertionError(f"lift rank {len(kept)} != expected {bound}")
    asp = lin.to_sparse(ctx, aq)
    for g in kept:
        if not mvsp.mills_check(ctx, g, asp).is_member:
            raise AssertionError("lift generator failed verification")
    return LiftReport(witness=witness, basis=wb, generators=tuple(kept),
                      dim_lower=len(kept))


def power_image_count(ctx, T: dict, v: int, generators, *, limit=1 << 16,
                      samples=200, seed=0) -> int:
    """Number of distinct F^v over the span of the generators, every counted
    image verified against T.  When the span is too large to enumerate, a
    seeded sample is verified instead and the guaranteed lower bound
    (q^dim - 1)/v + 1 is returned."""
    gens = list(generators)
    dim = len(gens)
    count = ctx.q ** dim
    if count <= limit:
        images = set()
        for f in span_iter(ctx, gens, limit):
            img = poly.pow_(ctx, f, v)
            if not mvsp.mills_check(ctx, img, T).is_member:
                raise AssertionError("power image failed verification")
            images.add(frozenset(img.items()))
        return len(images)
    rng = random.Random(seed)
    fq = ctx.subfield_elements(1)
    for _ in range(samples):
        f = {}
        while not f:
            f = {}
            for g in gens:
                c = fq[rng.randrange(len(fq))]
                if c != ctx.zero:
                    f = poly.add(ctx, f, poly.scale(ctx, g, c))
        img = poly.pow_(ctx, f, v)
        if not mvsp.mills_check(ctx, img, T).is_member:
            raise AssertionError("power image failed verification")
    return (count - 1) // v + 1
