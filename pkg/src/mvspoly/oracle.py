"""Independent ground truth for the constructive machinery.

Nothing in this module reuses the basis construction or the lift pipeline:
membership is recomputed from scratch, either by enumerating whole function
spaces and interpolating, or by exact nullspace computation for the linear
operator F -> A(F) - theta*(x^Q - x)*F'.  The test suite then insists that
both worlds agree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from . import linearized as lin
from . import mvsp
from . import poly
from . import wspace
from .errors import GuardError, InputError
from .linalg import rank_mod

FUNCTION_SCAN_GUARD = 1 << 20
POLY_SCAN_GUARD = 1 << 22
DIM_GUARD = 4096
WITNESS_KEEP = 4096

CONDITIONS = ("mvsp_onto_base", "mills_identity", "degree_window", "degree_bound")


@dataclass
class CensusReport:
    field_spec: str
    value_set_desc: str
    total: int
    members: int
    nonconstant_members: int
    degree_histogram: dict
    condition_counts: dict = field(default_factory=dict)
    disagreements: int = 0
    agreement: dict = field(default_factory=dict)
    witnesses: list | None = None
    note: str = ""


def _lagrange_cache(ctx):
    """Dense Lagrange basis over the full field, one polynomial per node."""
    key = "lagrange_full"
    if key not in ctx._caches:
        if ctx.Q > 512:
            raise GuardError("full-graph interpolation cache refused above 512 elements")
        nodes = ctx.elements()
        basis = []
        master = {0: ctx.one}
        for a in nodes:
            master = poly.mul(ctx, master, {1: ctx.one, 0: ctx.neg(a)}
                              if a != ctx.zero else {1: ctx.one})
        dm = poly.derivative(ctx, master)
        for a in nodes:
            li = poly.divmod_(ctx, master, {1: ctx.one, 0: ctx.neg(a)}
                              if a != ctx.zero else {1: ctx.one})[0]
            w = ctx.inv(poly.eval_at(ctx, dm, a))
            dense = [ctx.zero] * ctx.Q
            for e, c in poly.scale(ctx, li, w).items():
                dense[e] = c
            basis.append(dense)
        ctx._caches[key] = basis
    return ctx._caches[key]


def interpolate_table(ctx, values) -> dict:
    """Interpolant of a full value table given in canonical element order."""
    basis = _lagrange_cache(ctx)
    dense = [ctx.zero] * ctx.Q
    for y, li in zip(values, basis):
        if y == ctx.zero:
            continue
        for e in range(ctx.Q):
            if li[e] != ctx.zero:
                dense[e] = ctx.add(dense[e], ctx.mul(y, li[e]))
    return {e: c for e, c in enumerate(dense) if c != ctx.zero}


def census_subfield_valued(ctx, guard=FUNCTION_SCAN_GUARD) -> CensusReport:
    """Scan every function F_{q^n} -> F_q, interpolate, and classify by the
    four equivalent membership conditions (minimality onto the base field,
    the Mills identity with theta = 1, the degree window, the degree bound).

    The conditions are evaluated independently so their agreement is data,
    not an assumption.  Total member count must equal q^(2^n)."""
    total = ctx.q ** ctx.Q
    if total > guard:
        raise GuardError(f"function scan of size {total} refused")
    fq = ctx.subfield_elements(1)
    fq_set = frozenset(fq)
    xqx = {ctx.Q: ctx.one, 1: ctx.neg(ctx.one)}
    deg_cap = (ctx.Q - 1) // (ctx.q - 1)
    counts = {c: 0 for c in CONDITIONS}
    agreement = {}
    disagreements = 0
    members = 0
    nonconst = 0
    histogram = {}
    witnesses = []
    for table in itertools.product(fq, repeat=ctx.Q):
        f = interpolate_table(ctx, table)
        d = poly.degree(f)
        if d is poly.NEG_INF or d == 0:
            # constants with a base-field value are members (roots of x^q - x)
            members += 1
            histogram[0] = histogram.get(0, 0) + 1
            if len(witnesses) < WITNESS_KEEP:
                witnesses.append(f)
            continue
        vset = frozenset(table)
        c1 = vset == fq_set and len(vset) == (ctx.Q - 1) // d + 1
        c2 = poly.sub(ctx, poly.frob_power(ctx, f, ctx.k), f) == \
            poly.mul(ctx, xqx, poly.derivative(ctx, f))
        c3 = ctx.q ** (ctx.n - 1) <= d <= deg_cap
        c4 = 1 <= d <= deg_cap
        flags = (c1, c2, c3, c4)
        for name, fl in zip(CONDITIONS, flags):
            counts[name] += fl
        agreement[flags] = agreement.get(flags, 0) + 1
        if len(set(flags)) > 1:
            disagreements += 1
        if c2:
            members += 1
            nonconst += 1
            histogram[d] = histogram.get(d, 0) + 1
            if len(witnesses) < WITNESS_KEEP:
                witnesses.append(f)
    return CensusReport(
        field_spec=ctx.spec_str(),
        value_set_desc=f"F_{ctx.q}",
        total=total,
        members=members,
        nonconstant_members=nonconst,
        degree_histogram=histogram,
        condition_counts=counts,
        disagreements=disagreements,
        agreement={"".join("1" if b else "0" for b in k): v
                   for k, v in sorted(agreement.items())},
        witnesses=witnesses if members <= WITNESS_KEEP else None,
    )


# ---------------------------------------------------------------------------
# exact dimension by linear algebra
# ---------------------------------------------------------------------------

def linear_dim_w(ctx, a: lin.AdditivePoly, guard=DIM_GUARD) -> int:
    """Exact F_q-dimension of the member space of a split additive A.

    Membership is linear in F because A is additive and theta is forced to
    -A'(0) = -c_0: build the operator F -> A(F) - theta*(x^Q - x)*F' on all
    polynomials of degree <= D = (Q-1)/(q^t - 1) and take its nullity.  A
    nonconstant kernel element must satisfy the identity (A(F) cannot vanish
    identically for nonconstant F), and every member has degree <= D, so
    the kernel is exactly the member space."""
    aq = lin.as_context_base(ctx, a)
    carve_out = (ctx.q == 2 and aq.coeffs == (ctx.neg(ctx.one), ctx.one))
    if not lin.is_star(ctx, aq) and not carve_out:
        raise InputError("dimension oracle needs a monic split separable A of degree > 2")
    t = aq.tau_deg()
    theta = ctx.neg(aq.coeffs[0])
    D = (ctx.Q - 1) // (ctx.q ** t - 1)
    if D * ctx.N > guard:
        raise GuardError(f"operator on {D * ctx.N} coordinates refused")
    columns = []
    exps = set()
    for e in range(D + 1):
        for j in range(ctx.N):
            u = tuple(1 if i == j else 0 for i in range(ctx.N))
            img = lin.apply_poly(ctx, aq, {e: u})
            if e % ctx.p:
                c = ctx.mul(theta, ctx.smul(e, u))
                img = poly.sub(ctx, img, {ctx.Q + e - 1: c})
                img = poly.add(ctx, img, {e: c} if e else {})
            columns.append(img)
            exps.update(img)
    exps = sorted(exps)
    pos = {e: i for i, e in enumerate(exps)}
    nrows = len(exps) * ctx.N
    matrix = [[0] * len(columns) for _ in range(nrows)]
    for ci, img in enumerate(columns):
        for e, c in img.items():
            base = pos[e] * ctx.N
            for r, digit in enumerate(c):
                matrix[base + r][ci] = digit
    nullity = len(columns) - rank_mod(matrix, ctx.p)
    assert nullity % ctx.k == 0
    return nullity // ctx.k


# ---------------------------------------------------------------------------
# fixed value set census
# ---------------------------------------------------------------------------

def census_fixed_valueset(ctx, S, max_deg=None, mode=None,
                          guard=POLY_SCAN_GUARD) -> CensusReport:
    """Count members whose value set is exactly the given S, by brute scan.

    mode "functions" scans all maps F_Q -> S (needs |S|^Q within the guard);
    mode "polys" scans coefficient tuples up to max_deg.  If T = prod(x - s)
    fails the standing hypothesis the census is empty by precondition."""
    s_list = sorted(set(S), key=ctx.elem_to_int)
    desc = "{" + ",".join(ctx.format_elem(a) for a in s_list) + "}"
    T = {0: ctx.one}
    for a in s_list:
        T = poly.mul(ctx, T, {1: ctx.one, 0: ctx.neg(a)})
    try:
        mvsp.validate_value_poly(ctx, T)
    except InputError as exc:
        return CensusReport(field_spec=ctx.spec_str(), value_set_desc=desc,
                            total=0, members=0, nonconstant_members=0,
                            degree_histogram={},
                            note=f"empty by precondition: {exc}")
    if mode is None:
        mode = "functions" if len(s_list) ** ctx.Q <= guard else "polys"
    members = 0
    nonconst = 0
    histogram = {}
    witnesses = []
    if mode == "functions":
        total = len(s_list) ** ctx.Q
        if total > guard:
            raise GuardError(f"function scan of size {total} refused")
        for table in itertools.product(s_list, repeat=ctx.Q):
            f = interpolate_table(ctx, table)
            rep = mvsp.mills_check(ctx, f, T)
            if rep.is_member:
                members += 1
                d = poly.degree(f)
                dd = 0 if d is poly.NEG_INF else d
                histogram[dd] = histogram.get(dd, 0) + 1
                if dd:
                    nonconst += 1
                if len(witnesses) < WITNESS_KEEP:
                    witnesses.append(f)
    elif mode == "polys":
        if max_deg is None:
            raise InputError("poly scan needs max_deg")
        total = ctx.Q ** (max_deg + 1)
        if total > guard:
            raise GuardError(f"coefficient scan of size {total} refused")
        elems = ctx.elements()
        for coeffs in itertools.product(elems, repeat=max_deg + 1):
            f = {e: c for e, c in enumerate(coeffs) if c != ctx.zero}
            rep = mvsp.mills_check(ctx, f, T)
            if rep.is_member:
                members += 1
                d = poly.degree(f)
                dd = 0 if d is poly.NEG_INF else d
                histogram[dd] = histogram.get(dd, 0) + 1
                if dd:
                    nonconst += 1
                if len(witnesses) < WITNESS_KEEP:
                    witnesses.append(f)
    else:
        raise InputError(f"unknown census mode {mode!r}")
    return CensusReport(field_spec=ctx.spec_str(), value_set_desc=desc,
                        total=total, members=members,
                        nonconstant_members=nonconst,
                        degree_histogram=histogram,
                        witnesses=witnesses if members <= WITNESS_KEEP else None,
                        note=f"mode={mode}")


# ---------------------------------------------------------------------------
# exhaustive check of the low degree normal forms
# ---------------------------------------------------------------------------

@dataclass
class FormCheckReport:
    field_spec: str
    branch: str
    degrees: tuple
    scanned: int
    mvsp_count: int
    form_count: int
    mismatches: int
    form_family_size: int | None = None
    family_equal: bool | None = None
    note: str = ""


def _iter_polys_of_degree(ctx, d):
    elems = ctx.elements()
    nonzero = elems[1:]
    for lead in nonzero:
        for rest in itertools.product(elems, repeat=d):
            f = {d: lead}
            for e, c in enumerate(rest):
                if c != ctx.zero:
                    f[e] = c
            yield f


def verify_low_degree_forms(ctx, branch="both", guard=POLY_SCAN_GUARD):
    """Exhaustively compare minimality-by-definition against the normal form
    extractor on square fields.

    branch "power" scans degrees 1..sqrt(Q) against the linearized power
    shape alpha*L^v + gamma; branch "shift" scans degree sqrt(Q)+1 against
    alpha*(x+beta)^(sqrt(Q)+1) + gamma and also rebuilds that family
    explicitly to check set equality."""
    s = math.isqrt(ctx.Q)
    if s * s != ctx.Q:
        raise InputError("form verification is defined on square fields")
    out = []
    branches = ("power", "shift") if branch == "both" else (branch,)
    for br in branches:
        if br == "power":
            degrees = tuple(range(1, s + 1))
            scanned = mv = fc = mismatches = 0
            count = sum((ctx.Q - 1) * ctx.Q ** d for d in degrees)
            if count > guard:
                raise GuardError(f"scan of {count} polynomials refused")
            for d in degrees:
                for f in _iter_polys_of_degree(ctx, d):
                    scanned += 1
                    is_mv = len(poly.value_set(ctx, f)) == (ctx.Q - 1) // d + 1
                    w = mvsp.extract_linearized_power_form(ctx, f)
                    mv += is_mv
                    fc += w is not None
                    mismatches += is_mv != (w is not None)
            out.append(FormCheckReport(field_spec=ctx.spec_str(), branch=br,
                                       degrees=degrees, scanned=scanned,
                                       mvsp_count=mv, form_count=fc,
                                       mismatches=mismatches))
        elif br == "shift":
            d = s + 1
            bound = (ctx.Q - 1) // d + 1
            if bound <= 2:
                out.append(FormCheckReport(field_spec=ctx.spec_str(), branch=br,
                                           degrees=(d,), scanned=0, mvsp_count=0,
                                           form_count=0, mismatches=0,
                                           note="skipped: bound <= 2 is outside the theory"))
                continue
            count = (ctx.Q - 1) * ctx.Q ** d
            if count > guard:
                raise GuardError(f"scan of {count} polynomials refused")
            mv_set = set()
            scanned = fc = mismatches = 0
            for f in _iter_polys_of_degree(ctx, d):
                scanned += 1
                is_mv = len(poly.value_set(ctx, f)) == bound
                w = mvsp.extract_shift_power_form(ctx, f)
                fc += w is not None
                mismatches += is_mv != (w is not None)
                if is_mv:
                    mv_set.add(frozenset(f.items()))
            family = set()
            for alpha in ctx.elements()[1:]:
                for beta in ctx.elements():
                    for gamma in ctx.elements():
                        base = {1: ctx.one, 0: beta} if beta != ctx.zero else {1: ctx.one}
                        f = poly.add(ctx, poly.scale(ctx, poly.pow_(ctx, base, d), alpha),
                                     poly.const(ctx, gamma))
                        family.add(frozenset(f.items()))
            out.append(FormCheckReport(field_spec=ctx.spec_str(), branch=br,
                                       degrees=(d,), scanned=scanned,
                                       mvsp_count=len(mv_set), form_count=fc,
                                       mismatches=mismatches,
                                       form_family_size=len(family),
                                       family_equal=mv_set == family))
        else:
            raise InputError(f"unknown branch {br!r}")
    return out


# ---------------------------------------------------------------------------
# subspace enumeration and the dimension sweep
# ---------------------------------------------------------------------------

def subspaces(ctx, t: int):
    """All F_q-subspaces of F_{q^n} of dimension t, as basis lists, one per
    subspace via reduced echelon coordinate matrices (deterministic order)."""
    if t < 0 or t > ctx.n:
        raise InputError("subspace dimension out of range")
    if t == 0:
        yield []
        return
    basis_field = ctx.subfield_basis(ctx.n)
    fq = ctx.subfield_elements(1)
    for pivots in itertools.combinations(range(ctx.n), t):
        free_cols = [c for c in range(ctx.n) if c not in pivots]
        # free entries live at (row i, column c) with c > pivots[i], c free
        slots = [(i, c) for i in range(t) for c in free_cols if c > pivots[i]]
        for fill in itertools.product(fq, repeat=len(slots)):
            rows = []
            mat = {}
            for (i, c), v in zip(slots, fill):
                mat[(i, c)] = v
            for i in range(t):
                vec = ctx.zero
                vec = ctx.add(vec, basis_field[pivots[i]])
                for c in free_cols:
                    if c > pivots[i]:
                        v = mat[(i, c)]
                        if v != ctx.zero:
                            vec = ctx.add(vec, ctx.mul(v, basis_field[c]))
                rows.append(vec)
            yield rows


@dataclass(frozen=True)
class SweepRecord:
    t: int
    d: int
    alpha: tuple
    rank: int
    bound: int
    oracle_dim: int | None
    attained: bool | None


def dimension_sweep(ctx, include_oracle=True, oracle_guard=DIM_GUARD):
    """Every monic split separable additive polynomial of degree > 2 over the
    context (one per subspace of each dimension), through the lift pipeline,
    with the exact dimension oracle alongside where its guard allows."""
    records = []
    for t in range(1, ctx.n + 1):
        if ctx.q ** t <= 2:
            continue
        for basis in subspaces(ctx, t):
            a = lin.subspace_poly(ctx, basis)
            rep = wspace.lift_pipeline(ctx, a)
            bound = rep.witness.d * 2 ** (ctx.n // rep.witness.d) - rep.witness.d + t
            oracle_dim = None
            attained = None
            if include_oracle:
                try:
                    oracle_dim = linear_dim_w(ctx, a, guard=oracle_guard)
                    attained = oracle_dim == rep.dim_lower
                except GuardError:
                    pass
            records.append(SweepRecord(t=t, d=rep.witness.d, alpha=rep.witness.alpha,
                                       rank=rep.dim_lower, bound=bound,
                                       oracle_dim=oracle_dim, attained=attained))
    return records
