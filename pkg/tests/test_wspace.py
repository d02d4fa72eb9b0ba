import math
import random

import pytest

from mvspoly import linearized as L
from mvspoly import mvsp as M
from mvspoly import oracle as O
from mvspoly import poly as P
from mvspoly import wspace as W
from mvspoly.errors import GuardError
from mvspoly.gf import make_field
from mvspoly.linalg import FpSpan


def euler_phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


# -- orbit tables ---------------------------------------------------------------

def test_orbit_table_n3():
    t = W.orbit_table(2, 3)
    assert [o.size for o in t.orbits] == [1, 3, 3, 1]
    assert [o.exponent for o in t.orbits] == [0, 1, 3, 7]
    t5 = W.orbit_table(5, 3)
    assert [o.size for o in t5.orbits] == [1, 3, 3, 1]
    assert [o.exponent for o in t5.orbits] == [0, 1, 6, 31]


def test_orbit_table_n1():
    t = W.orbit_table(2, 1)
    assert len(t.orbits) == 2 and all(o.size == 1 for o in t.orbits)


def test_orbit_table_n6_burnside():
    t = W.orbit_table(2, 6)
    expected = sum(euler_phi(d) * 2 ** (6 // d) for d in (1, 2, 3, 6)) // 6
    assert len(t.orbits) == expected == 14
    assert sum(o.size for o in t.orbits) == 64


@pytest.mark.parametrize("n", list(range(1, 21)))
def test_orbit_count_identity(n):
    t = W.orbit_table(2, n)
    assert sum(d * o for d, o in t.counts.items()) == 2 ** n
    for d in t.counts:
        assert n % d == 0


def test_orbit_representative_is_least_rotation():
    t = W.orbit_table(3, 4)
    M_ = 3 ** 4 - 1
    for o in t.orbits:
        e = o.exponent
        rots = {e}
        cur = e
        for _ in range(o.size - 1):
            cur = cur * 3 % M_ if cur else 0
            rots.add(cur)
        assert len(rots) == o.size
        assert min(rots) == e


# -- bases ------------------------------------------------------------------------

def test_basis_f4_structure(f4):
    wb = W.build_basis(f4, 1, f4.one)
    texts = {P.to_text(f4, b.elem) for b in wb.elems}
    g = f4.elem_from_int(2)
    expected = {
        P.to_text(f4, {0: f4.one}),
        P.to_text(f4, {1: f4.one, 2: f4.one}),
        P.to_text(f4, {1: g, 2: f4.mul(g, g)}),
        P.to_text(f4, {3: f4.one}),
    }
    assert texts == expected and wb.dim == 4


def test_basis_f64_d3_components(f64):
    wb = W.build_basis(f64, 3, f64.one)
    assert wb.dim == 12
    by_orbit = {}
    for b in wb.elems:
        by_orbit.setdefault(b.orbit_exponent, []).append(b)
    assert {k: len(v) for k, v in by_orbit.items()} == {0: 3, 1: 6, 9: 3}
    # orbit of exponent 1 gives alpha*x + (alpha*x)^(q^3)
    for b in by_orbit[1]:
        assert set(b.elem) == {1, 8}
        assert b.elem[8] == f64.frobenius(b.elem[1], 3)
    for b in by_orbit[9]:
        assert set(b.elem) == {9} and f64.in_subfield(b.elem[9], 3)


def test_basis_dim_formula(f64, f9):
    for ctx, d in ((f64, 1), (f64, 2), (f64, 3), (f64, 6), (f9, 1), (f9, 2)):
        wb = W.build_basis(ctx, d, ctx.one)
        assert wb.dim == d * 2 ** (ctx.n // d)


def test_basis_elements_verified_and_independent(f9):
    wb = W.build_basis(f9, 1, f9.one)
    T = W.target_binomial(f9, wb)
    span = FpSpan(f9.p, (f9.Q) * f9.N)
    exps = list(range(f9.Q))
    added = 0
    for b in wb.elems:
        assert M.mills_check(f9, b.elem, T).is_member
        vec = []
        for e in exps:
            vec.extend(b.elem.get(e, f9.zero))
        if span.add(vec):
            added += 1
    assert added == wb.dim == 4


def test_basis_direct_sum_disjoint_exponents(f64):
    wb = W.build_basis(f64, 3, f64.one)
    seen = {}
    for b in wb.elems:
        for e in b.elem:
            seen.setdefault(e, set()).add(b.orbit_exponent)
    for e, orbits in seen.items():
        assert len(orbits) == 1


def test_basis_alpha_twist(f64):
    beta = f64.elem_from_int(5)
    alpha = f64.pow_elem(beta, 7)
    wb = W.build_basis(f64, 3, alpha)
    T = W.target_binomial(f64, wb)
    assert wb.dim == 12
    for b in wb.elems:
        assert M.mills_check(f64, b.elem, T).is_member


def test_basis_rejects_nonsplitting_alpha():
    ctx = make_field(2, 2, 2)      # F_16 over F_4, q = 4
    g = ctx.elem_from_int(2)
    # (q^2 - 1)-th powers in F_16* are only 1, so alpha = g cannot split
    assert ctx.solve_power(g, 15) is None
    from mvspoly.errors import InputError
    with pytest.raises(InputError):
        W.build_basis(ctx, 2, g)


# -- membership ---------------------------------------------------------------------

def test_membership_rejects_partial_orbit(f64):
    wb = W.build_basis(f64, 3, f64.one)
    G = P.from_text(f64, "x^18+x^9")
    assert W.membership_coordinates(f64, G, wb) is None


def test_membership_roundtrip_basis(f64):
    wb = W.build_basis(f64, 3, f64.one)
    for b in wb.elems:
        coords = W.membership_coordinates(f64, b.elem, wb)
        assert coords is not None
        assert W.reconstruct_from_coordinates(f64, wb, coords) == b.elem


def test_membership_x2_over_f4(f4):
    wb = W.build_basis(f4, 1, f4.one)
    assert W.membership_coordinates(f4, P.from_text(f4, "x^2"), wb) is None
    assert P.value_set(f4, P.from_text(f4, "x^2")) == frozenset(f4.elements())


def test_membership_random_combinations(f9):
    wb = W.build_basis(f9, 1, f9.one)
    rng = random.Random(19)
    fq = f9.subfield_elements(1)
    for _ in range(40):
        f = {}
        for b in wb.elems:
            c = fq[rng.randrange(3)]
            if c != f9.zero:
                f = P.add(f9, f, P.scale(f9, b.elem, c))
        coords = W.membership_coordinates(f9, f, wb)
        assert coords is not None
        assert W.reconstruct_from_coordinates(f9, wb, coords) == f


# -- enumeration ----------------------------------------------------------------------

def test_enumerate_counts(f4, f8, f9):
    assert sum(1 for _ in W.enumerate_w(f4, W.build_basis(f4, 1, f4.one))) == 16
    assert sum(1 for _ in W.enumerate_w(f8, W.build_basis(f8, 1, f8.one))) == 256
    assert sum(1 for _ in W.enumerate_w(f9, W.build_basis(f9, 1, f9.one))) == 81


def test_enumerate_f8_covers_all_base_valued_functions(f8):
    wb = W.build_basis(f8, 1, f8.one)
    tables = set()
    for f in W.enumerate_w(f8, wb):
        tables.add(tuple(P.eval_at(f8, f, a) for a in f8.elements()))
    assert len(tables) == 256
    fq = set(f8.subfield_elements(1))
    assert all(set(t) <= fq for t in tables)


def test_enumerate_guard(f64):
    wb = W.build_basis(f64, 1, f64.one)
    with pytest.raises(GuardError):
        list(W.enumerate_w(f64, wb, limit=1 << 10))


def test_member_function_properties(f8, f9):
    # every member is fixed by the q-power map mod x^Q - x and takes base
    # field values; nonconstant degrees sit in the required window
    for ctx in (f8, f9):
        wb = W.build_basis(ctx, 1, ctx.one)
        fq = set(ctx.subfield_elements(1))
        for f in W.enumerate_w(ctx, wb):
            assert P.reduce_mod_field(ctx, P.frob_power(ctx, f, ctx.k)) == f
            assert {P.eval_at(ctx, f, a) for a in ctx.elements()} <= fq
            d = P.degree(f)
            if d is not P.NEG_INF and d >= 1:
                assert ctx.q ** (ctx.n - 1) <= d <= (ctx.Q - 1) // (ctx.q - 1)


# -- lift pipeline ----------------------------------------------------------------------

def test_lift_example_f64(f64):
    a = L.detect_additive(f64, P.from_text(f64, "x^4+x^2+x"))
    rep = W.lift_pipeline(f64, a)
    assert rep.dim_lower == 11
    assert rep.witness.d == 3 and rep.witness.t == 2
    assert rep.basis.dim == 12


def test_lift_binomial_identity(f64):
    rep = W.lift_pipeline(f64, L.binomial(f64, 3, f64.one))
    assert rep.dim_lower == 12
    assert L.to_sparse(f64, rep.witness.M) == {1: f64.one}


def test_lift_example_f729(f729):
    a = L.detect_additive(f729, P.from_text(f729, "x^9+x^3+x"))
    rep = W.lift_pipeline(f729, a)
    assert rep.dim_lower == 11
    assert rep.witness.d == 3 and rep.witness.t == 2


def test_lift_kernel_is_root_space(f8):
    # over F_8 with A of tau-degree 2 dividing x^8 - x: the members of the
    # binomial space mapping to zero are exactly the root space of M
    basis = None
    for cand in O.subspaces(f8, 2):
        basis = cand
        break
    a = L.subspace_poly(f8, basis)
    rep = W.lift_pipeline(f8, a)
    m = rep.witness.M
    zeros = 0
    for f in W.enumerate_w(f8, rep.basis):
        if P.reduce_mod_field(f8, L.apply_poly(f8, m, f)) == {}:
            zeros += 1
    d, t = rep.witness.d, rep.witness.t
    assert zeros == f8.q ** (d - t)
    # and those preimages are the constants from the root space of M
    roots = {v for v in f8.elements() if L.apply_elem(f8, m, v) == f8.zero}
    assert len(roots) == zeros


def test_power_image_count_v1_full(f64):
    a = L.detect_additive(f64, P.from_text(f64, "x^4+x^2+x"))
    rep = W.lift_pipeline(f64, a)
    T = L.to_sparse(f64, a)
    count = W.power_image_count(f64, T, 1, rep.generators, limit=1 << 12)
    assert count == 2 ** 11


def test_power_image_count_guarded_bound(f729):
    a = L.detect_additive(f729, P.from_text(f729, "x^9+x^3+x"))
    rep = W.lift_pipeline(f729, a)
    T = P.from_text(f729, "x^5+x^2+x")
    bound = W.power_image_count(f729, T, 2, rep.generators, limit=1,
                                samples=20, seed=3)
    assert bound == (3 ** 11 - 1) // 2 + 1 == 88574


def test_degree_law_exhaustive(f8, f9):
    for ctx in (f8, f9):
        wb = W.build_basis(ctx, 1, ctx.one)
        for f in W.enumerate_w(ctx, wb):
            d = P.degree(f)
            if d is P.NEG_INF or d < 1:
                continue
            assert ctx.q ** (ctx.n - 1) <= d <= (ctx.Q - 1) // (ctx.q - 1)
