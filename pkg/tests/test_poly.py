import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvspoly import poly as P
from mvspoly.errors import InputError
from mvspoly.gf import make_field


def rand_poly(ctx, rng, max_deg=8, terms=4):
    f = {}
    for _ in range(terms):
        e = rng.randrange(max_deg + 1)
        c = ctx.elem_from_int(rng.randrange(ctx.Q))
        if c != ctx.zero:
            f[e] = c
    return f


def test_compose_freshman(f64):
    out = P.compose(f64, P.from_text(f64, "x^2"), P.from_text(f64, "x+1"))
    assert out == P.from_text(f64, "x^2+1")


def test_mul_monomials(f64):
    assert P.mul(f64, {9: f64.one}, {9: f64.one}) == {18: f64.one}


def test_compose_degree_law(f9):
    rng = random.Random(3)
    for _ in range(40):
        f = rand_poly(f9, rng, 5)
        g = rand_poly(f9, rng, 4)
        if P.degree(f) in (P.NEG_INF, 0) or P.degree(g) in (P.NEG_INF, 0):
            continue
        assert P.degree(P.compose(f9, f, g)) == P.degree(f) * P.degree(g)


def test_derivative_examples(f64):
    assert P.derivative(f64, P.from_text(f64, "x^18+x^9")) == {8: f64.one}
    assert P.derivative(f64, P.from_text(f64, "x^4+x^2+x")) == {0: f64.one}
    # p-th powers die
    f = P.from_text(f64, "x^6+x^2")
    assert P.derivative(f64, P.frob_power(f64, f, 1)) == {}


def test_reduce_mod_field(f64):
    assert P.reduce_mod_field(f64, {64: f64.one}) == {1: f64.one}
    assert P.reduce_mod_field(f64, {67: f64.one}) == {4: f64.one}


def test_reduce_kills_field_poly_multiples(f64):
    rng = random.Random(11)
    xqx = {64: f64.one, 1: f64.neg(f64.one)}
    for _ in range(25):
        h = rand_poly(f64, rng, 64)
        assert P.reduce_mod_field(f64, P.mul(f64, xqx, h)) == {}


def test_reduce_agrees_as_function(f9):
    rng = random.Random(5)
    for _ in range(30):
        f = rand_poly(f9, rng, 40)
        r = P.reduce_mod_field(f9, f)
        for a in f9.elements():
            assert P.eval_at(f9, f, a) == P.eval_at(f9, r, a)


def test_gcd_examples(f4, f64):
    f = P.from_text(f64, "x^2+x")
    assert P.gcd(f64, f, {}) == f
    assert P.gcd(f4, P.from_text(f4, "x^2+x"), P.from_text(f4, "x")) == {1: f4.one}


def test_gcd_with_field_poly_counts_roots(f9):
    rng = random.Random(17)
    for _ in range(25):
        f = rand_poly(f9, rng, 6)
        if not f or P.degree(f) == 0:
            continue
        roots = sum(1 for a in f9.elements() if P.eval_at(f9, f, a) == f9.zero)
        assert P.degree(P.field_gcd(f9, f)) == roots


def test_value_set_examples(f4, f64):
    assert len(P.value_set(f64, {1: f64.one})) == 64
    v9 = P.value_set(f64, {9: f64.one})
    assert len(v9) == 8 and all(f64.in_subfield(a, 3) for a in v9)
    g = f4.elem_from_int(2)
    tr = {1: g, 2: f4.mul(g, g)}
    assert P.value_set(f4, tr) == frozenset(f4.subfield_elements(1))


def test_interpolate_constant(f9):
    c = f9.elem_from_int(4)
    pts = [(a, c) for a in f9.elements()[:3]]
    assert P.interpolate(f9, pts) == {0: c}


def test_interpolate_recovers_poly(f9):
    rng = random.Random(23)
    for _ in range(20):
        f = rand_poly(f9, rng, 5)
        pts = [(a, P.eval_at(f9, f, a)) for a in f9.elements()[:7]]
        if P.degree(f) is P.NEG_INF or P.degree(f) < 7:
            assert P.interpolate(f9, pts) == f


def test_interpolate_full_graph_degree(f8):
    rng = random.Random(29)
    table = [f8.elem_from_int(rng.randrange(8)) for _ in range(8)]
    f = P.interpolate(f8, list(zip(f8.elements(), table)))
    assert P.degree(f) is P.NEG_INF or P.degree(f) <= 7
    for a, y in zip(f8.elements(), table):
        assert P.eval_at(f8, f, a) == y


def test_interpolate_rejects_repeats(f9):
    with pytest.raises(InputError):
        P.interpolate(f9, [(f9.one, f9.one), (f9.one, f9.zero)])


def test_interpolate_full_graph_identity(f9):
    # any f of degree <= Q-1 is the unique interpolant of its own graph
    rng = random.Random(47)
    for _ in range(15):
        f = rand_poly(f9, rng, f9.Q - 1, terms=5)
        pts = [(a, P.eval_at(f9, f, a)) for a in f9.elements()]
        assert P.interpolate(f9, pts) == f


def test_product_and_chain_rule(f9, f8):
    for ctx, seed in ((f9, 31), (f8, 37)):
        rng = random.Random(seed)
        for _ in range(200):
            f = rand_poly(ctx, rng, 6)
            g = rand_poly(ctx, rng, 5)
            lhs = P.derivative(ctx, P.mul(ctx, f, g))
            rhs = P.add(ctx, P.mul(ctx, P.derivative(ctx, f), g),
                        P.mul(ctx, f, P.derivative(ctx, g)))
            assert lhs == rhs
            chain = P.derivative(ctx, P.compose(ctx, f, g))
            expect = P.mul(ctx, P.compose(ctx, P.derivative(ctx, f), g),
                           P.derivative(ctx, g))
            assert chain == expect


def test_eval_compose(f64):
    rng = random.Random(41)
    for _ in range(60):
        f = rand_poly(f64, rng, 9)
        g = rand_poly(f64, rng, 7)
        a = f64.elem_from_int(rng.randrange(64))
        assert P.eval_at(f64, P.compose(f64, f, g), a) == \
            P.eval_at(f64, f, P.eval_at(f64, g, a))


def test_exponent_overflow_guard(f4):
    big = {1 << 62: f4.one}
    with pytest.raises(InputError):
        P.mul(f4, big, {1 << 62: f4.one})


def test_pow_matches_repeated_mul(f9):
    rng = random.Random(43)
    for _ in range(30):
        f = rand_poly(f9, rng, 4)
        out = {0: f9.one}
        for e in range(6):
            assert P.pow_(f9, f, e) == out
            out = P.mul(f9, out, f)


def test_text_roundtrip(f729):
    for s in ("x^9+x^3+x", "x^5+x^2+x", "2,1*x^4 + 1", "0"):
        f = P.from_text(f729, s)
        assert P.from_text(f729, P.to_text(f729, f)) == f


def test_text_minus(f9):
    assert P.from_text(f9, "x^3-x") == {3: f9.one, 1: f9.neg(f9.one)}


def test_json_roundtrip(f64):
    f = P.from_text(f64, "x^18+x^9")
    obj = P.to_json_obj(f64, f)
    assert [t["e"] for t in obj["terms"]] == [18, 9]
    assert P.from_json_obj(f64, obj) == f


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 8)),
                min_size=0, max_size=6))
def test_add_commutes_f9(pairs):
    ctx = make_field(3, 1, 2)
    f = {}
    g = {}
    for i, (e, c) in enumerate(pairs):
        tgt = f if i % 2 else g
        cc = ctx.elem_from_int(c)
        if cc != ctx.zero:
            tgt[e] = cc
    assert P.add(ctx, f, g) == P.add(ctx, g, f)
    assert P.mul(ctx, f, g) == P.mul(ctx, g, f)
