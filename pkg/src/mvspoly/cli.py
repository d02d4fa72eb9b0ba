"""Command line front end.

Exit codes: 0 verified/true, 1 negative mathematical result, 2 input error,
3 guard refusal.  All output is deterministic for identical inputs; --jobs
is accepted for interface compatibility but computations run serially, which
the desk-scale guards make cheap anyway.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import linearized as lin
from . import mvsp
from . import oracle
from . import poly
from . import wspace
from .errors import GuardError, InputError
from .gf import parse_field_spec

HARD_GUARD_MAX = 1 << 24


def _elem(ctx, a):
    return list(a)


def _elems(ctx, items):
    return [list(a) for a in sorted(items, key=ctx.elem_to_int)]


def _poly_obj(ctx, f):
    return poly.to_json_obj(ctx, f)


def _parse_additive(ctx, text):
    if "T" in text:
        a = lin.tau_from_text(ctx, text)
    else:
        a = lin.detect_additive(ctx, poly.from_text(ctx, text))
        if a is None:
            raise InputError(f"{text!r} is not an additive polynomial")
    return lin.as_context_base(ctx, a)


def _emit(args, payload, csv_rows=None, text_lines=None):
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        for row in csv_rows or [[json.dumps(payload)]]:
            writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        for line in text_lines or [json.dumps(payload)]:
            print(line)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    ctx = parse_field_spec(args.field)
    T = poly.from_text(ctx, args.T)
    F = poly.from_text(ctx, args.F)
    rep = mvsp.mills_check(ctx, F, T)
    payload = {
        "kind": "verify",
        "field": ctx.spec_str(),
        "T": poly.to_text(ctx, T),
        "F": poly.to_text(ctx, F),
        "is_member": rep.is_member,
        "is_mvsp": rep.is_mvsp,
        "deg": rep.deg,
        "bound": rep.bound,
        "theta": _elem(ctx, rep.theta) if rep.theta is not None else None,
        "theta_candidates": [_elem(ctx, t) for t in rep.theta_candidates],
        "value_set": _elems(ctx, rep.value_set) if rep.value_set is not None else None,
        "reason": rep.reason,
    }
    _emit(args, payload, text_lines=[
        f"member: {rep.is_member}" + (f" ({rep.reason})" if rep.reason else "")])
    return 0 if rep.is_member else 1


def cmd_classify(args) -> int:
    ctx = parse_field_spec(args.field)
    F = poly.from_text(ctx, args.F)
    w = mvsp.classify_low_degree(ctx, F)
    payload = {
        "kind": "classify",
        "field": ctx.spec_str(),
        "F": poly.to_text(ctx, F),
        "found": w is not None,
        "shape": w.shape if w else None,
        "alpha": _elem(ctx, w.alpha) if w else None,
        "v": w.v if w else None,
        "gamma": _elem(ctx, w.gamma) if w else None,
        "L": poly.to_text(ctx, w.L) if w else None,
        "beta": _elem(ctx, w.beta) if w and w.beta is not None else None,
    }
    _emit(args, payload, text_lines=[f"form found: {w is not None}"])
    return 0 if w else 1


def cmd_reduce(args) -> int:
    ctx = parse_field_spec(args.field)
    T = poly.from_text(ctx, args.T)
    wits = mvsp.find_additive_reduction(ctx, T)
    payload = {
        "kind": "reduce",
        "field": ctx.spec_str(),
        "T": poly.to_text(ctx, T),
        "count": len(wits),
        "witnesses": [{
            "v": w.v,
            "base": w.base,
            "gamma": _elem(ctx, w.gamma),
            "A": poly.to_text(ctx, lin.to_sparse(ctx, w.A)),
        } for w in wits],
    }
    _emit(args, payload, text_lines=[f"witnesses: {len(wits)}"])
    return 0 if wits else 1


def cmd_profile(args) -> int:
    ctx = parse_field_spec(args.field)
    T = poly.from_text(ctx, args.T)
    F = poly.from_text(ctx, args.F)
    rep = mvsp.mills_profile(ctx, F, T)
    payload = {
        "kind": "profile",
        "field": ctx.spec_str(),
        "T": poly.to_text(ctx, T),
        "F": poly.to_text(ctx, F),
        "per_root": [{
            "gamma": _elem(ctx, r.gamma),
            "distinct_field_roots": r.distinct_field_roots,
            "multiplicities": list(r.multiplicities),
            "has_simple_root": r.has_simple_root,
        } for r in rep.per_root],
        "multiplicities_coprime_p": rep.multiplicities_coprime_p,
        "simple_root_count": rep.simple_root_count,
        "required_simple_roots": rep.required_simple_roots,
        "has_required_simple_roots": rep.has_required_simple_roots,
    }
    ok = rep.multiplicities_coprime_p and rep.has_required_simple_roots
    _emit(args, payload, text_lines=[f"profile ok: {ok}"])
    return 0 if ok else 1


def _parse_binomial_args(ctx, args):
    d, alpha = args.d, args.alpha
    if args.binomial:
        spec = args.binomial
        if "alpha=" in spec:
            left, _, astr = spec.partition("alpha=")
            alpha = astr
            spec = left.rstrip(",")
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            key, _, val = part.partition("=")
            if key.strip() == "d":
                d = int(val)
            else:
                raise InputError(f"bad binomial spec part {part!r}")
    if d is None:
        raise InputError("missing d (use --d or --binomial d=...,alpha=...)")
    alpha_elem = ctx.parse_elem(alpha) if alpha is not None else ctx.one
    return int(d), alpha_elem


def cmd_basis(args) -> int:
    ctx = parse_field_spec(args.field)
    d, alpha = _parse_binomial_args(ctx, args)
    wb = wspace.build_basis(ctx, d, alpha)
    payload = {
        "kind": "basis",
        "field": ctx.spec_str(),
        "d": wb.d,
        "alpha": _elem(ctx, wb.alpha),
        "scale": _elem(ctx, wb.scale),
        "dim": wb.dim,
        "elements": [{
            "poly": _poly_obj(ctx, b.elem),
            "text": poly.to_text(ctx, b.elem),
            "orbit_exponent": b.orbit_exponent,
            "orbit_size": b.orbit_size,
            "beta": _elem(ctx, b.beta),
        } for b in wb.elems],
    }
    rows = [["orbit_exponent", "orbit_size", "polynomial"]]
    rows += [[b.orbit_exponent, b.orbit_size, poly.to_text(ctx, b.elem)] for b in wb.elems]
    _emit(args, payload, csv_rows=rows,
          text_lines=[f"dim {wb.dim}"] + [poly.to_text(ctx, b.elem) for b in wb.elems])
    return 0


def cmd_orbits(args) -> int:
    if args.field:
        ctx = parse_field_spec(args.field)
        q, n = ctx.q, ctx.n
    else:
        if args.q is None or args.n is None:
            raise InputError("orbits needs --field or both --q and --n")
        q, n = args.q, args.n
    table = wspace.orbit_table(q, n)
    payload = {
        "kind": "orbits",
        "q": q,
        "n": n,
        "orbit_count": len(table.orbits),
        "orbits": [{
            "bits": "".join(str(b) for b in o.bits),
            "exponent": o.exponent,
            "size": o.size,
        } for o in table.orbits],
        "counts": {str(k): v for k, v in sorted(table.counts.items())},
    }
    rows = [["n", "representative_bits", "exponent", "size"]]
    rows += [[n, "".join(str(b) for b in o.bits), o.exponent, o.size]
             for o in table.orbits]
    _emit(args, payload, csv_rows=rows,
          text_lines=[f"{o.exponent} size {o.size}" for o in table.orbits])
    return 0


def cmd_lift(args) -> int:
    ctx = parse_field_spec(args.field)
    a = _parse_additive(ctx, args.A)
    rep = wspace.lift_pipeline(ctx, a)
    payload = {
        "kind": "lift",
        "field": ctx.spec_str(),
        "A": poly.to_text(ctx, lin.to_sparse(ctx, a)),
        "d": rep.witness.d,
        "alpha": _elem(ctx, rep.witness.alpha),
        "gamma": _elem(ctx, rep.witness.gamma),
        "M": lin.tau_to_text(ctx, rep.witness.M),
        "t": rep.witness.t,
        "basis_dim": rep.basis.dim,
        "dim_lower": rep.dim_lower,
        "generators": [_poly_obj(ctx, g) for g in rep.generators],
    }
    _emit(args, payload, text_lines=[
        f"d={rep.witness.d} t={rep.witness.t} dim_lower={rep.dim_lower}"])
    return 0


def cmd_enumerate(args) -> int:
    ctx = parse_field_spec(args.field)
    d, alpha = _parse_binomial_args(ctx, args)
    wb = wspace.build_basis(ctx, d, alpha)
    limit = min(args.guard_max, HARD_GUARD_MAX)
    members = list(wspace.enumerate_w(ctx, wb, limit=limit))
    payload = {
        "kind": "enumerate",
        "field": ctx.spec_str(),
        "d": d,
        "alpha": _elem(ctx, alpha),
        "count": len(members),
        "members": [_poly_obj(ctx, f) for f in members] if len(members) <= 4096 else None,
    }
    _emit(args, payload, text_lines=[f"count {len(members)}"])
    return 0


def cmd_oracle_census(args) -> int:
    ctx = parse_field_spec(args.field)
    guard = min(args.guard_max, HARD_GUARD_MAX)
    if args.values:
        S = [ctx.parse_elem(s) for s in args.values.split(";")]
        rep = oracle.census_fixed_valueset(ctx, S, max_deg=args.max_deg, guard=guard)
    else:
        rep = oracle.census_subfield_valued(ctx, guard=guard)
    payload = {
        "kind": "census",
        "field": rep.field_spec,
        "value_set": rep.value_set_desc,
        "total": rep.total,
        "members": rep.members,
        "nonconstant_members": rep.nonconstant_members,
        "degree_histogram": {str(k): v for k, v in sorted(rep.degree_histogram.items())},
        "condition_counts": rep.condition_counts,
        "disagreements": rep.disagreements,
        "agreement": rep.agreement,
        "note": rep.note,
    }
    rows = [["degree", "polynomial"]]
    if rep.witnesses:
        rows += [[poly.degree(w) if w else 0, poly.to_text(ctx, w)] for w in rep.witnesses]
    _emit(args, payload, csv_rows=rows,
          text_lines=[f"members {rep.members} of {rep.total}"])
    return 0 if rep.disagreements == 0 else 1


def cmd_oracle_dim(args) -> int:
    ctx = parse_field_spec(args.field)
    a = _parse_additive(ctx, args.A)
    dim = oracle.linear_dim_w(ctx, a, guard=min(args.guard_max, HARD_GUARD_MAX))
    payload = {
        "kind": "dim",
        "field": ctx.spec_str(),
        "A": poly.to_text(ctx, lin.to_sparse(ctx, a)),
        "dim": dim,
    }
    _emit(args, payload, text_lines=[f"dim {dim}"])
    return 0


def cmd_oracle_theorems(args) -> int:
    ctx = parse_field_spec(args.field)
    reports = oracle.verify_low_degree_forms(ctx, branch=args.branch,
                                             guard=min(args.guard_max, HARD_GUARD_MAX))
    payload = {
        "kind": "forms",
        "field": ctx.spec_str(),
        "reports": [{
            "branch": r.branch,
            "degrees": list(r.degrees),
            "scanned": r.scanned,
            "mvsp_count": r.mvsp_count,
            "form_count": r.form_count,
            "mismatches": r.mismatches,
            "form_family_size": r.form_family_size,
            "family_equal": r.family_equal,
            "note": r.note,
        } for r in reports],
    }
    bad = sum(r.mismatches for r in reports)
    _emit(args, payload, text_lines=[f"mismatches {bad}"])
    return 0 if bad == 0 else 1


# ---------------------------------------------------------------------------
# the worked examples
# ---------------------------------------------------------------------------

def _examples_section1(ctx, q):
    table = wspace.orbit_table(q, 3)
    wb = wspace.build_basis(ctx, 1, ctx.one)
    components = []
    for o in table.orbits:
        elems = [b for b in wb.elems if b.orbit_exponent == o.exponent]
        components.append({
            "bits": "".join(str(b) for b in o.bits),
            "exponent": o.exponent,
            "size": o.size,
            "dim": len(elems),
            "basis": [poly.to_text(ctx, b.elem) for b in elems],
        })
    ok = wb.dim == 2 ** 3 and sorted(o.size for o in table.orbits) == [1, 1, 3, 3]
    return {
        "orbit_sizes": [o.size for o in table.orbits],
        "components": components,
        "total_dim": wb.dim,
    }, ok


def _examples_section2(ctx, q):
    wb = wspace.build_basis(ctx, 3, ctx.one)
    T = wspace.target_binomial(ctx, wb)
    verified = all(mvsp.mills_check(ctx, b.elem, T).is_member for b in wb.elems)
    A = lin.make(ctx, ctx.k, (ctx.one, ctx.one, ctx.one))       # x^(q^2)+x^q+x
    rep = wspace.lift_pipeline(ctx, A)
    try:
        odim = oracle.linear_dim_w(ctx, A)
    except GuardError:
        odim = None
    ok = wb.dim == 12 and verified and rep.dim_lower == 11 and odim in (None, 11)
    return {
        "dim_w_binomial": wb.dim,
        "binomial_basis_verified": verified,
        "dim_lower": rep.dim_lower,
        "oracle_dim": odim,
        "M": lin.tau_to_text(ctx, rep.witness.M),
    }, ok


def _examples_section3(ctx, q):
    G = {q ** 4 + q: ctx.one, q ** 3 + 1: ctx.neg(ctx.one)}
    rep = mvsp.is_minimal(ctx, G)
    in_sub = all(ctx.in_subfield(a, 3) for a in rep.value_set)
    A = lin.to_sparse(ctx, lin.make(ctx, ctx.k, (ctx.one, ctx.one, ctx.one)))
    mills = mvsp.mills_check(ctx, G, A)
    form = mvsp.extract_linearized_power_form(ctx, G)
    additive_shift = lin.detect_additive(ctx, G) is not None
    deg_cap = (ctx.Q - 1) // (q ** 3 - 1)
    ok = (rep.is_mvsp and in_sub and mills.is_member and form is None
          and not additive_shift and rep.deg > deg_cap)
    return {
        "G": poly.to_text(ctx, G),
        "is_mvsp": rep.is_mvsp,
        "deg": rep.deg,
        "values": len(rep.value_set),
        "value_set_in_subfield_degree": 3,
        "value_set_in_subfield": in_sub,
        "mills_member_of_additive_space": mills.is_member,
        "theta": _elem(ctx, mills.theta) if mills.theta else None,
        "classical_power_form_found": form is not None,
        "scaled_additive_form_found": additive_shift,
        "subfield_value_degree_cap": deg_cap,
        "degree_exceeds_subfield_cap": rep.deg > deg_cap,
    }, ok


def _examples_section4(ctx, q, seed, samples):
    if q % 2 == 0:
        raise InputError("section 4 needs odd q")
    T = {(q * q + 1) // 2: ctx.one, (q + 1) // 2: ctx.one, 1: ctx.one}
    wits = mvsp.find_additive_reduction(ctx, T)
    target = lin.make(ctx, ctx.k, (ctx.one, ctx.one, ctx.one))
    hit = next((w for w in wits
                if lin.to_sparse(ctx, lin.as_context_base(ctx, w.A)) ==
                lin.to_sparse(ctx, target) and w.v == 2), None)
    rep = wspace.lift_pipeline(ctx, target)
    import random as _random
    rng = _random.Random(seed)
    fq = ctx.subfield_elements(1)
    verified = 0
    for _ in range(samples):
        f = {}
        while not f:
            f = {}
            for g in rep.generators:
                c = fq[rng.randrange(len(fq))]
                if c != ctx.zero:
                    f = poly.add(ctx, f, poly.scale(ctx, g, c))
        mvsp.power_lift(ctx, f, 2, T)       # raises if the image fails
        verified += 1
    bound = wspace.power_image_count(ctx, T, 2, rep.generators,
                                     limit=1, samples=8, seed=seed)
    ok = hit is not None and rep.dim_lower == 11 and verified == samples
    return {
        "T": poly.to_text(ctx, T),
        "reduction_found": hit is not None,
        "reduction": {"v": hit.v, "base": hit.base, "gamma": _elem(ctx, hit.gamma)}
        if hit else None,
        "A": poly.to_text(ctx, lin.to_sparse(ctx, target)),
        "dim_lower": rep.dim_lower,
        "samples": samples,
        "verified": verified,
        "image_count_lower_bound": bound,
    }, ok


def cmd_examples(args) -> int:
    section = args.section
    if section not in (1, 2, 3, 4):
        raise InputError("section must be 1, 2, 3 or 4")
    q = args.q if args.q is not None else (3 if section == 4 else 2)
    from .gf import is_prime, make_field
    if not is_prime(q):
        raise InputError("the examples run at prime q")
    n = 3 if section == 1 else 6
    ctx = make_field(q, 1, n)
    if section == 1:
        detail, ok = _examples_section1(ctx, q)
    elif section == 2:
        detail, ok = _examples_section2(ctx, q)
    elif section == 3:
        detail, ok = _examples_section3(ctx, q)
    else:
        detail, ok = _examples_section4(ctx, q, args.seed, args.samples)
    payload = {"kind": "examples", "section": section, "q": q,
               "field": ctx.spec_str(), "ok": ok}
    payload.update(detail)
    _emit(args, payload, text_lines=[f"section {section} ok: {ok}"])
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sp):
    sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
    sp.add_argument("--jobs", type=int, default=1,
                    help="accepted for compatibility; execution is serial")
    sp.add_argument("--guard-max", dest="guard_max", type=int,
                    default=HARD_GUARD_MAX,
                    help=f"override scan guards, capped at {HARD_GUARD_MAX}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mvspoly",
        description="minimal value set polynomials over finite fields")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        sp = sub.add_parser(name)
        for flag, kw in flags.items():
            sp.add_argument(flag, **kw)
        _add_common(sp)
        sp.set_defaults(fn=fn)
        return sp

    add("verify", cmd_verify,
        **{"--field": dict(required=True), "--T": dict(required=True),
           "--F": dict(required=True)})
    add("classify", cmd_classify,
        **{"--field": dict(required=True), "--F": dict(required=True)})
    add("reduce", cmd_reduce,
        **{"--field": dict(required=True), "--T": dict(required=True)})
    add("profile", cmd_profile,
        **{"--field": dict(required=True), "--T": dict(required=True),
           "--F": dict(required=True)})

    def basis_flags():
        return {"--field": dict(required=True),
                "--d": dict(type=int, default=None),
                "--alpha": dict(default=None),
                "--binomial": dict(default=None)}

    add("basis", cmd_basis, **basis_flags())
    add("enumerate", cmd_enumerate, **basis_flags())
    add("orbits", cmd_orbits,
        **{"--field": dict(default=None), "--q": dict(type=int, default=None),
           "--n": dict(type=int, default=None)})
    add("lift", cmd_lift,
        **{"--field": dict(required=True), "--A": dict(required=True)})

    wsp = sub.add_parser("wspace")
    wsub = wsp.add_subparsers(dest="subcommand", required=True)
    for name, fn, flags in [("basis", cmd_basis, basis_flags()),
                            ("enumerate", cmd_enumerate, basis_flags()),
                            ("orbits", cmd_orbits,
                             {"--field": dict(default=None),
                              "--q": dict(type=int, default=None),
                              "--n": dict(type=int, default=None)}),
                            ("lift", cmd_lift,
                             {"--field": dict(required=True),
                              "--A": dict(required=True)})]:
        sp = wsub.add_parser(name)
        for flag, kw in flags.items():
            sp.add_argument(flag, **kw)
        _add_common(sp)
        sp.set_defaults(fn=fn)

    osp = sub.add_parser("oracle")
    osub = osp.add_subparsers(dest="subcommand", required=True)
    sp = osub.add_parser("census")
    sp.add_argument("--field", required=True)
    sp.add_argument("--values", default=None,
                    help="semicolon separated elements for a fixed value set")
    sp.add_argument("--max-deg", dest="max_deg", type=int, default=None)
    _add_common(sp)
    sp.set_defaults(fn=cmd_oracle_census)
    sp = osub.add_parser("dim")
    sp.add_argument("--field", required=True)
    sp.add_argument("--A", required=True)
    _add_common(sp)
    sp.set_defaults(fn=cmd_oracle_dim)
    sp = osub.add_parser("theorems")
    sp.add_argument("--field", required=True)
    sp.add_argument("--branch", choices=["power", "shift", "both"], default="both")
    _add_common(sp)
    sp.set_defaults(fn=cmd_oracle_theorems)

    sp = sub.add_parser("examples")
    sp.add_argument("--section", type=int, required=True)
    sp.add_argument("--q", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=128)
    _add_common(sp)
    sp.set_defaults(fn=cmd_examples)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "jobs", 1) < 1:
        print("jobs must be >= 1", file=sys.stderr)
        return 2
    if getattr(args, "guard_max", 0) > HARD_GUARD_MAX:
        args.guard_max = HARD_GUARD_MAX
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except GuardError as exc:
        print(f"guard refusal: {exc}", file=sys.stderr)
        return 3


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
