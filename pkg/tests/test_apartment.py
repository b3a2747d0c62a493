"""Compactified apartments: charts, tropical evaluation, strata, projections
and stabilizer profiles."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import oracles
from weylscope import apartment, linalg, polyfan, root_data, type_geometry
from weylscope.apartment import (
    ChartMismatchError,
    chart_generators,
    chart_membership,
    embed_stratum,
    extract_residual,
    group_seminorm_eval,
    interior_point,
    is_norm,
    levi_projection,
    limit_point,
    make_context,
    make_monomial,
    make_polynomial,
    project,
    seminorm_eval,
    stabilizer_profile,
    stratum_apartment,
    stratum_of,
    stratum_point,
    translate_point,
    tropical_product,
    tropical_sum,
)
from weylscope.polyfan import NEG_INF, finite
from weylscope.root_data import ValidationError, build_named, standard_parabolic


def _ctx(name: str, t):
    return make_context(build_named(name), t)


def _random_poly(rng: random.Random, n_gens: int, characters: int = 0):
    monomials = []
    for _ in range(rng.randint(1, 4)):
        exps = {
            rng.randrange(n_gens): rng.randint(1, 3)
            for _ in range(rng.randint(0, 2))
        }
        coeff = (
            NEG_INF
            if rng.random() < 0.1
            else finite(Fraction(rng.randint(-6, 6), rng.randint(1, 2)))
        )
        char = tuple(rng.randint(-2, 2) for _ in range(characters))
        monomials.append(make_monomial(exps, coeff, char))
    return make_polynomial(monomials)


# ---------------------------------------------------------------------------
# tropical algebra


def test_make_polynomial_merges_and_drops():
    f = make_polynomial(
        [
            make_monomial({0: 1}, 2),
            make_monomial({0: 1}, 5),
            make_monomial({1: 1}, NEG_INF),
        ]
    )
    assert len(f.monomials) == 1
    assert f.monomials[0].coeff == finite(5)


def test_monomial_validation():
    with pytest.raises(ValidationError):
        make_monomial({0: -1}, 0)
    with pytest.raises(ValidationError):
        make_monomial({}, polyfan.POS_INF)


def test_semiring_identities():
    rng = random.Random(2)
    zero = make_polynomial([])
    one = make_polynomial([make_monomial({}, 0)])
    for _ in range(20):
        f = _random_poly(rng, 3)
        assert tropical_sum(f, zero) == f
        assert tropical_product(f, one) == f
        assert tropical_product(f, zero) == zero
        g = _random_poly(rng, 3)
        h = _random_poly(rng, 3)
        assert tropical_sum(f, g) == tropical_sum(g, f)
        assert tropical_product(f, g) == tropical_product(g, f)
        assert tropical_product(f, tropical_sum(g, h)) == tropical_sum(
            tropical_product(f, g), tropical_product(f, h)
        )


def test_characters_add_with_padding():
    a = make_monomial({0: 1}, 0, (1, 2))
    b = make_monomial({1: 1}, 0, (0, 0, 3))
    prod = tropical_product(
        make_polynomial([a]), make_polynomial([b])
    )
    assert prod.monomials[0].character == (1, 2, 3)


# ---------------------------------------------------------------------------
# contexts and membership


def test_context_shape_a2_hyperplane():
    ctx = _ctx("A2", {0})
    assert len(ctx.parabolics) == 7
    assert len(ctx.prefan.cones) == 7
    assert len(ctx.charts) == 3
    for p, psi in ctx.charts:
        assert psi == chart_generators(p)
        assert len(psi) == 2


def test_chart_membership_counts():
    ctx = _ctx("A2", {0})
    # a point of a ray stratum with nonzero residual class lies in exactly
    # one chart ...
    q = ctx.parabolics[3]
    span = polyfan.span_basis(ctx.prefan.cones[3])
    generic_residual = next(
        u
        for u in ((7, 0), (0, 7))
        if not linalg.is_zero(linalg.reduce_mod_span(span, u))
    )
    generic = stratum_point(ctx, q, generic_residual)
    hits = [p for p, _ in ctx.charts if chart_membership(ctx, generic, p)]
    assert len(hits) == 1
    # ... while the base point of the ray lies in the two adjacent charts
    base = stratum_point(ctx, q, (0, 0))
    hits_base = [p for p, _ in ctx.charts if chart_membership(ctx, base, p)]
    assert len(hits_base) == 2


def test_interior_membership_is_cone_membership():
    ctx = _ctx("A2", {0})
    rng = random.Random(13)
    for _ in range(30):
        u = tuple(Fraction(rng.randint(-5, 5)) for _ in range(2))
        x = interior_point(ctx, u)
        for (p, psi), cone in zip(ctx.charts, [None] * 3):
            member = chart_membership(ctx, x, p)
            expected = all(oracles.dot(u, a) <= 0 for a in psi)
            assert member == expected


# ---------------------------------------------------------------------------
# evaluation


def test_seminorm_eval_interior_matches_direct_formula():
    ctx = _ctx("A2", {0})
    p, psi = ctx.charts[0]
    rng = random.Random(17)
    for _ in range(20):
        _, rays = polyfan.generators(type_geometry.type_cone_max(p))
        coeffs = [Fraction(rng.randint(0, 3)) for _ in rays]
        u = tuple(
            sum(c * r[i] for c, r in zip(coeffs, rays)) for i in range(2)
        )
        x = interior_point(ctx, u)
        f = _random_poly(rng, len(psi))
        got = seminorm_eval(ctx, x, f, p)
        best = None
        for m in f.monomials:
            val = m.coeff.value + sum(
                n * oracles.dot(u, psi[k]) for k, n in m.exponents
            )
            best = val if best is None or val > best else best
        if best is None:
            assert got == NEG_INF
        else:
            assert got == finite(best)


def test_seminorm_eval_requires_membership():
    ctx = _ctx("A2", {0})
    p, _ = ctx.charts[0]
    outside = interior_point(ctx, (5, 5))
    if not chart_membership(ctx, outside, p):
        with pytest.raises(ChartMismatchError):
            seminorm_eval(ctx, outside, make_polynomial([]), p)


def test_boundary_monomials_die_on_dead_generators():
    ctx = _ctx("A2", {0})
    x = limit_point(ctx, (0, 0), (-1, 0))
    p, psi = apartment._accepting_chart(ctx, x)
    vals = apartment.generator_values(ctx, x, p)
    dead = [k for k, v in enumerate(vals) if v.kind < 0]
    assert dead
    f = make_polynomial([make_monomial({dead[0]: 1}, 100)])
    assert seminorm_eval(ctx, x, f, p) == NEG_INF
    g = make_polynomial([make_monomial({dead[0]: 1}, 100), make_monomial({}, -1)])
    assert seminorm_eval(ctx, x, g, p) == finite(-1)


def test_is_norm_only_in_the_interior():
    ctx = _ctx("A2", {0})
    inside = interior_point(ctx, (-2, -1))
    p, _ = apartment._accepting_chart(ctx, inside)
    assert is_norm(ctx, inside, p)
    edge = limit_point(ctx, (0, 0), (-1, 0))
    p2, _ = apartment._accepting_chart(ctx, edge)
    assert not is_norm(ctx, edge, p2)


def test_group_seminorm_eval_uses_root_indexing():
    datum = build_named("A2")
    f = make_polynomial(
        [make_monomial({0: 1}, 0), make_monomial({}, Fraction(-1, 2))]
    )
    # root index 0 is datum.roots[0]
    u = (Fraction(1), Fraction(0))
    expected = max(oracles.dot(u, datum.roots[0]), Fraction(-1, 2))
    assert group_seminorm_eval(datum, u, f) == expected
    with pytest.raises(ValidationError):
        group_seminorm_eval(datum, u, make_polynomial([]))


# ---------------------------------------------------------------------------
# strata


def test_stratum_of_agrees_with_construction():
    ctx = _ctx("A2", {0})
    rng = random.Random(29)
    for q, cone in zip(ctx.parabolics, ctx.prefan.cones):
        for _ in range(3):
            residual = tuple(Fraction(rng.randint(-4, 4)) for _ in range(2))
            x = stratum_point(ctx, q, residual)
            assert stratum_of(ctx, x).members == q.members


def test_limit_point_matches_sequence_limit():
    ctx = _ctx("A2", {0})
    rng = random.Random(31)
    for _ in range(20):
        u0 = tuple(Fraction(rng.randint(-3, 3)) for _ in range(2))
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(2))
        x = limit_point(ctx, u0, v)
        raw = polyfan.sequence_limit(u0, v, ctx.prefan)
        assert raw is not None
        assert x.point.stratum == raw.stratum
        assert x.point.residual == raw.residual


def test_translate_point_moves_residual():
    ctx = _ctx("A2", {0})
    x = limit_point(ctx, (1, 2), (-1, 0))
    y = translate_point(ctx, x, (5, 5))
    assert y.stratum_parabolic == x.stratum_parabolic
    expected = polyfan.BoundaryPoint(
        stratum=x.point.stratum, residual=(Fraction(6), Fraction(7))
    )
    assert y.point.residual == expected.residual


def test_stratum_apartment_round_trip():
    for name, t in (("A2", {0}), ("A3", {0, 1}), ("B2", {1})):
        ctx = _ctx(name, t)
        rng = random.Random(37)
        for q in ctx.parabolics:
            sa = stratum_apartment(ctx, q)
            r = sa.residual_datum.rank
            for _ in range(3):
                y = tuple(Fraction(rng.randint(-5, 5)) for _ in range(r))
                assert sa.extract(sa.embed(y)) == y
                x = embed_stratum(ctx, y, q)
                assert extract_residual(ctx, x) == y


def test_stratum_apartment_needs_relevance():
    ctx = _ctx("A3", {0, 1})
    q = standard_parabolic(ctx.datum, (1,))  # not relevant for this type
    with pytest.raises(ValidationError):
        stratum_apartment(ctx, q)


# ---------------------------------------------------------------------------
# projections


def test_project_is_identity_on_same_type():
    ctx = _ctx("A2", {0})
    x = stratum_point(ctx, ctx.parabolics[3], (1, 1))
    assert project(ctx, x, {0}) is x


def test_project_rejects_smaller_type():
    ctx = _ctx("A2", {0})
    x = interior_point(ctx, (0, 0))
    with pytest.raises(ValidationError):
        project(ctx, x, frozenset())


def test_project_to_full_type_collapses_everything():
    ctx = _ctx("A2", frozenset())
    rng = random.Random(43)
    targets = set()
    for q in ctx.parabolics:
        x = stratum_point(
            ctx, q, tuple(Fraction(rng.randint(-3, 3)) for _ in range(2))
        )
        y = project(ctx, x, {0, 1})
        targets.add((y.stratum_parabolic.members, y.point.residual))
    assert len(targets) == 1  # single point: the full compactification of G


def test_project_lands_on_minimal_relevant():
    ctx = _ctx("A3", frozenset())
    delta = frozenset({0, 1})
    for q in ctx.parabolics[:40]:
        x = stratum_point(ctx, q, (1, 0, 2))
        y = project(ctx, x, delta)
        expected = type_geometry.minimal_relevant(q, delta)
        assert y.stratum_parabolic.members == expected.members


# ---------------------------------------------------------------------------
# stabilizers


def test_stabilizer_profile_levels():
    ctx = _ctx("A2", {0})
    q = ctx.parabolics[3]  # the standard {a2} ray stratum
    x = stratum_point(ctx, q, (0, 7))
    prof = stabilizer_profile(ctx, x)
    assert prof.stratum_parabolic.members == q.members
    assert set(prof.full_unipotent) == root_data.unipotent_radical_roots(q)
    levels = dict(prof.filtered)
    assert levels[(0, 1)] == Fraction(-7)
    assert levels[(0, -1)] == Fraction(7)
    assert prof.normalizer_note == "N(k)_x"


def test_stabilizer_interior_point_filters_everything():
    ctx = _ctx("A2", frozenset())
    x = interior_point(ctx, (Fraction(1, 2), Fraction(-1, 3)))
    prof = stabilizer_profile(ctx, x)
    assert prof.full_unipotent == ()
    assert prof.full_levi == ()
    assert len(prof.filtered) == 6
    for a, level in prof.filtered:
        assert level == -oracles.dot(x.point.residual, a)


def test_levi_projection_extremes():
    datum = build_named("A2")
    u = (Fraction(3), Fraction(-2))
    g = standard_parabolic(datum, (0, 1))
    assert levi_projection(datum, u, g) == (Fraction(3), Fraction(-2))
    borel = standard_parabolic(datum, ())
    assert levi_projection(datum, u, borel) == ()
    p1 = standard_parabolic(datum, (0,))
    assert levi_projection(datum, u, p1) == (Fraction(3),)


def test_determinism_of_context_and_stratum():
    ctx1 = make_context(build_named("B2"), {0})
    ctx2 = make_context(build_named("B2"), {0})
    assert ctx1.prefan.cones == ctx2.prefan.cones
    assert [p.members for p in ctx1.parabolics] == [
        p.members for p in ctx2.parabolics
    ]
    x1 = limit_point(ctx1, (1, 2), (0, -1))
    x2 = limit_point(ctx2, (1, 2), (0, -1))
    assert x1.point == x2.point
