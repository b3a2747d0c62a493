"""Compactified apartment of a fixed type: big-cell charts, tropical
seminorm evaluation at interior and boundary points, stratum identification,
residual apartments with embeddings, projections between types, and
stabilizer profiles.

Everything is log-additive: chart generator values are <u, alpha> with the
boundary value -inf, and a "seminorm" of a polynomial is the max over its
monomials of log-coefficient plus weighted generator values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from . import linalg, polyfan, root_data, type_geometry
from .linalg import IntVector, Vector
from .polyfan import BoundaryPoint, Cone, ExtendedValue, NEG_INF, Prefan, finite
from .root_data import ParabolicSet, RootDatum, TypeLabel, ValidationError, WeylElement


class ChartMismatchError(ValueError):
    """The point lies outside the requested big-cell chart."""


# ---------------------------------------------------------------------------
# tropical polynomials


@dataclass(frozen=True, order=True)
class TropicalMonomial:
    """One monomial: exponents over generator indices (sorted, positive),
    a log-magnitude coefficient, and an optional character tag (weight zero
    in every evaluation; only used by the group big cell)."""

    exponents: Tuple[Tuple[int, int], ...]
    coeff: ExtendedValue
    character: Tuple[int, ...] = ()


@dataclass(frozen=True)
class TropicalPolynomial:
    """Finite max-plus combination of monomials; the empty combination is
    the zero polynomial (value -inf everywhere)."""

    monomials: Tuple[TropicalMonomial, ...]


def make_monomial(exponents, coeff, character: Sequence[int] = ()) -> TropicalMonomial:
    if isinstance(exponents, dict):
        items = exponents.items()
    else:
        items = exponents
    cleaned = []
    for k, n in items:
        n = int(n)
        if n < 0:
            raise ValidationError(f"negative exponent {n} for generator {k}")
        if n:
            cleaned.append((int(k), n))
    if not isinstance(coeff, ExtendedValue):
        coeff = finite(coeff)
    if coeff.kind > 0:
        raise ValidationError("monomial coefficients live in Q union {-inf}")
    return TropicalMonomial(
        exponents=tuple(sorted(cleaned)),
        coeff=coeff,
        character=tuple(int(c) for c in character),
    )


def make_polynomial(monomials: Iterable) -> TropicalPolynomial:
    """Normalize: coerce entries, merge equal monomial shapes by max
    coefficient, drop dead (-inf) monomials, sort."""
    best: Dict[Tuple, ExtendedValue] = {}
    for entry in monomials:
        if isinstance(entry, TropicalMonomial):
            m = entry
        else:
            m = make_monomial(*entry)
        key = (m.exponents, m.character)
        prev = best.get(key)
        if prev is None or m.coeff > prev:
            best[key] = m.coeff
    out = [
        TropicalMonomial(exponents=e, coeff=c, character=ch)
        for (e, ch), c in best.items()
        if c.kind == 0
    ]
    return TropicalPolynomial(monomials=tuple(sorted(out)))


def tropical_sum(f: TropicalPolynomial, g: TropicalPolynomial) -> TropicalPolynomial:
    return make_polynomial(f.monomials + g.monomials)


def _pad_add(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def tropical_product(f: TropicalPolynomial, g: TropicalPolynomial) -> TropicalPolynomial:
    out = []
    for m in f.monomials:
        for m2 in g.monomials:
            exps: Dict[int, int] = dict(m.exponents)
            for k, n in m2.exponents:
                exps[k] = exps.get(k, 0) + n
            out.append(
                make_monomial(exps, m.coeff + m2.coeff, _pad_add(m.character, m2.character))
            )
    return make_polynomial(out)


# ---------------------------------------------------------------------------
# context and points


@dataclass(frozen=True)
class ApartmentContext:
    """A root datum with a fixed type: the stratifying prefan (one cone per
    relevant parabolic, aligned index-wise), and one big-cell chart per
    type-t parabolic, carrying its generator roots."""

    datum: RootDatum
    type_label: TypeLabel
    origin: str
    prefan: Prefan
    parabolics: Tuple[ParabolicSet, ...]
    charts: Tuple[Tuple[ParabolicSet, Tuple[IntVector, ...]], ...]


def chart_generators(p: ParabolicSet) -> Tuple[IntVector, ...]:
    """Generator roots of the big cell of p: the roots of the unipotent
    radical of the opposite parabolic, in sorted order."""
    return tuple(sorted(root_data.unipotent_radical_roots(root_data.opposite(p))))


def make_context(
    datum: RootDatum,
    t: Iterable[int],
    origin: str = "o",
    cap: Optional[int] = None,
) -> ApartmentContext:
    label = type_geometry._check_type(datum, frozenset(t))
    relevant = tuple(
        q
        for q in root_data.all_parabolics(datum, cap)
        if type_geometry.is_relevant(q, label)
    )
    cones = tuple(type_geometry.type_cone(q, label).cone for q in relevant)
    charts = tuple(
        (p, chart_generators(p))
        for p in root_data.all_parabolics(datum, cap)
        if root_data.standard_position(p)[1] == label
    )
    return ApartmentContext(
        datum=datum,
        type_label=label,
        origin=origin,
        prefan=polyfan.make_prefan(cones),
        parabolics=relevant,
        charts=charts,
    )


@dataclass(frozen=True)
class CompactApartmentPoint:
    """A point of the compactified apartment: a boundary point of the type
    prefan plus the relevant parabolic indexing its stratum."""

    point: BoundaryPoint
    stratum_parabolic: ParabolicSet


def _cone_of(ctx: ApartmentContext, q: ParabolicSet) -> Cone:
    for p2, c in zip(ctx.parabolics, ctx.prefan.cones):
        if p2.members == q.members:
            return c
    raise ValidationError("parabolic does not index a stratum (not relevant)")


def interior_point(ctx: ApartmentContext, u: Sequence) -> CompactApartmentPoint:
    g = root_data.standard_parabolic(ctx.datum, range(ctx.datum.rank))
    return CompactApartmentPoint(
        point=BoundaryPoint(stratum=_cone_of(ctx, g), residual=linalg.vec(u)),
        stratum_parabolic=g,
    )


def stratum_point(
    ctx: ApartmentContext, q: ParabolicSet, residual: Sequence
) -> CompactApartmentPoint:
    return CompactApartmentPoint(
        point=BoundaryPoint(stratum=_cone_of(ctx, q), residual=linalg.vec(residual)),
        stratum_parabolic=q,
    )


def limit_point(
    ctx: ApartmentContext, u0: Sequence, v: Sequence
) -> CompactApartmentPoint:
    """Limit of the ray u0 + n*v: the stratum whose cone holds v in its
    relative interior, with residual the class of u0."""
    vv = linalg.vec(v)
    for q, c in zip(ctx.parabolics, ctx.prefan.cones):
        if polyfan.in_relative_interior(c, vv):
            return CompactApartmentPoint(
                point=BoundaryPoint(stratum=c, residual=linalg.vec(u0)),
                stratum_parabolic=q,
            )
    raise ValidationError("direction lies in no stratum cone; prefan does not cover it")


def translate_point(
    ctx: ApartmentContext, x: CompactApartmentPoint, w: Sequence
) -> CompactApartmentPoint:
    return CompactApartmentPoint(
        point=polyfan.translate(x.point, w), stratum_parabolic=x.stratum_parabolic
    )


# ---------------------------------------------------------------------------
# charts and evaluation


def generator_values(
    ctx: ApartmentContext, x: CompactApartmentPoint, p: ParabolicSet
) -> Tuple[ExtendedValue, ...]:
    return tuple(
        polyfan.eval_at_boundary(x.point, a) for a in chart_generators(p)
    )


def chart_membership(
    ctx: ApartmentContext, x: CompactApartmentPoint, p: ParabolicSet
) -> bool:
    """Whether every chart generator evaluates to a nonpositive rational or
    -inf at x (indeterminate or positive generators put x outside)."""
    try:
        vals = generator_values(ctx, x, p)
    except polyfan.IndeterminateValueError:
        return False
    return all(
        v.kind < 0 or (v.kind == 0 and v.value <= 0) for v in vals
    )


def _accepting_chart(
    ctx: ApartmentContext, x: CompactApartmentPoint
) -> Tuple[ParabolicSet, Tuple[IntVector, ...]]:
    for p, psi in ctx.charts:
        if chart_membership(ctx, x, p):
            return p, psi
    raise ValidationError("no chart accepts the point; charts fail to cover")


def _monomial_value(
    m: TropicalMonomial, values: Sequence[ExtendedValue]
) -> ExtendedValue:
    total = m.coeff
    for k, n in m.exponents:
        if k < 0 or k >= len(values):
            raise ValidationError(
                f"generator index {k} out of range for a chart with {len(values)} generators"
            )
        v = values[k]
        if v.kind < 0:
            return NEG_INF
        total = total + ExtendedValue(0, v.value * n)
    return total


def seminorm_eval(
    ctx: ApartmentContext,
    x: CompactApartmentPoint,
    f: TropicalPolynomial,
    p: ParabolicSet,
) -> ExtendedValue:
    """Log of the seminorm of f at x in the chart of p: max over monomials
    of coefficient plus exponent-weighted generator values; a monomial dies
    when a generator it uses with positive exponent sits at -inf."""
    if not chart_membership(ctx, x, p):
        raise ChartMismatchError("point is not in the requested chart")
    values = generator_values(ctx, x, p)
    best = NEG_INF
    for m in f.monomials:
        val = _monomial_value(m, values)
        if val > best:
            best = val
    return best


def group_seminorm_eval(
    datum: RootDatum, u: Sequence, f: TropicalPolynomial
) -> Fraction:
    """Interior evaluation in the group big cell: exponent keys index
    datum.roots, characters carry weight zero."""
    uu = linalg.vec(u)
    best: Optional[Fraction] = None
    for m in f.monomials:
        if m.coeff.kind < 0:
            continue
        total = m.coeff.value
        for k, n in m.exponents:
            if k < 0 or k >= len(datum.roots):
                raise ValidationError(f"root index {k} out of range")
            total += n * linalg.dot(uu, datum.roots[k])
        if best is None or total > best:
            best = total
    if best is None:
        raise ValidationError("the zero polynomial has no interior group value")
    return best


def is_norm(ctx: ApartmentContext, x: CompactApartmentPoint, p: ParabolicSet) -> bool:
    if not chart_membership(ctx, x, p):
        raise ChartMismatchError("point is not in the requested chart")
    return all(v.kind == 0 for v in generator_values(ctx, x, p))


# ---------------------------------------------------------------------------
# strata


def stratum_of(ctx: ApartmentContext, x: CompactApartmentPoint) -> ParabolicSet:
    """Identify the stratum from the vanishing pattern of the first
    accepting chart: the relevant Q osculatory with the chart parabolic
    whose non-Levi generator set is exactly the -inf set."""
    p, psi = _accepting_chart(ctx, x)
    vals = generator_values(ctx, x, p)
    dead = frozenset(a for a, v in zip(psi, vals) if v.kind < 0)
    matches = []
    for q in ctx.parabolics:
        if not root_data.is_osculatory(p, q):
            continue
        levi = root_data.levi_roots(q)
        if frozenset(a for a in psi if a not in levi) == dead:
            matches.append(q)
    if len(matches) != 1:
        raise ValidationError(
            f"vanishing pattern matches {len(matches)} strata; chart logic broken"
        )
    found = matches[0]
    if found.members != x.stratum_parabolic.members:
        raise ValidationError("stored stratum disagrees with the vanishing pattern")
    return found


@dataclass(frozen=True)
class StratumApartment:
    """The residual apartment of a stratum: the root datum of the active
    Dynkin part, plus exact extraction/embedding between stratum residuals
    and residual coordinates."""

    parent: ParabolicSet
    type_label: TypeLabel
    residual_datum: RootDatum
    active: Tuple[int, ...]
    extraction_roots: Tuple[IntVector, ...]
    conjugator: WeylElement

    def extract(self, u: Sequence) -> Vector:
        return tuple(linalg.dot(u, b) for b in self.extraction_roots)

    def embed(self, y: Sequence) -> Vector:
        if len(y) != len(self.active):
            raise ValidationError(
                f"residual vector has length {len(y)}, expected {len(self.active)}"
            )
        datum = self.parent.datum
        std = [Fraction(0)] * datum.rank
        for pos, i in enumerate(self.active):
            std[i] = Fraction(y[pos])
        back = root_data.inverse(datum, self.conjugator)
        return root_data.act_on_dual(datum, back, tuple(std))


def stratum_apartment(
    ctx: ApartmentContext, q: ParabolicSet
) -> StratumApartment:
    """Residual datum = Cartan submatrix over the active components; the
    extraction roots are the conjugated simple roots of the active part,
    which vanish on the stratum span and so descend to residual classes."""
    rep = type_geometry.relevance_report(q, ctx.type_label)
    if not rep.is_relevant:
        raise ValidationError("parabolic is not relevant for the context type")
    datum = ctx.datum
    active = tuple(sorted(rep.active_components))
    sub = [[datum.cartan[i][j] for j in active] for i in active]
    residual = root_data.build_from_cartan(sub)
    w, _ = root_data.standard_position(q)
    w_inv = root_data.inverse(datum, w)
    extraction = tuple(
        w_inv.apply(tuple(1 if j == i else 0 for j in range(datum.rank)))
        for i in active
    )
    return StratumApartment(
        parent=q,
        type_label=ctx.type_label,
        residual_datum=residual,
        active=active,
        extraction_roots=extraction,
        conjugator=w,
    )


def embed_stratum(
    ctx: ApartmentContext, y: Sequence, q: ParabolicSet
) -> CompactApartmentPoint:
    sa = stratum_apartment(ctx, q)
    return stratum_point(ctx, q, sa.embed(y))


def extract_residual(ctx: ApartmentContext, x: CompactApartmentPoint) -> Vector:
    sa = stratum_apartment(ctx, x.stratum_parabolic)
    return sa.extract(x.point.residual)


# ---------------------------------------------------------------------------
# projections between types


def project(
    ctx: ApartmentContext, x: CompactApartmentPoint, t_prime: Iterable[int]
) -> CompactApartmentPoint:
    """Coarsen the point from the context type t to a larger type: the new
    stratum is the minimal t'-relevant parabolic over the current stratum,
    and the residual class is carried along the span inclusion."""
    new_label = type_geometry._check_type(ctx.datum, frozenset(t_prime))
    if not ctx.type_label <= new_label:
        raise ValidationError("type order violated: need the context type inside t'")
    if new_label == ctx.type_label:
        return x
    q2 = type_geometry.minimal_relevant(x.stratum_parabolic, new_label)
    c2 = type_geometry.type_cone(q2, new_label).cone
    if not polyfan.cone_subset(x.point.stratum, c2):
        raise ValidationError("projection target cone does not contain the stratum")
    v = polyfan.relative_interior_point(x.point.stratum)
    if not polyfan.in_relative_interior(c2, v):
        raise ValidationError("stratum interior escapes the target stratum interior")
    return CompactApartmentPoint(
        point=BoundaryPoint(stratum=c2, residual=x.point.residual),
        stratum_parabolic=q2,
    )


# ---------------------------------------------------------------------------
# stabilizers


@dataclass(frozen=True)
class StabilizerProfile:
    """Root-group data of the stabilizer of a point: full unipotent root
    groups, full Levi root groups, filtered Levi root groups with exact
    levels, and a symbolic marker for the normalizer factor."""

    stratum_parabolic: ParabolicSet
    full_unipotent: Tuple[IntVector, ...]
    full_levi: Tuple[IntVector, ...]
    filtered: Tuple[Tuple[IntVector, Fraction], ...]
    normalizer_note: str


def stabilizer_profile(
    ctx: ApartmentContext, x: CompactApartmentPoint
) -> StabilizerProfile:
    """Unipotent radical roots act fully; Levi roots split by the type cone
    into a full part (nonvanishing) and a filtered part at level -<u,alpha>
    (well defined: vanishing roots kill the stratum span)."""
    q = stratum_of(ctx, x)
    rt = type_geometry.rt_decomposition(q, ctx.type_label)
    filtered = tuple(
        (a, -Fraction(linalg.dot(x.point.residual, a))) for a in rt.vanishing
    )
    return StabilizerProfile(
        stratum_parabolic=q,
        full_unipotent=tuple(sorted(root_data.unipotent_radical_roots(q))),
        full_levi=rt.nonvanishing,
        filtered=filtered,
        normalizer_note="N(k)_x",
    )


def levi_projection(datum: RootDatum, u: Sequence, q: ParabolicSet) -> Vector:
    """Coordinates of u in the apartment of the Levi quotient of q: pairings
    with the conjugated simple roots of the Levi label.  The kernel is the
    span of the Weyl cone of q (the annihilator of the Levi roots)."""
    w, y = root_data.standard_position(q)
    w_inv = root_data.inverse(datum, w)
    uu = linalg.vec(u)
    return tuple(
        Fraction(linalg.dot(uu, w_inv.apply(tuple(1 if j == i else 0 for j in range(datum.rank)))))
        for i in sorted(y)
    )
