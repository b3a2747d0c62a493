"""Rational polyhedral cones, prefans, and compactified-cone boundary
calculus: faces, covering tests, boundary evaluation, symbolic ray limits,
translation, and stratum closures.

Log-additive convention throughout: a functional value "alpha <= 1" of the
multiplicative picture is represented as <u, phi> <= 0, and the boundary
value 0 becomes -infinity.  Boundary semantics are decided on the explicit
generator functionals of each cone (no saturation): sums of generators
vanish iff one summand vanishes, which makes the generator description
sufficient.

Every cone is stored by its H-description; a dual description (lineality
basis plus canonical extreme-ray representatives) is derived once per cone,
after which containment, equality, implication and interior tests are plain
dot products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import linalg
from .linalg import Vector

Functional = Tuple[int, ...]

FACE_DIM_CAP = 8


def _primitive_ray(v: Sequence) -> Vector:
    """Coprime integer representative of a ray direction, sign preserved
    (linalg.primitive normalizes the sign, which is only correct for
    functionals considered up to sign)."""
    p = linalg.primitive(v)
    for x in v:
        if x != 0:
            if x < 0:
                p = linalg.neg_int(p)
            break
    return linalg.vec(p)


class DimensionCapError(RuntimeError):
    """Ambient dimension exceeds the configured cap for the generic face
    algorithm."""


class FanAxiomViolation(Exception):
    """Two cones meet in a set that is not a common face; carries a witness
    point inside the offending region."""

    def __init__(self, message: str, witness: Optional[Vector] = None):
        super().__init__(message)
        self.witness = witness


class IndeterminateValueError(ValueError):
    """The functional changes sign on the stratum cone: interior sequences
    converging to the point can realize different limits."""


@dataclass(frozen=True, order=True)
class ExtendedValue:
    """A rational, -infinity, or +infinity; ordered, with partial addition."""

    kind: int  # -1, 0, +1
    value: Fraction = Fraction(0)

    @staticmethod
    def of(q) -> "ExtendedValue":
        return ExtendedValue(0, Fraction(q))

    @property
    def is_finite(self) -> bool:
        return self.kind == 0

    def __add__(self, other: "ExtendedValue") -> "ExtendedValue":
        if not isinstance(other, ExtendedValue):
            other = ExtendedValue.of(other)
        if self.kind == 0 and other.kind == 0:
            return ExtendedValue(0, self.value + other.value)
        if self.kind == 0:
            return other
        if other.kind == 0 or other.kind == self.kind:
            return self
        raise IndeterminateValueError("(+inf) + (-inf) is undefined")

    __radd__ = __add__

    def __str__(self) -> str:
        if self.kind < 0:
            return "-inf"
        if self.kind > 0:
            return "inf"
        return str(self.value)


NEG_INF = ExtendedValue(-1)
POS_INF = ExtendedValue(1)


def finite(q) -> ExtendedValue:
    return ExtendedValue.of(q)


@dataclass(frozen=True)
class Cone:
    """H-description: integer functionals phi with <u,phi> <= 0 (ineqs) and
    <u,phi> = 0 (eqs).  Equality of Cone objects is by description; use
    cones_equal for set equality."""

    space_dim: int
    ineqs: Tuple[Functional, ...]
    eqs: Tuple[Functional, ...]


def make_cone(space_dim: int, ineqs: Sequence[Sequence[int]], eqs: Sequence[Sequence[int]] = ()) -> Cone:
    return Cone(
        space_dim=space_dim,
        ineqs=tuple(tuple(int(x) for x in f) for f in ineqs),
        eqs=tuple(tuple(int(x) for x in f) for f in eqs),
    )


@lru_cache(maxsize=None)
def lineality_basis(cone: Cone) -> Tuple[Vector, ...]:
    """Canonical basis of the largest linear subspace inside the cone: the
    common kernel of every description functional (description-independent,
    since any valid description spans the annihilator of the lineality)."""
    return tuple(linalg.nullspace(cone.ineqs + cone.eqs, cone.space_dim))


@lru_cache(maxsize=None)
def generators(cone: Cone) -> Tuple[Tuple[Vector, ...], Tuple[Vector, ...]]:
    """(lineality basis, extreme-ray representatives).

    Rays are found by intersecting tight constraint subsets down to lines,
    then canonicalized modulo the lineality (primitive integer direction),
    so the pair is a normal form: two H-descriptions cut out the same set
    iff they produce identical pairs.  The cone is the lineality span plus
    the nonnegative hull of the rays.
    """
    n = cone.space_dim
    lin = lineality_basis(cone)
    ell = len(lin)
    unique_ineqs = sorted({linalg.primitive(f) for f in cone.ineqs if any(f)})
    eq_rank = linalg.rank(cone.eqs) if cone.eqs else 0
    want = n - ell - 1 - eq_rank
    if want < 0 or want > len(unique_ineqs):
        return lin, ()
    rays = set()
    for subset in combinations(unique_ineqs, want):
        null = linalg.nullspace(tuple(cone.eqs) + subset, n)
        if len(null) != ell + 1:
            continue
        v0 = None
        for b in null:
            if not linalg.in_row_span(lin, b):
                v0 = b
                break
        if v0 is None:
            continue
        for cand in (v0, linalg.neg(v0)):
            if all(linalg.dot(cand, f) <= 0 for f in cone.ineqs) and all(
                linalg.dot(cand, e) == 0 for e in cone.eqs
            ):
                red = linalg.reduce_mod_span(lin, cand)
                if not linalg.is_zero(red):
                    rays.add(_primitive_ray(red))
                break
    return lin, tuple(sorted(rays))


def _canonical_key(cone: Cone):
    lin, rays = generators(cone)
    return (cone.space_dim, lin, frozenset(rays))


def cone_implies(cone: Cone, phi: Sequence[int]) -> bool:
    """Whether <u,phi> <= 0 holds on all of the cone."""
    lin, rays = generators(cone)
    return all(linalg.dot(v, phi) == 0 for v in lin) and all(
        linalg.dot(r, phi) <= 0 for r in rays
    )


def functional_vanishes(cone: Cone, phi: Sequence[int]) -> bool:
    lin, rays = generators(cone)
    return all(linalg.dot(v, phi) == 0 for v in lin) and all(
        linalg.dot(r, phi) == 0 for r in rays
    )


@lru_cache(maxsize=None)
def implied_equalities(cone: Cone) -> Tuple[Functional, ...]:
    """All description functionals (eqs plus tight ineqs) vanishing on the
    cone; their common kernel is the cone's linear span."""
    out = list(cone.eqs)
    for f in cone.ineqs:
        if functional_vanishes(cone, f):
            out.append(f)
    return tuple(out)


@lru_cache(maxsize=None)
def span_basis(cone: Cone) -> Tuple[Vector, ...]:
    return tuple(linalg.nullspace(implied_equalities(cone), cone.space_dim))


def dim(cone: Cone) -> int:
    return len(span_basis(cone))


def is_strictly_convex(cone: Cone) -> bool:
    return not lineality_basis(cone)


def contains_point(cone: Cone, u: Sequence) -> bool:
    return all(linalg.dot(u, f) <= 0 for f in cone.ineqs) and all(
        linalg.dot(u, e) == 0 for e in cone.eqs
    )


def in_relative_interior(cone: Cone, u: Sequence) -> bool:
    if not contains_point(cone, u):
        return False
    tight = set(implied_equalities(cone))
    return all(
        linalg.dot(u, f) < 0 for f in cone.ineqs if f not in tight
    )


@lru_cache(maxsize=None)
def relative_interior_point(cone: Cone) -> Vector:
    """Deterministic relative interior point: the sum of the extreme rays
    (zero for a linear subspace)."""
    _, rays = generators(cone)
    pt = linalg.zero(cone.space_dim)
    for r in rays:
        pt = linalg.add(pt, r)
    assert in_relative_interior(cone, pt)
    return pt


def cone_subset(a: Cone, b: Cone) -> bool:
    """Whether a is contained in b (as point sets): every generator of a
    satisfies the constraints of b."""
    lin, rays = generators(a)
    for v in lin:
        if any(linalg.dot(v, f) != 0 for f in b.ineqs + b.eqs):
            return False
    for r in rays:
        if not contains_point(b, r):
            return False
    return True


def cones_equal(a: Cone, b: Cone) -> bool:
    return _canonical_key(a) == _canonical_key(b)


def _promoted(cone: Cone, extra_eqs: Sequence[Functional]) -> Cone:
    return Cone(
        space_dim=cone.space_dim,
        ineqs=cone.ineqs,
        eqs=cone.eqs + tuple(extra_eqs),
    )


def _tight_indices(cone: Cone, face: Cone) -> FrozenSet[int]:
    out = []
    for i, f in enumerate(cone.ineqs):
        if functional_vanishes(face, f):
            out.append(i)
    return frozenset(out)


def faces(cone: Cone, dim_cap: int = FACE_DIM_CAP) -> List[Cone]:
    """Complete face list (cone itself included), by promoting tight
    inequality subsets to equalities; finite and deduplicated."""
    if cone.space_dim > dim_cap:
        raise DimensionCapError(
            f"ambient dimension {cone.space_dim} exceeds face cap {dim_cap}"
        )
    start = _tight_indices(cone, cone)
    face_of: Dict[FrozenSet[int], Cone] = {
        start: _promoted(cone, tuple(cone.ineqs[i] for i in sorted(start)))
    }
    frontier = [start]
    while frontier:
        nxt: List[FrozenSet[int]] = []
        for tight in frontier:
            for i in range(len(cone.ineqs)):
                if i in tight:
                    continue
                cand = _promoted(
                    cone, tuple(cone.ineqs[j] for j in sorted(tight | {i}))
                )
                key = _tight_indices(cone, cand)
                if key in face_of:
                    continue
                face_of[key] = _promoted(
                    cone, tuple(cone.ineqs[j] for j in sorted(key))
                )
                nxt.append(key)
        frontier = nxt
    ordered = sorted(face_of, key=lambda t: (len(t), sorted(t)))
    return [face_of[t] for t in ordered]


def facets(cone: Cone) -> List[Cone]:
    """Codimension-one faces, each obtained by promoting one non-tight
    inequality (sufficient for H-descriptions)."""
    d = dim(cone)
    tight = set(implied_equalities(cone))
    out: List[Cone] = []
    seen: set = set()
    for f in cone.ineqs:
        if f in tight:
            continue
        cand = _promoted(cone, (f,))
        key = _tight_indices(cone, cand)
        if key in seen:
            continue
        seen.add(key)
        if dim(cand) == d - 1:
            out.append(_promoted(cone, tuple(cone.ineqs[j] for j in sorted(key))))
    return out


def _violation_witness(inner: Cone, outer: Cone) -> Optional[Vector]:
    """A generator of inner that leaves outer, if any (inner ⊆ outer iff all
    its generators satisfy outer's constraints)."""
    lin, rays = generators(inner)
    for v in lin:
        for f in outer.ineqs + outer.eqs:
            if linalg.dot(v, f) != 0:
                return v if linalg.dot(v, f) > 0 else linalg.neg(v)
    for r in rays:
        if not contains_point(outer, r):
            return r
    return None


def common_face(a: Cone, b: Cone) -> Cone:
    """The intersection, when it is a face of both; FanAxiomViolation with a
    witness point otherwise."""
    if a.space_dim != b.space_dim:
        raise ValueError("cones live in different ambient spaces")
    inter = Cone(
        space_dim=a.space_dim, ineqs=a.ineqs + b.ineqs, eqs=a.eqs + b.eqs
    )
    for c in (a, b):
        tight = _tight_indices(c, inter)
        face = _promoted(c, tuple(c.ineqs[i] for i in sorted(tight)))
        witness = _violation_witness(face, inter)
        if witness is not None:
            raise FanAxiomViolation(
                "intersection is not a face of both cones", witness=witness
            )
    return inter


@dataclass(frozen=True)
class Prefan:
    """A finite cone family closed under faces with pairwise common-face
    intersections; is_fan records strict convexity of every cone."""

    cones: Tuple[Cone, ...]
    is_fan: bool

    @property
    def space_dim(self) -> int:
        return self.cones[0].space_dim if self.cones else 0


def make_prefan(cones: Sequence[Cone]) -> Prefan:
    cs = tuple(cones)
    return Prefan(cones=cs, is_fan=all(is_strictly_convex(c) for c in cs))


def verify_prefan(prefan: Prefan) -> None:
    """Face closure and pairwise common-face axioms; raises on violation."""
    keys = {_canonical_key(c) for c in prefan.cones}
    for c in prefan.cones:
        for f in faces(c):
            if _canonical_key(f) not in keys:
                raise FanAxiomViolation(
                    "face closure fails", witness=relative_interior_point(f)
                )
    for i, a in enumerate(prefan.cones):
        for b in prefan.cones[i + 1 :]:
            common_face(a, b)


def _sample_grid(n: int) -> List[Vector]:
    bound = 2 if n <= 3 else 1
    vals = [Fraction(v) for v in range(-bound, bound + 1)]
    pts: List[Vector] = []

    def rec(prefix: Tuple[Fraction, ...]):
        if len(prefix) == n:
            pts.append(prefix)
            return
        for v in vals:
            rec(prefix + (v,))

    rec(())
    return pts


def covers(prefan: Prefan) -> bool:
    """Whether the cones cover the ambient space: every facet of every
    maximal cone is a linear subspace or shared with exactly one other
    maximal cone, and every integer sample point lies in some cone."""
    n = prefan.space_dim
    maximal = [c for c in prefan.cones if dim(c) == n]
    if not maximal:
        return n == 0 and bool(prefan.cones)
    for c in maximal:
        for f in facets(c):
            if dim(f) == len(lineality_basis(f)):
                continue  # a linear subspace: boundary only of the lineality locus
            others = [
                c2
                for c2 in maximal
                if c2 is not c and not cones_equal(c, c2) and cone_subset(f, c2)
            ]
            if len(others) != 1:
                return False
    for pt in _sample_grid(n):
        if not any(contains_point(c, pt) for c in prefan.cones):
            return False
    return True


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the compactified space: stratum cone plus a residual
    vector modulo the stratum's linear span (stored canonically, so equality
    is the intended congruence)."""

    stratum: Cone
    residual: Vector

    def __post_init__(self):
        canon = linalg.reduce_mod_span(span_basis(self.stratum), self.residual)
        object.__setattr__(self, "residual", canon)


def interior_kind(point: BoundaryPoint) -> bool:
    """True when the stratum cone is a linear subspace (an interior point of
    the uncompactified space, possibly modulo the common lineality)."""
    return dim(point.stratum) == len(lineality_basis(point.stratum))


def eval_at_boundary(point: BoundaryPoint, phi: Sequence[int]) -> ExtendedValue:
    """Boundary value of a functional: finite on the span, -inf/+inf off it
    according to its sign on the stratum cone, error when the sign is mixed."""
    f = tuple(int(x) for x in phi)
    if all(linalg.dot(b, f) == 0 for b in span_basis(point.stratum)):
        return finite(linalg.dot(point.residual, f))
    if cone_implies(point.stratum, f):
        return NEG_INF
    if cone_implies(point.stratum, tuple(-x for x in f)):
        return POS_INF
    raise IndeterminateValueError(
        f"functional {f} changes sign on the stratum cone"
    )


def sequence_limit(
    u0: Sequence, v: Sequence, prefan: Prefan
) -> Optional[BoundaryPoint]:
    """Limit of the symbolic ray u0 + n·v: the stratum is the unique prefan
    cone containing v in its relative interior, the residual is the class of
    u0.  None when no cone does (impossible for a covering prefan)."""
    vv = linalg.vec(v)
    hits = [c for c in prefan.cones if in_relative_interior(c, vv)]
    if not hits:
        return None
    stratum = hits[0]
    return BoundaryPoint(stratum=stratum, residual=linalg.vec(u0))


def translate(point: BoundaryPoint, w: Sequence) -> BoundaryPoint:
    return BoundaryPoint(
        stratum=point.stratum, residual=linalg.add(point.residual, linalg.vec(w))
    )


def stratum_closure(cone: Cone, prefan: Prefan) -> List[Cone]:
    """All prefan cones containing the given one (the strata meeting the
    closure of the given stratum)."""
    return [c for c in prefan.cones if cone_subset(cone, c)]


@dataclass(frozen=True)
class AffineApartment:
    """Bookkeeping wrapper fixing a special point as origin; all coordinates
    are relative to it."""

    origin: str
    prefan: Prefan

    def to_origin_coords(self, u: Sequence) -> Vector:
        return linalg.vec(u)

    def from_origin_coords(self, u: Sequence) -> Vector:
        return linalg.vec(u)


def with_origin(origin: str, prefan: Prefan) -> AffineApartment:
    return AffineApartment(origin=origin, prefan=prefan)
