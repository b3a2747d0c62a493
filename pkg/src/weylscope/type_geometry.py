"""Type cones attached to parabolic root sets, the prefan of a type,
relevancy combinatorics on the Dynkin diagram, and the induced
decomposition of Levi roots into vanishing and nonvanishing parts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple

from . import linalg, polyfan, root_data
from .polyfan import Cone, Prefan
from .root_data import (
    IntVector,
    ParabolicSet,
    RootDatum,
    TypeLabel,
    ValidationError,
)


@dataclass(frozen=True)
class TypeCone:
    """A type cone together with its provenance."""

    cone: Cone
    source: ParabolicSet
    type_label: TypeLabel


@dataclass(frozen=True)
class RelevanceReport:
    """Dynkin-combinatorial relevancy data for a parabolic and a type."""

    query: ParabolicSet
    type_label: TypeLabel
    is_relevant: bool
    minimal_relevant: ParabolicSet
    active_components: TypeLabel  # standard-side label of the active part
    span_equalities: Tuple[IntVector, ...]


@dataclass(frozen=True)
class RtDecomposition:
    """Split of the Levi roots of Q by identical vanishing on the type cone."""

    nonvanishing: Tuple[IntVector, ...]
    vanishing: Tuple[IntVector, ...]


def _check_type(datum: RootDatum, t: TypeLabel) -> TypeLabel:
    label = frozenset(t)
    for i in label:
        if not isinstance(i, int) or not 0 <= i < datum.rank:
            raise ValidationError(f"type index {i!r} out of range for rank {datum.rank}")
    return label


def weyl_cone(p: ParabolicSet) -> Cone:
    """Closed cone of dual vectors nonnegative on the unipotent radical and
    zero on the Levi part."""
    datum = p.datum
    eqs = sorted(b for b in root_data.levi_roots(p) if datum.is_positive(b))
    ineqs = sorted(linalg.neg_int(b) for b in root_data.unipotent_radical_roots(p))
    return polyfan.make_cone(datum.rank, ineqs, eqs)


def weyl_fan(datum: RootDatum, cap: Optional[int] = None) -> Prefan:
    return polyfan.make_prefan(
        [weyl_cone(p) for p in root_data.all_parabolics(datum, cap)]
    )


def type_cone_max(p: ParabolicSet) -> Cone:
    """Inequality-only cone cut out by the roots of the unipotent radical of
    the opposite parabolic."""
    datum = p.datum
    ineqs = sorted(root_data.unipotent_radical_roots(root_data.opposite(p)))
    return polyfan.make_cone(datum.rank, ineqs, ())


def _osculatory_companion(q: ParabolicSet, t: TypeLabel) -> ParabolicSet:
    """A type-t parabolic sharing a minimal parabolic with q."""
    datum = q.datum
    w, _ = root_data.standard_position(q)
    p_std = root_data.standard_parabolic(datum, t)
    return root_data.act(root_data.inverse(datum, w), p_std)


def type_cone(q: ParabolicSet, t: TypeLabel) -> TypeCone:
    """Smallest type-t prefan cone containing the Weyl cone of q: the
    max-cone inequalities of an osculatory type-t companion, with those lying
    in the Levi of q promoted to equalities."""
    datum = q.datum
    t = _check_type(datum, t)
    p = _osculatory_companion(q, t)
    psi = set(root_data.unipotent_radical_roots(root_data.opposite(p)))
    levi = set(root_data.levi_roots(q))
    eqs = sorted(psi & levi)
    ineqs = sorted(psi - levi)
    return TypeCone(
        cone=polyfan.make_cone(datum.rank, ineqs, eqs), source=q, type_label=t
    )


def _components(datum: RootDatum, subset: FrozenSet[int]) -> List[FrozenSet[int]]:
    """Connected components of a simple-root subset in the Dynkin graph
    (edge iff Cartan pairing nonzero), ordered by least element."""
    remaining = set(subset)
    comps: List[FrozenSet[int]] = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        frontier = [seed]
        while frontier:
            i = frontier.pop()
            for j in list(remaining - comp):
                if datum.cartan[i][j] != 0:
                    comp.add(j)
                    frontier.append(j)
        comps.append(frozenset(comp))
        remaining -= comp
    return comps


def _orthogonal_to(datum: RootDatum, i: int, subset: FrozenSet[int]) -> bool:
    return all(datum.cartan[i][j] == 0 for j in subset) and i not in subset


@lru_cache(maxsize=None)
def _subsystem_positive_roots(datum: RootDatum, label: TypeLabel) -> Tuple[IntVector, ...]:
    return tuple(
        b
        for b in datum.positive_roots
        if all(c == 0 for k, c in enumerate(b) if k not in label)
    )


def relevance_report(q: ParabolicSet, t: TypeLabel) -> RelevanceReport:
    """Standard-position Dynkin combinatorics: the active components of the
    Levi label are those meeting the complement of t; relevancy demands that
    every t-letter orthogonal to them already lies in the label."""
    datum = q.datum
    t = _check_type(datum, t)
    w, y = root_data.standard_position(q)
    meets = frozenset().union(
        *[k for k in _components(datum, y) if k - t], frozenset()
    )
    relevant = all(
        i in y for i in t if _orthogonal_to(datum, i, meets)
    )
    y_min = y | {i for i in t if _orthogonal_to(datum, i, meets)}
    w_inv = root_data.inverse(datum, w)
    minimal = root_data.act(w_inv, root_data.standard_parabolic(datum, frozenset(y_min)))
    span_eqs = tuple(
        sorted(w_inv.apply(b) for b in _subsystem_positive_roots(datum, frozenset(meets)))
    )
    return RelevanceReport(
        query=q,
        type_label=t,
        is_relevant=relevant,
        minimal_relevant=minimal,
        active_components=frozenset(meets),
        span_equalities=span_eqs,
    )


def is_relevant(q: ParabolicSet, t: TypeLabel) -> bool:
    return relevance_report(q, t).is_relevant


def minimal_relevant(q: ParabolicSet, t: TypeLabel) -> ParabolicSet:
    return relevance_report(q, t).minimal_relevant


def span_equalities(q: ParabolicSet, t: TypeLabel) -> Tuple[IntVector, ...]:
    """Root functionals cutting out the linear span of the type cone."""
    return relevance_report(q, t).span_equalities


def dims_equal(q: ParabolicSet, t: TypeLabel) -> bool:
    """Whether the type cone of q has the same dimension as its Weyl cone."""
    report = relevance_report(q, t)
    datum = q.datum
    dim_type = polyfan.dim(type_cone(q, t).cone)
    assert dim_type == datum.rank - len(report.active_components)
    return dim_type == polyfan.dim(weyl_cone(q))


def rt_decomposition(q: ParabolicSet, t: TypeLabel) -> RtDecomposition:
    """Levi roots split by whether their functional vanishes identically on
    the span of the type cone of q."""
    span = polyfan.span_basis(type_cone(q, t).cone)
    vanishing: List[IntVector] = []
    nonvanishing: List[IntVector] = []
    for b in sorted(root_data.levi_roots(q)):
        if all(linalg.dot(v, b) == 0 for v in span):
            vanishing.append(b)
        else:
            nonvanishing.append(b)
    return RtDecomposition(
        nonvanishing=tuple(nonvanishing), vanishing=tuple(vanishing)
    )


def type_support(datum: RootDatum, t: TypeLabel) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Partition of the simple roots by irreducible component: components
    where the type is proper (compactification genuinely degenerates) versus
    components entirely inside the type label (nothing degenerates)."""
    t = _check_type(datum, t)
    live: Set[int] = set()
    trivial: Set[int] = set()
    for comp in _components(datum, frozenset(range(datum.rank))):
        if comp <= t:
            trivial |= comp
        else:
            live |= comp
    return frozenset(live), frozenset(trivial)


def lineality_space(datum: RootDatum, t: TypeLabel) -> Tuple[linalg.Vector, ...]:
    """Basis of the common lineality of all type-t cones: coordinate axes of
    the trivial components."""
    _, trivial = type_support(datum, t)
    basis = []
    for i in sorted(trivial):
        basis.append(
            tuple(Fraction(1 if j == i else 0) for j in range(datum.rank))
        )
    return tuple(basis)


def prefan_of_type(datum: RootDatum, t: TypeLabel, cap: Optional[int] = None) -> Prefan:
    """Prefan whose cones are the type cones of the t-relevant parabolics, in
    parabolic enumeration order."""
    t = _check_type(datum, t)
    cones = [
        type_cone(q, t).cone
        for q in root_data.all_parabolics(datum, cap)
        if is_relevant(q, t)
    ]
    return polyfan.make_prefan(cones)


def _relint_meets(cone: Cone, region: Cone) -> bool:
    """Whether the relative interior of cone meets the (closed) region."""
    cons: List[Tuple[Sequence, bool]] = [(f, False) for f in region.ineqs]
    for e in region.eqs:
        cons.append((e, False))
        cons.append((linalg.neg(e), False))
    tight = set(polyfan.implied_equalities(cone))
    for e in tight:
        cons.append((e, False))
        cons.append((linalg.neg(e), False))
    for f in cone.ineqs:
        if f not in tight:
            cons.append((f, True))
    return linalg.feasible(cons, cone.space_dim)


def union_weyl_oracle(p: ParabolicSet, cone: Optional[Cone] = None) -> bool:
    """Certify that the candidate cone (default: the max type cone of p)
    equals the union of the Weyl cones of all parabolics contained in p:
    each such Weyl cone must lie inside it, and every Weyl cone whose
    relative interior meets it must contain some parabolic below p."""
    datum = p.datum
    region = cone if cone is not None else type_cone_max(p)
    everything = root_data.all_parabolics(datum)
    subs = [q for q in everything if q.members <= p.members]
    for q in subs:
        if not polyfan.cone_subset(weyl_cone(q), region):
            return False
    sub_members = [q.members for q in subs]
    for q2 in everything:
        if _relint_meets(weyl_cone(q2), region):
            if not any(m <= q2.members for m in sub_members):
                return False
    return True
