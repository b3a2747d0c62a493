"""Root systems, Weyl groups, and parabolic subsets of roots.

Characters live in simple-root coordinates (the root lattice), so a root is
an integer vector whose entries are its coefficients on the simple base.
Dual vectors are then in fundamental-coweight coordinates and the pairing of
a character with a dual vector is the plain dot product; the i-th simple
coroot is row i of the Cartan matrix.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]
TypeLabel = FrozenSet[int]

DEFAULT_ENUM_CAP = 1152
ENUM_CAP_ENV = "WEYLSCOPE_ENUM_CAP"
_ROOT_COUNT_CAP = 500


class ValidationError(ValueError):
    """Invalid root datum, parabolic set, or operation input."""


class EnumerationCapError(RuntimeError):
    """The Weyl group is larger than the configured enumeration cap."""


def resolve_enum_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ValidationError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from exc


def _mat_vec(m: IntMatrix, v: Sequence[int]) -> IntVector:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: ShortLex-least reduced word plus its action
    matrix on the character lattice."""

    word: Tuple[int, ...]
    matrix: IntMatrix

    def apply(self, chi: Sequence[int]) -> IntVector:
        return _mat_vec(self.matrix, chi)

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class RootDatum:
    """Roots, simple base, coroots and Cartan data of a split semisimple
    group; cartan[i][j] is the pairing of simple root j with simple coroot i.
    """

    rank: int
    cartan: IntMatrix
    roots: Tuple[IntVector, ...]
    coroots: Tuple[IntVector, ...]
    name: Optional[str] = field(default=None, compare=False)

    @property
    def simple_roots(self) -> Tuple[IntVector, ...]:
        return tuple(
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        )

    def coroot(self, root: IntVector) -> IntVector:
        return self.coroots[self.roots.index(root)]

    def is_positive(self, root: Sequence[int]) -> bool:
        return any(c > 0 for c in root)

    @property
    def positive_roots(self) -> Tuple[IntVector, ...]:
        return tuple(r for r in self.roots if self.is_positive(r))

    def pairing(self, chi: Sequence[int], coroot: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(chi, coroot))

    def reflection_matrix(self, i: int) -> IntMatrix:
        rows = []
        for j in range(self.rank):
            if j == i:
                rows.append(
                    tuple((1 if k == i else 0) - self.cartan[i][k] for k in range(self.rank))
                )
            else:
                rows.append(tuple(1 if k == j else 0 for k in range(self.rank)))
        return tuple(rows)


@dataclass(frozen=True)
class ParabolicSet:
    """A closed generating subset of the roots (a parabolic containing the
    fixed maximal split torus, identified with its root set)."""

    datum: RootDatum
    members: FrozenSet[IntVector]
    type_label: Optional[TypeLabel] = field(default=None, compare=False, repr=False)

    def sorted_members(self) -> Tuple[IntVector, ...]:
        return tuple(sorted(self.members))


_NAMED_CARTAN: Dict[str, IntMatrix] = {}


def _chain_cartan(n: int) -> List[List[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = -1
            m[i + 1][i] = -1
    return m


def _register_named() -> None:
    for n in range(1, 7):
        _NAMED_CARTAN[f"A{n}"] = tuple(map(tuple, _chain_cartan(n)))
    for n in range(2, 5):
        b = _chain_cartan(n)
        b[n - 1][n - 2] = -2
        _NAMED_CARTAN[f"B{n}"] = tuple(map(tuple, b))
        c = _chain_cartan(n)
        c[n - 2][n - 1] = -2
        _NAMED_CARTAN[f"C{n}"] = tuple(map(tuple, c))
    d4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    _NAMED_CARTAN["D4"] = tuple(map(tuple, d4))
    _NAMED_CARTAN["G2"] = ((2, -3), (-1, 2))


_register_named()


def _generate_roots(cartan: IntMatrix) -> Tuple[Tuple[IntVector, ...], Tuple[IntVector, ...]]:
    """Close the simple roots (and coroots, in parallel) under the simple
    reflections; raises ValidationError when the system is not finite."""
    rank = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    coroot_of: Dict[IntVector, IntVector] = {
        simple[i]: tuple(cartan[i]) for i in range(rank)
    }
    frontier = list(simple)
    while frontier:
        nxt: List[IntVector] = []
        for beta in frontier:
            cb = coroot_of[beta]
            for i in range(rank):
                pair = sum(cartan[i][k] * beta[k] for k in range(rank))
                refl = tuple(
                    beta[k] - (pair if k == i else 0) for k in range(rank)
                )
                if refl in coroot_of:
                    continue
                # dual reflection: u - <alpha_i, u> alpha_i^vee, <alpha_i,u> = u_i
                crefl = tuple(
                    cb[k] - cb[i] * cartan[i][k] for k in range(rank)
                )
                coroot_of[refl] = crefl
                nxt.append(refl)
                if len(coroot_of) > _ROOT_COUNT_CAP:
                    raise ValidationError("root system is not of finite type")
        frontier = nxt
    roots = tuple(sorted(coroot_of))
    coroots = tuple(coroot_of[r] for r in roots)
    return roots, coroots


def _validate_datum(datum: RootDatum) -> None:
    for r, c in zip(datum.roots, datum.coroots):
        if datum.pairing(r, c) != 2:
            raise ValidationError(f"root {r} pairs to {datum.pairing(r, c)} with its coroot")
        pos = any(x > 0 for x in r)
        neg = any(x < 0 for x in r)
        if (pos and neg) or not (pos or neg):
            raise ValidationError(f"root {r} has mixed-sign simple-root coefficients")
    root_set = set(datum.roots)
    for r in datum.roots:
        if tuple(-x for x in r) not in root_set:
            raise ValidationError(f"root set not closed under negation at {r}")


def build_from_cartan(
    cartan: Sequence[Sequence[int]], name: Optional[str] = None
) -> RootDatum:
    """Root datum from a finite-type (generalized) Cartan matrix."""
    rank = len(cartan)
    if rank == 0:
        return RootDatum(rank=0, cartan=(), roots=(), coroots=(), name=name)
    mat = tuple(tuple(int(x) for x in row) for row in cartan)
    for i, row in enumerate(mat):
        if len(row) != rank:
            raise ValidationError("Cartan matrix must be square")
        if row[i] != 2:
            raise ValidationError("Cartan diagonal entries must equal 2")
        for j, x in enumerate(row):
            if i != j and x > 0:
                raise ValidationError("Cartan off-diagonal entries must be <= 0")
            if i != j and (x == 0) != (mat[j][i] == 0):
                raise ValidationError("Cartan zero pattern must be symmetric")
    roots, coroots = _generate_roots(mat)
    datum = RootDatum(rank=rank, cartan=mat, roots=roots, coroots=coroots, name=name)
    _validate_datum(datum)
    return datum


@lru_cache(maxsize=None)
def build_named(name: str) -> RootDatum:
    """Built-in datum by classical label (A1-A6, B2-B4, C2-C4, D4, G2)."""
    if name not in _NAMED_CARTAN:
        raise ValidationError(f"unknown root datum name: {name!r}")
    return build_from_cartan(_NAMED_CARTAN[name], name=name)


_WEYL_CACHE: Dict[RootDatum, Tuple[WeylElement, ...]] = {}
_WEYL_BY_MATRIX: Dict[RootDatum, Dict[IntMatrix, WeylElement]] = {}
_WEYL_INVERSE: Dict[RootDatum, Dict[IntMatrix, IntMatrix]] = {}


def weyl_elements(datum: RootDatum, cap: Optional[int] = None) -> Tuple[WeylElement, ...]:
    """All Weyl elements in ShortLex order of their canonical reduced words.

    Breadth-first over words in simple-reflection index order, so the first
    word reaching a matrix is the ShortLex-least reduced word.
    """
    limit = resolve_enum_cap(cap)
    cached = _WEYL_CACHE.get(datum)
    if cached is not None:
        if len(cached) > limit:
            raise EnumerationCapError(
                f"|W| = {len(cached)} exceeds enumeration cap {limit}"
                f" (set {ENUM_CAP_ENV} to raise it)"
            )
        return cached
    ident = WeylElement(word=(), matrix=_identity_matrix(datum.rank))
    refl = [datum.reflection_matrix(i) for i in range(datum.rank)]
    seen: Dict[IntMatrix, WeylElement] = {ident.matrix: ident}
    inv_of: Dict[IntMatrix, IntMatrix] = {ident.matrix: ident.matrix}
    order: List[WeylElement] = [ident]
    level = [ident]
    while level:
        nxt: List[WeylElement] = []
        for w in level:
            for j in range(datum.rank):
                mat = _mat_mul(w.matrix, refl[j])
                if mat in seen:
                    continue
                elem = WeylElement(word=w.word + (j,), matrix=mat)
                seen[mat] = elem
                inv_of[mat] = _mat_mul(refl[j], inv_of[w.matrix])
                order.append(elem)
                nxt.append(elem)
                if len(order) > limit:
                    raise EnumerationCapError(
                        f"Weyl enumeration exceeded cap {limit}"
                        f" (set {ENUM_CAP_ENV} to raise it)"
                    )
        level = nxt
    result = tuple(order)
    _WEYL_CACHE[datum] = result
    _WEYL_BY_MATRIX[datum] = seen
    _WEYL_INVERSE[datum] = inv_of
    return result


def _by_matrix(datum: RootDatum) -> Dict[IntMatrix, WeylElement]:
    weyl_elements(datum)
    return _WEYL_BY_MATRIX[datum]


def identity_element(datum: RootDatum) -> WeylElement:
    return WeylElement(word=(), matrix=_identity_matrix(datum.rank))


def compose(datum: RootDatum, a: WeylElement, b: WeylElement) -> WeylElement:
    """Canonical form of a∘b (a applied after b)."""
    return _by_matrix(datum)[_mat_mul(a.matrix, b.matrix)]


def inverse(datum: RootDatum, a: WeylElement) -> WeylElement:
    if datum not in _WEYL_INVERSE:
        weyl_elements(datum)
    mat = _WEYL_INVERSE[datum].get(a.matrix)
    if mat is None:
        refl = [datum.reflection_matrix(i) for i in range(datum.rank)]
        mat = _identity_matrix(datum.rank)
        for j in reversed(a.word):
            mat = _mat_mul(mat, refl[j])
    return _by_matrix(datum)[mat]


def longest_element(datum: RootDatum) -> WeylElement:
    return max(weyl_elements(datum), key=lambda w: (w.length, w.word))


def act_on_dual(datum: RootDatum, w: WeylElement, u: Sequence) -> Tuple:
    """Dual action on V: <w·u, chi> = <u, w^{-1}·chi>."""
    inv = inverse(datum, w).matrix
    return tuple(
        sum(u[k] * inv[k][j] for k in range(datum.rank)) for j in range(datum.rank)
    )


def _root_in_span(root: IntVector, indices: TypeLabel) -> bool:
    return all(c == 0 or i in indices for i, c in enumerate(root))


def standard_parabolic(datum: RootDatum, label: Iterable[int]) -> ParabolicSet:
    """Positive roots plus the negatives of the roots supported on the label."""
    y: TypeLabel = frozenset(int(i) for i in label)
    if any(i < 0 or i >= datum.rank for i in y):
        raise ValidationError(f"type label {sorted(y)} out of range for rank {datum.rank}")
    members = set(datum.positive_roots)
    for r in datum.positive_roots:
        if _root_in_span(r, y):
            members.add(tuple(-c for c in r))
    return ParabolicSet(datum=datum, members=frozenset(members), type_label=y)


@lru_cache(maxsize=None)
def _standard_by_members(datum: RootDatum) -> Dict[FrozenSet[IntVector], TypeLabel]:
    out: Dict[FrozenSet[IntVector], TypeLabel] = {}
    for bits in range(1 << datum.rank):
        y = frozenset(i for i in range(datum.rank) if bits >> i & 1)
        out[standard_parabolic(datum, y).members] = y
    return out


def is_closed(datum: RootDatum, members: FrozenSet[IntVector]) -> bool:
    root_set = set(datum.roots)
    for a in members:
        for b in members:
            s = tuple(x + y for x, y in zip(a, b))
            if s in root_set and s not in members:
                return False
    return True


def is_generating(datum: RootDatum, members: FrozenSet[IntVector]) -> bool:
    return all(
        r in members or tuple(-c for c in r) in members for r in datum.roots
    )


def validate_parabolic(p: ParabolicSet) -> None:
    for m in p.members:
        if m not in set(p.datum.roots):
            raise ValidationError(f"{m} is not a root")
    if not is_closed(p.datum, p.members):
        raise ValidationError("root subset is not closed")
    if not is_generating(p.datum, p.members):
        raise ValidationError("root subset is not generating")


@lru_cache(maxsize=None)
def _root_index(datum: RootDatum) -> Dict[IntVector, int]:
    return {r: i for i, r in enumerate(datum.roots)}


@lru_cache(maxsize=None)
def _root_permutation(datum: RootDatum, w: WeylElement) -> Tuple[int, ...]:
    """The permutation w induces on root indices."""
    index = _root_index(datum)
    return tuple(index[w.apply(r)] for r in datum.roots)


def act(w: WeylElement, p: ParabolicSet) -> ParabolicSet:
    index = _root_index(p.datum)
    try:
        idx = [index[r] for r in p.members]
    except KeyError as exc:
        raise ValidationError(f"{exc.args[0]} is not a root") from exc
    perm = _root_permutation(p.datum, w)
    members = frozenset(p.datum.roots[perm[i]] for i in idx)
    return ParabolicSet(datum=p.datum, members=members, type_label=p.type_label)


@lru_cache(maxsize=None)
def _subgroup_elements(datum: RootDatum, label: TypeLabel) -> Tuple[WeylElement, ...]:
    return tuple(
        w for w in weyl_elements(datum) if set(w.word) <= set(label)
    )


def _min_coset_rep(datum: RootDatum, label: TypeLabel, v: WeylElement) -> WeylElement:
    """The unique shortest element of the coset W_label ∘ v, found by
    stripping label letters from the left while that shortens the word."""
    if datum not in _WEYL_INVERSE:
        weyl_elements(datum)
    cur = v.matrix
    cur_inv = _WEYL_INVERSE[datum][cur]
    refl = [datum.reflection_matrix(i) for i in range(datum.rank)]
    changed = True
    while changed:
        changed = False
        for i in sorted(label):
            # l(s_i v) < l(v)  iff  v^{-1}(alpha_i) is negative
            if all(cur_inv[r][i] <= 0 for r in range(datum.rank)):
                cur = _mat_mul(refl[i], cur)
                cur_inv = _mat_mul(cur_inv, refl[i])
                changed = True
    return _by_matrix(datum)[cur]


_STANDARD_POSITION_CACHE: Dict[Tuple[RootDatum, FrozenSet[IntVector]], Tuple[WeylElement, TypeLabel]] = {}


def standard_position(p: ParabolicSet) -> Tuple[WeylElement, TypeLabel]:
    """The ShortLex-least w with act(w, p) standard, plus the type label."""
    key = (p.datum, p.members)
    hit = _STANDARD_POSITION_CACHE.get(key)
    if hit is not None:
        return hit
    datum = p.datum
    standard = _standard_by_members(datum)
    if p.members in standard:
        result = (identity_element(datum), standard[p.members])
        _STANDARD_POSITION_CACHE[key] = result
        return result
    first: Optional[WeylElement] = None
    for w in weyl_elements(datum):
        if act(w, p).members in standard:
            first = w
            break
    if first is None:
        raise ValidationError("subset is not Weyl-conjugate to a standard parabolic")
    label = standard[act(first, p).members]
    # The full solution set is the coset W_label ∘ first; take its least element.
    result = (_min_coset_rep(datum, label, first), label)
    _STANDARD_POSITION_CACHE[key] = result
    return result


_PARABOLICS_CACHE: Dict[RootDatum, Tuple[ParabolicSet, ...]] = {}


def all_parabolics(datum: RootDatum, cap: Optional[int] = None) -> Tuple[ParabolicSet, ...]:
    """Every closed generating root subset, tagged with its type label;
    deterministic order (type labels by size then index set, orbits in
    ShortLex order of the conjugating element)."""
    weyl = weyl_elements(datum, cap)
    cached = _PARABOLICS_CACHE.get(datum)
    if cached is not None:
        return cached
    labels = sorted(
        (frozenset(i for i in range(datum.rank) if bits >> i & 1) for bits in range(1 << datum.rank)),
        key=lambda y: (len(y), sorted(y)),
    )
    index = _root_index(datum)
    out: List[ParabolicSet] = []
    for y in labels:
        std = standard_parabolic(datum, y)
        std_idx = tuple(sorted(index[r] for r in std.members))
        seen = set()
        for w in weyl:
            perm = _root_permutation(datum, w)
            moved_idx = frozenset(perm[i] for i in std_idx)
            if moved_idx in seen:
                continue
            seen.add(moved_idx)
            members = frozenset(datum.roots[i] for i in moved_idx)
            out.append(ParabolicSet(datum=datum, members=members, type_label=y))
            # Seed the standard-position cache with the known conjugator w^{-1}
            # (then minimized over the stabilizer coset) to avoid a full scan.
            key = (datum, members)
            if key not in _STANDARD_POSITION_CACHE:
                back = inverse(datum, w)
                _STANDARD_POSITION_CACHE[key] = (_min_coset_rep(datum, y, back), y)
    result = tuple(out)
    _PARABOLICS_CACHE[datum] = result
    return result


def levi_roots(p: ParabolicSet) -> FrozenSet[IntVector]:
    """Symmetric part: roots whose negative also belongs to the set."""
    return frozenset(
        r for r in p.members if tuple(-c for c in r) in p.members
    )


def unipotent_radical_roots(p: ParabolicSet) -> FrozenSet[IntVector]:
    levi = levi_roots(p)
    return frozenset(r for r in p.members if r not in levi)


def opposite(p: ParabolicSet) -> ParabolicSet:
    levi = levi_roots(p)
    members = levi | frozenset(
        tuple(-c for c in r) for r in unipotent_radical_roots(p)
    )
    return ParabolicSet(datum=p.datum, members=members, type_label=None)


def is_osculatory(p: ParabolicSet, q: ParabolicSet) -> bool:
    """Whether the intersection is again parabolic (closed and generating)."""
    if p.datum != q.datum:
        raise ValidationError("parabolic sets live in different root data")
    inter = p.members & q.members
    return is_closed(p.datum, inter) and is_generating(p.datum, inter)
