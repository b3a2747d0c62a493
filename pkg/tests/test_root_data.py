"""Root data, Weyl elements, parabolic subsets and standard position."""

from __future__ import annotations

import random

import pytest

import oracles
from weylscope import root_data
from weylscope.root_data import (
    EnumerationCapError,
    ValidationError,
    act,
    all_parabolics,
    build_from_cartan,
    build_named,
    inverse,
    is_osculatory,
    levi_roots,
    opposite,
    standard_parabolic,
    standard_position,
    unipotent_radical_roots,
    weyl_elements,
)

ROOT_COUNTS = {"A1": 2, "A2": 6, "A3": 12, "B2": 8, "B3": 18, "C3": 18, "G2": 12, "D4": 24}
WEYL_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "G2": 12}
PARABOLIC_COUNTS = {"A1": 3, "A2": 13, "A3": 75, "B2": 17, "G2": 25}


def test_root_counts_for_named_data():
    for name, count in ROOT_COUNTS.items():
        datum = build_named(name)
        assert len(datum.roots) == count
        assert len(datum.positive_roots) == count // 2


def test_weyl_orders():
    for name, order in WEYL_ORDERS.items():
        assert len(weyl_elements(build_named(name))) == order


def test_weyl_words_are_shortlex_minimal_and_act_correctly():
    datum = build_named("B2")
    seen = set()
    for w in weyl_elements(datum):
        assert w.matrix not in seen
        seen.add(w.matrix)
        # the stored word reproduces the stored matrix
        mat = root_data.identity_element(datum)
        for i in w.word:
            step = root_data.WeylElement(
                word=(i,), matrix=datum.reflection_matrix(i)
            )
            mat = root_data.compose(datum, mat, step)
        assert mat.matrix == w.matrix
        assert mat.word <= w.word  # compose canonicalizes to ShortLex least


def test_weyl_action_permutes_roots():
    for name in ("A2", "B2", "G2"):
        datum = build_named(name)
        roots = set(datum.roots)
        for w in weyl_elements(datum):
            assert {w.apply(r) for r in roots} == roots


def test_inverse_composes_to_identity():
    datum = build_named("A3")
    for w in weyl_elements(datum):
        back = inverse(datum, w)
        assert root_data.compose(datum, w, back).word == ()


def test_enumeration_cap(monkeypatch):
    monkeypatch.delenv("WEYLSCOPE_ENUM_CAP", raising=False)
    with pytest.raises(EnumerationCapError):
        weyl_elements(build_named("A5"), cap=10)


def test_cartan_validation():
    with pytest.raises(ValidationError):
        build_from_cartan(((2, 1), (1, 2)))  # positive off-diagonal
    with pytest.raises(ValidationError):
        build_from_cartan(((1, 0), (0, 2)))  # diagonal must be 2
    with pytest.raises(ValidationError):
        build_from_cartan(((2, -1), (0, 2)))  # zero pattern must be symmetric


def test_parabolic_counts_match_brute_force():
    for name in ("A1", "A2", "B2", "G2", "A3"):
        datum = build_named(name)
        mine = {p.members for p in all_parabolics(datum)}
        brute = oracles.brute_force_parabolics(datum.roots)
        assert mine == brute
        assert len(mine) == PARABOLIC_COUNTS[name]


def test_all_parabolics_is_deterministic_and_tagged():
    datum = build_named("B2")
    first = all_parabolics(datum)
    second = all_parabolics(datum)
    assert first == second
    for p in first:
        w, y = standard_position(p)
        assert y == p.type_label
        std = standard_parabolic(datum, y)
        assert act(w, p).members == std.members


def test_standard_position_word_is_minimal():
    datum = build_named("A2")
    for p in all_parabolics(datum):
        w, y = standard_position(p)
        std = standard_parabolic(datum, y)
        candidates = [
            v.word
            for v in weyl_elements(datum)
            if act(v, p).members == std.members
        ]
        best = min(candidates, key=lambda word: (len(word), word))
        assert w.word == best


def test_levi_unipotent_partition_and_opposite():
    for name in ("A3", "B2", "G2"):
        datum = build_named(name)
        for p in all_parabolics(datum):
            levi = levi_roots(p)
            rad = unipotent_radical_roots(p)
            assert levi | rad == p.members
            assert not levi & rad
            assert all(tuple(-c for c in r) in levi for r in levi)
            assert all(tuple(-c for c in r) not in p.members for r in rad)
            opp = opposite(p)
            assert levi_roots(opp) == levi
            assert opposite(opp).members == p.members


def test_parabolic_subsets_really_are_parabolic():
    datum = build_named("G2")
    for p in all_parabolics(datum):
        assert oracles.is_parabolic_subset(datum.roots, p.members)


def test_osculatory_matches_definition():
    datum = build_named("A2")
    ps = all_parabolics(datum)
    rng = random.Random(5)
    pairs = [(rng.choice(ps), rng.choice(ps)) for _ in range(60)]
    for p, q in pairs:
        inter = p.members & q.members
        expected = oracles.is_parabolic_subset(datum.roots, inter)
        assert is_osculatory(p, q) == expected


def test_act_on_dual_pairs_against_inverse_action():
    datum = build_named("B2")
    rng = random.Random(23)
    for w in weyl_elements(datum):
        back = inverse(datum, w)
        for _ in range(5):
            u = tuple(rng.randint(-4, 4) for _ in range(datum.rank))
            chi = tuple(rng.randint(-3, 3) for _ in range(datum.rank))
            lhs = oracles.dot(root_data.act_on_dual(datum, w, u), chi)
            rhs = oracles.dot(u, back.apply(chi))
            assert lhs == rhs


def test_standard_parabolic_members():
    datum = build_named("A2")
    borel = standard_parabolic(datum, ())
    assert borel.members == frozenset(datum.positive_roots)
    g = standard_parabolic(datum, (0, 1))
    assert g.members == frozenset(datum.roots)
    p1 = standard_parabolic(datum, (0,))
    assert (1, 0) in p1.members and (-1, 0) in p1.members
    assert (0, 1) in p1.members and (0, -1) not in p1.members
