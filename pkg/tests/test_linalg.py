"""Exact linear algebra: reductions, spans, and rational feasibility."""

from __future__ import annotations

import random
from fractions import Fraction

from weylscope import linalg


def _random_matrix(rng: random.Random, rows: int, cols: int):
    return [
        [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)]
        for _ in range(rows)
    ]


def test_vector_basics():
    u = linalg.vec([1, Fraction(1, 2), -3])
    v = linalg.vec([0, 2, 1])
    assert linalg.dot(u, v) == Fraction(-2)
    assert linalg.add(u, v) == (Fraction(1), Fraction(5, 2), Fraction(-2))
    assert linalg.sub(u, v) == (Fraction(1), Fraction(-3, 2), Fraction(-4))
    assert linalg.neg(v) == (Fraction(0), Fraction(-2), Fraction(-1))
    assert linalg.scale(Fraction(2), u) == (Fraction(2), Fraction(1), Fraction(-6))
    assert linalg.is_zero(linalg.zero(4))
    assert not linalg.is_zero(u)


def test_primitive_normalizes_scale_and_sign():
    assert linalg.primitive([Fraction(2, 3), Fraction(-4, 3)]) == (1, -2)
    assert linalg.primitive([Fraction(-2, 3), Fraction(4, 3)]) == (1, -2)
    assert linalg.primitive([0, Fraction(0), Fraction(-5, 7)]) == (0, 0, 1)


def test_rref_shape_and_idempotence():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    reduced, pivots = linalg.rref(rows)
    assert pivots == [0, 1]
    again, pivots2 = linalg.rref(reduced)
    assert [list(r) for r in again] == [list(r) for r in reduced]
    assert pivots2 == pivots
    for i, p in enumerate(pivots):
        assert reduced[i][p] == 1
        for j in range(len(reduced)):
            if j != i:
                assert reduced[j][p] == 0


def test_rank_and_nullspace_dimension_add_up():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 5)
        m = rng.randint(1, 5)
        a = _random_matrix(rng, m, n)
        r = linalg.rank(a)
        null = linalg.nullspace(a, n)
        assert r + len(null) == n
        for v in null:
            for row in a:
                assert linalg.dot(row, v) == 0


def test_solve_round_trip():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        a = _random_matrix(rng, m, n)
        x = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        rhs = [linalg.dot(row, x) for row in a]
        sol = linalg.solve(a, rhs, n)
        assert sol is not None
        assert [linalg.dot(row, sol) for row in a] == rhs


def test_solve_reports_inconsistency():
    assert linalg.solve([[1, 0], [1, 0]], [1, 2], 2) is None


def test_in_row_span():
    rows = [[1, 0, 1], [0, 1, 1]]
    assert linalg.in_row_span(rows, [2, 3, 5])
    assert not linalg.in_row_span(rows, [0, 0, 1])


def test_reduce_mod_span_is_canonical_for_the_span():
    # two different bases of the same plane reduce vectors identically
    basis_a = [[1, 0, 1], [0, 1, 1]]
    basis_b = [[1, 1, 2], [1, -1, 0]]
    rng = random.Random(3)
    for _ in range(20):
        v = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        ra = linalg.reduce_mod_span(basis_a, v)
        rb = linalg.reduce_mod_span(basis_b, v)
        assert ra == rb
        diff = linalg.sub(v, ra)
        assert linalg.in_row_span(basis_a, diff)
        assert linalg.reduce_mod_span(basis_a, ra) == ra


def test_feasible_point_satisfies_constraints():
    cons = [
        ([Fraction(-1), Fraction(0)], True),   # x > 0
        ([Fraction(0), Fraction(-1)], True),   # y > 0
        ([Fraction(1), Fraction(1)], False),   # x + y <= 0: impossible
    ]
    assert linalg.feasible_point(cons, 2) is None
    cons_ok = [
        ([Fraction(-1), Fraction(0)], True),
        ([Fraction(0), Fraction(-1)], True),
    ]
    p = linalg.feasible_point(cons_ok, 2)
    assert p is not None
    assert p[0] > 0 and p[1] > 0
    assert linalg.feasible(cons_ok, 2)
    assert not linalg.feasible(cons, 2)


def test_feasible_random_strict_systems_agree_with_witness():
    rng = random.Random(19)
    for _ in range(30):
        n = rng.randint(1, 3)
        cons = []
        for _ in range(rng.randint(1, 4)):
            row = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
            cons.append((row, rng.random() < 0.5))
        point = linalg.feasible_point(cons, n)
        assert (point is not None) == linalg.feasible(cons, n)
        if point is not None:
            for row, strict in cons:
                val = linalg.dot(row, point)
                assert val < 0 if strict else val <= 0
