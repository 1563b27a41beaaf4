"""Aomoto complex and Smith normal form."""

import random

import pytest

from starnet.aomoto import (aomoto_complex, h2_torsion, os2_basis,
                            reduce_product, snf)
from starnet.arrangement import build, builtin

from oracles import _int_det, minor_gcd_divisors


def affine_triangle():
    return build([("a", (1, 0, 0)), ("b", (0, 1, 0)), ("c", (1, 1, -1))],
                 name="affine-triangle")


def test_parallel_lines_have_no_affine_points():
    A = build([("a", (1, 0, 0)), ("b", (1, 0, -1)), ("c", (1, 0, 1))],
              name="parallels")
    basis = os2_basis(A)
    assert basis.b2 == 0


def test_triangle_basis():
    basis = os2_basis(affine_triangle())
    # three double points, each contributing multiplicity - 1 = 1
    assert basis.b2 == 3


def test_infinity_line_rejected():
    with pytest.raises(ValueError):
        os2_basis(builtin("double_star"))


def test_reduce_product_antisymmetry():
    basis = os2_basis(affine_triangle())
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            ij = reduce_product(i, j, basis)
            ji = reduce_product(j, i, basis)
            assert [a + b for a, b in zip(ij, ji)] == [0] * basis.b2


def test_d2_after_d1_is_zero():
    # omega wedge omega = 0: contracting d2 rows with omega vanishes
    for name, omega in (("double_star_affine", [1] * 5 + [-1] * 5),
                        ("b3_del_z", [1, -2, 3, 0, 1, -1, 2, -4])):
        A = builtin(name)
        cx = aomoto_complex(A, omega)
        combined = [0] * cx.b2
        for j, row in enumerate(cx.d2):
            for t, v in enumerate(row):
                combined[t] += omega[j] * v
        assert combined == [0] * cx.b2


def test_zero_omega_gives_free_h2():
    A = builtin("double_star_affine")
    rep = h2_torsion(aomoto_complex(A, [0] * 10))
    assert rep.h2_torsion == ()
    assert rep.h2_free_rank == rep.b2


def test_double_star_two_torsion():
    A = builtin("double_star_affine")
    rep = h2_torsion(aomoto_complex(A, [1] * 5 + [-1] * 5))
    assert rep.h2_torsion == (2,)
    assert rep.describe()["has_2_torsion"] is True


def test_omega_length_checked():
    with pytest.raises(ValueError):
        aomoto_complex(builtin("double_star_affine"), [1, 2, 3])


def _random_matrix(rng, rows, cols, bound=6):
    return [[rng.randint(-bound, bound) for _ in range(cols)]
            for _ in range(rows)]


def test_snf_matches_minor_gcds():
    rng = random.Random(12345)
    for _ in range(50):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        M = _random_matrix(rng, m, n)
        result = snf(M)
        assert list(result.divisors) == minor_gcd_divisors(M)
        # divisibility chain
        for a, b in zip(result.divisors, result.divisors[1:]):
            assert b % a == 0


def test_snf_transforms_are_unimodular_and_consistent():
    rng = random.Random(99)
    for _ in range(20):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        M = _random_matrix(rng, m, n)
        res = snf(M)
        assert abs(_int_det([list(r) for r in res.U])) == 1
        assert abs(_int_det([list(r) for r in res.V])) == 1
        # U * M * V equals the diagonal the result reports
        prod = [[sum(res.U[i][a] * M[a][b] * res.V[b][j]
                     for a in range(m) for b in range(n))
                 for j in range(n)] for i in range(m)]
        for i in range(m):
            for j in range(n):
                expect = res.diagonal[i] if i == j and i < len(res.diagonal) \
                    else 0
                assert prod[i][j] == expect


def test_snf_known_case():
    res = snf([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert list(res.divisors) == [2, 2, 156]
