"""Multinet checking, enumeration, pointedness and pencils."""

import pytest

from starnet.arrangement import build, builtin
from starnet.errors import (NonPositiveMultiplicity, NotAPartition,
                            NotAPencil, UnknownBuiltin)
from starnet.multinet import (Multinet, builtin_pencil, check_multinet,
                              class_polynomial, enumerate_multinets,
                              find_pointed, multinet_pencil)
from starnet.mpoly import X, Y, Z

from oracles import exhaustive_multinets


def triangle():
    return build([("x", (1, 0, 0)), ("y", (0, 1, 0)), ("z", (0, 0, 1))],
                 name="triangle")


def hexagon_net():
    """Six lines supporting a (3,2)-net: x^2-y^2, y^2-z^2, x^2-z^2."""
    return build([("x-y", (1, -1, 0)), ("x+y", (1, 1, 0)),
                  ("y-z", (0, 1, -1)), ("y+z", (0, 1, 1)),
                  ("x-z", (1, 0, -1)), ("x+z", (1, 0, 1))], name="hexagon")


B3_CLASSES = [["x", "y-z", "y+z"], ["y", "x-z", "x+z"], ["z", "x-y", "x+y"]]
B3_MULT = {"x": 2, "y": 2, "z": 2, "x-y": 1, "x+y": 1,
           "x-z": 1, "x+z": 1, "y-z": 1, "y+z": 1}


def test_b3_multinet_valid():
    A = builtin("b3")
    report = check_multinet(A, B3_CLASSES, B3_MULT)
    assert report.valid, report.describe()
    net = report.to_multinet()
    assert net.k == 3
    assert net.kappa == 4
    # base locus: the 3 quadruple and 4 triple points
    assert len(net.base_locus) == 7


def test_triangle_net():
    report = check_multinet(triangle(), [["x"], ["y"], ["z"]], (1, 1, 1))
    assert report.valid
    assert report.to_multinet().kappa == 1


def test_gcd_condition_fails():
    report = check_multinet(triangle(), [["x"], ["y"], ["z"]], (2, 2, 2))
    assert not report.valid
    assert report.conditions["e"][0] is False


def test_unequal_weights_fail():
    report = check_multinet(triangle(), [["x"], ["y"], ["z"]], (2, 1, 1))
    assert not report.valid
    assert report.conditions["a"][0] is False


def test_bad_inputs():
    A = triangle()
    with pytest.raises(NotAPartition):
        check_multinet(A, [["x"], ["y"]], (1, 1, 1))
    with pytest.raises(NotAPartition):
        check_multinet(A, [["x"], ["y"], ["z"], []], (1, 1, 1))
    with pytest.raises(NotAPartition):
        check_multinet(A, [["x"], ["x"], ["y"]], (1, 1, 1))
    with pytest.raises(NonPositiveMultiplicity):
        check_multinet(A, [["x"], ["y"], ["z"]], (0, 1, 1))


def test_enumerator_matches_exhaustive_small():
    for A in (triangle(), hexagon_net()):
        found = {(net.classes, net.mult)
                 for net in enumerate_multinets(A, max_k=A.n, max_mult=2)}
        assert found == exhaustive_multinets(A, max_mult=2)
        assert found, A.name  # both arrangements support a net


def test_enumerator_generic_lines():
    # 4 generic lines: only the trivial all-singletons structure passes the
    # combinatorial conditions, and it supports no pencil
    A = build([("a", (1, 0, 1)), ("b", (0, 1, 1)),
               ("c", (1, 1, 1)), ("d", (1, -1, 1))], name="generic4")
    nets = enumerate_multinets(A, max_k=4, max_mult=2)
    assert {(net.classes, net.mult)
            for net in nets} == exhaustive_multinets(A, max_mult=2)
    assert [net.classes for net in nets] == [((0,), (1,), (2,), (3,))]
    with pytest.raises(NotAPencil):
        multinet_pencil(A, nets[0])


def test_enumerator_finds_b3_multinet():
    A = builtin("b3")
    nets = enumerate_multinets(A, max_mult=2)
    assert len(nets) == 1
    net = nets[0]
    assert net.k == 3 and net.kappa == 4
    labels = [sorted(A.lines[i].label for i in cls) for cls in net.classes]
    assert sorted(map(tuple, labels)) == sorted(
        tuple(sorted(c)) for c in B3_CLASSES)


def test_find_pointed_b3():
    A = builtin("b3")
    net = check_multinet(A, B3_CLASSES, B3_MULT).to_multinet()
    pointed = {A.lines[i].label for i in find_pointed(A, net)}
    assert pointed == {"x", "y", "z"}


def test_find_pointed_none_on_triangle():
    A = triangle()
    net = check_multinet(A, [["x"], ["y"], ["z"]], (1, 1, 1)).to_multinet()
    assert find_pointed(A, net) == []   # needs a multiplicity > 1


def test_b3_pencil_combo():
    A = builtin("b3")
    net = check_multinet(A, B3_CLASSES, B3_MULT).to_multinet()
    pen = multinet_pencil(A, net)
    assert pen.degree == 4
    # third class polynomial is g2 - g1
    (alpha, beta), = pen.combos
    g3 = class_polynomial(A, net, 2)
    assert pen.g1.scale(alpha) + pen.g2.scale(beta) == g3


def test_not_a_pencil():
    A = build([("x", (1, 0, 0)), ("y", (0, 1, 0)), ("z", (0, 0, 1)),
               ("w", (1, 1, 1))], name="frame")
    net = Multinet(A, ((0,), (1,), (2,), (3,)), (1, 1, 1, 1), 1, (), {})
    with pytest.raises(NotAPencil):
        multinet_pencil(A, net)


def test_builtin_pencils():
    pen = builtin_pencil("b3")
    assert pen.g1 == X * X * (Y * Y - Z * Z)
    ds = builtin_pencil("double_star")
    assert ds.g1.degree == 5 and ds.g1.is_homogeneous
    with pytest.raises(UnknownBuiltin):
        builtin_pencil("nope")
