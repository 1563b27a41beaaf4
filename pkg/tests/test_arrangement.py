"""Arrangements: lattice, builtins, file format, SVG output."""

import json
import math
import random

import pytest

from starnet.arrangement import (BUILTIN_NAMES, arrangement_from_json,
                                 arrangement_to_json, build, builtin, delete,
                                 double_star_data, is_essential, render_svg)
from starnet.errors import DuplicateLine, ParseError, UnknownBuiltin

from oracles import brute_lattice, random_rational_arrangement


def _check_lattice_against_oracle(A):
    oracle = brute_lattice(A)
    pts = A.lattice()
    assert len(pts) == len(oracle)
    for p in pts:
        key = tuple(c.coords() for c in p.coords)
        assert key in oracle
        assert frozenset(p.incident) == oracle[key]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_lattice_matches_brute_force(name):
    _check_lattice_against_oracle(builtin(name))


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_pair_count_identity(name):
    # every unordered pair of lines meets in exactly one lattice point
    A = builtin(name)
    total = sum(math.comb(p.multiplicity, 2) for p in A.lattice())
    assert total == math.comb(A.n, 2)


def test_random_lattices_match_brute_force():
    rng = random.Random(7)
    for _ in range(10):
        _check_lattice_against_oracle(random_rational_arrangement(rng))


def test_b3_census():
    A = builtin("b3")
    pts = A.lattice()
    from collections import Counter
    census = Counter(p.multiplicity for p in pts)
    # 3 quadruple points, 4 triple points, 6 double points
    assert census == {4: 3, 3: 4, 2: 6}


def test_double_star_census_and_essential():
    A = builtin("double_star")
    from collections import Counter
    census = Counter(p.multiplicity for p in A.lattice())
    assert census == {2: 10, 3: 5, 4: 5}
    assert is_essential(A)


def test_double_star_line3_is_vertical():
    # the middle line of the first star is vertical at x = (sqrt(5)-1)/4
    A = builtin("double_star")
    ln = A.lines[2]
    a, b, c = (float(v) for v in ln.covector)
    assert abs(b) < 1e-15
    assert abs((-c / a) - (math.sqrt(5) - 1) / 4) < 1e-12


def test_double_star_groups_share_a_pencil_structure():
    d = double_star_data()
    assert sorted(d["h1_group"] + d["h2_group"]) == sorted(
        f"l{i}" for i in range(1, 11))
    assert len(set(d["h1_group"]) & set(d["h2_group"])) == 0


def test_duplicate_line_rejected():
    with pytest.raises(DuplicateLine):
        build([("a", (1, 0, 0)), ("b", (2, 0, 0))])


def test_unknown_builtin():
    with pytest.raises(UnknownBuiltin):
        builtin("nope")


def test_delete():
    A = builtin("b3")
    B = delete(A, "z")
    assert B.n == 8
    assert "z" not in B.labels()


def test_json_round_trip():
    for name in BUILTIN_NAMES:
        A = builtin(name)
        doc = arrangement_to_json(A)
        # byte-stable re-serialization
        assert json.dumps(doc, sort_keys=True) == json.dumps(
            arrangement_to_json(arrangement_from_json(doc)), sort_keys=True)


def test_json_malformed():
    with pytest.raises(ParseError):
        arrangement_from_json({"lines": [{"label": "a"}]})


def test_svg_deterministic():
    A = builtin("double_star")
    window = (-2.0, 2.0, -2.0, 2.0)
    first = render_svg(A, window)
    assert first == render_svg(A, window)
    assert first.startswith("<svg")
    assert 'id="line-l1"' in first
    # the line at infinity is listed, not drawn
    assert 'id="legend-z"' in first


def test_svg_class_colors():
    A = builtin("b3")
    svg = render_svg(A, (-2.0, 2.0, -2.0, 2.0), {"x": "red"})
    assert 'stroke="red"' in svg
