from fractions import Fraction

import pytest

from folbott.bottsum import TwistLinear
from folbott.relations import (InconsistentSystem, ResidualUnknowns,
                               build_system, integer_rows, normal_twist_check,
                               relation_strings, row_space_equal,
                               solve_relations, substitute_relations)

W0 = (0, 1, 5, 25)

# Reference echelon relations, grouped by the line whose twist slots
# they pin down, listed bottom group first inside each group.
GROUP_LINE5 = [
    {29: 1},
    {27: 1, 0: 2},
    {25: 2, 26: 1, 28: 2, 30: 2, 0: 1},
]
GROUP_LINE4 = [
    {23: 1},
    {20: 1, 22: 1},
    {19: 1, 21: 1, 24: -1, 0: 2},
    {17: 1},
    {16: 1},
    {15: 1, 0: -1},
]
GROUP_LINE23 = [
    {13: 1, 14: 1, 18: 1, 0: 2},
    {11: 1},
    {9: 1, 30: 1, 0: 1},
    {8: 1, 12: 1},
]
GROUP_LINE1 = [
    {7: 2, 10: -2, 26: -1, 30: -2, 0: 1},
    {6: 1},
    {5: 1},
    {3: 1, 0: -1},
    {1: 2, 2: 1, 4: 2, 0: 2},
]
REFERENCE_RELATIONS = GROUP_LINE5 + GROUP_LINE4 + GROUP_LINE23 + GROUP_LINE1

EXPECTED_STRINGS = [
    "2*d1 + d2 + 2*d4 + 2 = 0",
    "d3 - 1 = 0",
    "d5 = 0",
    "d6 = 0",
    "2*d7 - 2*d10 - d26 - 2*d30 + 1 = 0",
    "d8 + d12 = 0",
    "d9 + d30 + 1 = 0",
    "d11 = 0",
    "d13 + d14 + d18 + 2 = 0",
    "d15 - 1 = 0",
    "d16 = 0",
    "d17 = 0",
    "d19 + d21 - d24 + 2 = 0",
    "d20 + d22 = 0",
    "d23 = 0",
    "2*d25 + d26 + 2*d28 + 2*d30 + 1 = 0",
    "d27 + 2 = 0",
    "d29 = 0",
]

_CACHE = {}


def system():
    if "system" not in _CACHE:
        _CACHE["system"] = build_system(W0)
    return _CACHE["system"]


def solved():
    if "solved" not in _CACHE:
        _CACHE["solved"] = solve_relations(system())
    return _CACHE["solved"]


def _tl(coeffs):
    return TwistLinear({k: Fraction(v) for k, v in coeffs.items()})


def test_system_shape():
    sys = system()
    assert len(sys.flags) == 24
    assert len(sys.flag_sums) == 24
    assert len(sys.equations) == 23


def test_rank_and_pivots():
    rel = solved()
    assert rel.rank == 18
    assert sorted(rel.pivots) == [1, 3, 5, 6, 7, 8, 9, 11, 13, 15,
                                  16, 17, 19, 20, 23, 25, 27, 29]


def test_pinned_values():
    rel = solved()
    pinned = {3: 1, 5: 0, 6: 0, 11: 0, 15: 1, 16: 0, 17: 0, 23: 0,
              27: -2, 29: 0}
    for slot, value in pinned.items():
        assert rel.assignments[slot] == TwistLinear.constant(value), slot
    assert rel.assignments[1] == _tl({0: -1, 2: Fraction(-1, 2), 4: -1})


def test_row_space_matches_the_reference_table():
    reference = [_tl(c) for c in REFERENCE_RELATIONS]
    assert row_space_equal(system().equations, reference)


def test_reference_relations_are_consequences():
    rel = solved()
    for coeffs in REFERENCE_RELATIONS:
        assert rel.reduce(_tl(coeffs)).is_zero(), coeffs


def test_relation_strings():
    assert relation_strings(solved()) == EXPECTED_STRINGS


def test_integer_rows_are_primitive():
    from math import gcd
    for row in integer_rows(solved()):
        assert all(isinstance(c, int) for c in row)
        g = 0
        for c in row:
            g = gcd(g, abs(c))
        assert g == 1


def test_relations_do_not_depend_on_the_weights():
    other = solve_relations(build_system((0, 1, 7, 37)))
    assert relation_strings(other) == EXPECTED_STRINGS


def test_substitution_collapses_consequences():
    rel = solved()
    expr = _tl({1: 2, 2: 1, 4: 2})
    assert rel.substitute(expr) == -2
    assert substitute_relations(TwistLinear.constant(5), rel) == 5


def test_free_unknowns_are_reported():
    rel = solved()
    with pytest.raises(ResidualUnknowns) as err:
        rel.substitute(TwistLinear.unknown(26))
    assert "unresolved twist unknowns: d26" in str(err.value)


def test_contradictory_equations_are_refused():
    eqs = [_tl({1: 1, 0: 1}), _tl({1: 1, 0: 2})]
    with pytest.raises(InconsistentSystem):
        solve_relations(eqs)


def test_single_blowup_cross_check_small():
    report = normal_twist_check(4, 1)
    assert report.equations == [
        "6*a1 + 3*a2 + 2*a3 = 6*b1 + 3*b2 + 2*b3 + 5",
        "6*a1 + 4*a2 + 3*a3 = 6*b1 + 4*b2 + 3*b3 + 7",
        "20*a1 + 15*a2 + 12*a3 = 20*b1 + 15*b2 + 12*b3 + 27",
    ]
    assert report.unique
    assert report.deltas == (0, 1, 1)
    assert report.solution == {"b1": "a1", "b2": "a2 - 1", "b3": "a3 - 1"}


def test_single_blowup_cross_check_larger():
    report = normal_twist_check(5, 2)
    assert report.unique
    assert report.deltas == (0, 0, 1, 1)


@pytest.mark.parametrize("n,m", [(2, 1), (4, 0), (4, 3), (3, 2)])
def test_single_blowup_guard(n, m):
    with pytest.raises(ValueError):
        normal_twist_check(n, m)
