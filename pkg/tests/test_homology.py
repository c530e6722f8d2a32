"""Incidence, Smith normal form, homology ranks, QHD verdicts."""

import random
from types import SimpleNamespace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidwire.boundary import boundary_data
from braidwire.homology import (
    Arrangement,
    SmithVerificationError,
    arrangement,
    arrangement_from_json,
    arrangement_to_json,
    determinant,
    homology,
    incidence,
    intersection_profiles,
    invariant_factors,
    qhd_check,
    smith_normal_form,
    weights,
)
from braidwire.wiring import (
    I,
    S,
    T,
    diagram,
    element_permute,
    expand_macros,
    parse_diagram,
    position_state,
)

import oracles
from test_wiring import NEST4, valid_diagrams


def warmup():
    return arrangement(parse_diagram(NEST4), {"A": 2, "B": 2})


def test_incidence_of_warmup_arrangement():
    m = incidence(warmup())
    assert m.components == ("A", "B")
    assert m.rows == (
        (1, 1, 1, 2, 1, 1, 0, 0),
        (1, 1, 1, 2, 0, 0, 1, 1),
    )
    assert m.point_count == 8


def test_weights_of_warmup():
    assert weights(warmup()) == {"A": 7, "B": 7}


def test_own_node_counts_twice():
    d = diagram(2, {"A": [1, 2]}, [I(1, 2)])
    assert intersection_profiles(d) == [{"A": 2}]
    a = arrangement(d)
    assert weights(a) == {"A": 2}


def test_single_free_point():
    d = diagram(1, {"A": [1]}, [])
    a = arrangement(d, {"A": 1})
    m = incidence(a)
    assert m.rows == ((1,),)
    report = homology(a)
    assert report.b2 == 0 and report.h1_torsion == () and report.points == 1


def test_arrangement_validation():
    d = diagram(2, {"A": [1, 2]}, [])
    with pytest.raises(ValueError):
        arrangement(d, {"B": 1})
    with pytest.raises(ValueError):
        arrangement(d, {"A": -1})
    a = arrangement(d)
    assert a.free_map() == {"A": 0}


def test_arrangement_json_round_trip():
    a = warmup()
    assert arrangement_from_json(arrangement_to_json(a)) == a
    with pytest.raises(ValueError):
        arrangement_from_json({"free_points": {}})


def test_smith_identity_and_known_matrix():
    u, d, v = smith_normal_form([[1, 0], [0, 1]])
    assert d == [[1, 0], [0, 1]]
    u, d, v = smith_normal_form([[2, 4], [6, 8]])
    assert [d[0][0], d[1][1]] == [2, 4]
    assert invariant_factors([[2, 4], [6, 8]]) == [2, 4]


def test_smith_handles_degenerate_shapes():
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert invariant_factors([[], []]) == []
    assert invariant_factors([[5]]) == [5]
    assert invariant_factors([[3, 6]]) == [3]
    with pytest.raises(ValueError):
        smith_normal_form([[1, 2], [3]])


def test_determinant_exact():
    assert determinant([]) == 1
    assert determinant([[7]]) == 7
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        from fractions import Fraction

        a = [[Fraction(x) for x in row] for row in m]
        det = Fraction(1)
        for t in range(n):
            p = next((r for r in range(t, n) if a[r][t]), None)
            if p is None:
                det = Fraction(0)
                break
            if p != t:
                a[t], a[p] = a[p], a[t]
                det = -det
            det *= a[t][t]
            for r in range(t + 1, n):
                f = a[r][t] / a[t][t]
                a[r] = [x - f * y for x, y in zip(a[r], a[t])]
        assert determinant(m) == det


def test_smith_matches_independent_oracle_on_random_matrices():
    rng = random.Random(5)
    for _ in range(120):
        r = rng.randint(1, 5)
        c = rng.randint(1, 7)
        m = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        assert sorted(invariant_factors(m)) == oracles.smith_diagonal_via_sympy(m)


def test_homology_of_warmup():
    report = homology(warmup())
    assert report.b1 == 0
    assert report.b2 == 6
    assert report.h1_torsion == ()
    assert report.points == 8 and report.disks == 2 and report.rank == 2
    data = report.to_json()
    assert data["b2"] == 6 and data["weights"] == {"A": 7, "B": 7}


def test_qhd_check_reports_each_failed_conjunct():
    germ = SimpleNamespace(weights={"A": 7, "B": 7}, pairwise={("A", "B"): 7})
    verdict = qhd_check(warmup(), germ)
    assert not verdict.ok
    assert any("points" in r for r in verdict.reasons)
    assert any("b2" in r for r in verdict.reasons)
    assert not any("weight of" in r for r in verdict.reasons)
    assert not any("linking" in r for r in verdict.reasons)
    data = verdict.to_json()
    assert data["verdict"] is False and len(data["reasons"]) == 2


def test_qhd_check_name_mismatch_is_an_error():
    germ = SimpleNamespace(weights={"A": 7, "C": 7}, pairwise={})
    with pytest.raises(ValueError):
        qhd_check(warmup(), germ)


def test_qhd_check_rank_drop_is_an_error():
    d = diagram(2, {"A": [1], "B": [2]}, [I(1, 2)])
    germ = SimpleNamespace(weights={"A": 1, "B": 1}, pairwise={("A", "B"): 1})
    with pytest.raises(ValueError, match="rank"):
        qhd_check(arrangement(d), germ)


def test_qhd_check_weight_mismatch_reason():
    germ = SimpleNamespace(weights={"A": 7, "B": 8}, pairwise={("A", "B"): 7})
    verdict = qhd_check(warmup(), germ)
    assert any("weight of B" in r for r in verdict.reasons)


@given(valid_diagrams(), st.dictionaries(st.sampled_from(["A", "B", "C"]), st.integers(0, 3)))
def test_total_weight_equals_total_column_mass(d, free):
    free = {c: f for c, f in free.items() if any(name == c for name, _ in d.comps)}
    a = arrangement(d, free)
    m = incidence(a)
    col_mass = sum(sum(row) for row in m.rows)
    assert sum(weights(a).values()) == col_mass


@given(valid_diagrams())
def test_linking_decomposes_into_point_contributions(d):
    # braid letters add crossings that are not marked points; skip them
    if any(isinstance(e, S) for e in d.elements):
        return
    data = boundary_data(d)
    profiles = intersection_profiles(d)
    names = sorted({name for name, _ in d.comps})
    tangencies = {name: 0 for name in names}
    state = position_state(d, 0)
    chart = d.chart()
    for e in expand_macros(d).elements:
        if isinstance(e, T):
            tangencies[chart[state[e.i - 1]]] += 1
        state = element_permute(state, e)
    for ai in range(len(names)):
        for bi in range(ai, len(names)):
            x, y = names[ai], names[bi]
            if x == y:
                want = tangencies[x] + sum(
                    p.get(x, 0) * (p.get(x, 0) - 1) for p in profiles
                )
            else:
                want = sum(p.get(x, 0) * p.get(y, 0) for p in profiles)
            assert data.linking.entry(x, y) == want, (x, y, d)
