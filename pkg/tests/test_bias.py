import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hetn2v import (BiasParams, PairwiseDirected, PairwiseSymmetric, SpecialSet, Uniform,
                    edge_switch_factor, gamma, node_switch_factor)
from hetn2v.bias import load_switch_matrix

pos = st.floats(0.05, 20, allow_nan=False)


def test_uniform_node_factor():
    m = Uniform(0.5)
    assert node_switch_factor(m, 1, 1) == 1.0
    assert node_switch_factor(m, 0, 1) == 2.0


def test_special_set_factor():
    m = SpecialSet({1}, to_special=0.25, from_special=1.0)
    assert node_switch_factor(m, 2, 1) == 4.0
    assert node_switch_factor(m, 1, 2) == 1.0
    assert node_switch_factor(m, 2, 3) == 1.0


def test_special_set_distinct_special_types_grouped():
    m = SpecialSet({1, 2}, to_special=0.1, from_special=3.0)
    assert node_switch_factor(m, 1, 2) == 1.0


@pytest.mark.parametrize("n_types", [2, 4, 6])
def test_special_set_equals_constant_rows(n_types):
    special = {0} if n_types < 4 else {0, 3}
    to, frm = 0.3, 2.5
    ss = SpecialSet(special, to, frm)
    mat = np.ones((n_types, n_types))
    for i, j in itertools.product(range(n_types), repeat=2):
        if i not in special and j in special:
            mat[i, j] = to
        elif i in special and j not in special:
            mat[i, j] = frm
    pd = PairwiseDirected(mat)
    for i, j in itertools.product(range(n_types), repeat=2):
        assert node_switch_factor(ss, i, j) == node_switch_factor(pd, i, j)
    assert np.array_equal(ss.value_matrix(n_types), pd.value_matrix(n_types))


def test_edge_factors():
    for a, b in itertools.product(range(3), repeat=2):
        assert edge_switch_factor(Uniform(1.0), a, b) == 1.0
    assert edge_switch_factor(Uniform(4.0), 0, 1) == 0.25
    m = np.ones((2, 2))
    m[0, 1] = 2.0
    assert edge_switch_factor(PairwiseDirected(m), 0, 1) == 0.5
    assert edge_switch_factor(PairwiseDirected(m), 1, 0) == 1.0


def test_matrix_validation():
    with pytest.raises(ValueError):
        PairwiseSymmetric(np.array([[1.0, 2.0], [3.0, 1.0]]))
    with pytest.raises(ValueError):
        PairwiseDirected(np.array([[1.0, 0.0], [1.0, 1.0]]))
    with pytest.raises(ValueError):
        Uniform(0.0)
    with pytest.raises(ValueError):
        BiasParams(p=-1)
    # diagonal is never used, so it is not validated
    PairwiseDirected(np.array([[0.0, 2.0], [2.0, 0.0]]))


def test_load_switch_matrix(tmp_path):
    p = tmp_path / "s.tsv"
    p.write_text("from\tto\ts\ngene\tdisease\t0.2\n# c\ndisease\tdrug\t4\n")
    m = load_switch_matrix(p, ["gene", "disease", "drug"])
    assert node_switch_factor(m, 0, 1) == 5.0
    assert node_switch_factor(m, 1, 0) == 1.0
    assert node_switch_factor(m, 1, 2) == 0.25
    p.write_text("gene\tnope\t2\n")
    with pytest.raises(ValueError, match="nope"):
        load_switch_matrix(p, ["gene"])


def test_gamma_examples():
    assert gamma(BiasParams(p=2), 0, 0, 0, 0, 0) == 0.5
    params = BiasParams(p=1, q=2, node_switch=Uniform(4), edge_switch=Uniform(5))
    assert gamma(params, 2, 0, 1, 0, 1) == 1 / 40


@settings(max_examples=200, deadline=None)
@given(pos, pos, pos, pos, st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
       st.integers(0, 2), st.integers(0, 2))
def test_gamma_factorises(p, q, s, e, d, a, b, c, f):
    params = BiasParams(p, q, Uniform(s), Uniform(e))
    g = gamma(params, d, a, b, c, f)
    base = (1 / p, 1.0, 1 / q)[d]
    assert g > 0
    assert g == pytest.approx(base * node_switch_factor(params.node_switch, a, b)
                              * edge_switch_factor(params.edge_switch, c, f), rel=1e-14)
    # specialisations
    node_only = BiasParams(p, q, Uniform(s))
    edge_only = BiasParams(p, q, edge_switch=Uniform(e))
    plain = BiasParams(p, q)
    assert gamma(node_only, d, a, b, c, f) == pytest.approx(
        base / (s if a != b else 1.0), rel=1e-14)
    assert gamma(edge_only, d, a, b, c, f) == pytest.approx(
        base / (e if c != f else 1.0), rel=1e-14)
    assert gamma(plain, d, a, b, c, f) == pytest.approx(base, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(pos, pos, pos)
def test_at_most_six_values_without_edge_switching(p, q, s):
    params = BiasParams(p, q, Uniform(s))
    values = {gamma(params, d, 0, b, 0, 0) for d in range(3) for b in range(2)}
    values |= {gamma(params, d, 1, b, 0, 0) for d in range(3) for b in range(2)}
    assert len(values) <= 6


@settings(max_examples=100, deadline=None)
@given(pos, pos, st.floats(0.1, 10), st.floats(0.1, 0.99), st.integers(0, 2))
def test_lower_s_raises_cross_type_only(p, q, s, shrink, d):
    hi, lo = BiasParams(p, q, Uniform(s)), BiasParams(p, q, Uniform(s * shrink))
    assert gamma(lo, d, 0, 1, 0, 0) > gamma(hi, d, 0, 1, 0, 0)
    assert gamma(lo, d, 0, 0, 0, 0) == gamma(hi, d, 0, 0, 0, 0)


def test_tables_match_gamma():
    rng = np.random.default_rng(0)
    params = BiasParams(0.7, 2.0, PairwiseDirected(rng.uniform(0.1, 3, (3, 3))),
                        SpecialSet({1}, 0.2, 4.0))
    t = params.tables(3, 3)
    for d, a, b, c, f in itertools.product(range(3), repeat=5):
        assert 1.0 / (t.base[d] * t.node[a, b] * t.edge[c, f]) == gamma(params, d, a, b, c, f)


def test_matrix_too_small_for_graph():
    with pytest.raises(ValueError):
        BiasParams(node_switch=PairwiseDirected(np.ones((2, 2)))).tables(3, 1)
