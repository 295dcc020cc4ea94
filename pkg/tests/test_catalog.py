import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kmsflow import catalog
from kmsflow.errors import DepthLimit, ParameterOutOfRange
from kmsflow.graph import dim_vertex, validate_graph
from kmsflow.links import link_matrix

from oracles import partition_count, syt_count


@pytest.mark.parametrize("n", range(0, 11))
def test_partition_counts(n):
    parts = catalog.partitions(n)
    assert len(parts) == partition_count(n) == len(set(parts))
    assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in parts)


def test_partition_order():
    assert catalog.partitions(3) == [(3,), (2, 1), (1, 1, 1)]


def test_labels_round_trip():
    for lam in catalog.partitions(5):
        assert catalog.parse_partition(catalog.partition_label(lam)) == lam
    assert catalog.partition_label(()) == catalog.EMPTY_PARTITION
    assert catalog.parse_partition(catalog.EMPTY_PARTITION) == ()


@pytest.mark.parametrize("lam", [(1,), (2, 1), (3, 2), (4, 2, 1), (3, 3, 2), (2, 2, 2, 1, 1)])
def test_hook_formula_matches_tableau_count(lam):
    assert catalog.hook_dim(lam) == syt_count(lam)


def test_young_graph(young8):
    g = young8.graph
    assert validate_graph(g) == []
    assert [len(lv) for lv in g.levels] == [partition_count(n) for n in range(9)]
    for z in g.vertices():
        lam = catalog.parse_partition(z.label)
        assert dim_vertex(g, z) == syt_count(lam)


def test_young_depth_limit():
    with pytest.raises(DepthLimit):
        catalog.young(13)


def test_plancherel_masses():
    nu = catalog.plancherel_system(6)
    for n in range(7):
        assert sum(nu.level(n).values()) == 1
    assert nu[nu.graph.vertex(3, "2,1")] == Fraction(4, 6)


def test_pascal_dims():
    g = catalog.pascal(7)
    assert all(dim_vertex(g, z) == math.comb(z.level, int(z.label)) for z in g.vertices())


@given(st.integers(1, 6), st.integers(0, 6), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)]))
def test_q_pascal_gaussian_binomial(n, k, q):
    k = min(k, n)
    f = catalog.q_pascal(n, q, 1)

    def gauss(n, k):
        num_, den = Fraction(1), Fraction(1)
        for i in range(k):
            num_ *= 1 - q ** (n - i)
            den *= 1 - q ** (i + 1)
        return num_ / den

    assert f.table[f.graph.vertex(n, k)] == gauss(n, k)


def test_q_pascal_reduces_to_pascal():
    f = catalog.q_pascal(4, 1, 1)
    assert f.table[f.graph.vertex(4, 2)] == 6


def test_parameter_checks():
    with pytest.raises(ParameterOutOfRange):
        catalog.bernoulli_system(3, 0)
    with pytest.raises(ParameterOutOfRange):
        catalog.q_pascal(3, 2, 1)
    with pytest.raises(ParameterOutOfRange):
        catalog.pascal(0)


@given(st.integers(0, 10_000), st.integers(1, 6))
def test_random_graphs_are_valid(seed, depth):
    g = catalog.random_graph(depth, np.random.default_rng(seed), max_mult=3)
    assert validate_graph(g) == []
    k = catalog.random_link(g, np.random.default_rng(seed))
    k.validate()


def test_q_one_link_equals_pascal_link():
    a, b = catalog.q_pascal(6, 1, 1), catalog.pascal_flow(6)
    for n in range(1, 7):
        assert link_matrix(a, n, n - 1).entries == link_matrix(b, n, n - 1).entries
