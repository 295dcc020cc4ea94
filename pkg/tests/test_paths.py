from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kmsflow import catalog
from kmsflow.errors import InvalidCylinder
from kmsflow.paths import (
    CylinderSpec, PathSampler, cylinder_prob, ergodic_experiment, make_rng, sample_down, sample_up,
)


@pytest.fixture(scope="module")
def pascal6():
    return catalog.pascal_flow(6), catalog.bernoulli_system(6, Fraction(1, 3))


def all_cylinders(g, n):
    """Every top-down vertex chain from level n to the root."""
    out = [[z] for z in g.levels[n]]
    for _ in range(n):
        out = [c + [e.source] for c in out for e in g.incoming(c[-1])]
    return [CylinderSpec(c) for c in out]


def test_cylinder_probabilities_sum_to_one(pascal6):
    f, nu = pascal6
    cyls = all_cylinders(f.graph, 6)
    assert len(cyls) == 64
    assert sum(cylinder_prob(f, nu, c) for c in cyls) == 1


def test_cylinder_prob_is_product_measure(pascal6):
    # Bernoulli(p) central measure: each path with k up-steps has p^k (1-p)^(n-k)
    f, nu = pascal6
    p = Fraction(1, 3)
    for c in all_cylinders(f.graph, 6):
        k = int(c.top.label)
        assert cylinder_prob(f, nu, c) == p ** k * (1 - p) ** (6 - k)


def test_invalid_cylinder(pascal6):
    f, nu = pascal6
    g = f.graph
    with pytest.raises(InvalidCylinder):
        cylinder_prob(f, nu, CylinderSpec([g.vertex(3, 3), g.vertex(2, 0)]))
    with pytest.raises(InvalidCylinder):
        cylinder_prob(f, nu, CylinderSpec([g.vertex(3, 1), g.vertex(1, 0)]))
    with pytest.raises(InvalidCylinder):
        CylinderSpec([])


def test_sampled_paths_are_paths(pascal6):
    f, nu = pascal6
    g = f.graph
    for sampler in (sample_down, sample_up):
        path = sampler(f, nu, 6, 3)
        chain = (g.root,) + path.vertices
        assert len(path.vertices) == 6 and path.seed == 3
        for lo, hi in zip(chain, chain[1:]):
            assert g.edge_between(hi, lo) is not None


def test_seed_reproducibility(pascal6):
    f, nu = pascal6
    assert sample_down(f, nu, 6, 11) == sample_down(f, nu, 6, 11)
    assert sample_up(f, nu, 6, 11) == sample_up(f, nu, 6, 11)
    g1, s1 = make_rng(5)
    g2, _ = make_rng(np.random.Generator(np.random.PCG64(5)))
    assert s1 == 5 and g1.random() == g2.random()


def test_up_probabilities_sum_to_one(pascal6):
    f, nu = pascal6
    s = PathSampler(f, nu)
    for level in f.graph.levels[:6]:
        for z in level:
            probs = s.up_probabilities(z)
            assert sum(probs.values()) == 1


@given(st.integers(0, 2**32 - 1))
def test_up_sampler_ends_on_charged_vertex(seed):
    f = catalog.pascal_flow(3)
    nu = catalog.bernoulli_system(3, Fraction(1, 2))
    rng = np.random.default_rng(seed)
    path = sample_up(f, nu, 3, rng)
    assert nu[path.at(3)] > 0


def test_down_sampler_frequencies(pascal6, rng):
    f, nu = pascal6
    s = PathSampler(f, nu)
    n = 20_000
    counts = Counter(s.down(6, rng).at(6) for _ in range(n))
    for z in f.graph.levels[6]:
        p = float(nu[z])
        sigma = (p * (1 - p) / n) ** 0.5
        assert abs(counts[z] / n - p) <= 4 * sigma + 1e-9


def test_ergodic_experiment_explicit_path():
    f = catalog.pascal_flow(8)
    nu = catalog.bernoulli_system(8, Fraction(1, 2))
    g = f.graph
    path = [g.vertex(m, m // 2) for m in range(1, 9)]
    table = ergodic_experiment(f, nu, [g.vertex(1, 1)], 8, path=path)
    assert table.levels == list(range(2, 9))
    assert table.column(g.vertex(1, 1)) == [Fraction(m // 2, m) for m in range(2, 9)]
    assert table.deviations == [abs(Fraction(m // 2, m) - Fraction(1, 2)) for m in range(2, 9)]


def test_ergodic_experiment_requires_system_or_path():
    f = catalog.pascal_flow(3)
    with pytest.raises(ValueError):
        ergodic_experiment(f, None, [f.graph.vertex(1, 1)], 3)
