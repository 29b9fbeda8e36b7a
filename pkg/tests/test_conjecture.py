import json
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from deginf.conjecture import (ExperimentConfig, exhaustive_n2_check, linking_determinant,
                               linking_determinant_experiment, primitive_positive_vectors,
                               sample_weight_tuples, splitmix64)
from deginf.errors import InputError
from deginf.exact import cofactor_det
from deginf.toric import linking_matrix


def test_splitmix_reference_value():
    # first output of the reference splitmix64 generator seeded with 0
    assert splitmix64(0, 0) == 0xE220A8397B1DCDAF


def test_sampling_shape_and_determinism():
    cfg = ExperimentConfig(n=2, k_min=1, k_max=1, bound=5, seed=1)
    (v,) = sample_weight_tuples(cfg, 0)
    assert len(v) == 2 and min(v) >= 1
    assert sample_weight_tuples(cfg, 0) == sample_weight_tuples(cfg, 0)
    cfg = ExperimentConfig(n=3, k_min=4, k_max=4, bound=9, seed=7)
    vs = sample_weight_tuples(cfg, 3)
    assert len(vs) == 4
    for u, w in combinations(vs, 2):
        cross = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
        assert any(cross)


def test_retry_cap():
    with pytest.raises(InputError):
        sample_weight_tuples(ExperimentConfig(n=2, k_min=2, k_max=2, bound=1), 0)


def test_config_validation():
    with pytest.raises(InputError):
        ExperimentConfig(n=1)
    with pytest.raises(InputError):
        ExperimentConfig(k_min=3, k_max=2)


def test_k1_determinants_are_one():
    rep = linking_determinant_experiment(ExperimentConfig(n=3, k_min=1, k_max=1, trials=50))
    assert rep.min_abs_det == 1 and rep.per_k == {1: 50}


def test_planar_experiment_has_no_counterexamples():
    rep = linking_determinant_experiment(ExperimentConfig(n=2, k_min=1, k_max=4, bound=8, trials=2000, seed=3))
    assert rep.counterexamples == [] and rep.min_abs_det > 0


def test_report_is_reproducible():
    cfg = ExperimentConfig(n=3, k_max=5, bound=9, trials=300, seed=42)
    a = json.dumps(linking_determinant_experiment(cfg).to_json())
    b = json.dumps(linking_determinant_experiment(cfg).to_json())
    assert a == b
    assert "runtime" not in a


def test_exhaustive_examples():
    assert exhaustive_n2_check(5, 3)
    assert exhaustive_n2_check(8, 1)
    assert len(primitive_positive_vectors(2)) == 3


def test_experiment_and_exhaustive_agree_on_planar_instances():
    cfg = ExperimentConfig(n=2, k_min=2, k_max=3, bound=5, trials=300, seed=9)
    for t in range(cfg.trials):
        vs = sample_weight_tuples(cfg, t)
        assert linking_determinant(vs) != 0
    assert exhaustive_n2_check(5, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.fractions(min_value=F(1, 5), max_value=5).filter(lambda c: c > 0))
def test_scale_invariance(seed, c):
    vs = sample_weight_tuples(ExperimentConfig(n=3, k_min=2, k_max=4, bound=9, seed=seed), 0)
    scaled = [tuple(c * a for a in v) if i == 0 else v for i, v in enumerate(vs)]
    assert linking_determinant(scaled) == linking_determinant(vs)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_determinant_routes_agree(seed):
    vs = sample_weight_tuples(ExperimentConfig(n=3, k_min=1, k_max=5, bound=9, seed=seed), 0)
    assert cofactor_det(linking_matrix(vs)) == linking_determinant(vs)
