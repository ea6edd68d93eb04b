# -*- coding: utf-8 -*-
"""
收入比值实验测试
"""

import pandas as pd
import pytest

from distributions.errors import ParameterError
from distributions.price_distributions import UniformUnit, GeneralizedPareto, StandardPareto
from montecarlo.ratio_experiment import (
    RatioExperimentConfig, RatioExperiment, run_ratio_experiment, run_seed_averaged, is_nonincreasing,
    RATIO_COLUMNS,
)


def _small_config(**overrides):
    params = dict(price_dist=UniformUnit(), n_grid=(2, 5, 20), trials=2000, rng_seed=17,
                  bootstrap_resamples=20)
    params.update(overrides)
    return RatioExperimentConfig(**params)


def test_config_validation():
    with pytest.raises(ParameterError):
        _small_config(n_grid=(1, 5))
    with pytest.raises(ParameterError):
        _small_config(n_grid=())
    with pytest.raises(ParameterError):
        _small_config(trials=0)
    with pytest.raises(ParameterError):
        _small_config(bootstrap_resamples=0)


def test_default_config_is_heavy_tailed_pareto():
    cfg = RatioExperimentConfig()
    assert cfg.price_dist == GeneralizedPareto(location=0.0, scale=100.0, shape=1.0, tail=0.95)
    assert cfg.n_grid == (2, 10, 50, 250, 1000)


def test_ratios_in_unit_interval():
    result = run_ratio_experiment(_small_config())
    assert list(result.rows['n']) == [2, 5, 20]
    for column in RATIO_COLUMNS[1:]:
        assert column in result.rows.columns
    assert ((result.rows['mean_ratio'] > 0) & (result.rows['mean_ratio'] <= 1)).all()
    assert ((result.rows['median_ratio'] > 0) & (result.rows['median_ratio'] <= 1)).all()
    assert (result.rows['se'] >= 0).all()
    assert not result.heavy_tailed
    assert result.warnings == []


def test_uniform_two_draws_ratio_half():
    # E[min] / E[max] = (1/3) / (2/3)
    result = run_ratio_experiment(_small_config(n_grid=(2,), trials=50000))
    assert result.rows['mean_ratio'].iloc[0] == pytest.approx(0.5, abs=0.02)


def test_single_trial():
    result = run_ratio_experiment(_small_config(n_grid=(2,), trials=1, bootstrap_resamples=1))
    ratio = result.rows['mean_ratio'].iloc[0]
    assert 0 < ratio <= 1
    assert result.rows['se'].iloc[0] == 0.0


def test_run_is_deterministic_across_worker_counts():
    cfg = _small_config()
    serial = RatioExperiment(cfg).run(max_workers=1)
    threaded = RatioExperiment(cfg).run(max_workers=3)
    pd.testing.assert_frame_equal(serial.rows, threaded.rows)
    other = run_ratio_experiment(cfg.with_seed(18))
    assert not other.rows['mean_ratio'].equals(serial.rows['mean_ratio'])


def test_heavy_tail_flag_and_median_separation():
    cfg = RatioExperimentConfig(n_grid=(250,), trials=2000, rng_seed=5, bootstrap_resamples=20)
    result = run_ratio_experiment(cfg)
    assert result.heavy_tailed
    assert len(result.warnings) == 1
    row = result.rows.iloc[0]
    assert row['median_ratio'] >= row['mean_ratio']


def test_result_to_dict():
    result = run_ratio_experiment(_small_config(n_grid=(2, 3)))
    doc = result.to_dict()
    assert doc['config']['n_grid'] == [2, 3]
    assert doc['config']['price_dist'] == UniformUnit().to_dict()
    assert len(doc['rows']) == 2


def test_run_seed_averaged():
    cfg = _small_config()
    single = run_seed_averaged(cfg, 1)
    assert list(single.columns) == RATIO_COLUMNS
    averaged = run_seed_averaged(cfg, 3)
    assert list(averaged.columns) == RATIO_COLUMNS
    assert list(averaged['n']) == [2, 5, 20]
    assert (averaged['se'] >= 0).all()
    # 均匀分布: E[p_{n-1:n}] / E[p_{n:n}] = (n-1)/n，随 n 增大
    assert averaged['mean_ratio'].is_monotonic_increasing
    with pytest.raises(ParameterError):
        run_seed_averaged(cfg, 0)


def test_is_nonincreasing():
    assert is_nonincreasing([3.0, 2.0, 2.0, 1.0])
    assert not is_nonincreasing([1.0, 2.0])
    assert is_nonincreasing([1.0])


@pytest.mark.slow
@pytest.mark.parametrize('dist', [GeneralizedPareto(), StandardPareto()], ids=['generalized', 'standard'])
def test_twenty_seed_heavy_tail_curve(dist):
    # tail=0.95: E[p_{n:n}] 无穷，均值比值由样本极值决定，各 n 都停在 0.07 附近
    cfg = RatioExperimentConfig(price_dist=dist, n_grid=(2, 10, 50, 250, 1000), trials=10000,
                                rng_seed=2024, bootstrap_resamples=10)
    rows = run_seed_averaged(cfg, 20, max_workers=4)
    assert list(rows['n']) == [2, 10, 50, 250, 1000]
    assert (rows['mean_ratio'] < 0.2).all()

    large = rows[rows['n'] >= 250]
    assert (large['median_ratio'] >= large['mean_ratio']).all()
    # 中位数比值趋于 (ln2 / 1.678)^(1/0.95) ≈ 0.394
    assert (large['median_ratio'] > 0.3).all()
