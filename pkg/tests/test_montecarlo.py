"""Sampling determinism and statistical agreement with the closed forms.

Statistical assertions use fixed seeds and 4-standard-error gates, so they
are reproducible rather than flaky.
"""

import math

import numpy as np
import pytest

from uqd.montecarlo import (
    McReport,
    OutcomeCounts,
    _projector_mean_stats,
    make_rng,
    mc_average_success,
    mc_projector_mean,
    sample_qubit,
    simulate_outcomes,
)
from uqd.povm import PovmParams
from uqd.strategy import DiscriminatorConfig
from uqd.symmetric import BlochQubit


def test_make_rng_validation():
    make_rng(0)
    for bad in (-1, 1.5, True, "7"):
        with pytest.raises(ValueError):
            make_rng(bad)


def test_rng_streams_reproduce():
    a = make_rng(123).random(16)
    b = make_rng(123).random(16)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, make_rng(124).random(16))


def test_sample_qubit_measure():
    rng = make_rng(5)
    draws = np.array(
        [
            [math.cos(q.theta), math.cos(q.theta / 2) ** 2]
            for q in (sample_qubit(rng) for _ in range(100000))
        ]
    )
    n = len(draws)
    se_cos = draws[:, 0].std(ddof=1) / math.sqrt(n)
    se_half = draws[:, 1].std(ddof=1) / math.sqrt(n)
    assert abs(draws[:, 0].mean()) < 4 * se_cos
    assert abs(draws[:, 1].mean() - 0.5) < 4 * se_half


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_average_success_statistical_gate(seed):
    report = mc_average_success(3, PovmParams(1.0, 1.0), 0.5, 100000, seed)
    assert abs(report.analytic - 3 / 8) < 1e-15
    assert abs(report.mean_success - report.analytic) < 4 * report.std_error
    assert report.error_events == 0

    optimal = mc_average_success(2, PovmParams(0.6, 0.6), 0.5, 100000, seed)
    assert abs(optimal.analytic - 0.2) < 1e-12
    assert abs(optimal.mean_success - 0.2) < 4 * optimal.std_error
    assert optimal.error_events == 0


def test_average_success_degenerate_scales():
    report = mc_average_success(2, PovmParams(0.0, 0.0), 0.3, 2000, 9)
    assert report.mean_success == 0.0
    assert report.std_error == 0.0
    assert report.analytic == 0.0


def test_average_success_validation():
    with pytest.raises(ValueError):
        mc_average_success(2, PovmParams(0.5, 0.5), 0.5, 999, 1)
    with pytest.raises(ValueError):
        mc_average_success(2, PovmParams(0.5, 0.5), 1.5, 2000, 1)


def test_average_success_deterministic():
    a = mc_average_success(2, PovmParams(0.4, 0.7), 0.35, 5000, 77)
    b = mc_average_success(2, PovmParams(0.4, 0.7), 0.35, 5000, 77)
    assert a == b
    assert a != mc_average_success(2, PovmParams(0.4, 0.7), 0.35, 5000, 78)


def test_report_serialization():
    report = mc_average_success(1, PovmParams(0.5, 0.5), 0.5, 1000, 4)
    data = report.to_dict()
    assert set(data) == {
        "samples",
        "mean_success",
        "std_error",
        "analytic",
        "error_events",
    }
    assert isinstance(report, McReport)


@pytest.mark.parametrize("seed", [1, 2, 3])
@pytest.mark.parametrize("n,target", [(1, 0.75), (4, 0.6)])
def test_projector_mean_converges(n, target, seed):
    mean, std_error = _projector_mean_stats(n, 100000, seed)
    assert abs(mean - target) < 4 * std_error
    assert mc_projector_mean(n, 100000, seed) == mean


def test_projector_mean_large_n():
    n = 50
    mean, std_error = _projector_mean_stats(n, 100000, 3)
    assert abs(mean - (n + 2) / (2 * (n + 1))) < 4 * std_error


def test_simulate_outcomes_counts_add_up():
    counts = simulate_outcomes(
        BlochQubit(0.6, 0.0),
        BlochQubit(2.2, 1.0),
        DiscriminatorConfig(2, 0.4),
        20000,
        13,
    )
    assert counts.identify1 + counts.identify2 + counts.fail == counts.shots
    assert counts.error_events == 0
    assert set(counts.to_dict()) == {
        "identify1",
        "identify2",
        "fail",
        "shots",
        "error_events",
    }
    assert isinstance(counts, OutcomeCounts)


def test_simulate_outcomes_identical_states_always_fail():
    q = BlochQubit(1.4, 0.9)
    counts = simulate_outcomes(q, q, DiscriminatorConfig(3, 0.5), 5000, 21)
    assert counts.fail == counts.shots
    assert counts.identify1 == counts.identify2 == 0


def test_simulate_outcomes_orthogonal_rate():
    # identify1 rate for |0> vs |1> at n=2: prior 1/2 times c n/(n+1) = 0.2
    counts = simulate_outcomes(
        BlochQubit(0.0, 0.0),
        BlochQubit(math.pi, 0.0),
        DiscriminatorConfig(2, 0.5),
        100000,
        11,
    )
    p = 0.5 * 0.6 * (2 / 3)
    sigma = math.sqrt(p * (1 - p) / counts.shots)
    assert abs(counts.identify1 / counts.shots - p) < 4 * sigma
    assert counts.error_events == 0


def test_simulate_outcomes_deterministic():
    args = (
        BlochQubit(0.5, 0.1),
        BlochQubit(1.9, 2.0),
        DiscriminatorConfig(2, 0.6),
        3000,
    )
    assert simulate_outcomes(*args, 5) == simulate_outcomes(*args, 5)
    with pytest.raises(ValueError):
        simulate_outcomes(*args, -2)


def test_simulate_outcomes_shot_validation():
    q1, q2 = BlochQubit(0.5, 0.1), BlochQubit(1.9, 2.0)
    with pytest.raises(ValueError):
        simulate_outcomes(q1, q2, DiscriminatorConfig(2, 0.6), 0, 1)


def test_chunk_layout_is_row_stable():
    # counter-based stream: sample i occupies row i however the batch splits
    long = make_rng(31).random((5000, 4))
    short = make_rng(31).random((3000, 4))
    assert np.array_equal(long[:3000], short)
