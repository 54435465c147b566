#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import io
import json

import numpy as np
import pytest

from jackkit.errors import DeskScaleError, ParseError
from jackkit.experiments import (
    ExperimentConfig,
    GridConfig,
    convergence_experiment,
    csv_text,
    fit_inverse_n,
    phi_on_grid,
    summary,
    torus_grid,
    write_csv,
)
from jackkit.vk import VkSequence


def _config(sequence, theta="1/2", n_list=(3, 5), k=1, **grid):
    grid_config = GridConfig(**{"order": 8, "random_points": 4, "seed": 7, **grid})
    return ExperimentConfig(theta=theta, sequence=sequence, k=k, n_list=list(n_list), grid=grid_config,
                            moments_k=3)


def test_torus_grid_shape_and_determinism():
    grid = GridConfig(order=64, random_points=32, seed=3)
    points = torus_grid(1, grid)
    assert points.shape == (96, 1)
    assert np.allclose(np.abs(points), 1.0)
    assert points[0, 0] == 1
    assert np.array_equal(points, torus_grid(1, grid))
    assert not np.array_equal(points, torus_grid(1, GridConfig(order=64, random_points=32, seed=4)))


def test_torus_grid_is_capped():
    points = torus_grid(3, GridConfig(order=64, random_points=32, seed=0, max_points=4096))
    assert points.shape == (16 ** 3 + 32, 3)
    points = torus_grid(2, GridConfig(order=100, random_points=0, seed=0, max_points=1000))
    assert points.shape == (31 ** 2, 2)


def test_zero_sequence_has_no_error():
    config = _config(VkSequence.zero(), n_list=[5, 3, 20])
    rows = convergence_experiment(config)
    assert [row.n for row in rows] == [3, 5, 20]
    for row in rows:
        assert row.sup_error == pytest.approx(0.0, abs=1e-12)
        assert row.moment_errors == [0.0, 0.0, 0.0]
        assert row.energy_error == 0.0


def test_zero_sequence_multi_point():
    config = _config(VkSequence.zero(), n_list=[3, 4], k=2, order=4, random_points=2)
    rows = convergence_experiment(config)
    assert all(row.sup_error == pytest.approx(0.0, abs=1e-12) for row in rows)


def test_row_sequence_first_moment_is_exact_for_even_n():
    config = _config(VkSequence.row("1/2"), theta=1, n_list=[4, 6, 8])
    rows = convergence_experiment(config)
    assert all(row.moment_errors[0] == 0.0 for row in rows)
    assert all(np.isfinite(row.sup_error) for row in rows)


def test_multi_point_requires_desk_scale():
    points = torus_grid(2, GridConfig(order=2, random_points=0))
    with pytest.raises(DeskScaleError):
        phi_on_grid((1,) + (0,) * 19, 1, points)
    config = _config(VkSequence.row("1/2"), n_list=[20], k=2, order=2, random_points=0)
    with pytest.raises(DeskScaleError):
        convergence_experiment(config)


def test_parallel_matches_serial():
    config = _config(VkSequence.row("1/2"), n_list=[4, 6])
    serial = convergence_experiment(config)
    config.workers = 2
    parallel = convergence_experiment(config)
    assert [r.to_dict() for r in parallel] == [r.to_dict() for r in serial]


def test_config_parsing(tmp_path):
    data = {"theta": "1/2", "sequence": {"kind": "row", "params": {"alpha_plus": ["1/2"]}},
            "k": 1, "n_list": [200, 50], "grid": {"order": 16}}
    config = ExperimentConfig.from_dict(data)
    assert config.n_list == [50, 200]
    assert config.grid.order == 16
    assert config.sequence(4) == (2, 0, 0, 0)
    path = tmp_path / "exp.json"
    path.write_text(json.dumps(config.to_dict()), encoding="utf-8")
    assert ExperimentConfig.load(str(path)).to_dict() == config.to_dict()

    with pytest.raises(ParseError):
        ExperimentConfig.from_dict({"theta": "1/2"})
    with pytest.raises(ParseError):
        ExperimentConfig.from_dict({"theta": "1/2", "sequence": {"kind": "zero"}, "k": "x"})
    with pytest.raises(ParseError):
        ExperimentConfig.load(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(ParseError):
        ExperimentConfig.load(str(broken))


def test_write_csv():
    config = _config(VkSequence.zero())
    rows = convergence_experiment(config)
    buffer = io.StringIO()
    write_csv(config, rows, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == "# theta=1/2"
    assert lines[2] == "# seed=7"
    assert lines[3] == "n,sup_error,moment_err_1,moment_err_2,moment_err_3"
    assert lines[4].startswith("3,")
    assert csv_text(config, rows) == buffer.getvalue()


def test_fit_inverse_n():
    assert fit_inverse_n([10, 20, 40], [0.1, 0.05, 0.025]) == pytest.approx(1.0)


def test_summary():
    config = _config(VkSequence.row("1/2"), n_list=[4, 8])
    rows = convergence_experiment(config)
    result = summary(config, rows)
    assert set(result) == {"config", "rows", "fit", "limit_params", "extracted_params", "diagnostics"}
    assert result["limit_params"]["alpha_plus"] == ["1/2"]
    assert len(result["fit"]["moment_errors"]) == 3


@pytest.mark.slow
@pytest.mark.parametrize("theta", ["1/2", "1", "2"])
@pytest.mark.parametrize("sequence", [
    VkSequence.row("1/2"),
    VkSequence.column("1/2"),
    VkSequence.mixed(["1/2"], ["1/3"]),
], ids=["row", "column", "mixed"])
def test_convergence_acceptance(sequence, theta):
    config = ExperimentConfig(theta=theta, sequence=sequence, n_list=[50, 200],
                              grid=GridConfig(order=64, random_points=32, seed=0), moments_k=4)
    small, large = convergence_experiment(config)
    assert large.sup_error <= small.sup_error + 1e-12
    assert large.sup_error < 0.1
    for e50, e200 in zip(small.moment_errors, large.moment_errors):
        assert e200 <= e50 + 1e-12
