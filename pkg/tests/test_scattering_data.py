"""Tests for scattering data on a momentum grid."""

import numpy as np
import pytest

from radscat.errors import DomainError
from radscat.problem import ProblemSpec
from radscat.scattering import ResonanceStatus, compute_scattering_data
from radscat.tabular import ScatteringTable

from .conftest import assert_close, well_jost_function

K_GRID = [0.5, 1.0, 2.0, 5.0]


def test_well_data(well_problem: ProblemSpec):
    data = compute_scattering_data(well_problem, K_GRID, with_bound_states=False)
    k = np.asarray(K_GRID)
    f = well_jost_function(1.0, 1.0, k)
    assert_close(data.F_of_k, f, rtol=1e-9)
    # f = F for l = 0
    assert_close(data.f_of_k, f, rtol=1e-9)
    np.testing.assert_allclose(data.m_of_k.imag, k / np.abs(f) ** 2, rtol=1e-8)
    assert_close(data.g_of_k, -data.m_of_k * data.f_of_k)
    assert data.bound_states == []
    assert data.resonance.status == ResonanceStatus.NONE
    assert data.potential_id == "well(1,0,1)"


def test_f_of_k_prefactor():
    problem = ProblemSpec(1, "free")
    data = compute_scattering_data(problem, [2.0], with_bound_states=False)
    # f_1(k) = i / k
    assert_close(data.f_of_k, [0.5j])
    assert_close(data.F_of_k, [1.0])


def test_to_table(well_problem: ProblemSpec):
    data = compute_scattering_data(well_problem, K_GRID, with_bound_states=False)
    table = data.to_table()
    assert isinstance(table, ScatteringTable)
    assert list(table.columns) == [
        "k",
        "re_f",
        "im_f",
        "re_F",
        "im_F",
        "abs_F",
        "im_m",
    ]
    assert list(table["k"]) == K_GRID
    np.testing.assert_allclose(
        table["abs_F"], np.abs(well_jost_function(1.0, 1.0, np.asarray(K_GRID)))
    )


def test_to_dict_with_bound_state():
    problem = ProblemSpec(0, "well(10,0,1)")
    data = compute_scattering_data(problem, [1.0], n_jobs=1)
    report = data.to_dict()
    assert set(report) == {"potential_id", "l", "bound_states", "resonance"}
    (state,) = report["bound_states"]
    assert set(state) == {"kappa", "lambda", "gamma", "gamma_residue"}
    assert state["lambda"] == pytest.approx(-state["kappa"] ** 2)
    assert report["resonance"]["status"] == "none"


@pytest.mark.parametrize(
    "k_grid,message",
    [([0.0, 1.0], "k > 0"), ([2.0, 1.0], "strictly increasing")],
)
def test_invalid_grid(well_problem: ProblemSpec, k_grid, message):
    with pytest.raises(DomainError, match=message):
        compute_scattering_data(well_problem, k_grid)
