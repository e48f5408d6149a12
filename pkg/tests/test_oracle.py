import math

import numpy as np
import pytest

from xwell import oracle, scatter, semiclassical, specfun
from xwell.bound import Parity
from xwell.errors import BracketingFailed, StepTooLarge
from xwell.model import BarrierParams, WellParams

FIG2 = [2.6759, 7.7766, 13.3305, 19.5616]


def test_numerov_sign_flip_brackets_ground_state(well):
    lo = oracle.numerov_shoot(well, Parity.EVEN, 2.675)
    hi = oracle.numerov_shoot(well, Parity.EVEN, 2.677)
    assert lo * hi < 0


def test_numerov_below_ground_state_definite_sign(well):
    tails = [oracle.numerov_shoot(well, "odd", E) for E in (0.0, 0.5, 1.0, 2.0)]
    assert all(t > 0 for t in tails)
    assert all(math.isfinite(t) for t in tails)


def test_numerov_step_limit(well):
    with pytest.raises(StepTooLarge):
        oracle.numerov_shoot(well, Parity.EVEN, 1.0, h=2e-3)


def test_numerov_fourth_order(well):
    # at the production step the truncation error is already below roundoff,
    # so the order is measured on coarse steps through the raw integrator
    def tail(h):
        return oracle._numerov_tails(well, Parity.EVEN, np.array([1.3]), h, 1.0)[0]

    ref = tail(1e-4)
    ratio = (tail(0.04) - ref) / (tail(0.02) - ref)
    assert 14 < ratio < 18


def test_shoot_spectrum(well, spectrum):
    shot = oracle.shoot_spectrum(well, 3)
    assert [n for n, _ in shot] == [0, 1, 2, 3]
    for (_, E), ref, s in zip(shot, FIG2, spectrum):
        assert abs(E - ref) <= 1e-3
        assert abs(E - s.energy) <= 1e-3


def test_shoot_step_independence(well):
    coarse = oracle.shoot_spectrum(well, 3, h=1e-3)
    fine = oracle.shoot_spectrum(well, 3, h=5e-4)
    for (_, a), (_, b) in zip(coarse, fine):
        assert abs(a - b) <= 1e-5


def test_shoot_bracket(well):
    res = oracle.shoot_bracket(well, Parity.ODD, 7.7, 7.8)
    assert abs(res.E - 7.7766) <= 1e-3
    assert res.bracket[0] <= res.E <= res.bracket[1]
    with pytest.raises(BracketingFailed):
        oracle.shoot_bracket(well, Parity.ODD, 1.0, 2.0)


def test_numerov_inward_decays(well):
    xs, ys = oracle.numerov_inward(well, 2.6759, 5.0, 1.0)
    assert xs[0] == 5.0 and xs[-1] == pytest.approx(1.0)
    assert np.all(np.diff(np.abs(ys)) > 0)


def test_k_series_oracle_values():
    assert oracle.k_series_oracle(0.0, 1.0).real == pytest.approx(0.42102443824070834, rel=1e-15)
    ref = oracle.k_series_oracle(1.91727j, 1.0)
    assert abs(ref.imag) <= 1e-10
    assert ref.real == pytest.approx(specfun.k_imag_order(1.91727, 1.0), rel=1e-9)
    assert oracle.k_series_oracle(-1.91727j, 1.0) == pytest.approx(ref, rel=1e-15)
    assert oracle.k_series_oracle(1.0, 2.0).real == pytest.approx(0.13986588181652243, rel=1e-14)


def test_wkb_quadratures_known_values(well):
    assert oracle.well_action_quadrature(well, 2.6471) == pytest.approx(0.5, abs=1e-3)
    b = BarrierParams(5.0, 1.0)
    assert oracle.barrier_action_quadrature(b, -1e-9) == pytest.approx(0.0, abs=1e-5)


@pytest.mark.parametrize("E", [3.0, -3.0])
def test_linear_solve_conserves_flux(barrier, E):
    lin = oracle.matching_linear_solve(barrier, E)
    R, T = scatter.rt_from_coefficients(barrier, E, lin)
    assert abs(R + T - 1) <= 1e-8


def test_linear_solve_bad_incidence(barrier):
    with pytest.raises(ValueError):
        oracle.matching_linear_solve(barrier, 1.0, "up")


def test_wronskian_sample_is_reproducible():
    a = oracle.wronskian_sample(200, 0)
    assert a == oracle.wronskian_sample(200, 0)
    assert len(a) == 200
    assert all(abs(nu) <= 5 and 0.2 <= z <= 20 for nu, z in a)


def test_selfcheck_passes():
    results = oracle.run_selfcheck()
    assert len(results) == 6
    for r in results:
        assert r.passed, f"{r.name}: {r.detail}"
