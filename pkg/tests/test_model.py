import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xwell.errors import DomainError, EnergyBelowWellBottom, NoClassicalTurningPoints
from xwell.model import (
    BarrierParams,
    EnergyGridSpec,
    WellParams,
    potential_value,
    turning_points,
    wavenumbers,
)


def test_potential_values():
    w = WellParams(1.0, 1.0)
    assert potential_value(w, 0.0) == 0.0
    assert potential_value(w, 1.0) == pytest.approx(math.e ** 2 - 1, rel=1e-15)
    assert potential_value(BarrierParams(5.0, 0.2), 0.2) == pytest.approx(-5 * (math.e ** 2 - 1), rel=1e-15)
    assert potential_value(BarrierParams(5.0, 0.2), 0.2) == pytest.approx(-31.9453, abs=1e-4)


@given(st.floats(-10, 10))
def test_potential_symmetric(x):
    w = WellParams(1.3, 0.7)
    assert potential_value(w, x) == potential_value(w, -x)


def test_invalid_params():
    with pytest.raises(DomainError):
        WellParams(-1.0, 1.0)
    with pytest.raises(DomainError):
        BarrierParams(5.0, 0.0)


def test_well_wavenumbers_at_ground_state():
    wn = wavenumbers(WellParams(1.0, 1.0), 2.6759)
    assert wn.k_or_p.real == pytest.approx(math.sqrt(3.6759), rel=1e-15)
    assert wn.k_or_p.real == pytest.approx(1.91727, abs=1e-5)
    assert wn.q_or_s == 1.0 and wn.lam == 1.0
    assert wn.order == pytest.approx(1.91727j, abs=1e-5)


def test_barrier_wavenumbers_branches():
    b = BarrierParams(5.0, 1.0)
    assert wavenumbers(b, 5.0).order == 0
    wn = wavenumbers(b, 0.0)
    assert wn.k_or_p == pytest.approx(1j * math.sqrt(5), abs=1e-15)
    assert wn.order == pytest.approx(-math.sqrt(5), abs=1e-15)
    assert wn.order.imag == 0.0
    above = wavenumbers(b, 9.0)
    assert above.k_or_p.real == pytest.approx(2.0) and above.order.real == 0.0


def test_order_is_i_p_a():
    b = BarrierParams(2.0, 0.3)
    for E in (-4.0, 1.0, 2.0, 7.5):
        wn = wavenumbers(b, E)
        assert wn.order == 1j * wn.k_or_p * b.a


def test_order_continuous_across_u0():
    b = BarrierParams(5.0, 1.0)
    for E in (5.0 - 1e-6, 5.0 + 1e-6):
        assert abs(wavenumbers(b, E).order) <= 2e-3


def test_well_below_bottom():
    with pytest.raises(EnergyBelowWellBottom):
        wavenumbers(WellParams(1.0, 1.0), -1.0)


def test_turning_points_examples():
    w = WellParams(1.0, 1.0)
    x1, x2 = turning_points(w, 1e-300)
    assert x2 == pytest.approx(0.0, abs=1e-300) and x1 == -x2
    assert turning_points(w, math.e ** 2 - 1)[1] == pytest.approx(1.0, rel=1e-15)
    assert turning_points(BarrierParams(5.0, 0.2), -5.0)[1] == pytest.approx(0.1 * math.log(2), rel=1e-15)
    with pytest.raises(NoClassicalTurningPoints):
        turning_points(w, 0.0)
    with pytest.raises(NoClassicalTurningPoints):
        turning_points(BarrierParams(), 0.5)


@settings(max_examples=100)
@given(st.floats(1e-6, 1e3), st.floats(0.1, 5), st.floats(0.2, 3))
def test_turning_point_inverts_potential(E, v0, a):
    w = WellParams(v0, a)
    assert potential_value(w, turning_points(w, E)[1]) == pytest.approx(E, rel=1e-12)
    b = BarrierParams(v0, a)
    assert potential_value(b, turning_points(b, -E)[1]) == pytest.approx(-E, rel=1e-12)


def test_energy_grid():
    g = EnergyGridSpec(-10, 10, 401)
    e = g.energies()
    assert len(e) == 401 and e[0] == -10 and e[-1] == 10 and e[200] == 0
    assert EnergyGridSpec(1.5, 1.5, 1).energies().tolist() == [1.5]
    with pytest.raises(DomainError):
        EnergyGridSpec(1, 0, 5)
