import math

import numpy as np
import pytest

from xwell import bound, oracle, specfun
from xwell.bound import Parity
from xwell.errors import ArgumentOutOfSpecfunDomain, BracketingFailed, TooFewStatesInRange
from xwell.model import EnergyGridSpec, WellParams

FIG2 = [2.6759, 7.7766, 13.3305, 19.5616]


def test_parity_condition_at_reference_levels(well):
    scale = abs(specfun.k_imag_order(0.0, 1.0))
    assert abs(bound.parity_condition(well, 2.6759, Parity.EVEN)) <= 1e-4 * scale
    assert abs(bound.parity_condition(well, 7.7766, "odd")) <= 1e-4 * scale


def test_parity_condition_matches_series_oracle(well):
    # E = 0: order i * sqrt(1) * 1 = i
    val = bound.parity_condition(well, 0.0, Parity.ODD)
    assert val != 0
    assert val == pytest.approx(oracle.k_series_oracle(1j, 1.0).real, rel=1e-10)


def test_spectrum_values(spectrum):
    assert [s.n for s in spectrum] == [0, 1, 2, 3]
    for s, ref in zip(spectrum, FIG2):
        assert abs(s.energy - ref) <= 5e-4
    assert [s.parity for s in spectrum] == [Parity.EVEN, Parity.ODD, Parity.EVEN, Parity.ODD]
    energies = [s.energy for s in spectrum]
    assert energies == sorted(energies)
    for s in spectrum:
        assert s.k == pytest.approx(math.sqrt(s.energy + 1.0), rel=1e-14)


def test_rough_scan_sign_changes(well):
    grid = np.arange(0.0, 21.0, 1.0)
    even = [bound.parity_condition(well, e, Parity.EVEN) for e in grid]
    odd = [bound.parity_condition(well, e, Parity.ODD) for e in grid]
    ev = [grid[i] for i in range(len(grid) - 1) if even[i] * even[i + 1] < 0]
    od = [grid[i] for i in range(len(grid) - 1) if odd[i] * odd[i + 1] < 0]
    assert ev == [2.0, 13.0]
    assert od == [7.0, 19.0]


def test_spectrum_grid_independent(well, spectrum):
    finer = bound.solve_spectrum(well, 3, step=0.025)
    for a, b in zip(spectrum, finer):
        assert abs(a.energy - b.energy) <= 1e-9


def test_explicit_scan(well, spectrum):
    got = bound.solve_spectrum(well, 3, scan=EnergyGridSpec(-0.999, 25.0, 521))
    for a, b in zip(spectrum, got):
        assert abs(a.energy - b.energy) <= 1e-9
    with pytest.raises(TooFewStatesInRange):
        bound.solve_spectrum(well, 3, scan=EnergyGridSpec(-0.999, 10.0, 201))
    with pytest.raises(BracketingFailed):
        # a window that opens past the ground state sees an odd root first
        bound.solve_spectrum(well, 0, scan=EnergyGridSpec(3.0, 8.0, 2))


def test_interlacing_and_more_states(well):
    states = bound.solve_spectrum(well, 9)
    assert [s.parity for s in states] == [Parity.of(n) for n in range(10)]
    assert all(b.energy > a.energy for a, b in zip(states, states[1:]))


def test_other_parameters_match_numerov():
    params = WellParams(2.0, 0.6, 1.5)
    exact = bound.solve_spectrum(params, 3)
    shot = oracle.shoot_spectrum(params, 3)
    for s, (n, E) in zip(exact, shot):
        assert s.n == n
        assert abs(s.energy - E) <= 1e-3


def test_eigenfunction_symmetry(well, spectrum):
    even, odd = spectrum[0], spectrum[1]
    assert bound.eigenfunction(well, odd, 0.0) == 0.0
    for x in (0.3, 1.1, 2.5):
        assert bound.eigenfunction(well, even, x) == bound.eigenfunction(well, even, -x)
        assert bound.eigenfunction(well, odd, x) == -bound.eigenfunction(well, odd, -x)


def test_eigenfunction_domain(well, spectrum):
    with pytest.raises(ArgumentOutOfSpecfunDomain):
        bound.eigenfunction(well, spectrum[0], bound.x_cap(well) + 0.1)


def test_ground_state_tail_ratio_vs_numerov(well, spectrum):
    s0 = spectrum[0]
    xs, ys = oracle.numerov_inward(well, s0.energy, 6.0, 1.5)
    i2 = int(np.argmin(abs(xs - 2.0)))
    i3 = int(np.argmin(abs(xs - 3.0)))
    ref = ys[i3] / ys[i2]
    got = bound.eigenfunction(well, s0, 3.0) / bound.eigenfunction(well, s0, 2.0)
    assert abs(got / ref - 1) <= 1e-3


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_node_count(well, spectrum, n):
    assert bound.count_nodes(well, spectrum[n]) == n


def test_even_state_smooth_at_origin(well, spectrum):
    for s in spectrum[::2]:
        xs, ps = bound.sample(well, s, 401)
        peak = np.max(np.abs(ps))
        h = 1e-5
        central = (bound.eigenfunction(well, s, h) - bound.eigenfunction(well, s, -h)) / (2 * h)
        assert abs(central) <= 1e-4 * peak
        # one-sided slope vanishes too: that is the even quantization condition
        assert abs(bound.eigenfunction_slope_at_origin(well, s)) <= 1e-4 * peak


def test_odd_state_slope_nonzero(well, spectrum):
    assert abs(bound.eigenfunction_slope_at_origin(well, spectrum[1])) > 1e-3


def test_normalization(well, spectrum):
    s0 = bound.normalize(well, spectrum[0])
    s1 = bound.normalize(well, spectrum[1])
    assert s0.norm_constant > 0
    assert bound.overlap(well, s0, s0) == pytest.approx(1.0, abs=1e-8)
    assert bound.overlap(well, s1, s1) == pytest.approx(1.0, abs=1e-8)
    assert abs(bound.overlap(well, s0, s1)) <= 1e-10
    wide = bound.normalize(well, spectrum[0], xc=2 * bound.x_cap(well))
    assert abs(wide.norm_constant / s0.norm_constant - 1) <= 1e-9
    assert bound.tail_bound(well, bound.x_cap(well)) <= 1e-10


def test_normalized_states_orthogonal_same_parity(well, spectrum):
    s0 = bound.normalize(well, spectrum[0])
    s2 = bound.normalize(well, spectrum[2])
    assert abs(bound.overlap(well, s0, s2)) <= 1e-8
