import math

import pytest

import frozen_values as fv
from fracszilard import constants
from fracszilard.spectrum import (
    EnergyLevel,
    WellSpec,
    d_alpha,
    energy_level,
    levels,
    reduced_gap,
)
from fracszilard.thermo import ThermalContext


def test_quadratic_reduction_matches_textbook_form():
    # at alpha = 2 the spectrum must be hbar^2 k^2 / 2m to 1e-14 relative
    for a_nm in (0.5, 2.0, 50.0, 500.0):
        well = WellSpec(2.0, a_nm * 1e-9)
        for n in range(1, 9):
            k = n * math.pi * constants.HBAR / (2.0 * well.half_width_m)
            reference = k * k / (2.0 * well.mass_kg)
            got = energy_level(well, n)
            assert abs(got - reference) / reference <= 1e-14


def test_divided_levels_equal_doubled_undivided_bitwise():
    well = WellSpec(1.7, 3e-9)
    divided = well.with_divider()
    for n in range(1, 12):
        assert energy_level(divided, n) == energy_level(well, 2 * n)


def test_divider_round_trip():
    well = WellSpec(1.3, 1e-9)
    assert well.with_divider().divided
    assert well.with_divider().without_divider() == well
    assert well.degeneracy == 1
    assert well.with_divider().degeneracy == 2


def test_levels_are_strictly_increasing():
    for alpha in (0.6, 1.0, 1.5, 2.0):
        well = WellSpec(alpha, 2e-9)
        energies = [energy_level(well, n) for n in range(1, 30)]
        assert all(b > a for a, b in zip(energies, energies[1:]))


def test_d_alpha_frozen_value():
    got = d_alpha(1.5)
    assert abs(got - fv.as_float(fv.D_ALPHA_1_5)) / fv.as_float(fv.D_ALPHA_1_5) <= 1e-14


def test_d_alpha_quadratic_unit_mass_is_exact():
    # chi * c^2 / c^2 must collapse exactly; relies on pow(c, 2.0) == c * c
    assert d_alpha(2.0, mass_kg=1.0, chi=0.5) == 0.5


def test_d_alpha_linear_exponent():
    # at alpha = 1 the coefficient is chi * c
    got = d_alpha(1.0)
    expected = 0.5 * constants.SPEED_OF_LIGHT
    assert abs(got - expected) / expected <= 1e-15


def test_linear_spectrum_is_proportional_to_n():
    well = WellSpec(1.0, 2e-9)
    e1 = energy_level(well, 1)
    for n in (2, 3, 7):
        ratio = energy_level(well, n) / e1
        assert abs(ratio - n) / n <= 1e-15


def test_ground_level_frozen_value():
    got = energy_level(WellSpec(2.0, 1e-9), 1)
    ref = fv.as_float(fv.E1_ALPHA2_1NM_J)
    assert abs(got - ref) / ref <= 1e-13


def test_reduced_gap_frozen_value():
    got = reduced_gap(WellSpec(2.0, 1e-9), ThermalContext(1.0))
    ref = fv.as_float(fv.THETA1_ALPHA2_1NM_1K)
    assert abs(got - ref) / ref <= 1e-13


def test_reduced_gap_scales_inversely_with_temperature():
    well = WellSpec(1.4, 5e-9)
    th1 = reduced_gap(well, ThermalContext(1.0))
    th4 = reduced_gap(well, ThermalContext(4.0))
    assert abs(th1 / th4 - 4.0) <= 1e-12


def test_levels_helper_matches_energy_level():
    well = WellSpec(1.8, 2e-9, divided=True)
    got = levels(well, 5)
    assert len(got) == 5
    assert all(isinstance(level, EnergyLevel) for level in got)
    assert [level.n for level in got] == [1, 2, 3, 4, 5]
    assert all(level.degeneracy == 2 for level in got)
    assert got[2].energy_j == energy_level(well, 3)


@pytest.mark.parametrize("alpha", [0.0, -0.5, 2.0000001, float("nan")])
def test_invalid_alpha_rejected(alpha):
    with pytest.raises(ValueError):
        WellSpec(alpha, 1e-9)
    with pytest.raises(ValueError):
        d_alpha(alpha)


@pytest.mark.parametrize("half_width", [0.0, -1e-9, float("inf"), float("nan")])
def test_invalid_half_width_rejected(half_width):
    with pytest.raises(ValueError):
        WellSpec(1.5, half_width)


def test_invalid_mass_and_chi_rejected():
    with pytest.raises(ValueError):
        WellSpec(1.5, 1e-9, mass_kg=0.0)
    with pytest.raises(ValueError):
        WellSpec(1.5, 1e-9, chi=-0.1)


@pytest.mark.parametrize("n", [0, -1])
def test_invalid_quantum_number_rejected(n):
    with pytest.raises(ValueError):
        energy_level(WellSpec(1.5, 1e-9), n)
    with pytest.raises(ValueError):
        levels(WellSpec(1.5, 1e-9), n)
