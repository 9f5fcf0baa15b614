"""Acceptance gate: the headline physics and engineering guarantees.

Each test delegates to one self-check from fracszilard.validation with
its acceptance-sized parameters, asserts it passed, and records one
PASS/FAIL line that pytest prints in its terminal summary.  The checks
themselves document their gates; the tolerances used here are:

1. oracle agreement on 20 random states: ln Z to 1e-12; mean energy,
   work and efficiency to 1e-10; oracle under 60 s, production loop
   under 1 s
2. closed-cycle energy audit on the full default grid (800 points),
   residual within 1e-10 * max(|W|, kB*T_hot) everywhere, under 5 s
3. standard-well work curve: one interior positive band, exactly one
   local maximum, |W(500 nm)| < 0.02 kB*T_hot
4. deep-quantum limit: W -> kB*(T_hot - T_cold)*ln 2 within 1e-4
5. slower-than-quadratic dispersion keeps work and efficiency above
   the quadratic case over box sizes 2 to 5 times past its optimum
6. efficiency never beats 1 - T_cold/T_hot (slack 1e-9)
7. finite-difference slope of ln Z vs beta matches the mean energy to
   1e-5 on 30 random states
8. default sweep CSV is byte-identical across repeat and across
   serial/threaded runs
"""

from fracszilard import validation


def _gate(record_criterion, number, result):
    mark = "PASS" if result.passed else "FAIL"
    record_criterion(f"[{mark}] criterion {number} ({result.name}): {result.detail}")
    assert result.passed, f"criterion {number} ({result.name}): {result.detail}"


def test_criterion_1_oracle_equivalence(record_criterion):
    _gate(record_criterion, 1,
          validation.check_oracle_equivalence(n_points=20, seed=0))


def test_criterion_2_first_law(record_criterion):
    _gate(record_criterion, 2, validation.check_first_law())


def test_criterion_3_work_curve_shape(record_criterion):
    _gate(record_criterion, 3, validation.check_work_curve_shape())


def test_criterion_4_two_state_limit(record_criterion):
    _gate(record_criterion, 4, validation.check_szilard_limit())


def test_criterion_5_fractional_persistence(record_criterion):
    _gate(record_criterion, 5, validation.check_fractional_persistence())


def test_criterion_6_carnot_bound(record_criterion):
    _gate(record_criterion, 6, validation.check_carnot())


def test_criterion_7_derivative_consistency(record_criterion):
    _gate(record_criterion, 7,
          validation.check_derivative_consistency(n_points=30, seed=7))


def test_criterion_8_determinism(record_criterion):
    _gate(record_criterion, 8, validation.check_determinism())
