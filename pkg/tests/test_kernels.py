import math
import os
import subprocess
import sys

import mpmath
import numpy as np
import pytest

import frozen_values as fv
from fracszilard import kernels


def _mp_log_upper_gamma(s, x):
    with mpmath.workdps(60):
        return float(mpmath.log(mpmath.gammainc(mpmath.mpf(s), mpmath.mpf(x), mpmath.inf)))


@pytest.mark.parametrize("s", [0.5, 0.9, 1.0, 1.6, 2.5, 11.0, 100.0])
@pytest.mark.parametrize("x", [1e-4, 0.3, 1.0, 9.0, 120.0, 700.0, 1e5, 1e8])
def test_log_upper_gamma_against_mpmath(s, x):
    got = kernels.log_upper_gamma(s, x)
    ref = _mp_log_upper_gamma(s, x)
    assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))


def test_log_upper_gamma_at_zero_is_lgamma():
    # Gamma(s, 0) = Gamma(s); backends may use a different libm lgamma
    # than CPython, so allow a couple of ulp
    for s in (0.5, 1.0, 3.7, 42.0):
        got = kernels.log_upper_gamma(s, 0.0)
        ref = math.lgamma(s)
        assert abs(got - ref) <= 4 * abs(ref) * sys.float_info.epsilon + 5e-324


def test_log_upper_gamma_rejects_bad_arguments():
    with pytest.raises(ValueError):
        kernels.log_upper_gamma(0.0, 1.0)
    with pytest.raises(ValueError):
        kernels.log_upper_gamma(1.0, -1.0)
    with pytest.raises(ValueError):
        kernels.log_upper_gamma(1.0, float("nan"))


def _closed_form_sums_alpha1(theta):
    # at alpha = 1 the shifted series are geometric:
    # S0 = 1 / (1 - e^-theta), S1 = e^-theta / (1 - e^-theta)^2
    q = math.exp(-theta)
    return 1.0 / (1.0 - q), q / (1.0 - q) ** 2


@pytest.mark.parametrize("theta", [0.05, 0.4, 2.0, 15.0])
def test_alpha_one_closed_forms(theta):
    s0_ref, s1_ref = _closed_form_sums_alpha1(theta)
    s0, s1, _, _, ok = kernels.series_sums(theta, 1.0)
    assert ok
    assert abs(s0 - s0_ref) / s0_ref <= 1e-13
    assert abs(s1 - s1_ref) / max(s1_ref, 1e-300) <= 1e-13


def test_series_sums_frozen_moderate_case():
    s0, s1, n_used, tail_rel, ok = kernels.series_sums(fv.SERIES_THETA, fv.SERIES_ALPHA)
    assert ok
    assert abs(s0 - fv.as_float(fv.S0_FULL)) / fv.as_float(fv.S0_FULL) <= 1e-13
    assert abs(s1 - fv.as_float(fv.S1_FULL)) / fv.as_float(fv.S1_FULL) <= 1e-13
    assert tail_rel <= 1e-14


def test_tail_bound_brackets_true_tail():
    # rigorous upper bound, but not absurdly loose: within one decade
    log_b0, log_b1 = kernels.log_tail_bounds(fv.SERIES_THETA, fv.SERIES_ALPHA,
                                             fv.SERIES_N_CUT)
    for log_bound, true_tail in ((log_b0, fv.as_float(fv.S0_TRUE_TAIL)),
                                 (log_b1, fv.as_float(fv.S1_TRUE_TAIL))):
        ratio = math.exp(log_bound) / true_tail
        assert 1.0 < ratio < 10.0


def test_tail_bound_s1_component_honest_when_unprovable():
    # theta * (n^alpha - 1) <= 1 leaves the S1 integrand possibly rising,
    # so no finite claim may be made there
    log_b0, log_b1 = kernels.log_tail_bounds(0.5, 1.5, 1)
    assert math.isfinite(log_b0)
    assert math.isinf(log_b1)


def test_deep_quantum_stops_almost_immediately():
    # the scalar loop certifies right at the exponent gate; the chunked
    # path cannot stop before its first chunk boundary of 64 terms
    s0, s1, n_used, tail_rel, ok = kernels.series_sums(5e7, 0.6)
    assert ok
    assert n_used <= 64
    assert s0 == 1.0
    assert s1 == 0.0
    assert tail_rel <= 1e-14
    scalar = kernels.series_sums_python(5e7, 0.6, 1e-14, 10**7)
    assert scalar[2] == 2
    assert scalar[:2] == (s0, s1)


def test_cap_failure_reports_partials_and_bound():
    # alpha = 2 with a cap of 50 leaves a bounded but oversized tail
    s0, s1, n_used, tail_rel, ok = kernels.series_sums(0.005, 2.0, 1e-14, 50)
    assert not ok
    assert n_used == 50
    assert s0 > 1.0 and s1 > 0.0
    assert math.isfinite(tail_rel) and tail_rel > 1e-14


def test_cap_failure_with_unprovable_tail_reports_inf():
    # at the cap theta * (n^alpha - 1) < 2, so no rigorous bound exists
    s0, s1, n_used, tail_rel, ok = kernels.series_sums(1e-3, 0.5, 1e-14, 10**4)
    assert not ok
    assert n_used == 10**4
    assert math.isinf(tail_rel)


def test_results_are_deterministic():
    first = kernels.series_sums(0.5, 1.5)
    second = kernels.series_sums(0.5, 1.5)
    assert first == second


def test_backends_agree_across_regimes():
    rng = np.random.default_rng(42)
    checked = 0
    for _ in range(120):
        alpha = float(rng.uniform(0.3, 2.0))
        # stay inside the envelope where 1e7 terms certify the tail
        lo = math.log10(max(1e-2, 60.0 * (10**7) ** -alpha))
        theta = float(10 ** rng.uniform(lo, 7.0))
        ref = kernels.series_sums_numpy(theta, alpha, 1e-14, 10**7)
        if kernels.series_sums_numba is not None:
            got = kernels.series_sums_numba(theta, alpha, 1e-14, 10**7)
        else:
            got = kernels.series_sums_python(theta, alpha, 1e-14, 10**7)
        assert ref[4] and got[4], (theta, alpha)
        assert abs(got[0] - ref[0]) / ref[0] <= 1e-13
        assert abs(got[1] - ref[1]) <= 1e-13 * max(ref[1], ref[0])
        checked += 1
    assert checked == 120


def test_scalar_reference_matches_numpy_path():
    # the pure-python scalar path is the readable reference; the chunked
    # numpy path must reproduce it on a case small enough to run both
    ref = kernels.series_sums_python(0.5, 1.5, 1e-14, 10**5)
    got = kernels.series_sums_numpy(0.5, 1.5, 1e-14, 10**5)
    assert ref[4] and got[4]
    assert abs(got[0] - ref[0]) / ref[0] <= 1e-15
    assert abs(got[1] - ref[1]) / ref[1] <= 1e-14


def test_active_backend_is_reported():
    assert kernels.active_backend() in ("numba", "numpy")
    if kernels.HAS_NUMBA and not os.environ.get(kernels.BACKEND_ENV_VAR):
        assert kernels.active_backend() == "numba"


def test_argument_validation():
    with pytest.raises(ValueError):
        kernels.series_sums(0.0, 1.0)
    with pytest.raises(ValueError):
        kernels.series_sums(-1.0, 1.0)
    with pytest.raises(ValueError):
        kernels.series_sums(1.0, 0.0)
    with pytest.raises(ValueError):
        kernels.series_sums(1.0, 1.0, tol=1.0)
    with pytest.raises(ValueError):
        kernels.series_sums(1.0, 1.0, tol=0.0)
    with pytest.raises(ValueError):
        kernels.series_sums(1.0, 1.0, n_cap=1)
    with pytest.raises(ValueError):
        kernels.series_sums(float("inf"), 1.0)


def test_env_var_selects_numpy_backend():
    code = (
        "from fracszilard import kernels\n"
        "print(kernels.active_backend())\n"
        "print(kernels.series_sums(0.5, 1.5)[0])\n"
    )
    env = dict(os.environ, **{kernels.BACKEND_ENV_VAR: "numpy"})
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    backend, s0 = proc.stdout.split()
    assert backend == "numpy"
    ref = kernels.series_sums_numpy(0.5, 1.5, 1e-14, 10**7)
    assert float(s0) == ref[0]


def test_env_var_rejects_unknown_backend():
    env = dict(os.environ, **{kernels.BACKEND_ENV_VAR: "fortran"})
    proc = subprocess.run([sys.executable, "-c", "import fracszilard"], env=env,
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode != 0
    assert "FRACSZILARD_BACKEND" in proc.stderr
