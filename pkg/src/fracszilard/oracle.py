"""Arbitrary-precision reference implementation for validation.

Everything here is computed the slow, direct way with mpmath: energies
from the closed-form spectrum, partition functions by literally summing
g * exp(-beta * E_n) until the terms stop mattering at the working
precision, internal energies as the ratio of the weighted sum, and cycle
quantities from their defining expressions with no algebraic
rearrangement.  At 60 significant digits the catastrophic cancellation
that the production path engineers away is simply absorbed by precision,
which is what makes this an independent cross-check rather than a
restatement of the same algorithm.

Physical constants are rebuilt from their decimal definitions rather
than imported from the float-based constants module, so a transcription
error there would be caught, not inherited.  Float arguments are
converted exactly (binary to decimal), so oracle and production code are
evaluated at identical inputs.

This module is intentionally slow; it exists for the test suite and for
spot checks, not for sweeps.
"""

import mpmath

DEFAULT_DPS = 60

# Decimal definitions kept as strings; the working precision, not the
# float grid, decides how they round.
_PLANCK_STR = "6.62607015e-34"
_BOLTZMANN_STR = "1.380649e-23"
_SPEED_OF_LIGHT_STR = "299792458"

_TERM_BUDGET = 10**6
# Terms are summed until term < partial * _STOP_REL.
_STOP_REL = "1e-70"


def _constants():
    h = mpmath.mpf(_PLANCK_STR)
    hbar = h / (2 * mpmath.pi)
    kb = mpmath.mpf(_BOLTZMANN_STR)
    c = mpmath.mpf(_SPEED_OF_LIGHT_STR)
    return hbar, kb, c


def _energy(n_eff, alpha, half_width_m, mass_kg, chi):
    hbar, _, c = _constants()
    alpha = mpmath.mpf(float(alpha))
    a = mpmath.mpf(float(half_width_m))
    m = mpmath.mpf(float(mass_kg))
    chi = mpmath.mpf(float(chi))
    d = chi * m * c * c / (m * c) ** alpha
    k = n_eff * mpmath.pi * hbar / (2 * a)
    return d * k**alpha


def _boltzmann_sums(alpha, half_width_m, temperature_k, divided, mass_kg, chi):
    """(Z, sum of E_n * weight) by direct term-by-term summation."""
    _, kb, _ = _constants()
    beta = 1 / (kb * mpmath.mpf(float(temperature_k)))
    g = 2 if divided else 1
    stop_rel = mpmath.mpf(_STOP_REL)
    z = mpmath.mpf(0)
    ez = mpmath.mpf(0)
    for n in range(1, _TERM_BUDGET + 1):
        n_eff = 2 * n if divided else n
        e = _energy(n_eff, alpha, half_width_m, mass_kg, chi)
        term = g * mpmath.exp(-beta * e)
        z += term
        ez += e * term
        if n >= 4 and term < z * stop_rel:
            return z, ez
    raise RuntimeError(
        f"oracle sum did not settle within {_TERM_BUDGET} terms "
        f"(alpha={alpha}, a={half_width_m}, T={temperature_k})"
    )


def oracle_log_partition(
    alpha,
    half_width_m,
    temperature_k,
    divided=False,
    mass_kg=9.11e-31,
    chi=0.5,
    dps=DEFAULT_DPS,
):
    """ln Z by direct summation, as an mpmath float."""
    with mpmath.workdps(dps):
        z, _ = _boltzmann_sums(alpha, half_width_m, temperature_k, divided, mass_kg, chi)
        return mpmath.log(z)


def oracle_internal_energy(
    alpha,
    half_width_m,
    temperature_k,
    divided=False,
    mass_kg=9.11e-31,
    chi=0.5,
    dps=DEFAULT_DPS,
):
    """Mean energy in joules by direct summation, as an mpmath float."""
    with mpmath.workdps(dps):
        z, ez = _boltzmann_sums(alpha, half_width_m, temperature_k, divided, mass_kg, chi)
        return ez / z


def oracle_cycle(
    alpha,
    half_width_m,
    t_hot_k,
    t_cold_k,
    mass_kg=9.11e-31,
    chi=0.5,
    dps=DEFAULT_DPS,
):
    """Cycle heats, work and efficiency from the defining expressions.

    Returns a dict with mpmath values under keys q_ab, q_bc, q_cd, q_da,
    work, heat_in, and efficiency (None when the engine condition, both
    positive net work and positive absorbed heat, fails).
    """
    with mpmath.workdps(dps):
        _, kb, _ = _constants()
        th = mpmath.mpf(float(t_hot_k))
        tc = mpmath.mpf(float(t_cold_k))

        def corner(divided, temp):
            z, ez = _boltzmann_sums(alpha, half_width_m, temp, divided, mass_kg, chi)
            return mpmath.log(z), ez / z

        ln_za, ua = corner(False, th)
        ln_zb, ub = corner(True, th)
        ln_zc, uc = corner(True, tc)
        ln_zd, ud = corner(False, tc)
        q_ab = ub - ua + kb * th * (ln_zb - ln_za)
        q_bc = uc - ub
        q_cd = ud - uc + kb * tc * (ln_zd - ln_zc)
        q_da = ua - ud
        w = kb * th * (ln_zb - ln_za) - kb * tc * (ln_zc - ln_zd)
        heat_in = q_da + q_ab
        if w > 0 and heat_in > 0:
            eta = 1 + (q_bc + q_cd) / heat_in
        else:
            eta = None
        return {
            "q_ab": q_ab,
            "q_bc": q_bc,
            "q_cd": q_cd,
            "q_da": q_da,
            "work": w,
            "heat_in": heat_in,
            "efficiency": eta,
        }


def rel_err(value, reference):
    """|value - reference| / |reference| with mpmath-safe conversion."""
    ref = mpmath.mpf(reference) if not isinstance(reference, mpmath.mpf) else reference
    if ref == 0:
        return mpmath.mpf("inf") if mpmath.mpf(value) != 0 else mpmath.mpf(0)
    return abs((mpmath.mpf(value) - ref) / ref)


def spot_check(alpha, half_width_m, temperature_k, divided=False):
    """Print oracle ln Z and U for one configuration (debug helper)."""
    lz = oracle_log_partition(alpha, half_width_m, temperature_k, divided)
    u = oracle_internal_energy(alpha, half_width_m, temperature_k, divided)
    print(f"alpha={alpha} a={half_width_m} T={temperature_k} divided={divided}")
    print(f"  ln Z = {mpmath.nstr(lz, 30)}")
    print(f"  U    = {mpmath.nstr(u, 30)} J")
    return lz, u
