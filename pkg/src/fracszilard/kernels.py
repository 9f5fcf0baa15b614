"""Series kernels for the shifted Boltzmann sums over a power-law spectrum.

The thermodynamic layer reduces every partition-function evaluation to two
dimensionless sums over the level index n,

    S0(theta, alpha) = sum_{n>=1} exp(-theta * (n**alpha - 1))
    S1(theta, alpha) = sum_{n>=1} (n**alpha - 1) * exp(-theta * (n**alpha - 1))

with theta > 0 the Boltzmann exponent of the ground level.  Shifting by the
n = 1 term keeps both sums O(1) in the deep-quantum regime (theta >> 1),
where the unshifted series underflows in double precision.

Truncation is certified, not heuristic.  Summation stops only once an
integral tail bound, an upper incomplete gamma evaluated in log space,
certifies that the discarded remainder of S0 and of S1 is below tol * S0.
If no such certificate is reached within n_cap terms the kernel returns
ok=False together with the partial sums and the best bound it had.

Two interchangeable implementations are provided:

* series_sums_numba: scalar loop compiled with numba (None if numba is
  not installed),
* series_sums_numpy: chunked vectorised evaluation in plain numpy.

The public entry point ``series_sums`` validates arguments and dispatches
to the backend bound at import time.  Set the environment variable
``FRACSZILARD_BACKEND`` to ``numba`` or ``numpy`` to force the choice;
when unset, numba is used if available.

Compensated (Neumaier) accumulation is used on both paths.  Do not enable
fastmath on the numba kernels: it licenses the reassociation that the
compensation depends on.
"""

import math
import os

import numpy as np

from .constants import DEFAULT_TERM_CAP, DEFAULT_TOLERANCE

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAS_NUMBA = False

BACKEND_ENV_VAR = "FRACSZILARD_BACKEND"

_EPS = 1e-16
_FPMIN = 1e-300
_ITMAX = 3000


def _log_upper_gamma_impl(s, x):
    """log of the upper incomplete gamma function Gamma(s, x), s > 0, x >= 0.

    Series for the regularised lower function when x < s + 1, modified
    Lentz continued fraction otherwise.  Both branches work in log space,
    so arguments of order 1e8 (values near exp(-1e8)) neither overflow
    nor underflow.  Returns +inf if the inner iteration fails to
    converge; callers use the result as an upper bound, and +inf keeps a
    non-converged evaluation conservative.
    """
    if x <= 0.0:
        return math.lgamma(s)
    if x < s + 1.0:
        # regularised lower series, then Gamma(s,x) = Gamma(s) * (1 - P)
        ap = s
        total = 1.0 / s
        delt = total
        converged = False
        for _ in range(_ITMAX):
            ap += 1.0
            delt *= x / ap
            total += delt
            if abs(delt) < abs(total) * _EPS:
                converged = True
                break
        if not converged:
            return math.inf
        log_p = -x + s * math.log(x) - math.lgamma(s) + math.log(total)
        # x < s + 1 keeps P clear of 1, so log1p keeps full precision
        return math.lgamma(s) + math.log1p(-math.exp(log_p))
    # modified Lentz continued fraction for the upper function
    b = x + 1.0 - s
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    converged = False
    for i in range(1, _ITMAX + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delt = d * c
        h *= delt
        if abs(delt - 1.0) < _EPS:
            converged = True
            break
    if not converged:
        return math.inf
    return -x + s * math.log(x) + math.log(h)


# Module global referenced from inside the series kernels.  Rebound to the
# jitted version below before the kernels are compiled, so the numba kernel
# resolves it to a Dispatcher and the python paths call the same code.
_IMPL_GAMMA = _log_upper_gamma_impl


def _series_sums_impl(theta, alpha, tol, n_cap):
    """Scalar evaluation of the shifted sums with certified truncation.

    Returns (s0, s1, n_used, tail_rel, ok).  tail_rel is the certified
    bound on the discarded tail of either sum relative to S0, or +inf
    when no rigorous bound was established before n_cap.
    """
    inv_alpha = 1.0 / alpha
    log_theta = math.log(theta)
    log_alpha = math.log(alpha)
    log_tol = math.log(tol)
    # Tail checks are attempted only past this exponent: terms are below
    # tol there, and u > 1 makes the S1 integrand provably decreasing,
    # which the integral bound for S1 requires.
    u_gate = max(2.0, -log_tol)
    s0 = 0.0
    c0 = 0.0
    s1 = 0.0
    c1 = 0.0
    n = 0
    next_check = 2
    while n < n_cap:
        n += 1
        v = float(n) ** alpha - 1.0
        u = theta * v
        t = math.exp(-u)
        tmp = s0 + t
        if s0 >= t:
            c0 += (s0 - tmp) + t
        else:
            c0 += (t - tmp) + s0
        s0 = tmp
        w = v * t
        tmp = s1 + w
        if s1 >= w:
            c1 += (s1 - tmp) + w
        else:
            c1 += (w - tmp) + s1
        s1 = tmp
        if n >= next_check and u >= u_gate:
            s0_tot = s0 + c0
            log_s0 = math.log(s0_tot)
            x = theta * float(n) ** alpha
            log_ds0 = theta + _IMPL_GAMMA(inv_alpha, x) - log_alpha - inv_alpha * log_theta
            log_ds1 = (
                theta
                + _IMPL_GAMMA(1.0 + inv_alpha, x)
                - log_alpha
                - (1.0 + inv_alpha) * log_theta
            )
            worst = max(log_ds0, log_ds1)
            if worst <= log_tol + log_s0:
                return s0_tot, s1 + c1, n, math.exp(worst - log_s0), True
            next_check = n + max(8, n >> 5)
    s0_tot = s0 + c0
    s1_tot = s1 + c1
    tail_rel = math.inf
    u_cap = theta * (float(n_cap) ** alpha - 1.0)
    if u_cap >= 2.0:
        x = theta * float(n_cap) ** alpha
        log_ds0 = theta + _IMPL_GAMMA(inv_alpha, x) - log_alpha - inv_alpha * log_theta
        log_ds1 = (
            theta
            + _IMPL_GAMMA(1.0 + inv_alpha, x)
            - log_alpha
            - (1.0 + inv_alpha) * log_theta
        )
        tail_rel = math.exp(max(log_ds0, log_ds1) - math.log(s0_tot))
    return s0_tot, s1_tot, n_cap, tail_rel, False


series_sums_python = _series_sums_impl

if HAS_NUMBA:
    _IMPL_GAMMA = numba.njit(cache=True, nogil=True)(_log_upper_gamma_impl)
    series_sums_numba = numba.njit(cache=True, nogil=True)(_series_sums_impl)
else:  # pragma: no cover - exercised only without numba
    series_sums_numba = None


def log_upper_gamma(s, x):
    """log Gamma(s, x) for s > 0, x >= 0 (upper incomplete gamma)."""
    if not (s > 0.0) or not math.isfinite(s):
        raise ValueError(f"s must be positive and finite, got {s}")
    if not (x >= 0.0) or not math.isfinite(x):
        raise ValueError(f"x must be nonnegative and finite, got {x}")
    return _IMPL_GAMMA(s, x)


def log_tail_bounds(theta, alpha, n_terms):
    """Log-space integral bounds on the tails of S0 and S1 past n_terms.

    Returns (log_s0_tail, log_s1_tail) bounding the shifted sums

        sum_{n > n_terms} exp(-theta * (n**alpha - 1))
        sum_{n > n_terms} (n**alpha - 1) * exp(-theta * (n**alpha - 1))

    from above.  The S0 bound holds for any n_terms >= 1.  The S1 bound
    requires the integrand to be decreasing past n_terms, which holds for
    theta * (n_terms**alpha - 1) > 1; outside that region +inf is
    returned for the S1 component rather than an unproven number.
    """
    if not (theta > 0.0) or not math.isfinite(theta):
        raise ValueError(f"theta must be positive and finite, got {theta}")
    if not (alpha > 0.0) or not math.isfinite(alpha):
        raise ValueError(f"alpha must be positive and finite, got {alpha}")
    n_terms = int(n_terms)
    if n_terms < 1:
        raise ValueError(f"n_terms must be at least 1, got {n_terms}")
    inv_alpha = 1.0 / alpha
    log_theta = math.log(theta)
    log_alpha = math.log(alpha)
    x = theta * float(n_terms) ** alpha
    log_s0_tail = theta + _IMPL_GAMMA(inv_alpha, x) - log_alpha - inv_alpha * log_theta
    if theta * (float(n_terms) ** alpha - 1.0) > 1.0:
        log_s1_tail = (
            theta
            + _IMPL_GAMMA(1.0 + inv_alpha, x)
            - log_alpha
            - (1.0 + inv_alpha) * log_theta
        )
    else:
        log_s1_tail = math.inf
    return log_s0_tail, log_s1_tail


_CHUNK_FIRST = 64
_CHUNK_MAX = 1 << 20


def _neumaier_add(total, comp, value):
    """One compensated-summation step for nonnegative addends.

    Returns the updated (total, comp).  The magnitude test is unsigned
    because every partial sum and term in this module is >= 0.
    """
    tmp = total + value
    if total >= value:
        comp += (total - tmp) + value
    else:
        comp += (value - tmp) + total
    return tmp, comp


def series_sums_numpy(theta, alpha, tol, n_cap):
    """Chunked vectorised evaluation of the shifted sums (numpy fallback).

    Same contract and the same certified stopping rule as the scalar
    kernel.  The stopping rule is only evaluated at chunk boundaries, so
    n_used may overshoot the scalar kernel's stopping point by up to one
    chunk; the returned sums then differ below the certified tolerance.
    """
    inv_alpha = 1.0 / alpha
    log_theta = math.log(theta)
    log_alpha = math.log(alpha)
    log_tol = math.log(tol)
    u_gate = max(2.0, -log_tol)
    s0 = 0.0
    c0 = 0.0
    s1 = 0.0
    c1 = 0.0
    start = 1
    chunk = _CHUNK_FIRST
    while start <= n_cap:
        stop = min(start + chunk - 1, n_cap)
        ns = np.arange(start, stop + 1, dtype=np.float64)
        vs = ns**alpha - 1.0
        ts = np.exp(-theta * vs)
        s0, c0 = _neumaier_add(s0, c0, float(ts.sum()))
        s1, c1 = _neumaier_add(s1, c1, float((vs * ts).sum()))
        u_end = theta * (float(stop) ** alpha - 1.0)
        if u_end >= u_gate:
            s0_tot = s0 + c0
            log_s0 = math.log(s0_tot)
            x = theta * float(stop) ** alpha
            log_ds0 = theta + _IMPL_GAMMA(inv_alpha, x) - log_alpha - inv_alpha * log_theta
            log_ds1 = (
                theta
                + _IMPL_GAMMA(1.0 + inv_alpha, x)
                - log_alpha
                - (1.0 + inv_alpha) * log_theta
            )
            worst = max(log_ds0, log_ds1)
            if worst <= log_tol + log_s0:
                return s0_tot, s1 + c1, stop, math.exp(worst - log_s0), True
        start = stop + 1
        chunk = min(chunk * 4, _CHUNK_MAX)
    s0_tot = s0 + c0
    s1_tot = s1 + c1
    tail_rel = math.inf
    u_cap = theta * (float(n_cap) ** alpha - 1.0)
    if u_cap >= 2.0:
        log_ds0, log_ds1 = log_tail_bounds(theta, alpha, n_cap)
        tail_rel = math.exp(max(log_ds0, log_ds1) - math.log(s0_tot))
    return s0_tot, s1_tot, n_cap, tail_rel, False


def _select_backend():
    choice = os.environ.get(BACKEND_ENV_VAR, "").strip().lower()
    if choice == "numba":
        if not HAS_NUMBA:
            raise ImportError(
                f"{BACKEND_ENV_VAR}=numba requested but numba is not importable"
            )
        return "numba"
    if choice == "numpy":
        return "numpy"
    if choice == "":
        return "numba" if HAS_NUMBA else "numpy"
    raise ValueError(
        f"{BACKEND_ENV_VAR} must be 'numba' or 'numpy', got {choice!r}"
    )


_ACTIVE_BACKEND = _select_backend()
_series_sums_raw = series_sums_numba if _ACTIVE_BACKEND == "numba" else series_sums_numpy


def active_backend():
    """Name of the kernel implementation bound at import: numba or numpy."""
    return _ACTIVE_BACKEND


def series_sums(theta, alpha, tol=DEFAULT_TOLERANCE, n_cap=DEFAULT_TERM_CAP):
    """Shifted spectral sums S0 and S1 with a certified relative tail.

    Parameters
    ----------
    theta : float
        Boltzmann exponent of the ground level, beta * E_1.  Must be
        positive and finite.
    alpha : float
        Spectral exponent, E_n proportional to n**alpha.  Must be
        positive and finite; the physical layer restricts it further.
    tol : float
        Relative tail budget.  Both discarded tails are certified to be
        below tol * S0 on success.
    n_cap : int
        Hard cap on the number of terms.

    Returns
    -------
    tuple
        (s0, s1, n_used, tail_rel, ok).  When ok is False the sums are
        the partial values at n_cap and tail_rel is the best certified
        relative bound (+inf if none could be established).
    """
    if not math.isfinite(theta) or theta <= 0.0:
        raise ValueError(f"theta must be positive and finite, got {theta}")
    if not math.isfinite(alpha) or alpha <= 0.0:
        raise ValueError(f"alpha must be positive and finite, got {alpha}")
    if not (0.0 < tol < 1.0):
        raise ValueError(f"tol must lie in (0, 1), got {tol}")
    n_cap = int(n_cap)
    if n_cap < 2:
        raise ValueError(f"n_cap must be at least 2, got {n_cap}")
    return _series_sums_raw(theta, alpha, float(tol), n_cap)
