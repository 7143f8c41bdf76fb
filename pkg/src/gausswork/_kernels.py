"""Hot Fock-space kernels: beam-splitter amplitudes in truncated bases.

The photon-number-conserving amplitude <m1, m| U_bs |n1, n> reduces to a
single alternating sum once the two Kronecker deltas are applied.  Terms
are evaluated in log space with explicit sign tracking so binomial factors
stay finite for photon numbers up to ~60.  Each kernel below exists in a
plain-numpy variant (the ``*_numpy`` name) and a numba-compiled variant
selected at import time; see gausswork._compat.
"""

import numpy as np

from ._compat import maybe_jit


def log_factorials(n_max: int) -> np.ndarray:
    """Table of log(k!) for k = 0..n_max."""
    out = np.zeros(n_max + 1)
    acc = 0.0
    for k in range(1, n_max + 1):
        acc += np.log(k)
        out[k] = acc
    return out


def _bs_amplitude_impl(m1, m, n1, n, eta, log_fact):
    if m1 + m != n1 + n:
        return 0.0
    if eta >= 1.0:
        return 1.0 if (m1 == n1 and m == n) else 0.0
    log_eta = np.log(eta)
    log_tau = 0.5 * np.log(1.0 - eta * eta)
    half_pref = 0.5 * (log_fact[m1] + log_fact[m] - log_fact[n1] - log_fact[n])
    acc = 0.0
    s_lo = m - n if m - n > 0 else 0
    s_hi = n1 if n1 < m else m
    for s in range(s_lo, s_hi + 1):
        t = m - s
        log_term = (
            log_fact[n1]
            - log_fact[s]
            - log_fact[n1 - s]
            + log_fact[n]
            - log_fact[t]
            - log_fact[n - t]
            + (n1 - s + t) * log_eta
            + (s + n - t) * log_tau
            + half_pref
        )
        sign = -1.0 if (n - t) % 2 == 1 else 1.0
        acc += sign * np.exp(log_term)
    return acc


def _bs_amplitude_diag_impl(m, n, eta, dim, log_fact):
    out = np.zeros(dim)
    for n1 in range(dim):
        m1 = n1 + n - m
        if 0 <= m1 < dim:
            out[n1] = bs_amplitude(m1, m, n1, n, eta, log_fact)
    return out


bs_amplitude_numpy = _bs_amplitude_impl
bs_amplitude = maybe_jit(_bs_amplitude_impl)


def _bs_amplitude_diag_numpy(m, n, eta, dim, log_fact):
    out = np.zeros(dim)
    for n1 in range(dim):
        m1 = n1 + n - m
        if 0 <= m1 < dim:
            out[n1] = bs_amplitude_numpy(m1, m, n1, n, eta, log_fact)
    return out


bs_amplitude_diag_numpy = _bs_amplitude_diag_numpy
bs_amplitude_diag = maybe_jit(_bs_amplitude_diag_impl)
