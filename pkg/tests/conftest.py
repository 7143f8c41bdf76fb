"""Shared random-instance generators and brute-force oracles."""

import numpy as np
from scipy.special import xlogy
from scipy.stats import unitary_group

import gausswork as gw


def random_unitary(rng, n):
    if n == 1:
        return np.array([[np.exp(1j * rng.uniform(0, 2 * np.pi))]])
    return unitary_group.rvs(n, random_state=rng)


def random_orthosymplectic(rng, n_modes):
    return gw.unitary_to_orthosymplectic(random_unitary(rng, n_modes))


def random_symplectic(rng, n_modes, r_max=1.0):
    o1 = random_orthosymplectic(rng, n_modes)
    o2 = random_orthosymplectic(rng, n_modes)
    rs = rng.uniform(-r_max, r_max, size=n_modes)
    return o1 @ gw.squeezer_direct_sum(rs) @ o2


def random_cm(rng, n_modes, nu_min=0.5, nu_max=3.0, r_max=1.0):
    s = random_symplectic(rng, n_modes, r_max=r_max)
    nu = rng.uniform(nu_min, nu_max, size=n_modes)
    cm = s @ np.diag(np.repeat(nu, 2)) @ s.T
    return 0.5 * (cm + cm.T)


def random_state(rng, n_modes, displaced=True, d_scale=1.0, **kwargs):
    d = rng.normal(scale=d_scale, size=2 * n_modes) if displaced else np.zeros(2 * n_modes)
    return gw.GaussianState(d, random_cm(rng, n_modes, **kwargs))


def random_free_cm(rng, n_modes, nu_max=3.0):
    nu = rng.uniform(0.5, nu_max, size=n_modes)
    return gw.free_cm(nu, random_orthosymplectic(rng, n_modes)).cm


def fock_relative_entropy(rho: gw.GaussianState, sigma: gw.GaussianState, dim=40):
    """Brute-force Tr[rho (ln rho - ln sigma)] in a truncated Fock basis."""
    r = gw.fock_from_gaussian(rho, dim).matrix
    s = gw.fock_from_gaussian(sigma, dim).matrix
    wr = np.clip(np.linalg.eigvalsh(r), 0.0, None)
    neg_entropy = float(np.sum(xlogy(wr, wr)))
    ws, vs = np.linalg.eigh(s)
    weights = np.real(np.diag(vs.conj().T @ r @ vs))
    ws = np.clip(ws, 1e-300, None)
    return neg_entropy - float(weights @ np.log(ws))


def fock_entropy(mat):
    w = np.clip(np.linalg.eigvalsh(mat), 0.0, None)
    return float(-np.sum(xlogy(w, w)))
