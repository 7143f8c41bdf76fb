"""Truncated Fock-space machinery: lossy-channel Kraus operators, Gaussian
post-selection, moment extraction and single-mode activity of non-Gaussian
states.

``eta`` is the *amplitude* transmittance throughout, matching the
beam-splitter amplitude split (eta, sqrt(1 - eta^2)); the intensity
transmittance is eta^2.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np
from scipy.linalg import expm
from scipy.special import xlogy

from ._kernels import bs_amplitude, bs_amplitude_diag, log_factorials
from .states import GaussianState, thermal_entropy
from .symplectic import validate_cm


@dataclass(frozen=True, eq=False)
class FockDensity:
    """Density matrix on a truncated Fock space (dim levels per mode)."""

    matrix: np.ndarray
    dim: int
    n_modes: int = 1

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        expected = self.dim**self.n_modes
        if mat.shape != (expected, expected):
            raise ValueError(f"matrix shape {mat.shape} does not match dim {self.dim}^{self.n_modes}")
        if np.linalg.norm(mat - mat.conj().T) > 1e-10 * max(1.0, np.linalg.norm(mat)):
            raise ValueError("density matrix is not Hermitian")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Thermal-loss Kraus operators K_{mn}, indexed by bath (out, in) photons."""

    operators: Dict[Tuple[int, int], np.ndarray]
    eta: float
    nbar_bath: float
    dim: int

    def completeness_diagonal(self) -> np.ndarray:
        """Diagonal of sum_K K^dag K; deviation from 1 is the truncation deficit."""
        total = np.zeros(self.dim)
        for op in self.operators.values():
            total += np.sum(np.abs(op) ** 2, axis=0)
        return total


@lru_cache(maxsize=None)
def _log_fact(n_max: int) -> np.ndarray:
    return log_factorials(n_max)


def bs_matrix_element(m1: int, m: int, n1: int, n: int, eta: float) -> float:
    """Amplitude <m1, m| U_bs(eta) |n1, n>; zero unless m1 + m == n1 + n."""
    for label, idx in (("m1", m1), ("m", m), ("n1", n1), ("n", n)):
        if idx < 0 or idx != int(idx):
            raise ValueError(f"photon number {label} must be a nonnegative integer, got {idx}")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"amplitude transmittance must lie in (0, 1], got {eta}")
    table = _log_fact(max(int(m1), int(m), int(n1), int(n), 1))
    return float(bs_amplitude(int(m1), int(m), int(n1), int(n), float(eta), table))


def thermal_loss_kraus(eta: float, nbar_bath: float, dim: int, max_mn: int) -> KrausSet:
    """Kraus operators of the thermal-loss channel in a dim-level truncation.

    K_{mn} = sqrt(p_n) <m| U_bs |n> with p_n the geometric bath weights;
    indices run over 0 <= m, n <= max_mn (operators with p_n = 0 are
    dropped, so nbar_bath = 0 reduces to the pure-loss set).
    """
    if dim < 2:
        raise ValueError(f"truncation dim must be at least 2, got {dim}")
    if max_mn < 0:
        raise ValueError(f"max_mn must be nonnegative, got {max_mn}")
    if max_mn > dim:
        raise ValueError(f"truncation dim {dim} too small for max_mn {max_mn}")
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"amplitude transmittance must lie in (0, 1], got {eta}")
    if nbar_bath < 0:
        raise ValueError(f"bath mean photon number must be nonnegative, got {nbar_bath}")
    x = nbar_bath / (nbar_bath + 1.0)
    table = _log_fact(dim + max_mn + 1)
    operators: Dict[Tuple[int, int], np.ndarray] = {}
    for n in range(max_mn + 1):
        p_n = (1.0 - x) * x**n
        if p_n == 0.0:
            continue
        root_p = math.sqrt(p_n)
        for m in range(max_mn + 1):
            amps = bs_amplitude_diag(m, n, float(eta), dim, table)
            op = np.zeros((dim, dim))
            n1 = np.arange(dim)
            m1 = n1 + n - m
            ok = (m1 >= 0) & (m1 < dim)
            op[m1[ok], n1[ok]] = root_p * amps[ok]
            operators[(m, n)] = op
    return KrausSet(operators=operators, eta=eta, nbar_bath=nbar_bath, dim=dim)


def apply_kraus_channel(rho: FockDensity, kraus: KrausSet):
    """Apply sum_K K rho K^dag; returns the output and the completeness deficit.

    The deficit is the operator norm of I - sum K^dag K restricted to the
    sub-block where the input has support (diagonal weight > 1e-12).
    """
    if rho.n_modes != 1 or rho.matrix.shape[0] != kraus.dim:
        raise ValueError("input dimension does not match the Kraus set")
    out = np.zeros_like(rho.matrix)
    comp = np.zeros((kraus.dim, kraus.dim), dtype=complex)
    for op in kraus.operators.values():
        out += op @ rho.matrix @ op.conj().T
        comp += op.conj().T @ op
    support = np.where(np.real(np.diag(rho.matrix)) > 1e-12)[0]
    if support.size:
        block = (np.eye(kraus.dim) - comp)[np.ix_(support, support)]
        deficit = float(np.linalg.norm(block, 2))
    else:
        deficit = 0.0
    return FockDensity(out, dim=kraus.dim), deficit


def phase_space_loss_channel(state: GaussianState, eta: float, nbar_bath: float) -> GaussianState:
    """Thermal-loss map on covariances: cm -> eta^2 cm + (1 - eta^2)(nbar + 1/2) I."""
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"amplitude transmittance must lie in (0, 1], got {eta}")
    if nbar_bath < 0:
        raise ValueError(f"bath mean photon number must be nonnegative, got {nbar_bath}")
    dim = state.cm.shape[0]
    cm = eta**2 * state.cm + (1.0 - eta**2) * (nbar_bath + 0.5) * np.eye(dim)
    return GaussianState(eta * state.displacement, cm)


def gaussian_postselect(state: GaussianState, measured, gamma_meas: np.ndarray) -> GaussianState:
    """Condition on a Gaussian measurement outcome of the ``measured`` modes.

    The kept covariance is the Schur complement
    cm_AA - cm_AB (cm_BB + gamma_meas)^{-1} cm_AB^T; the conditional mean
    uses outcome zero, extending the zero-displacement case.
    """
    measured = sorted(set(int(m) for m in measured))
    keep = [m for m in range(state.n_modes) if m not in measured]
    if not measured or not keep:
        raise ValueError("measurement must cover a nonempty strict subset of modes")
    gamma_meas = np.asarray(gamma_meas, dtype=float)
    if gamma_meas.shape != (2 * len(measured), 2 * len(measured)):
        raise ValueError("measurement covariance has wrong dimension")
    if not validate_cm(gamma_meas).valid:
        raise ValueError("measurement covariance is unphysical")

    def idx(modes):
        out = np.empty(2 * len(modes), dtype=int)
        out[0::2] = [2 * m for m in modes]
        out[1::2] = [2 * m + 1 for m in modes]
        return out

    ia, ib = idx(keep), idx(measured)
    cm_aa = state.cm[np.ix_(ia, ia)]
    cm_ab = state.cm[np.ix_(ia, ib)]
    cm_bb = state.cm[np.ix_(ib, ib)]
    gate = cm_bb + gamma_meas
    if np.linalg.cond(gate) > 1e12:
        raise ValueError("measured block plus outcome covariance is ill-conditioned")
    gain = cm_ab @ np.linalg.inv(gate)
    cm_new = cm_aa - gain @ cm_ab.T
    d_new = state.displacement[ia] + gain @ (np.zeros(ib.size) - state.displacement[ib])
    return GaussianState(d_new, 0.5 * (cm_new + cm_new.T))


def annihilation(dim: int) -> np.ndarray:
    out = np.zeros((dim, dim))
    for n in range(1, dim):
        out[n - 1, n] = math.sqrt(n)
    return out


def fock_number_state(n: int, dim: int) -> FockDensity:
    if not 0 <= n < dim:
        raise ValueError(f"number state {n} does not fit in dim {dim}")
    mat = np.zeros((dim, dim))
    mat[n, n] = 1.0
    return FockDensity(mat, dim=dim)


def fock_thermal(nbar: float, dim: int) -> FockDensity:
    if nbar < 0:
        raise ValueError(f"mean photon number must be nonnegative, got {nbar}")
    if nbar == 0:
        return fock_number_state(0, dim)
    x = nbar / (nbar + 1.0)
    weights = (1.0 - x) * x ** np.arange(dim)
    return FockDensity(np.diag(weights), dim=dim)


def fock_from_gaussian(state: GaussianState, dim: int) -> FockDensity:
    """Fock representation of a single-mode Gaussian state.

    Built as displaced, rotated, squeezed thermal via matrix exponentials in
    a padded working dimension, then cropped; truncation leak therefore
    shows up as a trace below 1 (check ``.trace``).
    """
    if state.n_modes != 1:
        raise ValueError("fock conversion implemented for single-mode states")
    from .symplectic import bloch_messiah, williamson

    dec = williamson(state.cm)
    nu = float(dec.nu[0])
    bm = bloch_messiah(dec.symplectic)
    psi = math.atan2(bm.o_out[1, 0], bm.o_out[0, 0])
    r = float(bm.r[0])

    work = max(2 * dim, dim + 32)
    a = annihilation(work)
    adag = a.T
    rho = fock_thermal(nu - 0.5, work).matrix.astype(complex)
    if r != 0.0:
        usq = expm(0.5 * r * (adag @ adag - a @ a))
        rho = usq @ rho @ usq.conj().T
    if psi != 0.0:
        urot = expm(1j * psi * (adag @ a))
        rho = urot @ rho @ urot.conj().T
    d = state.displacement
    alpha = (d[0] + 1j * d[1]) / math.sqrt(2.0)
    if alpha != 0:
        disp = expm(alpha * adag - np.conj(alpha) * a)
        rho = disp @ rho @ disp.conj().T
    return FockDensity(rho[:dim, :dim], dim=dim)


def fock_moments(rho: FockDensity):
    """First and second quadrature moments (d, cm) of a single-mode density."""
    if rho.n_modes != 1:
        raise ValueError("moment extraction implemented for single-mode states")
    dim = rho.dim
    a = annihilation(dim)
    mat = rho.matrix
    tr = np.real(np.trace(mat))
    mean_a = np.trace(mat @ a) / tr
    mean_aa = np.trace(mat @ a @ a) / tr
    mean_n = np.real(np.trace(mat @ (a.T @ a))) / tr
    d = math.sqrt(2.0) * np.array([mean_a.real, mean_a.imag])
    qq = mean_aa.real + mean_n + 0.5 - d[0] ** 2
    pp = -mean_aa.real + mean_n + 0.5 - d[1] ** 2
    qp = mean_aa.imag - d[0] * d[1]
    return d, np.array([[qq, qp], [qp, pp]])


def fock_single_mode_activity(rho: FockDensity, leak_tol: float = 1e-6) -> float:
    """Activity of an arbitrary single-mode state: -S(rho) + g(nbar + 1/2)."""
    if rho.n_modes != 1:
        raise ValueError("single-mode activity requires a single-mode density")
    leak = abs(1.0 - rho.trace)
    if leak > leak_tol:
        raise ValueError(f"truncation leak {leak:.3e} exceeds tolerance {leak_tol:.1e}")
    evals = np.clip(np.linalg.eigvalsh(rho.matrix), 0.0, None)
    entropy = float(-np.sum(xlogy(evals, evals)))
    nbar = float(np.real(np.diag(rho.matrix)) @ np.arange(rho.dim))
    return -entropy + float(thermal_entropy(nbar + 0.5))


def fock_postselect_demo(dim: int = 8):
    """Send |1, 1> through a 50:50 beam splitter and keep vacuum on arm two.

    Returns the conditional output (the two-photon state), the success
    probability 1/2, and the activity gain g(5/2) - g(3/2).
    """
    eta = 1.0 / math.sqrt(2.0)
    amps = np.array([bs_matrix_element(m1, 0, 1, 1, eta) for m1 in range(dim)])
    probability = float(amps @ amps)
    vec = amps / math.sqrt(probability)
    output = FockDensity(np.outer(vec, vec), dim=dim)
    gain = float(thermal_entropy(2.5) - thermal_entropy(1.5))
    return output, probability, gain
