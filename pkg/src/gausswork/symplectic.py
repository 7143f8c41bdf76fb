"""Real symplectic linear algebra for multimode bosonic systems.

Conventions used throughout the package: quadratures are interleaved as
(q1, p1, ..., qN, pN), hbar = 1 and the vacuum covariance matrix is I/2.
The symplectic form is the direct sum of N copies of ``[[0, 1], [-1, 0]]``.
A matrix S is symplectic when S @ Omega @ S.T == Omega; it is in addition
orthogonal ("orthosymplectic") exactly when it represents a passive
(energy-preserving) Gaussian unitary, i.e. a linear interferometer.
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

import numpy as np
from scipy.linalg import schur

TOL_SYMP = 1e-10
TOL_PHYS = 1e-9
TOL_RECON = 1e-9
PAIR_TOL = 1e-8


def symplectic_form(n_modes: int) -> np.ndarray:
    """Return the 2N x 2N symplectic form for ``n_modes`` modes."""
    if n_modes < 1:
        raise ValueError(f"number of modes must be positive, got {n_modes}")
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


def rotation(phi: float) -> np.ndarray:
    """Phase-space action of a phase shifter by ``phi`` on one mode.

    Matches :func:`unitary_to_orthosymplectic` applied to the 1 x 1 unitary
    ``exp(1j * phi)``.
    """
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


def squeezer(r: float) -> np.ndarray:
    """Single-mode squeezer diag(e^r, e^-r)."""
    return np.diag([np.exp(r), np.exp(-r)])


def squeezer_direct_sum(rs: Sequence[float]) -> np.ndarray:
    """Direct sum of single-mode squeezers, one per mode."""
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    out = np.zeros((2 * rs.size, 2 * rs.size))
    for k, r in enumerate(rs):
        out[2 * k, 2 * k] = np.exp(r)
        out[2 * k + 1, 2 * k + 1] = np.exp(-r)
    return out


def _even_square(mat: np.ndarray, what: str) -> int:
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{what} must be a square matrix, got shape {mat.shape}")
    if mat.shape[0] % 2 != 0 or mat.shape[0] == 0:
        raise ValueError(f"{what} must have even positive dimension, got {mat.shape[0]}")
    return mat.shape[0] // 2


def is_symplectic(s: np.ndarray, tol: float = TOL_SYMP) -> bool:
    n = _even_square(s, "symplectic candidate")
    omega = symplectic_form(n)
    return bool(np.linalg.norm(s @ omega @ s.T - omega) < tol * max(1.0, np.linalg.norm(s) ** 2))


def is_orthosymplectic(o: np.ndarray, tol: float = TOL_SYMP) -> bool:
    n = _even_square(o, "orthosymplectic candidate")
    if np.linalg.norm(o @ o.T - np.eye(2 * n)) >= tol:
        return False
    return is_symplectic(o, tol)


class CMValidation(NamedTuple):
    valid: bool
    min_symplectic_eig: float


def validate_cm(mat: np.ndarray, tol_phys: float = TOL_PHYS, tol_symp: float = TOL_SYMP) -> CMValidation:
    """Check whether ``mat`` is a physical covariance matrix.

    Valid means: symmetric, positive definite and every symplectic
    eigenvalue at least 1/2 - tol_phys (the uncertainty relation).

    Raises:
        ValueError: if the matrix has odd dimension or is asymmetric
            beyond ``tol_symp`` (shape errors rather than physicality).
    """
    mat = np.asarray(mat, dtype=float)
    n = _even_square(mat, "covariance matrix")
    scale = max(1.0, np.linalg.norm(mat))
    if np.linalg.norm(mat - mat.T) >= tol_symp * scale:
        raise ValueError("covariance matrix is not symmetric")
    eigs = np.linalg.eigvalsh(mat)
    nu_min = float(np.min(np.abs(np.linalg.eigvals(symplectic_form(n) @ mat))))
    valid = bool(eigs[0] > 0.0 and nu_min >= 0.5 - tol_phys)
    return CMValidation(valid, nu_min)


def _sym_sqrt(cm: np.ndarray, min_eig: float = 1e-12) -> np.ndarray:
    w, v = np.linalg.eigh(cm)
    if w[0] < min_eig:
        raise ValueError(
            f"covariance matrix is singular or not positive definite (min eigenvalue {w[0]:.3e})"
        )
    return (v * np.sqrt(w)) @ v.T


def symplectic_eigenvalues(cm: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a positive-definite matrix, sorted descending.

    Computed from the skew-symmetric matrix cm^{1/2} @ Omega @ cm^{1/2},
    whose Hermitian companion 1j*K has eigenvalues +/- nu_k; this is
    numerically stable down to the pure-state boundary nu = 1/2.
    """
    cm = np.asarray(cm, dtype=float)
    n = _even_square(cm, "covariance matrix")
    root = _sym_sqrt(cm)
    k = root @ symplectic_form(n) @ root
    herm = 0.5j * (k - k.T)
    ev = np.linalg.eigvalsh(herm)
    return np.sort(ev)[::-1][:n].copy()


def symplectic_trace(cm: np.ndarray) -> float:
    """Twice the sum of the symplectic eigenvalues of ``cm``."""
    return float(2.0 * np.sum(symplectic_eigenvalues(cm)))


@dataclass(frozen=True, eq=False)
class WilliamsonDecomposition:
    """Factorisation cm = S @ diag(nu_1, nu_1, ..., nu_N, nu_N) @ S.T."""

    symplectic: np.ndarray
    nu: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(np.repeat(self.nu, 2))

    def reconstruct(self) -> np.ndarray:
        return self.symplectic @ self.diagonal @ self.symplectic.T


def williamson(cm: np.ndarray, tol_recon: float = TOL_RECON) -> WilliamsonDecomposition:
    """Williamson normal form of a positive-definite matrix.

    The skew-symmetric matrix cm^{1/2} @ Omega @ cm^{1/2} is brought to
    canonical form by a real Schur decomposition; the symplectic factor is
    assembled from its orthogonal basis.  Symplectic eigenvalues are sorted
    descending, ties broken by block index for reproducibility.

    Raises:
        ValueError: on near-singular input (min eigenvalue < 1e-12) or if
            the reconstruction residual exceeds ``tol_recon``.
    """
    cm = np.asarray(cm, dtype=float)
    n = _even_square(cm, "covariance matrix")
    root = _sym_sqrt(cm)
    k = root @ symplectic_form(n) @ root
    k = 0.5 * (k - k.T)
    t, q = schur(k, output="real")
    nu = np.empty(n)
    for i in range(n):
        b = 0.5 * (t[2 * i, 2 * i + 1] - t[2 * i + 1, 2 * i])
        if b < 0:
            q[:, [2 * i, 2 * i + 1]] = q[:, [2 * i + 1, 2 * i]]
            b = -b
        nu[i] = b
    order = np.argsort(-nu, kind="stable")
    nu = nu[order]
    col_order = np.empty(2 * n, dtype=int)
    col_order[0::2] = 2 * order
    col_order[1::2] = 2 * order + 1
    q = q[:, col_order]
    s = root @ q @ np.diag(np.repeat(nu, 2) ** -0.5)
    residual = np.linalg.norm(s @ np.diag(np.repeat(nu, 2)) @ s.T - cm)
    if residual > tol_recon * max(1.0, np.linalg.norm(cm)):
        raise ValueError(f"williamson reconstruction residual {residual:.3e} exceeds tolerance")
    return WilliamsonDecomposition(symplectic=s, nu=nu)


@dataclass(frozen=True, eq=False)
class BlochMessiahDecomposition:
    """Factorisation S = o_out @ squeezer_direct_sum(r) @ o_in.

    Both ``o_out`` and ``o_in`` are orthogonal symplectic (passive) and the
    squeezing parameters ``r`` are nonnegative, sorted descending.
    """

    o_out: np.ndarray
    r: np.ndarray
    o_in: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.o_out @ squeezer_direct_sum(self.r) @ self.o_in


def bloch_messiah(
    s: np.ndarray, tol_symp: float = TOL_SYMP, pair_tol: float = PAIR_TOL
) -> BlochMessiahDecomposition:
    """Bloch-Messiah (Euler) decomposition of a symplectic matrix.

    The symmetric factor of the polar decomposition of S is diagonalised in
    a symplectic orthonormal eigenbasis: for each singular value sigma > 1
    with eigenvector u, the partner column -Omega @ u carries 1/sigma.
    Singular values within ``pair_tol`` of 1 span a passive subspace that is
    absorbed into ``o_in``.

    Raises:
        ValueError: if the input is not symplectic within ``tol_symp`` or
            the singular values fail to pair as (sigma, 1/sigma).
    """
    s = np.asarray(s, dtype=float)
    n = _even_square(s, "symplectic matrix")
    if not is_symplectic(s, tol_symp):
        raise ValueError("input matrix is not symplectic within tolerance")
    omega = symplectic_form(n)
    lam, v = np.linalg.eigh(s @ s.T)
    sig = np.sqrt(np.clip(lam, 0.0, None))

    squeeze_idx = [i for i in range(2 * n) if sig[i] > 1.0 + pair_tol]
    unit_idx = [i for i in range(2 * n) if abs(sig[i] - 1.0) <= pair_tol]
    squeeze_idx.sort(key=lambda i: -sig[i])
    if 2 * len(squeeze_idx) + len(unit_idx) != 2 * n:
        raise ValueError("singular values do not pair as (sigma, 1/sigma); not symplectic?")

    cols = np.empty((2 * n, 2 * n))
    rs = np.empty(n)
    pair = 0
    for i in squeeze_idx:
        u = v[:, i]
        w = -omega @ u
        cols[:, 2 * pair] = u
        cols[:, 2 * pair + 1] = w / np.linalg.norm(w)
        rs[pair] = np.log(sig[i])
        pair += 1

    # Passive (sigma == 1) subspace: symplectic Gram-Schmidt.
    basis = v[:, unit_idx]
    while basis.shape[1] > 0:
        u = basis[:, 0] / np.linalg.norm(basis[:, 0])
        w = -omega @ u
        w = basis @ (basis.T @ w)
        w /= np.linalg.norm(w)
        cols[:, 2 * pair] = u
        cols[:, 2 * pair + 1] = w
        rs[pair] = 0.0
        pair += 1
        deflated = basis - np.outer(u, u @ basis) - np.outer(w, w @ basis)
        bu, bs, _ = np.linalg.svd(deflated, full_matrices=False)
        basis = bu[:, bs > 0.5]

    o_out = cols
    o_in = squeezer_direct_sum(-rs) @ o_out.T @ s
    return BlochMessiahDecomposition(o_out=o_out, r=rs, o_in=o_in)


def unitary_to_orthosymplectic(u: np.ndarray, tol: float = TOL_SYMP) -> np.ndarray:
    """Phase-space representation of a passive Gaussian unitary.

    The N x N unitary acting on annihilation operators maps to a 2N x 2N
    orthogonal symplectic matrix whose (i, j) block is
    ``[[Re u_ij, -Im u_ij], [Im u_ij, Re u_ij]]``.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary must be square, got shape {u.shape}")
    n = u.shape[0]
    if np.linalg.norm(u @ u.conj().T - np.eye(n)) >= max(tol, 1e3 * n * np.finfo(float).eps):
        raise ValueError("input matrix is not unitary within tolerance")
    o = np.empty((2 * n, 2 * n))
    o[0::2, 0::2] = u.real
    o[0::2, 1::2] = -u.imag
    o[1::2, 0::2] = u.imag
    o[1::2, 1::2] = u.real
    return o


@dataclass(frozen=True)
class BeamSplitter:
    """Beam splitter of angle ``theta`` acting on a mode pair."""

    theta: float
    modes: tuple


@dataclass(frozen=True)
class PhaseShifter:
    """Phase shifter of angle ``phi`` acting on one mode."""

    phi: float
    mode: int


@dataclass(frozen=True)
class PassiveCircuit:
    """Ordered linear-optics circuit; elements act on the state in list order."""

    n_modes: int
    elements: tuple = field(default_factory=tuple)


CircuitElement = Union[BeamSplitter, PhaseShifter]


def beam_splitter_matrix(theta: float, modes: tuple, n_modes: int) -> np.ndarray:
    i, j = modes
    if not (0 <= i < n_modes and 0 <= j < n_modes) or i == j:
        raise ValueError(f"beam splitter modes {modes} invalid for {n_modes} modes")
    c, s = np.cos(theta), np.sin(theta)
    out = np.eye(2 * n_modes)
    for a in range(2):
        out[2 * i + a, 2 * i + a] = c
        out[2 * j + a, 2 * j + a] = c
        out[2 * i + a, 2 * j + a] = s
        out[2 * j + a, 2 * i + a] = -s
    return out


def phase_shifter_matrix(phi: float, mode: int, n_modes: int) -> np.ndarray:
    if not 0 <= mode < n_modes:
        raise ValueError(f"phase shifter mode {mode} invalid for {n_modes} modes")
    out = np.eye(2 * n_modes)
    out[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = rotation(phi)
    return out


def compile_passive_circuit(circuit: PassiveCircuit) -> np.ndarray:
    """Compile a passive circuit to its orthogonal symplectic matrix.

    Elements are applied in list order, so the compiled matrix is the
    product M_last @ ... @ M_first.
    """
    out = np.eye(2 * circuit.n_modes)
    for element in circuit.elements:
        if isinstance(element, BeamSplitter):
            mat = beam_splitter_matrix(element.theta, tuple(element.modes), circuit.n_modes)
        elif isinstance(element, PhaseShifter):
            mat = phase_shifter_matrix(element.phi, element.mode, circuit.n_modes)
        else:
            raise ValueError(f"unknown circuit element {element!r}")
        out = mat @ out
    return out
