"""Distillation demonstrations and the two-copy no-go processing.

Two copies of a single-mode state processed through any beam splitter and
phase shifters can never gain activity or extractable work in either output
arm; two copies of a suitable two-mode state can.  The fixed demonstration
feeds two copies of (squeezed thermal) x (vacuum) through the four-mode
discrete-Fourier interferometer and reads off the first two output modes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .activity import local_activity
from .states import GaussianState, apply_gaussian_unitary, partial_trace, tensor
from .symplectic import unitary_to_orthosymplectic, validate_cm
from .work import quadratic_work


@dataclass(frozen=True, eq=False)
class DistillationOutcome:
    input_value: float
    output_value: float
    circuit: np.ndarray
    output_state: GaussianState


def _phase_rot(phi: float) -> np.ndarray:
    # Clockwise convention matching the two-copy processing formula.
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, s], [-s, c]])


def process_two_copies_single_mode(gamma: np.ndarray, theta: float, phis) -> tuple:
    """Local output covariances of (gamma ⊕ gamma) through BS(theta) + phases.

    Returns (gamma1', gamma2') with
    R1^T gamma1' R1 = cos^2(theta) R3 gamma R3^T + sin^2(theta) R4 gamma R4^T
    and the mirrored combination for the second arm.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (2, 2):
        raise ValueError(f"expected a single-mode (2x2) covariance matrix, got {gamma.shape}")
    check = validate_cm(gamma)
    if not check.valid:
        raise ValueError(
            f"invalid covariance matrix (min symplectic eigenvalue {check.min_symplectic_eig:.6g})"
        )
    phi1, phi2, phi3, phi4 = (float(p) for p in phis)
    r1, r2, r3, r4 = (_phase_rot(p) for p in (phi1, phi2, phi3, phi4))
    c2, s2 = np.cos(theta) ** 2, np.sin(theta) ** 2
    mixed3 = r3 @ gamma @ r3.T
    mixed4 = r4 @ gamma @ r4.T
    gamma1 = r1 @ (c2 * mixed3 + s2 * mixed4) @ r1.T
    gamma2 = r2 @ (s2 * mixed3 + c2 * mixed4) @ r2.T
    return gamma1, gamma2


def dft_unitary(n: int) -> np.ndarray:
    """Discrete-Fourier interferometer u_jk = exp(-2 pi i j k / n) / sqrt(n)."""
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(-2j * np.pi * j * k / n) / math.sqrt(n)


def activity_distillation_demo() -> DistillationOutcome:
    """Two copies of (squeezed thermal) x (vacuum) through the 4-mode DFT.

    The first two output modes form a state strictly more active than one
    input copy.
    """
    copy_cm = 0.5 * np.diag([1.0, 16.0, 1.0, 1.0])
    copy = GaussianState(np.zeros(4), copy_cm)
    passive = unitary_to_orthosymplectic(dft_unitary(4))
    processed = apply_gaussian_unitary(tensor([copy, copy]), passive)
    output = partial_trace(processed, [0, 1])
    return DistillationOutcome(
        input_value=local_activity(copy).value,
        output_value=local_activity(output).value,
        circuit=passive,
        output_state=output,
    )


def work_swap_demo(gamma_a: np.ndarray, gamma_b: np.ndarray) -> DistillationOutcome:
    """Concentrate work by swapping the middle modes of two (A ⊕ B) copies.

    Requires W(gamma_a) > W(gamma_b); the first output pair (A ⊕ A) then
    holds more work than one input copy (A ⊕ B).
    """
    gamma_a = np.asarray(gamma_a, dtype=float)
    gamma_b = np.asarray(gamma_b, dtype=float)
    wa, wb = quadratic_work(gamma_a), quadratic_work(gamma_b)
    if not wa > wb:
        raise ValueError(f"swap gains nothing: W(A) = {wa:.6g} <= W(B) = {wb:.6g}")
    copy = GaussianState(np.zeros(4), np.block([
        [gamma_a, np.zeros((2, 2))],
        [np.zeros((2, 2)), gamma_b],
    ]))
    both = tensor([copy, copy])
    # Swap modes 1 and 2 (a theta = pi/2 beam splitter up to phases).
    perm = np.eye(8)[:, [0, 1, 4, 5, 2, 3, 6, 7]]
    swapped = apply_gaussian_unitary(both, perm.T)
    first_pair = partial_trace(swapped, [0, 1])
    return DistillationOutcome(
        input_value=quadratic_work(copy.cm),
        output_value=quadratic_work(first_pair.cm),
        circuit=perm.T,
        output_state=first_pair,
    )


def conversion_rate_bound(rho: GaussianState, sigma: GaussianState, atol: float = 1e-9) -> float:
    """Upper bound A(rho)/A(sigma) on the copies-out-per-copies-in rate.

    Returns +inf when the target activity is below ``atol`` (unbounded).
    """
    target = local_activity(sigma).value
    source = local_activity(rho).value
    if target <= atol:
        return math.inf
    return source / target
