"""Cartan (KAK) decomposition of two-qubit unitaries.

Any U in U(4) factors as U = e^{i phi} L A K with L, K local (a tensor
product of one-qubit unitaries) and A = exp(-i sum_j theta_j sigma_j x
sigma_j) carrying all the entangling power. The working representation is
the magic basis, the Bell states with phases chosen so that local unitaries
become *real orthogonal* matrices and A becomes diagonal,

    A -> diag(e^{-i lambda_1}, ..., e^{-i lambda_4}),

with the linear relations

    lambda_1 =  theta_x - theta_y + theta_z
    lambda_2 = -theta_x + theta_y + theta_z
    lambda_3 = -theta_x - theta_y - theta_z
    lambda_4 =  theta_x + theta_y - theta_z

(so the lambdas always sum to 0 mod 2*pi). The algorithm follows the
classic route: with Utilde the magic-basis image of U stripped to SU(4),
the product Utilde^T Utilde equals Ktilde^T Atilde^2 Ktilde, so its real
orthogonal eigensystem delivers Atilde^2 and Ktilde at once, and
Ltilde = Utilde (Atilde Ktilde)^{-1} closes the factorization.

The canonical coordinates are the thetas folded into the chamber
pi/4 >= theta_x >= theta_y >= theta_z >= 0 by the pi/2 periodicity and the
theta -> pi/2 - theta reflection symmetry of the entangling class.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentLambdas, ReconstructionFailure, WrongModelClass
from .model import HamiltonianModel
from .propagator import _require_z_aligned, _sin_ratio, block_frequencies
from .qmat import eig_complex_symmetric_unitary, max_abs_diff, unitary4
from .tolerances import TOL

#: Columns are the magic-basis states, ordered and phased to match the
#: lambda conventions above:
#:   |1> = (|00> + |11>)/sqrt2,  |2> = i(|00> - |11>)/sqrt2,
#:   |3> = (|01> - |10>)/sqrt2,  |4> = i(|01> + |10>)/sqrt2.
MAGIC = np.array(
    [
        [1, 1j, 0, 0],
        [0, 0, 1, 1j],
        [0, 0, -1, 1j],
        [1, -1j, 0, 0],
    ],
    dtype=complex,
) / math.sqrt(2)

_MAGIC_CONJ_T = MAGIC.conj().T


def magic_state(index: int) -> np.ndarray:
    """The ``index``-th (1-based) magic-basis state as a column vector."""
    if index not in (1, 2, 3, 4):
        raise ValueError(f"magic state index must be 1..4, got {index}")
    return MAGIC[:, index - 1].copy()


def to_magic_basis(u: np.ndarray) -> np.ndarray:
    """Conjugate a computational-basis operator into the magic basis."""
    return _MAGIC_CONJ_T @ np.asarray(u, dtype=complex) @ MAGIC


def from_magic_basis(u: np.ndarray) -> np.ndarray:
    """Inverse of :func:`to_magic_basis`."""
    return MAGIC @ np.asarray(u, dtype=complex) @ _MAGIC_CONJ_T


@dataclass(frozen=True)
class CartanCoordinates:
    """Entangling phases ``lambdas`` (4,) and canonical ``theta`` (3,).

    ``lambdas`` are the phases of the diagonal magic-basis factor actually
    used in the decomposition (pre-canonicalization); ``theta`` is their
    image folded into the canonical chamber.
    """

    lambdas: np.ndarray
    theta: np.ndarray


@dataclass(frozen=True)
class CartanDecomposition:
    """Factors of U = e^{i global_phase} L A K, all in the computational basis."""

    L: np.ndarray
    A: np.ndarray
    K: np.ndarray
    coords: CartanCoordinates
    global_phase: float


@dataclass(frozen=True)
class EigenPhaseData:
    """Closed-form eigensystem of Utilde^T Utilde for a z-aligned model.

    ``eps_squared`` are the four unit-modulus eigenvalues ordered to match
    :func:`lambdas_closed_form`; ``eigenvectors`` holds the matching real
    orthonormal eigenvectors as rows. ``mu1``/``nu1`` parameterize the
    inner-block eigenvector direction and ``mu2``/``nu2`` the outer block;
    both satisfy nu = sqrt(1 + mu^2) and run to infinity where the
    eigenvectors pinch onto basis vectors.
    """

    eps_squared: np.ndarray
    mu1: float
    mu2: float
    nu1: float
    nu2: float
    eigenvectors: np.ndarray


def thetas_from_lambdas(lambdas) -> np.ndarray:
    """Invert the linear lambda(theta) relations.

    Pairwise sums isolate each theta:
    theta_x = (lambda_1 + lambda_4)/2, theta_y = (lambda_2 + lambda_4)/2,
    theta_z = (lambda_1 + lambda_2)/2. The result is *not* canonicalized.

    Raises:
        InconsistentLambdas: if sum(lambdas) deviates from 0 mod 2*pi.
    """
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (4,):
        raise InconsistentLambdas(f"expected 4 angles, got shape {lam.shape}")
    defect = _mod_distance(float(lam.sum()), 2 * math.pi)
    if defect > TOL.lambda_sum:
        raise InconsistentLambdas(f"sum(lambdas) is {defect:.3e} away from 0 mod 2*pi")
    return np.array(
        [
            0.5 * (lam[0] + lam[3]),
            0.5 * (lam[1] + lam[3]),
            0.5 * (lam[0] + lam[1]),
        ]
    )


def lambdas_from_thetas(theta) -> np.ndarray:
    """Forward map theta -> lambda (the displayed linear relations)."""
    tx, ty, tz = np.asarray(theta, dtype=float)
    return np.array([tx - ty + tz, -tx + ty + tz, -tx - ty - tz, tx + ty - tz])


def canonicalize_thetas(theta) -> np.ndarray:
    """Fold a theta triple into pi/4 >= theta_x >= theta_y >= theta_z >= 0.

    Each coordinate is reduced mod pi/2 into [0, pi/2), reflected through
    pi/4 when above it, and the triple is sorted descending. This picks the
    unique chamber representative of the orbit under the periodicity and
    reflection symmetries; it identifies an evolution with its time-reversed
    mirror, which shares all entangling characteristics.
    """
    r = np.mod(np.asarray(theta, dtype=float), 0.5 * math.pi)
    r = np.where(r > 0.25 * math.pi, 0.5 * math.pi - r, r)
    return np.sort(r)[::-1]


def reconstruct_A(lambdas) -> np.ndarray:
    """Entangling factor with the given phases, in the computational basis.

    Equal to exp(-i sum_j theta_j sigma_j x sigma_j) for the matching theta
    triple; its magic-basis image is diag(e^{-i lambda_j}). The support
    splits over the {|00>, |11>} and {|01>, |10>} blocks.

    Raises:
        InconsistentLambdas: if sum(lambdas) deviates from 0 mod 2*pi.
    """
    lam = np.asarray(lambdas, dtype=float)
    thetas_from_lambdas(lam)  # validates the sum constraint
    return unitary4(from_magic_basis(np.diag(np.exp(-1j * lam))))


def _mod_distance(value: float, period: float) -> float:
    r = math.fmod(value, period)
    if r < 0:
        r += period
    return min(r, period - r)


def kak_decompose(u: np.ndarray) -> CartanDecomposition:
    """Cartan decomposition of a 4x4 unitary.

    Steps: strip the global phase with the principal quartic root of
    det(u); move to the magic basis; take the real orthogonal eigensystem
    of Utilde^T Utilde; halve the eigenvalue phases to get the lambdas,
    resolving the per-eigenvalue sign freedom by requiring
    sum(lambda) = 0 mod 2*pi (which keeps every factor in SO(4), hence
    genuinely local) and picking the candidate with the smallest round-trip
    residual; reconstruct Ltilde = Utilde (Atilde Ktilde)^{-1}; map back.

    Raises:
        NotUnitary: if ``u`` is not unitary.
        ReconstructionFailure: if the factors do not reproduce ``u`` to
            within the round-trip tolerance, which would indicate a branch
            or pairing bug rather than bad input.
    """
    u = unitary4(u)
    phase = float(np.angle(np.linalg.det(u))) / 4.0
    ut = to_magic_basis(u * np.exp(-1j * phase))

    eig = eig_complex_symmetric_unitary(ut.T @ ut)
    ktil = eig.eigenvectors.copy()
    if np.linalg.det(ktil) < 0:
        ktil[0] = -ktil[0]

    lam0 = -0.5 * np.angle(eig.eigenvalues)
    best = None
    for bits in itertools.product((0, 1), repeat=4):
        lam = lam0 + math.pi * np.array(bits)
        if _mod_distance(float(lam.sum()), 2 * math.pi) > TOL.lambda_sum:
            continue
        atil = np.exp(-1j * lam)
        ltil = ut @ ktil.T @ np.diag(atil.conj())
        residual = max_abs_diff((ltil * atil) @ ktil, ut)
        key = (residual, float(np.sum(np.abs(lam))), tuple(lam))
        if best is None or key < best[0]:
            best = (key, lam, ltil)
    if best is None:
        raise ReconstructionFailure("no eigenphase branch satisfies sum(lambda) = 0 mod 2*pi")

    _, lam, ltil = best
    a = reconstruct_A(lam)
    k = from_magic_basis(ktil)
    l = from_magic_basis(ltil)
    residual = max_abs_diff(np.exp(1j * phase) * l @ a @ k, u)
    if residual > TOL.kak_roundtrip:
        raise ReconstructionFailure(f"round-trip residual {residual:.3e} exceeds {TOL.kak_roundtrip:.1e}")

    theta = canonicalize_thetas(thetas_from_lambdas(lam))
    return CartanDecomposition(
        L=l, A=a, K=k, coords=CartanCoordinates(lambdas=lam, theta=theta), global_phase=phase
    )


def lambdas_closed_form(model: HamiltonianModel, t: float) -> np.ndarray:
    """Entangling phases of the z-aligned evolution, analytically.

        lambda_{1,2} =  c_z t +- arccos(chi2)/2
        lambda_{3,4} = -c_z t -+ arccos(chi1)/2

    evaluated as arcsin of the block mixing amplitudes, which is the same
    number (arccos in [0, pi]) computed without cancellation near chi = 1.

    Raises:
        WrongModelClass: if the model is not z-aligned.
    """
    _require_z_aligned(model)
    cx, cy, cz = model.c
    om1, om2 = block_frequencies(model)
    half_a2 = math.asin(min(1.0, abs((cx - cy) * _sin_ratio(om1, t))))
    half_a1 = math.asin(min(1.0, abs((cx + cy) * _sin_ratio(om2, t))))
    return np.array(
        [cz * t + half_a2, cz * t - half_a2, -cz * t - half_a1, -cz * t + half_a1]
    )


def _stable_eigvec_2x2(alpha: float, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal eigenvectors of [[alpha, gamma], [gamma, -alpha]].

    Returns (v_plus, v_minus) for the +r and -r eigenvalues,
    r = hypot(alpha, gamma), using the cancellation-free branch.
    """
    r = math.hypot(alpha, gamma)
    if r == 0.0 or abs(gamma) < 1e-300:
        if alpha >= 0.0:
            return np.array([1.0, 0.0]), np.array([0.0, 1.0])
        return np.array([0.0, 1.0]), np.array([1.0, 0.0])
    if alpha >= 0.0:
        v = np.array([alpha + r, gamma])
    else:
        v = np.array([gamma, r - alpha])
    v = v / np.linalg.norm(v)
    return v, np.array([-v[1], v[0]])


def eigen_phase_data(model: HamiltonianModel, t: float) -> EigenPhaseData:
    """Closed-form eigensystem of Utilde^T Utilde for a z-aligned model.

    The eigenvalues are exp(-2i lambda_j) with the closed-form lambdas; the
    eigenvectors live in the magic components (1, 2) for the outer block
    and (3, 4) for the inner one. Where a block is degenerate (its chi at
    +-1) any orthonormal basis of the block is valid and a fixed convention
    is returned.

    Raises:
        WrongModelClass: if the model is not z-aligned.
    """
    _require_z_aligned(model)
    cx, cy, _ = model.c
    om1, om2 = block_frequencies(model)
    lam = lambdas_closed_form(model, t)
    eps_squared = np.exp(-2j * lam)

    # block data: alpha = cos(Omega t), gamma = (energy combo) sin(Omega t)/Omega,
    # beta = (coupling combo) sin(Omega t)/Omega; sign(beta) selects which
    # eigenvector of the block carries which eigenvalue.
    alpha_out = math.cos(om1 * t)
    gamma_out = (model.omega1 + model.omega2) * _sin_ratio(om1, t)
    beta_out = (cx - cy) * _sin_ratio(om1, t)
    v_plus, v_minus = _stable_eigvec_2x2(alpha_out, gamma_out)
    v1, v2 = (v_plus, v_minus) if beta_out >= 0.0 else (v_minus, v_plus)

    alpha_in = math.cos(om2 * t)
    gamma_in = (model.omega1 - model.omega2) * _sin_ratio(om2, t)
    beta_in = (cx + cy) * _sin_ratio(om2, t)
    w_plus, w_minus = _stable_eigvec_2x2(alpha_in, gamma_in)
    v3, v4 = (w_plus, w_minus) if beta_in < 0.0 else (w_minus, w_plus)

    vectors = np.zeros((4, 4))
    vectors[0, :2] = v1
    vectors[1, :2] = v2
    vectors[2, 2:] = v3
    vectors[3, 2:] = v4

    def _mu(omega: float, energy: float) -> float:
        sin = math.sin(omega * t)
        num = omega * math.cos(omega * t)
        den = energy * sin
        if den == 0.0:
            return math.inf
        return num / den

    mu1 = _mu(om2, model.omega1 - model.omega2)
    mu2 = _mu(om1, model.omega1 + model.omega2)
    nu1 = math.sqrt(1.0 + mu1 * mu1) if math.isfinite(mu1) else math.inf
    nu2 = math.sqrt(1.0 + mu2 * mu2) if math.isfinite(mu2) else math.inf
    return EigenPhaseData(
        eps_squared=eps_squared, mu1=mu1, mu2=mu2, nu1=nu1, nu2=nu2, eigenvectors=vectors
    )
