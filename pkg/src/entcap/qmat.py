"""Fixed-size complex linear algebra for the two-qubit problem.

Everything here works on plain ``numpy`` arrays: 2x2 and 4x4 complex
matrices, the tensor product, a matrix exponential built on the Hermitian
eigendecomposition, and the eigensolver for complex symmetric unitary
matrices that the Cartan decomposition needs (those matrices always admit a
*real orthogonal* eigenbasis, which a generic complex eigensolver does not
return).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonHermitianInput, NotSymmetric, NotUnitary, ReconstructionFailure
from .tolerances import TOL

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product of two 2x2 matrices, row index 2*i1 + i2."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    """Entrywise max |a - b|; the norm behind all tolerance checks."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def unitary4(m: np.ndarray, tol: float = TOL.unitarity) -> np.ndarray:
    """Validate that ``m`` is a 4x4 unitary and return it as complex128.

    Raises:
        NotUnitary: if ``m`` is not 4x4 or max |m^dag m - I| exceeds ``tol``.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise NotUnitary(f"expected a 4x4 matrix, got shape {m.shape}")
    defect = max_abs_diff(m.conj().T @ m, I4)
    if not np.isfinite(defect) or defect > tol:
        raise NotUnitary(f"unitarity defect {defect:.3e} exceeds {tol:.1e}")
    return m


def is_hermitian(h: np.ndarray, tol: float = TOL.hermiticity) -> bool:
    h = np.asarray(h, dtype=complex)
    if not (np.all(np.isfinite(h.real)) and np.all(np.isfinite(h.imag))):
        return False
    return max_abs_diff(h, h.conj().T) <= tol


def expm_skew_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian ``h``, via the eigendecomposition of h.

    Diagonalizing instead of summing a series keeps the result unitary to
    machine precision for any ``t``.

    Raises:
        NonHermitianInput: if max |h - h^dag| exceeds the tolerance.
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise NonHermitianInput(
            f"max |h - h^dag| = {max_abs_diff(h, h.conj().T):.3e} exceeds {TOL.hermiticity:.1e}"
        )
    w, v = np.linalg.eigh(h)
    u = (v * np.exp(-1j * w * t)) @ v.conj().T
    return unitary4(u)


@dataclass(frozen=True)
class EigenSystemSymUnitary:
    """Eigensystem of a complex symmetric unitary matrix.

    ``eigenvalues`` lie on the unit circle and ``eigenvectors`` holds the
    corresponding real orthonormal vectors as *rows*, so that
    ``eigenvectors @ s @ eigenvectors.T = diag(eigenvalues)``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _jacobi_polish(s: np.ndarray, q: np.ndarray, max_sweeps: int = 60) -> np.ndarray:
    """Refine a near-diagonalizing real orthogonal ``q`` (columns) for ``s``.

    ``s`` is complex symmetric with a real orthogonal eigenbasis, so every
    2x2 principal block of q^T s q can be diagonalized by a real rotation.
    Sweeping those rotations removes the residual mixing that eigh leaves
    behind when two eigenvalues of Re(s) almost coincide.
    """
    q = q.copy()
    h = q.T @ s @ q
    n = h.shape[0]
    for _ in range(max_sweeps):
        off = np.abs(h - np.diag(np.diag(h)))
        if off.max() <= 1e-15:
            break
        for i in range(n - 1):
            for j in range(i + 1, n):
                b = 0.5 * (h[i, j] + h[j, i])
                if abs(b) <= 1e-16:
                    continue
                p = h[i, i] - h[j, j]
                # tan(2 theta) = 2b/p is real up to noise; phase-align by the
                # larger of the two before taking the real part.
                if abs(p) >= 2 * abs(b):
                    two_theta = np.arctan2(np.real(2 * b * np.conj(p)), abs(p) ** 2)
                else:
                    two_theta = np.arctan2(abs(2 * b) ** 2, np.real(p * np.conj(2 * b)))
                ct, st = np.cos(two_theta / 2), np.sin(two_theta / 2)
                g = np.eye(n)
                g[i, i] = ct
                g[j, j] = ct
                g[i, j] = -st
                g[j, i] = st
                q = q @ g
                h = g.T @ h @ g
    return q


def eig_complex_symmetric_unitary(s: np.ndarray) -> EigenSystemSymUnitary:
    """Real orthogonal eigendecomposition of a complex symmetric unitary s.

    Splits s = X + iY with X, Y real symmetric. Unitarity of the symmetric s
    gives s conj(s) = I, hence [X, Y] = 0 and X^2 + Y^2 = I, so X and Y are
    simultaneously diagonalizable over the reals: X is diagonalized first and
    Y is rediagonalized inside each near-degenerate eigenspace of X, followed
    by a Jacobi polish of the assembled basis.

    The returned order is deterministic: ascending eigenvalue phase in
    (-pi, pi], ties broken lexicographically on the sign-fixed eigenvectors
    (first nonzero component of each vector made positive).

    Raises:
        NotSymmetric: if max |s - s^T| exceeds the symmetry tolerance.
        NotUnitary: if s is not unitary.
        ReconstructionFailure: if the eigenbasis does not reproduce s.
    """
    s = np.asarray(s, dtype=complex)
    if s.shape != (4, 4):
        raise NotSymmetric(f"expected a 4x4 matrix, got shape {s.shape}")
    if max_abs_diff(s, s.T) > TOL.symmetry:
        raise NotSymmetric(f"max |s - s^T| = {max_abs_diff(s, s.T):.3e}")
    unitary4(s)

    x = 0.5 * (s.real + s.real.T)
    y = 0.5 * (s.imag + s.imag.T)
    xw, q = np.linalg.eigh(x)

    # rediagonalize Y inside each cluster of nearly equal X eigenvalues
    thresh = TOL.eig_degeneracy * max(1.0, float(np.max(np.abs(xw))))
    start = 0
    for stop in range(1, len(xw) + 1):
        if stop < len(xw) and xw[stop] - xw[stop - 1] < thresh:
            continue
        if stop - start > 1:
            block = q[:, start:stop]
            yb = block.T @ y @ block
            _, r = np.linalg.eigh(0.5 * (yb + yb.T))
            q[:, start:stop] = block @ r
        start = stop

    q = _jacobi_polish(s, q)

    d = q.T @ s @ q
    eigenvalues = np.diag(d).copy()
    if max_abs_diff(np.abs(eigenvalues), np.ones(4)) > TOL.unitarity:
        raise ReconstructionFailure("eigenvalues left the unit circle")

    # deterministic ordering and sign fixing
    vectors = []
    for k in range(4):
        v = q[:, k].copy()
        lead = np.argmax(np.abs(v) > 1e-8)
        if v[lead] < 0:
            v = -v
        vectors.append(v)
    order = sorted(range(4), key=lambda k: (np.angle(eigenvalues[k]), tuple(vectors[k])))
    eigenvalues = eigenvalues[order]
    o = np.array([vectors[k] for k in order])

    if max_abs_diff(o.T @ np.diag(eigenvalues) @ o, s) > TOL.eig_reconstruction:
        raise ReconstructionFailure(
            "orthogonal eigenbasis does not reproduce the input within tolerance"
        )
    return EigenSystemSymUnitary(eigenvalues=eigenvalues, eigenvectors=o)
