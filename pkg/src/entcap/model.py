"""Two-qubit system with fixed local fields and a diagonal exchange coupling.

The total Hamiltonian is

    H_T = omega1 (n . sigma) x I  +  omega2 I x (m . sigma)
          + c_x sigma_x x sigma_x + c_y sigma_y x sigma_y + c_z sigma_z x sigma_z

with omega1, omega2 >= 0 the characteristic energies, n and m real unit
vectors, and (c_x, c_y, c_z) the coupling strengths. A general real 3x3
coupling matrix can always be brought to this diagonal form by proper
rotations of the two Pauli frames; ``diagonalize_coupling`` performs that
reduction explicitly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .qmat import I2, PAULIS, kron, max_abs_diff
from .tolerances import TOL


def _as_unit_triple(v, name: str) -> tuple[float, float, float]:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must be a real 3-vector, got shape {arr.shape}")
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > TOL.unit_vector:
        raise ValueError(f"{name} has norm {norm:.8f}, more than {TOL.unit_vector:.0e} from 1")
    arr = arr / norm
    return (float(arr[0]), float(arr[1]), float(arr[2]))


@dataclass(frozen=True)
class HamiltonianModel:
    """Parameters of the total Hamiltonian. Immutable and hashable.

    ``n_vec`` and ``m_vec`` are renormalized on construction when within
    1e-6 of unit norm and rejected otherwise, so config-file rounding is
    tolerated without hiding genuinely wrong input.
    """

    omega1: float
    omega2: float
    n_vec: tuple[float, float, float] = (0.0, 0.0, 1.0)
    m_vec: tuple[float, float, float] = (0.0, 0.0, 1.0)
    c: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        for name in ("omega1", "omega2"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be a finite nonnegative energy, got {value}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "n_vec", _as_unit_triple(self.n_vec, "n_vec"))
        object.__setattr__(self, "m_vec", _as_unit_triple(self.m_vec, "m_vec"))
        c = np.asarray(self.c, dtype=float)
        if c.shape != (3,) or not np.all(np.isfinite(c)):
            raise ValueError(f"c must be a finite real 3-vector, got {self.c!r}")
        object.__setattr__(self, "c", (float(c[0]), float(c[1]), float(c[2])))


class ModelClass(enum.Enum):
    """Model classes, checked in declaration order by :func:`classify`."""

    COMMUTING_LOCAL_FREE = "commuting_local_free"  # omega1 = omega2 = 0
    COMMUTING_NO_XY = "commuting_no_xy"            # c_x = c_y = 0
    Z_AXIS_ALIGNED = "z_axis_aligned"              # n = m = z
    GENERIC = "generic"


def vec_dot_sigma(v) -> np.ndarray:
    """The 2x2 operator v . sigma."""
    v = np.asarray(v, dtype=float)
    return v[0] * PAULIS[0] + v[1] * PAULIS[1] + v[2] * PAULIS[2]


def build_local_hamiltonian(model: HamiltonianModel) -> np.ndarray:
    """H1 + H2, the purely local part."""
    return model.omega1 * kron(vec_dot_sigma(model.n_vec), I2) + model.omega2 * kron(
        I2, vec_dot_sigma(model.m_vec)
    )


def build_interaction(model: HamiltonianModel) -> np.ndarray:
    """The diagonal exchange coupling sum_j c_j sigma_j x sigma_j."""
    out = np.zeros((4, 4), dtype=complex)
    for cj, sj in zip(model.c, PAULIS):
        if cj != 0.0:
            out += cj * kron(sj, sj)
    return out


def build_total_hamiltonian(model: HamiltonianModel) -> np.ndarray:
    """Assemble the full 4x4 Hermitian (and traceless) Hamiltonian."""
    return build_local_hamiltonian(model) + build_interaction(model)


def is_z_aligned(model: HamiltonianModel) -> bool:
    """True when both local field axes are the +z axis."""
    z = (0.0, 0.0, 1.0)
    return max_abs_diff(model.n_vec, z) <= TOL.model_alignment and (
        max_abs_diff(model.m_vec, z) <= TOL.model_alignment
    )


def commutator_is_zero(model: HamiltonianModel) -> bool:
    """Whether [H1 + H2, HI] vanishes, computed numerically.

    For z-aligned models this is equivalent to the parameter condition
    "omega1 = omega2 = 0 or c_x = c_y = 0"; evaluating the commutator
    directly keeps that characterization a testable claim instead of a
    shortcut baked into the code.
    """
    hloc = build_local_hamiltonian(model)
    hint = build_interaction(model)
    return max_abs_diff(hloc @ hint, hint @ hloc) <= TOL.commutator


def classify(model: HamiltonianModel) -> ModelClass:
    """First matching class in ModelClass declaration order.

    Parameter comparisons are exact: the classes describe structural zeros
    of the model, not nearly-zero values.
    """
    if model.omega1 == 0.0 and model.omega2 == 0.0:
        return ModelClass.COMMUTING_LOCAL_FREE
    if model.c[0] == 0.0 and model.c[1] == 0.0:
        return ModelClass.COMMUTING_NO_XY
    if is_z_aligned(model):
        return ModelClass.Z_AXIS_ALIGNED
    return ModelClass.GENERIC


def diagonalize_coupling(c_matrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reduce a general real 3x3 coupling matrix to diagonal form.

    Returns ``(c, r1, r2)`` with proper rotations r1, r2 in SO(3) such that
    ``r1 @ c_matrix @ r2.T = diag(c)``. Built on the SVD, with any
    reflection signs absorbed into the diagonal so both rotations stay
    proper; the diagonal entries may therefore be negative.
    """
    c_matrix = np.asarray(c_matrix, dtype=float)
    if c_matrix.shape != (3, 3):
        raise ValueError(f"coupling matrix must be 3x3, got shape {c_matrix.shape}")
    u, sv, vt = np.linalg.svd(c_matrix)
    sv = sv.copy()
    if np.linalg.det(u) < 0:
        u[:, -1] *= -1
        sv[-1] *= -1
    if np.linalg.det(vt) < 0:
        vt[-1, :] *= -1
        sv[-1] *= -1
    return sv, u.T, vt
