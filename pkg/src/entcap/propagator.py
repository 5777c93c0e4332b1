"""Time evolution operators for the two-qubit model.

Two routes to U_t = exp(-i H_T t):

* ``generic_propagator`` exponentiates the assembled Hamiltonian and works
  for any model;
* ``closed_form_propagator`` evaluates the analytic block form available
  when both local axes are +z. There U_t splits over span{|00>, |11>} and
  span{|01>, |10>}, each block a 2x2 rotation with frequency

      Omega1 = sqrt((c_x - c_y)^2 + (omega1 + omega2)^2)   (outer block)
      Omega2 = sqrt((c_x + c_y)^2 + (omega1 - omega2)^2)   (inner block)

  dressed with the phases exp(-+ i c_z t).

Each route cross-validates the other; the test suite holds them to 1e-9
agreement entrywise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import WrongModelClass
from .model import HamiltonianModel, build_total_hamiltonian, is_z_aligned
from .qmat import expm_skew_hermitian, unitary4
from .tolerances import TOL


def _require_z_aligned(model: HamiltonianModel) -> None:
    if not is_z_aligned(model):
        raise WrongModelClass(
            f"closed form needs n = m = (0, 0, 1); got n = {model.n_vec}, m = {model.m_vec}"
        )


def _sin_ratio(omega: float, t: float) -> float:
    """sin(omega t) / omega with its omega -> 0 limit t."""
    if omega < TOL.zero_frequency:
        return t
    return math.sin(omega * t) / omega


def block_frequencies(model: HamiltonianModel) -> tuple[float, float]:
    """(Omega1, Omega2) for a z-aligned model."""
    cx, cy, _ = model.c
    return (
        math.hypot(cx - cy, model.omega1 + model.omega2),
        math.hypot(cx + cy, model.omega1 - model.omega2),
    )


@dataclass(frozen=True)
class ClosedFormParts:
    """Evaluated block amplitudes of the z-aligned propagator at one time.

    Unitarity of the two 2x2 blocks pins |phi1|^2 + |phi4|^2 = 1 and
    |phi2|^2 + |phi3|^2 = 1.
    """

    phi1: complex
    phi2: complex
    phi3: complex
    phi4: complex
    Omega1: float
    Omega2: float


def closed_form_parts(model: HamiltonianModel, t: float) -> ClosedFormParts:
    """Evaluate the four block amplitudes at time ``t``.

    Raises:
        WrongModelClass: if the model is not z-aligned.
    """
    _require_z_aligned(model)
    cx, cy, _ = model.c
    om1, om2 = block_frequencies(model)
    s1 = _sin_ratio(om1, t)
    s2 = _sin_ratio(om2, t)
    return ClosedFormParts(
        phi1=math.cos(om1 * t) - 1j * (model.omega1 + model.omega2) * s1,
        phi2=math.cos(om2 * t) - 1j * (model.omega1 - model.omega2) * s2,
        phi3=-1j * (cx + cy) * s2,
        phi4=-1j * (cx - cy) * s1,
        Omega1=om1,
        Omega2=om2,
    )


def closed_form_propagator(model: HamiltonianModel, t: float) -> np.ndarray:
    """U_t assembled from the analytic block amplitudes.

    Raises:
        WrongModelClass: if the model is not z-aligned.
    """
    parts = closed_form_parts(model, t)
    cz = model.c[2]
    em = cmath.exp(-1j * cz * t)
    ep = cmath.exp(1j * cz * t)
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = em * parts.phi1
    u[0, 3] = em * parts.phi4
    u[3, 0] = em * parts.phi4
    u[3, 3] = em * parts.phi1.conjugate()
    u[1, 1] = ep * parts.phi2
    u[1, 2] = ep * parts.phi3
    u[2, 1] = ep * parts.phi3
    u[2, 2] = ep * parts.phi2.conjugate()
    return unitary4(u)


def generic_propagator(model: HamiltonianModel, t: float) -> np.ndarray:
    """U_t = exp(-i H_T t) for an arbitrary model."""
    return expm_skew_hermitian(build_total_hamiltonian(model), t)


def chi_functions(model: HamiltonianModel, t: float) -> tuple[float, float]:
    """The two oscillation profiles (chi1, chi2) in [-1, 1].

        chi1 = 1 - 2 ((c_x + c_y) / Omega2)^2 sin^2(Omega2 t)
        chi2 = 1 - 2 ((c_x - c_y) / Omega1)^2 sin^2(Omega1 t)

    with the Omega -> 0 limit sin(Omega t)/Omega -> t. chi1 carries the
    inner-block dynamics, chi2 the outer block; together they fix the
    entangling phases of the evolution.

    Raises:
        WrongModelClass: if the model is not z-aligned.
    """
    _require_z_aligned(model)
    cx, cy, _ = model.c
    om1, om2 = block_frequencies(model)
    chi1 = 1.0 - 2.0 * ((cx + cy) * _sin_ratio(om2, t)) ** 2
    chi2 = 1.0 - 2.0 * ((cx - cy) * _sin_ratio(om1, t)) ** 2
    return (float(np.clip(chi1, -1.0, 1.0)), float(np.clip(chi2, -1.0, 1.0)))
