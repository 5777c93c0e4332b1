"""Central record of every numerical tolerance used by the package.

Each threshold lives here so that a check is never duplicated with a
slightly different constant elsewhere.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    #: max |U^dag U - I| accepted when validating a unitary
    unitarity: float = 1e-10
    #: max |H - H^dag| accepted by the matrix exponential
    hermiticity: float = 1e-10
    #: max |S - S^T| accepted by the symmetric-unitary eigensolver
    symmetry: float = 1e-9
    #: relative eigenvalue gap below which the real part of a symmetric
    #: unitary matrix is treated as degenerate and the imaginary part decides
    eig_degeneracy: float = 1e-8
    #: max |O^T diag(e) O - S| for the eigensolver output
    eig_reconstruction: float = 1e-9
    #: max |e^{i phi} L A K - U| for a Cartan decomposition
    kak_roundtrip: float = 1e-8
    #: max imaginary part of a local factor in the magic basis
    locality_imag: float = 1e-8
    #: allowed deviation of sum(lambda) from 0 mod 2*pi
    lambda_sum: float = 1e-8
    #: unit vectors are renormalized when within this of norm 1, else rejected
    unit_vector: float = 1e-6
    #: allowed deviation of a state vector from unit norm
    state_norm: float = 1e-12
    #: frequencies below this use the sin(w t)/w -> t limit
    zero_frequency: float = 1e-12
    #: max |[H1 + H2, HI]| for a model to count as commuting
    commutator: float = 1e-12
    #: required agreement of closed-form and generic capability on a grid
    engine_agreement: float = 1e-8
    #: componentwise test for n = m = (0, 0, 1)
    model_alignment: float = 1e-12


TOL = Tolerances()
