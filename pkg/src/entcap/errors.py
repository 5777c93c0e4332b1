"""Exception types raised by entcap."""


class EntcapError(Exception):
    """Base class for all entcap errors."""


class NonHermitianInput(EntcapError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class NotSymmetric(EntcapError):
    """A matrix that must be (complex) symmetric is not, beyond tolerance."""


class NotUnitary(EntcapError):
    """A matrix that must be unitary is not, beyond tolerance."""


class NotNormalized(EntcapError):
    """A state vector is not normalized, beyond tolerance."""


class WrongModelClass(EntcapError):
    """An operation restricted to z-axis aligned models got another model."""


class ReconstructionFailure(EntcapError):
    """A factorization did not reproduce its input within tolerance.

    For the Cartan decomposition this signals a phase-branch or eigenvector
    pairing bug rather than a data problem, so it is never silently ignored.
    """


class InconsistentLambdas(EntcapError):
    """Entangling-phase angles whose sum is not 0 mod 2*pi."""


class DegenerateCoupling(EntcapError):
    """The coupling combination in an extremal-time denominator vanishes."""


class ConfigInvalid(EntcapError):
    """A sweep or model configuration violates its constraints."""


class ParseError(ConfigInvalid):
    """A config file could not be parsed.

    Carries the 1-based ``line`` (and ``column`` when known) of the first
    offending location.
    """

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class IoError(EntcapError):
    """Reading or writing a data file failed."""


class EmptyTable(EntcapError):
    """An operation needing at least one sweep row got an empty table."""
