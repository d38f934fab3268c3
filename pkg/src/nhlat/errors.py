"""Exception types shared across the toolkit."""


class NhlatError(Exception):
    """Base class for all toolkit errors."""


class UnsupportedIndex(NhlatError):
    """Chebyshev index below the allowed range for the requested kind."""


class DegenerateInput(NhlatError):
    """Polynomial input too degenerate for the operation (constant or zero)."""


class NotConverged(NhlatError):
    """An iterative refinement failed to reach its tolerance."""


class DimensionMismatch(NhlatError):
    """Array shapes inconsistent with the declared lattice size."""


class BoundaryViolation(NhlatError):
    """Operation requires open boundary conditions."""


class NotEigenvalue(NhlatError):
    """Supplied scalar is not an eigenvalue within tolerance."""


class NotIrreducible(NhlatError):
    """Operation requires all interior hoppings to be nonzero."""


class Singular(NhlatError):
    """Matrix is singular within tolerance."""


class PeriodicityViolation(NhlatError):
    """Diagonal is not 2-periodic where the chiral lift requires it."""


class IndexOutOfRange(NhlatError):
    """Defect site index outside the admissible range."""


class NotQuasiHermitian(NhlatError):
    """Spectrum is complex or defective; no metric exists."""


class OrthogonalityViolation(NhlatError):
    """The two real 3-vectors of a qubit decomposition are not orthogonal."""


class ParamViolation(NhlatError):
    """Lattice parameters violate the model's parametric restrictions."""


class NotPositive(NhlatError):
    """A positive-definite operator was required."""


class AnticommutationViolation(NhlatError):
    """The pencil generators do not anticommute within tolerance."""


class SingularJ(NhlatError):
    """Pencil generator J is not invertible."""


class NotInvolution(NhlatError):
    """E^2 differs from the identity beyond tolerance."""


class NotUnitary(NhlatError):
    """Supplied matrix is not unitary within tolerance."""


class CommutantViolation(NhlatError):
    """Matrix does not commute with the representation range."""


class NotIntertwiner(NhlatError):
    """Supplied operator fails its intertwining relation."""


class SingularS(NhlatError):
    """Eigenvector matrix is singular."""


class ZeroVector(NhlatError):
    """A nonzero vector was required."""


class SizeLimit(NhlatError):
    """Problem size exceeds the guard for this operation."""


class FitRejected(NhlatError):
    """No admissible Puiseux exponent fits the sampled splitting."""


class OutOfRegime(NhlatError):
    """Asymptotic formula requested outside its validity regime."""


class ParseError(NhlatError):
    """Model file or CLI parameters failed to parse. CLI exit code 2."""


class ComputeError(NhlatError):
    """Analysis failed downstream of parsing. CLI exit code 3."""
