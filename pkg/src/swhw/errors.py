"""Exception types shared across the package."""


class SwhwError(Exception):
    """Base class for all package errors."""


class ZeroInput(SwhwError):
    """A square class or symbol was requested for 0."""


class FieldMismatch(SwhwError):
    """Operands live over different base fields."""


class CharacteristicClash(SwhwError):
    """The class c_ell is undefined over a residue field of characteristic ell."""


class EvenResidueChar(SwhwError):
    """Residue boundary maps require odd residue characteristic."""


class Degenerate(SwhwError):
    """A Gram matrix is singular."""


class NotIsotropic(SwhwError):
    """The given subspace is not totally isotropic."""


class NotIndependent(SwhwError):
    """The given vectors are linearly dependent."""


class BadValuation(SwhwError):
    """A p-adic entry has valuation outside {0, 1} after square normalization."""


class NotSquarefree(SwhwError):
    """The polynomial has a repeated factor."""


class DimensionMismatch(SwhwError):
    """A splitting does not match the degree of the algebra."""


class MissingInput(SwhwError):
    """A profile lacks a class needed by the requested computation."""


class ValidationFailed(SwhwError):
    """A profile violates one of its structural invariants."""


class ParityViolation(SwhwError):
    """Middle Betti and Hodge numbers disagree mod 2."""


class HodgeConditionViolated(SwhwError):
    """The Hodge vanishing condition for the crystalline identity fails."""


class InconsistentSynthesis(SwhwError):
    """Synthesized real Hodge data is internally inconsistent."""


class NotHomotopy(SwhwError):
    """A homotopy fails its defining identity."""


class NotQuasiIso(SwhwError):
    """A map that must be a quasi-isomorphism is not one."""


class NotSymmetricHomotopy(SwhwError):
    """A homotopy fails the symmetry condition Dt. c_L = t."""
