"""Exception hierarchy shared by all heckezero modules."""


class HeckeZeroError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HeckeZeroError):
    """Bad user input (CLI exit code 2)."""


class InternalInvariantError(HeckeZeroError):
    """An internal contract was violated; always a bug (CLI exit code 3)."""


class NotSquarefree(ValidationError):
    def __init__(self, n, prime):
        super().__init__(f"{n} is divisible by {prime}^2")
        self.n = n
        self.prime = prime


class RationalInput(ValidationError):
    """Continued-fraction expansion of a rational value was requested."""


class NotPurelyPeriodic(ValidationError):
    """A purely periodic continued-fraction word was required."""


class DegenerateWord(ValidationError):
    """A periodic word whose fixed-point equation has rational roots."""


class UnitMismatch(HeckeZeroError):
    """Product of the cone ratios does not equal the totally positive unit."""


class NotAnIdeal(ValidationError):
    """The lattice is not a fractional ideal of the maximal order."""


class IncompatiblePair(ValidationError):
    """The ideal and the surd do not satisfy b*[1,delta] = O."""


class BoundExceeded(ValidationError):
    """A desk-scale computation bound was exceeded."""


class DeltaOutOfRange(ValidationError):
    """delta must satisfy delta > 2 and 0 < delta' < 1."""


class IdealNotCoprime(ValidationError):
    """N(b) shares a factor with the modulus q."""


class NotFundamental(ValidationError):
    """Not a fundamental discriminant."""


class CFMismatch(ValidationError):
    """Declared continued-fraction digits disagree with the actual expansion."""


class HypothesisFailed(HeckeZeroError):
    """The mod-q norm residues vary with k, so no closed form applies."""


class NoAdmissibleN(ValidationError):
    """No member of the family with the requested residue is admissible."""


class InsufficientSamples(ValidationError):
    """Too few admissible sample points for a verdict."""


class NarrowClassNotOne(ValidationError):
    """The factorization oracle needs narrow class number one."""


class ParseError(ValidationError):
    """Malformed configuration file or identifier string."""


class SpecInconsistent(ValidationError):
    """A family file whose declared data is internally inconsistent."""
