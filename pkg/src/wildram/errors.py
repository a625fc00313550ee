"""Exception types shared across the workbench.

Every error raised by the library derives from WildramError so callers
(and the command line driver) can separate computational failures from
genuine bugs.
"""


class WildramError(Exception):
    """Base class for all workbench errors."""


class NonPrime(WildramError):
    """A parameter that must be prime is not."""


class DegreeOutOfRange(WildramError):
    """Field extension degree outside the supported range."""


class NotASubfieldDegree(WildramError):
    """Embedding requested between fields whose degrees are not nested."""


class ContextMismatch(WildramError):
    """Operands built over incompatible field contexts."""


class InseparableOperator(WildramError):
    """Additive operator with vanishing linear coefficient."""


class NotInXSXForm(WildramError):
    """Polynomial is not of the shape X*S(X) + c*X with deg_F(S) >= 1."""


class LengthMismatch(WildramError):
    """Witt vectors of different lengths combined."""


class ZeroCover(WildramError):
    """Cover whose right hand side is trivial after reduction."""


class DecompositionFailure(WildramError):
    """No rank-one piece found for a character of an additive cover."""


class BadParameters(WildramError):
    """Family or plan parameters violate the construction's constraints."""


class NonIntegralLowerBreaks(WildramError):
    """Upper-to-lower conversion produced a non-integer break index."""


class OddSum(WildramError):
    """Ramification sum that must be even came out odd."""


class InconsistentLadder(WildramError):
    """Tower levels whose conductors or degrees cannot belong to one tower."""


class InvalidProfile(WildramError):
    """Group profile violating its structural invariants."""


class MissingDeclaration(WildramError):
    """A sieve rule was forced to run without its required declaration."""


class ResourceLimit(WildramError):
    """Requested computation exceeds the configured resource cap."""


class TooLarge(WildramError):
    """Brute-force oracle asked to enumerate a group beyond its hard cap."""


class UsageError(WildramError):
    """Command line arguments that fail validation."""
