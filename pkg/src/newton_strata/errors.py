"""Exception taxonomy shared by all modules.

Every failure mode that callers are expected to handle gets its own class;
plain ``ValueError`` is reserved for malformed arguments that indicate a
caller bug rather than a data condition.
"""


class NewtonStrataError(Exception):
    """Base class for all library-specific errors."""


# -- finite fields ----------------------------------------------------------

class NotPrime(NewtonStrataError):
    """The requested characteristic is not a prime number."""


class FieldTooLarge(NewtonStrataError):
    """p^k exceeds the configured field-cardinality cap."""


class MixedFields(NewtonStrataError):
    """Arithmetic attempted between elements of different fields."""


# -- curve models ------------------------------------------------------------

class NotSquarefree(NewtonStrataError):
    """Hyperelliptic defining polynomial has a repeated root (singular model)."""


class EvenCharHyperelliptic(NewtonStrataError):
    """Hyperelliptic models y^2 = f(x) require odd characteristic."""


class PoleOrderDivisibleByP(NewtonStrataError):
    """Artin-Schreier models require gcd(deg h, p) = 1."""


class DegreeTooSmall(NewtonStrataError):
    """Defining polynomial degree below the model's minimum."""


class WeilBoundViolated(NewtonStrataError):
    """A computed point count broke the Hasse-Weil bound: implementation bug."""


class UnsupportedKind(NewtonStrataError):
    """Operation not defined for this curve kind."""


class CurveParseError(NewtonStrataError):
    """Curve text form failed to parse; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# -- zeta / L-polynomials ----------------------------------------------------

class NonIntegralCoefficient(NewtonStrataError):
    """A Newton-identity division was not exact: the counts are corrupted."""


class SurplusMismatch(NewtonStrataError):
    """Extra point counts disagree with the reconstructed L-polynomial."""


# -- Newton polygons ----------------------------------------------------------

class NotAdmissible(NewtonStrataError):
    """Slope data violates integrality, symmetry or endpoint constraints."""


class InvalidPRank(NewtonStrataError):
    """Requested p-rank outside [0, g] or nonpositive genus."""


# -- poset --------------------------------------------------------------------

class GenusTooLarge(NewtonStrataError):
    """Genus beyond the enumeration cap."""


class NodeNotFound(NewtonStrataError):
    """Polygon is not a node of the given poset."""


# -- search -------------------------------------------------------------------

class BudgetExceeded(NewtonStrataError):
    """Family cardinality exceeds the configured candidate budget."""


class UnknownName(NewtonStrataError):
    """No catalog entry with the requested name."""


class SelfCheckFailed(NewtonStrataError):
    """Two independent routes to the same invariant disagreed: hard failure."""
