"""Exception types shared across the toolkit."""


class CdgaLabError(Exception):
    """Base class for all domain errors."""


class ContainmentViolation(CdgaLabError):
    """A subspace was not contained in the span it was quotiented by."""


class UnknownGenerator(CdgaLabError):
    """An element references a generator foreign to the presentation."""


class NotHomogeneous(CdgaLabError):
    """An operation requiring a homogeneous element got a mixed-degree one."""


class NotClosed(CdgaLabError):
    """An exactness test was asked about an element with d(a) != 0."""


class UndefinedProduct(CdgaLabError):
    """A Massey coset operation was applied to an undefined product."""


class NotSimplyConnected(CdgaLabError):
    """Minimal model construction requires H^0 = Q and H^1 = 0."""


class DegreeTooSmall(CdgaLabError):
    """A degree bound below the minimum required by the operation."""


class DimensionMismatch(CdgaLabError):
    """Affine maps over tori of different dimensions were combined."""


class NotInvolution(CdgaLabError):
    """A group generator does not square to the identity."""


class NonClosing(CdgaLabError):
    """Group closure exceeded the configured element bound."""


class IdentityElement(CdgaLabError):
    """The fixed locus of the identity is the whole torus, not a census entry."""
