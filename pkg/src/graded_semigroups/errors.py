"""Exception hierarchy shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class MixedParents(ToolkitError):
    """Group elements from different parent groups were combined."""


class InvalidGroupTable(ToolkitError):
    """An explicit operation table violates the group axioms."""


class NotInverse(ToolkitError):
    """An inverse-semigroup operation was applied to a backend without inverses."""


class InfiniteBackend(ToolkitError):
    """An exact operation was applied to a backend that is not finite."""


class InvalidGraph(ToolkitError):
    """A graph description references unknown vertices or duplicates ids."""


class GraphMismatch(ToolkitError):
    """Elements of graph inverse semigroups over different graphs were combined."""


class ZeroElement(ToolkitError):
    """The zero element was passed where a nonzero element is required."""


class EmptyWindow(ToolkitError):
    """A covering-graph window contained no group elements."""


class WindowTooSmall(ToolkitError):
    """An element's image requires a covering-graph generator outside the window."""


class InvalidGrading(ToolkitError):
    """A degree map fails the grading law on the checked fragment."""


class NoLocalUnits(ToolkitError):
    """A construction requiring local units was applied to a backend without them."""


class SandwichDegreeViolation(ToolkitError):
    """A sandwich-matrix entry has the wrong degree for its position."""


class GroupNotTorsionFreeAbelian(ToolkitError):
    """A construction requiring a torsion-free abelian grading group got another kind."""


class DegenerateAction(ToolkitError):
    """A partial action whose domains do not cover the acted-on set."""


class InputError(ToolkitError):
    """Malformed JSON input; the message names the offending key."""
