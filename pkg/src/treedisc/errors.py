"""Exception types raised across the package.

Each class names the violated precondition or invariant; all inherit from
``TreeDiscError`` so callers can catch the whole family at once.
"""


class TreeDiscError(Exception):
    """Base class for all errors raised by this package."""


class ParamOutOfRange(TreeDiscError):
    """A numeric parameter is outside its documented range."""


class SelfLoop(TreeDiscError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(TreeDiscError):
    """The same unordered vertex pair appears twice."""


class Cyclic(TreeDiscError):
    """The edge list contains a cycle."""


class Disconnected(TreeDiscError):
    """The edge list does not span a single connected component."""


class IsPath(TreeDiscError):
    """The tree is a path, so no branching vertex exists."""


class BadEdgeIndex(TreeDiscError):
    """An edge index is not in ``0..m-1``."""


class ParseError(TreeDiscError):
    """Malformed edge-list text; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BadColour(TreeDiscError):
    """A colour is outside ``1..r``."""


class DisconnectedSubtree(TreeDiscError):
    """An edge set does not form a connected subtree."""


class NonFiniteWeight(TreeDiscError):
    """An edge weight is NaN or infinite."""


class LengthMismatch(TreeDiscError):
    """Two vectors that must have equal length do not."""


class NonUnitDirection(TreeDiscError):
    """A direction vector is not of unit Euclidean norm."""


class DomainError(TreeDiscError):
    """A real argument is outside the function's domain."""


class BudgetExceeded(TreeDiscError):
    """An exhaustive search would exceed the configured budget."""


class TooSmall(TreeDiscError):
    """The tree has too few vertices for the requested operation."""


class CertificateError(TreeDiscError):
    """A guaranteed certificate failed to hold (indicates a bug)."""
