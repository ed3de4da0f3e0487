"""Exception types shared across the package."""


class DlqError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DlqError):
    """Malformed input text. Carries the 1-based line and column."""

    def __init__(self, line, column, message):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class EmptyABox(DlqError):
    """A knowledge base must assert at least one ABox axiom."""


class EmptyQuery(DlqError):
    """A query disjunct must contain at least one atom."""


class UnassignedIndividual(DlqError):
    """An individual name referenced by an operation has no element assigned."""

    def __init__(self, name):
        super().__init__(f"individual {name!r} is not assigned")
        self.name = name


class EmptyRestriction(DlqError):
    """Restriction to the empty element set is undefined."""


class NamesUnassigned(DlqError):
    """Unravelling requires a non-empty, fully assigned root name set."""


class SizeLimitExceeded(DlqError):
    """A generated structure grew past the configured node cap."""


class NotTreeShaped(DlqError):
    """Rolling-up is only defined for forward-tree-shaped queries."""


class ForkNotPresent(DlqError):
    """The fork handed to eliminate_fork does not occur in the query."""


class HasForks(DlqError):
    """qtree_set expects a fork-free (maximal) query."""


class InvalidSplitting(DlqError):
    """A splitting failed validation; carries the violated items."""

    def __init__(self, violations):
        super().__init__(f"invalid splitting: {', '.join(violations)}")
        self.violations = tuple(violations)


class NotAMatch(DlqError):
    """The supplied assignment is not a match for the query."""


class NotLffLike(DlqError):
    """The interpretation is not locally forward-forest-like at the needed radius."""


class ResourceLimitExceeded(DlqError):
    """A satisfiability search ran past its node or time cap."""
