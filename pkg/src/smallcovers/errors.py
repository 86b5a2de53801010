"""Exception types shared across the package."""


class SmallCoversError(Exception):
    """Base class for errors raised by this package."""


class NotABasisError(SmallCoversError):
    """A label list expected to be a GF(2) basis is linearly dependent."""


class ClosureError(SmallCoversError):
    """A closure computation escaped its input set or exceeded its bound."""


class ValidationError(SmallCoversError):
    """A combinatorial polytope failed its structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class FormatError(SmallCoversError):
    """A polytope or labeling file is malformed."""


class SearchInfeasibleError(SmallCoversError):
    """Refusing a search expected to be computationally infeasible."""
