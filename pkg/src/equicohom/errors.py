"""Exception hierarchy shared across the package."""


class EquicohomError(Exception):
    """Base class for all errors raised by equicohom."""


class CatalogError(EquicohomError):
    """Unknown group family, invalid size, or unsupported catalog request."""


class InclusionError(EquicohomError):
    """An inclusion spec does not apply to the given group pair."""


class RingError(EquicohomError):
    """Malformed graded ring, polynomial, or ring map data."""


class PolynomialParseError(RingError):
    """A polynomial string could not be parsed in the target ring."""


class SetupError(EquicohomError):
    """A kernel-module setup whose compatibility square does not commute."""


class DegreeOverflowError(EquicohomError):
    """A computation was requested beyond the truncation degree."""


class HsopError(EquicohomError):
    """Invalid homogeneous system of parameters for a regular-sequence check."""


class DiagramParseError(EquicohomError):
    """Syntax error in a diagram file; carries a line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DiagramValidationError(EquicohomError):
    """One or more group-diagram invariants are violated."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class CrossCheckError(EquicohomError):
    """An internal consistency check (oracle or theorem) failed."""
