"""Exception hierarchy shared across the toolkit."""


class ToolError(ValueError):
    """Base class for all domain errors raised by this package."""


class DistributionError(ToolError):
    """Malformed distribution or incompatible operands."""


class FieldError(ToolError):
    """Invalid finite-field construction or operation."""


class CodeError(ToolError):
    """Invalid linear-code construction or enumeration limit."""


class MatroidError(ToolError):
    """Rank/independence structure violates the required axioms."""


class SearchBudgetExceeded(ToolError):
    """A brute-force search ran out of budget; the question is undecided."""


class ScanError(ToolError):
    """Simplex scan configuration or size-limit failure."""
