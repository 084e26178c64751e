"""Exception types raised across the package."""


class InvalidEditError(ValueError):
    """An edit set does not fit the graph it is applied to."""


class TooLargeError(ValueError):
    """Input exceeds the size an exhaustive routine is allowed to handle."""


class ConvergenceError(RuntimeError):
    """The eigenvalue iteration hit its cap before reaching the tolerance."""

    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class BudgetExceeded(RuntimeError):
    """An exact search ran out of its node budget."""


class CountOverflowError(OverflowError):
    """A clique count left the signed 64-bit range."""


class ExtractionFailed(RuntimeError):
    """No r-partite subgraph meeting the size and min-degree goals was found."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class EdgeListParseError(ValueError):
    def __init__(self, message, lineno):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
