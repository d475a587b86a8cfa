"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Raised when an argument violates a documented precondition."""


class ParseError(ValueError):
    """Raised on malformed input text; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NumericalFailure(RuntimeError):
    """Raised when an iterative routine leaves its tolerance or budget."""

    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration


class MissingRadius(KeyError):
    """Raised when a Van der Waals radius table lacks an element."""

    def __init__(self, element):
        super().__init__(element)
        self.element = element

    def __str__(self):
        return f"no Van der Waals radius for element {self.element!r}"
