"""Exception hierarchy shared by the library, the service and the CLI."""


class IGTError(Exception):
    """Base class for all toolkit errors."""


class SpecError(IGTError):
    """Invalid group spec: bad syntax or a parameter outside its valid range."""

    def __init__(self, message, position=None, expected=None):
        self.position = position
        self.expected = list(expected or [])
        detail = message
        if position is not None:
            detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected {' or '.join(self.expected)})"
        super().__init__(detail)


class SpecSyntaxError(SpecError):
    pass


class SpecParameterError(SpecError):
    pass


class ResourceLimitError(IGTError):
    """A configured guard (order bound, subgroup count, ...) was exceeded."""
