class VarlatError(Exception):
    """Base class for all errors raised by varlat."""


class PreconditionError(VarlatError, ValueError):
    pass


class ResourceLimitError(VarlatError, RuntimeError):
    pass


class ParseError(VarlatError, ValueError):
    def __init__(self, message, text=None, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.text = text
        self.position = position
