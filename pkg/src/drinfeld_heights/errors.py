"""Exception types shared across the package."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class ConfigError(ValueError):
    """A configuration or text input could not be parsed.

    ``position`` is the 0-based column where parsing failed, when known.
    """

    def __init__(self, message, position=None, source=None):
        self.position = position
        self.source = source
        if position is not None:
            message = f"{message} (at column {position + 1})"
            if source is not None:
                message += f"\n  {source}\n  {' ' * position}^"
        super().__init__(message)


class CharacterizationMismatch(AssertionError):
    """Krylov residue order and the valuation conditions disagreed.

    This signals an implementation bug, never a property of the input.
    """


class PrecisionExhausted(ArithmeticError):
    """A truncated local expansion lost every known digit."""
