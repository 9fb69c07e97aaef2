"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed textual input. Carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class NotHonestError(ValueError):
    """Support does not affinely span the dimension the operation requires."""


class UnsupportedSparsityError(Exception):
    """Input has more than d+2 terms after lattice reduction (out of scope)."""


class ResourceCapError(Exception):
    """A configured size cap (variable count, padding block size) was hit."""
