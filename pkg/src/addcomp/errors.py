"""Exception hierarchy. Each error carries a short machine-readable category."""


class AddcompError(Exception):
    category = "error"


class ParseError(AddcompError):
    category = "parse"


class CapError(AddcompError):
    """A configured size cap (terms, exact search, enumeration, sieve) was hit."""

    category = "cap"


class PreconditionError(AddcompError):
    category = "precondition"


class SpanError(AddcompError):
    """Query outside the range where stored data is exact."""

    category = "span"


class VerificationError(AddcompError):
    category = "verification"
