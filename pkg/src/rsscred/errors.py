"""Exception hierarchy shared by every layer of the toolkit."""


class RssError(Exception):
    """Base class for all errors raised by rsscred."""


class InvalidParameter(RssError, ValueError):
    """An argument violates an operation's precondition."""


class CompatibilityError(RssError, TypeError):
    """Values from two different group backends were combined."""


class DecodeError(InvalidParameter):
    """A byte string is not a valid encoding."""


class PointDecodeError(DecodeError):
    """Bytes of the right length that are not a valid group element."""


class InternalError(RssError, AssertionError):
    """An internal consistency check failed. Always a bug."""


class CodecError(RssError, ValueError):
    """A credential document or redaction policy is malformed."""


class InvalidSignatureEncoding(CodecError):
    """A signature block whose elements do not decode to group elements."""


class SignatureInvalid(RssError):
    """A signature does not verify where a valid one is required."""
