"""Redactable signatures for selective disclosure of verifiable credentials."""

from .errors import (
    CodecError,
    CompatibilityError,
    DecodeError,
    InternalError,
    InvalidParameter,
    InvalidSignatureEncoding,
    PointDecodeError,
    RssError,
    SignatureInvalid,
)
from .rss import (
    IndexSet,
    RssPublicKey,
    RssSecretKey,
    RssSignature,
    rss_derive,
    rss_keygen,
    rss_pk_size,
    rss_sign,
    rss_signature_size,
    rss_verify,
)

__version__ = "0.1.0"
