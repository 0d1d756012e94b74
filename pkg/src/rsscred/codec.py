"""Mapping between credential documents and RSS message vectors.

Only ``credentialSubject`` is signed. It is flattened to dotted paths
(``address.country``) and the attributes are ordered by path, so issuer,
holder and verifier agree on positions without talking to each other.
Everything else in the document (``@context``, ``id``, ``type``,
``issuer``, ...) is carried along as unsigned metadata.

Inserting an attribute into a schema shifts only the positions at or after
its sorted slot; earlier positions keep their index.
"""

from __future__ import annotations

import base64
import binascii
import json
import logging
import random
from dataclasses import dataclass
from decimal import Decimal
from typing import Any, Iterable, Mapping

from .errors import (
    CodecError,
    CompatibilityError,
    DecodeError,
    InvalidParameter,
    InvalidSignatureEncoding,
    PointDecodeError,
    SignatureInvalid,
)
from .group import PairingBackend
from .rss import IndexSet, RssPublicKey, RssSignature, rss_derive, rss_verify

log = logging.getLogger(__name__)

SUBJECT = "credentialSubject"
PROOF = "proof"
PROOF_TYPE = "RedactableSignature"
ATTR_TAG = b"attr"


def load_document(text: str | bytes) -> dict:
    """Parse JSON, keeping decimal literals exact so their text survives."""
    try:
        doc = json.loads(text, parse_float=Decimal)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CodecError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CodecError("credential document must be a JSON object")
    return doc


def _json_default(o):
    if isinstance(o, Decimal):
        return float(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dump_document(doc: Mapping, indent: int | None = None) -> bytes:
    """Deterministic JSON: sorted keys, UTF-8."""
    if indent is None:
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_json_default)
    else:
        text = json.dumps(doc, sort_keys=True, indent=indent, ensure_ascii=False, default=_json_default)
    return text.encode("utf-8")


def _leaf_text(path: str, value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Decimal)):
        return str(value)
    if isinstance(value, float):
        return json.dumps(value)
    raise CodecError(f"attribute {path!r} has unsupported value type {type(value).__name__}")


def _flatten(obj: Mapping, prefix: str, out: dict[str, str]) -> None:
    for key, value in obj.items():
        if not isinstance(key, str) or not key:
            raise CodecError(f"invalid attribute key {key!r} under {prefix or 'subject'!r}")
        path = f"{prefix}.{key}" if prefix else key
        if "\x00" in path:
            raise CodecError(f"attribute path {path!r} contains NUL")
        if isinstance(value, Mapping):
            _flatten(value, path, out)
            continue
        if path in out:
            raise CodecError(f"duplicate attribute path {path!r}")
        out[path] = _leaf_text(path, value)


def _check_prefixes(paths: list[str]) -> None:
    seen = set(paths)
    for p in paths:
        parts = p.split(".")
        for k in range(1, len(parts)):
            if ".".join(parts[:k]) in seen:
                raise CodecError(f"attribute {'.'.join(parts[:k])!r} is both a value and a parent of {p!r}")


def _nest(attributes: Iterable[tuple[str, str]]) -> dict:
    root: dict = {}
    for path, value in attributes:
        node = root
        *parents, leaf = path.split(".")
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = value
    return root


@dataclass(frozen=True)
class Credential:
    metadata: Mapping[str, Any]
    attributes: tuple[tuple[str, str], ...]

    @property
    def n(self) -> int:
        return len(self.attributes)

    @property
    def paths(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.attributes)

    def index_of(self, path: str) -> int:
        """1-based position of ``path``."""
        try:
            return self.paths.index(path) + 1
        except ValueError:
            raise CodecError(f"unknown attribute path {path!r}") from None

    def to_document(self) -> dict:
        return {**self.metadata, SUBJECT: _nest(self.attributes)}

    def canonical_bytes(self) -> bytes:
        return dump_document(self.to_document())


def canonicalize(document: Mapping | str | bytes) -> Credential:
    if isinstance(document, (str, bytes)):
        document = load_document(document)
    if not isinstance(document, Mapping):
        raise CodecError("credential document must be a JSON object")
    subject = document.get(SUBJECT)
    if not isinstance(subject, Mapping):
        raise CodecError(f"document has no {SUBJECT!r} object")
    flat: dict[str, str] = {}
    _flatten(subject, "", flat)
    if not flat:
        raise CodecError("credential has no attributes")
    paths = sorted(flat)
    _check_prefixes(paths)
    metadata = {k: v for k, v in document.items() if k not in (SUBJECT, PROOF)}
    return Credential(metadata, tuple((p, flat[p]) for p in paths))


def encode_attribute(backend: PairingBackend, path: str, value: str) -> int:
    return backend.hash_to_scalar(ATTR_TAG, path.encode("utf-8") + b"\x00" + value.encode("utf-8"))


def encode_attributes(c: Credential, backend: PairingBackend) -> list[int]:
    return [encode_attribute(backend, p, v) for p, v in c.attributes]


@dataclass(frozen=True)
class RedactionPolicy:
    """Either a keep-list or a drop-list of attribute paths."""

    paths: frozenset[str]
    keep: bool = True

    @classmethod
    def keeping(cls, paths: Iterable[str]) -> "RedactionPolicy":
        return cls(frozenset(paths), True)

    @classmethod
    def dropping(cls, paths: Iterable[str]) -> "RedactionPolicy":
        return cls(frozenset(paths), False)

    def resolve(self, c: Credential) -> IndexSet:
        unknown = sorted(self.paths - set(c.paths))
        if unknown:
            raise CodecError(f"unknown attribute paths: {', '.join(unknown)}")
        kept = [i for i, p in enumerate(c.paths, start=1) if (p in self.paths) == self.keep]
        if not kept:
            raise CodecError("redaction policy keeps no attributes")
        return IndexSet(tuple(kept), c.n)


@dataclass(frozen=True)
class RedactedCredential:
    """Disclosed attributes plus the derived signature.

    ``attributes`` is in path order and pairs positionally with the
    ascending ``indices``; sorting is preserved under taking a subset.
    """

    metadata: Mapping[str, Any]
    attributes: tuple[tuple[str, str], ...]
    indices: tuple[int, ...]
    n: int
    signature: RssSignature

    @property
    def disclosed(self) -> tuple[tuple[int, str, str], ...]:
        return tuple((i, p, v) for i, (p, v) in zip(self.indices, self.attributes))

    def to_document(self) -> dict:
        proof = {
            "type": PROOF_TYPE,
            "n": self.n,
            "disclosedIndices": list(self.indices),
            "signatureValue": base64.b64encode(self.signature.to_bytes()).decode("ascii"),
        }
        return {**self.metadata, SUBJECT: _nest(self.attributes), PROOF: proof}

    def to_json(self, indent: int | None = 2) -> bytes:
        return dump_document(self.to_document(), indent=indent) + b"\n"

    @classmethod
    def from_document(cls, document: Mapping | str | bytes) -> "RedactedCredential":
        if isinstance(document, (str, bytes)):
            document = load_document(document)
        proof = document.get(PROOF)
        if not isinstance(proof, Mapping) or proof.get("type") != PROOF_TYPE:
            raise CodecError(f"missing or unrecognized {PROOF!r} block")
        n, indices, sig_b64 = proof.get("n"), proof.get("disclosedIndices"), proof.get("signatureValue")
        if not isinstance(n, int) or isinstance(n, bool):
            raise CodecError("proof.n must be an integer")
        if not isinstance(indices, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in indices):
            raise CodecError("proof.disclosedIndices must be a list of integers")
        if not isinstance(sig_b64, str):
            raise CodecError("proof.signatureValue must be a base64 string")
        try:
            sig = RssSignature.from_bytes(base64.b64decode(sig_b64, validate=True))
        except PointDecodeError as exc:
            raise InvalidSignatureEncoding(f"signature is not made of group elements: {exc}") from None
        except (binascii.Error, DecodeError, InvalidParameter, CompatibilityError) as exc:
            raise CodecError(f"bad signature block: {exc}") from None
        body = canonicalize({k: v for k, v in document.items() if k != PROOF})
        return cls(body.metadata, body.attributes, tuple(indices), n, sig)


def redact(
    c: Credential,
    sig: RssSignature,
    policy: RedactionPolicy,
    pk: RssPublicKey,
    rng: random.Random | None = None,
) -> RedactedCredential:
    """Derive a redacted credential; needs the issuer's public key, not its secret."""
    if c.n != pk.n:
        raise InvalidParameter(f"credential has {c.n} attributes, key expects {pk.n}")
    I = policy.resolve(c)
    m = encode_attributes(c, pk.backend)
    if not sig.is_fresh or not rss_verify(pk, sig, dict(enumerate(m, start=1))):
        raise SignatureInvalid("issuer signature does not verify for this credential")
    derived = rss_derive(pk, sig, m, I, rng)
    kept = tuple(c.attributes[i - 1] for i in I)
    return RedactedCredential(dict(c.metadata), kept, I.indices, c.n, derived)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted


def verify_credential(rc: RedactedCredential, pk: RssPublicKey) -> Verdict:
    """Re-encode the disclosed attributes at their claimed positions and verify."""
    if rc.n != pk.n:
        return Verdict(False, f"credential claims n={rc.n}, key has n={pk.n}")
    if len(rc.indices) != len(rc.attributes):
        return Verdict(False, f"{len(rc.indices)} indices for {len(rc.attributes)} attributes")
    if list(rc.indices) != sorted(set(rc.indices)):
        return Verdict(False, "indices must be strictly increasing")
    try:
        IndexSet(rc.indices, rc.n)
    except InvalidParameter as exc:
        return Verdict(False, f"malformed indices: {exc}")
    disclosed = {i: encode_attribute(pk.backend, p, v) for i, p, v in rc.disclosed}
    try:
        ok = rss_verify(pk, rc.signature, disclosed)
    except CompatibilityError as exc:
        return Verdict(False, str(exc))
    if not ok:
        log.debug("signature rejected for indices %s", rc.indices)
        return Verdict(False, "signature does not verify")
    return Verdict(True, "ok")
