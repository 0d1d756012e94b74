"""Redactable signatures with constant-size signatures and linear keys.

A fresh signature is a PS-style pair ``(s1, s1^(x + sum y^i m_i))`` padded with
two identity elements. A holder who knows only the public key can derive a
signature on any non-empty subset ``I`` of the message positions: the redacted
positions are folded into a G2 element ``st``, and a G1 element ``s3``
proves that ``st`` was built honestly. ``s3`` uses key elements
``Y_k = g^(y^k)`` for ``k`` in ``[1, 2n]`` except ``n + 1``; the missing power
is what stops a holder from shifting a disclosed value into a redacted slot.
"""

from __future__ import annotations

import random
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InternalError, InvalidParameter
from .group import G1, G2, Element, PairingBackend, check_compatible, default_rng
from .wire import Reader, Writer, header_len

SK_MAGIC = b"RSSSK001"
PK_MAGIC = b"RSSPK001"
SIG_MAGIC = b"RSSSIG01"

DEFAULT_HASH_ID = b"rss-c"

HashFn = Callable[[bytes], int]


@dataclass(frozen=True)
class IndexSet:
    """Retained positions, 1-based, sorted and duplicate-free."""

    indices: tuple[int, ...]
    n: int

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        if self.n < 1:
            raise InvalidParameter(f"message length must be >= 1, got {self.n}")
        if not idx:
            raise InvalidParameter("index set must not be empty")
        bad = [i for i in idx if not 1 <= i <= self.n]
        if bad:
            raise InvalidParameter(f"indices {bad} outside [1, {self.n}]")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def full(cls, n: int) -> "IndexSet":
        return cls(tuple(range(1, n + 1)), n)

    @property
    def complement(self) -> tuple[int, ...]:
        kept = set(self.indices)
        return tuple(j for j in range(1, self.n + 1) if j not in kept)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __contains__(self, i):
        return i in self.indices

    def encode(self) -> bytes:
        return struct.pack(f">I{len(self.indices)}I", len(self.indices), *self.indices)


@dataclass(frozen=True)
class RssSecretKey:
    backend: PairingBackend
    x: int
    y: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameter(f"message length must be >= 1, got {self.n}")
        if self.y % self.backend.order == 0:
            raise InvalidParameter("y must be nonzero")

    def to_bytes(self) -> bytes:
        return Writer(SK_MAGIC, self.backend).u32(self.n).scalar(self.x, self.y).getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "RssSecretKey":
        rd = Reader(data, SK_MAGIC)
        n = rd.u32()
        x, y = rd.scalar(), rd.scalar()
        rd.end()
        return cls(rd.backend, x, y, n)


@dataclass(frozen=True)
class RssPublicKey:
    """Issuer public key.

    ``Y`` maps ``k`` to ``g^(y^k)`` for ``k`` in ``[1, n]`` and ``[n+2, 2n]``;
    ``y_tilde[i-1]`` is ``g_tilde^(y^i)`` for ``i`` in ``[1, n]``.
    """

    hash_id: bytes
    g: Element
    g_tilde: Element
    Y: Mapping[int, Element] = field(repr=False)
    x_tilde: Element = field(repr=False)
    y_tilde: tuple[Element, ...] = field(repr=False)
    n: int = 0

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise InvalidParameter(f"message length must be >= 1, got {n}")
        expected = set(range(1, n + 1)) | set(range(n + 2, 2 * n + 1))
        if set(self.Y) != expected:
            raise InvalidParameter("Y must be indexed by [1, n] and [n+2, 2n]")
        if len(self.y_tilde) != n:
            raise InvalidParameter("y_tilde must have n entries")
        if self.g.is_identity() or self.g_tilde.is_identity():
            raise InvalidParameter("generators must not be the identity")

    @property
    def backend(self) -> PairingBackend:
        return self.g.backend

    def y_g1(self, k: int) -> Element:
        try:
            return self.Y[k]
        except KeyError:
            raise InternalError(f"key element Y_{k} does not exist (n={self.n})") from None

    def to_bytes(self) -> bytes:
        n = self.n
        w = Writer(PK_MAGIC, self.backend).u32(n).blob(self.hash_id)
        w.element(self.g, self.g_tilde, self.x_tilde)
        w.element(*(self.Y[k] for k in range(1, n + 1)))
        w.element(*(self.Y[k] for k in range(n + 2, 2 * n + 1)))
        w.element(*self.y_tilde)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "RssPublicKey":
        rd = Reader(data, PK_MAGIC)
        n = rd.u32()
        if n < 1:
            raise InvalidParameter("message length must be >= 1")
        hash_id = rd.blob()
        g = rd.element(G1)
        g_tilde, x_tilde = rd.elements(G2, 2)
        keys = list(range(1, n + 1)) + list(range(n + 2, 2 * n + 1))
        Y = dict(zip(keys, rd.elements(G1, len(keys))))
        y_tilde = tuple(rd.elements(G2, n))
        rd.end()
        return cls(hash_id, g, g_tilde, Y, x_tilde, y_tilde, n)


@dataclass(frozen=True)
class RssSignature:
    sigma1: Element
    sigma2: Element
    sigma3: Element
    sigma_tilde: Element

    def __post_init__(self):
        groups = (self.sigma1.group, self.sigma2.group, self.sigma3.group, self.sigma_tilde.group)
        if groups != (G1, G1, G1, G2):
            raise InvalidParameter(f"signature components have groups {groups}")
        b = self.sigma1.backend
        for e in (self.sigma2, self.sigma3, self.sigma_tilde):
            check_compatible(b, e.backend)

    @property
    def backend(self) -> PairingBackend:
        return self.sigma1.backend

    @property
    def is_fresh(self) -> bool:
        return self.sigma3.is_identity() and self.sigma_tilde.is_identity()

    def components(self) -> tuple[Element, Element, Element, Element]:
        return self.sigma1, self.sigma2, self.sigma3, self.sigma_tilde

    def to_bytes(self) -> bytes:
        return Writer(SIG_MAGIC, self.backend).element(*self.components()).getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "RssSignature":
        rd = Reader(data, SIG_MAGIC)
        s1, s2, s3 = rd.elements(G1, 3)
        st = rd.element(G2)
        rd.end()
        return cls(s1, s2, s3, st)


# -- sizes -------------------------------------------------------------------

def signature_layout_size(backend: PairingBackend) -> int:
    """Documented signature size: header + 3 G1 + 1 G2, whatever ``n`` or ``I``."""
    return header_len(backend) + 3 * backend.encoded_len[G1] + backend.encoded_len[G2]


def public_key_layout_size(backend: PairingBackend, n: int, hash_id: bytes = DEFAULT_HASH_ID) -> int:
    """Documented public-key size: ``fixed + n * (2 * g1_len + g2_len)``.

    The fixed part is header, u32 n, the hash id blob and two G2 elements
    (``g_tilde``, ``x_tilde``). Per unit of ``n``: two G1 elements (``g``
    plus the ``2n - 1`` entries of ``Y`` make ``2n``) and one G2 element.
    """
    g1, g2 = backend.encoded_len[G1], backend.encoded_len[G2]
    fixed = header_len(backend) + 4 + 1 + len(hash_id) + 2 * g2
    return fixed + n * (2 * g1 + g2)


def rss_signature_size(sig: RssSignature) -> int:
    return len(sig.to_bytes())


def rss_pk_size(pk: RssPublicKey) -> int:
    return len(pk.to_bytes())


# -- key generation ------------------------------------------------------------

def rss_public_key(
    sk: RssSecretKey, g: Element, g_tilde: Element, hash_id: bytes = DEFAULT_HASH_ID
) -> RssPublicKey:
    """Deterministic public key for ``sk`` over generators ``(g, g_tilde)``."""
    backend, n, p = sk.backend, sk.n, sk.backend.order
    powers = {k: pow(sk.y, k, p) for k in range(1, 2 * n + 1)}
    Y = {k: g ** powers[k] for k in powers if k != n + 1}
    y_tilde = tuple(g_tilde ** powers[i] for i in range(1, n + 1))
    check_compatible(backend, g.backend)
    return RssPublicKey(hash_id, g, g_tilde, Y, g_tilde ** sk.x, y_tilde, n)


def rss_secret_key(backend: PairingBackend, n: int, rng: random.Random | None = None) -> RssSecretKey:
    if n < 1:
        raise InvalidParameter(f"message length must be >= 1, got {n}")
    rng = rng or default_rng()
    return RssSecretKey(backend, backend.random_scalar(rng), backend.random_scalar(rng, nonzero=True), n)


def rss_keygen(
    backend: PairingBackend,
    n: int,
    rng: random.Random | None = None,
    hash_id: bytes = DEFAULT_HASH_ID,
) -> tuple[RssSecretKey, RssPublicKey]:
    rng = rng or default_rng()
    sk = rss_secret_key(backend, n, rng)
    g = backend.random_element(G1, rng)
    g_tilde = backend.random_element(G2, rng)
    return sk, rss_public_key(sk, g, g_tilde, hash_id)


# -- signing -----------------------------------------------------------------

def _check_messages(m: Sequence[int], n: int) -> None:
    if len(m) != n:
        raise InvalidParameter(f"expected {n} messages, got {len(m)}")


def rss_sign_with(sk: RssSecretKey, m: Sequence[int], sigma1: Element) -> RssSignature:
    """Signing core with a caller-chosen ``sigma1``."""
    _check_messages(m, sk.n)
    backend, p = sk.backend, sk.backend.order
    if sigma1.group != G1 or sigma1.is_identity():
        raise InvalidParameter("sigma1 must be a non-identity G1 element")
    exponent = (sk.x + sum(pow(sk.y, i, p) * mi for i, mi in enumerate(m, start=1))) % p
    return RssSignature(sigma1, sigma1 ** exponent, backend.identity(G1), backend.identity(G2))


def rss_sign(sk: RssSecretKey, m: Sequence[int], rng: random.Random | None = None) -> RssSignature:
    rng = rng or default_rng()
    return rss_sign_with(sk, m, sk.backend.random_element(G1, rng))


# -- derivation ----------------------------------------------------------------

def challenge_payload(sigma1: Element, sigma2: Element, sigma_tilde: Element, I: IndexSet, i: int) -> bytes:
    """Hash input for the per-index scalar ``c_i``.

    ``enc(s1) | enc(s2) | enc(st) | u32 |I| | u32 indices... | u32 i``.
    """
    return (
        sigma1.to_bytes() + sigma2.to_bytes() + sigma_tilde.to_bytes()
        + I.encode() + struct.pack(">I", i)
    )


def challenges(
    pk: RssPublicKey,
    sigma1: Element,
    sigma2: Element,
    sigma_tilde: Element,
    I: IndexSet,
    hash_fn: HashFn | None = None,
) -> dict[int, int]:
    if hash_fn is None:
        def hash_fn(payload: bytes) -> int:
            return pk.backend.hash_to_scalar(pk.hash_id, payload)
    return {i: hash_fn(challenge_payload(sigma1, sigma2, sigma_tilde, I, i)) for i in I}


def rss_derive_with(
    pk: RssPublicKey,
    sig: RssSignature,
    m: Sequence[int],
    I: IndexSet,
    r: int,
    t: int,
    hash_fn: HashFn | None = None,
) -> RssSignature:
    """Derivation core with caller-chosen randomizers ``r`` (nonzero) and ``t``."""
    backend, n, p = pk.backend, pk.n, pk.backend.order
    _check_messages(m, n)
    check_compatible(backend, sig.backend)
    if I.n != n:
        raise InvalidParameter(f"index set is over [1, {I.n}], key is over [1, {n}]")
    if not sig.is_fresh:
        raise InvalidParameter("can only derive from a fresh (issuer) signature")
    if r % p == 0:
        raise InvalidParameter("r must be nonzero")
    redacted = I.complement

    s1 = sig.sigma1 ** r
    s2 = (sig.sigma2 ** r) * (s1 ** t)
    st = (pk.g_tilde ** t) * backend.multiexp(G2, [pk.y_tilde[j - 1] for j in redacted], [m[j - 1] for j in redacted])

    c = challenges(pk, s1, s2, st, I, hash_fn)
    exps: dict[int, int] = {}
    for i in I:
        k = n + 1 - i
        exps[k] = (exps.get(k, 0) + t * c[i]) % p
        for j in redacted:
            k = n + 1 - i + j
            if k == n + 1:
                raise InternalError(f"derive touched Y_(n+1) for i={i}, j={j}")
            exps[k] = (exps.get(k, 0) + m[j - 1] * c[i]) % p
    keys = sorted(exps)
    s3 = backend.multiexp(G1, [pk.y_g1(k) for k in keys], [exps[k] for k in keys])
    return RssSignature(s1, s2, s3, st)


def rss_derive(
    pk: RssPublicKey,
    sig: RssSignature,
    m: Sequence[int],
    I: IndexSet,
    rng: random.Random | None = None,
) -> RssSignature:
    """Holder-side derivation of a signature on ``{m_i : i in I}``.

    Needs only the issuer's public key.
    """
    rng = rng or default_rng()
    r = pk.backend.random_scalar(rng, nonzero=True)
    t = pk.backend.random_scalar(rng, nonzero=True)
    return rss_derive_with(pk, sig, m, I, r, t)


# -- verification --------------------------------------------------------------

def rss_verify(
    pk: RssPublicKey,
    sig: RssSignature,
    disclosed: Mapping[int, int],
    hash_fn: HashFn | None = None,
) -> bool:
    """Check a (fresh or derived) signature on the disclosed messages.

    ``disclosed`` maps 1-based positions to message scalars; its key set is
    the index set ``I``.
    """
    backend = pk.backend
    check_compatible(backend, sig.backend)
    I = IndexSet(tuple(disclosed), pk.n)
    s1, s2, s3, st = sig.components()
    if s1.is_identity():
        return False
    if st.is_identity() and not s3.is_identity():
        return False

    agg = backend.multiexp(G2, [pk.y_tilde[i - 1] for i in I], [disclosed[i] for i in I])
    if backend.pairing(s1, pk.x_tilde * st * agg) != backend.pairing(s2, pk.g_tilde):
        return False

    c = challenges(pk, s1, s2, st, I, hash_fn)
    link = backend.multiexp(G1, [pk.y_g1(pk.n + 1 - i) for i in I], [c[i] for i in I])
    return backend.pairing(s3, pk.g_tilde) == backend.pairing(link, st)


def rss_verify_many(
    pk: RssPublicKey,
    items: Iterable[tuple[RssSignature, Mapping[int, int]]],
    workers: int = 1,
) -> list[bool]:
    """Verify several signatures; ``workers > 1`` uses a thread pool."""
    items = list(items)
    if workers <= 1:
        return [rss_verify(pk, s, d) for s, d in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda sd: rss_verify(pk, *sd), items))
