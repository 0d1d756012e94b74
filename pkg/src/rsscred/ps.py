"""Pointcheval-Sanders signatures on vectors of scalars.

The signature is ``(h, h^(x + sum_j y_j m_j))`` for a random ``h`` in G1 and
verifies with one pairing equation. Anyone can re-randomize a signature by
raising both components to the same nonzero power.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidParameter
from .group import G1, G2, Element, PairingBackend, check_compatible, default_rng
from .wire import Reader, Writer

SK_MAGIC = b"PSSK\x00\x00\x00\x01"
PK_MAGIC = b"PSPK\x00\x00\x00\x01"
SIG_MAGIC = b"PSSG\x00\x00\x00\x01"


@dataclass(frozen=True)
class PsSecretKey:
    backend: PairingBackend
    x: int
    y: tuple[int, ...]

    def __post_init__(self):
        if len(self.y) < 1:
            raise InvalidParameter("PS key needs at least one message slot")

    @property
    def r(self) -> int:
        return len(self.y)

    def to_bytes(self) -> bytes:
        return Writer(SK_MAGIC, self.backend).u32(self.r).scalar(self.x, *self.y).getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "PsSecretKey":
        rd = Reader(data, SK_MAGIC)
        r = rd.u32()
        x = rd.scalar()
        y = tuple(rd.scalar() for _ in range(r))
        rd.end()
        return cls(rd.backend, x, y)


@dataclass(frozen=True)
class PsPublicKey:
    g_tilde: Element
    x_tilde: Element
    y_tilde: tuple[Element, ...]

    @property
    def backend(self) -> PairingBackend:
        return self.g_tilde.backend

    @property
    def r(self) -> int:
        return len(self.y_tilde)

    def to_bytes(self) -> bytes:
        w = Writer(PK_MAGIC, self.backend).u32(self.r)
        return w.element(self.g_tilde, self.x_tilde, *self.y_tilde).getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "PsPublicKey":
        rd = Reader(data, PK_MAGIC)
        r = rd.u32()
        g_tilde, x_tilde = rd.elements(G2, 2)
        y_tilde = tuple(rd.elements(G2, r))
        rd.end()
        if g_tilde.is_identity():
            raise InvalidParameter("public key generator is the identity")
        return cls(g_tilde, x_tilde, y_tilde)


@dataclass(frozen=True)
class PsSignature:
    sigma1: Element
    sigma2: Element

    def to_bytes(self) -> bytes:
        return Writer(SIG_MAGIC, self.sigma1.backend).element(self.sigma1, self.sigma2).getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "PsSignature":
        rd = Reader(data, SIG_MAGIC)
        s1, s2 = rd.elements(G1, 2)
        rd.end()
        return cls(s1, s2)


def ps_public_key(sk: PsSecretKey, g_tilde: Element) -> PsPublicKey:
    if g_tilde.is_identity():
        raise InvalidParameter("g_tilde must not be the identity")
    return PsPublicKey(g_tilde, g_tilde ** sk.x, tuple(g_tilde ** y for y in sk.y))


def ps_keygen(backend: PairingBackend, r: int, rng: random.Random | None = None):
    """Sample ``(sk, pk)`` for messages of ``r`` scalars."""
    if r < 1:
        raise InvalidParameter(f"message count must be >= 1, got {r}")
    rng = rng or default_rng()
    g_tilde = backend.random_element(G2, rng)
    sk = PsSecretKey(
        backend,
        backend.random_scalar(rng),
        tuple(backend.random_scalar(rng) for _ in range(r)),
    )
    return sk, ps_public_key(sk, g_tilde)


def _exponent(sk: PsSecretKey, m: Sequence[int]) -> int:
    if len(m) != sk.r:
        raise InvalidParameter(f"expected {sk.r} messages, got {len(m)}")
    return (sk.x + sum(y * mj for y, mj in zip(sk.y, m))) % sk.backend.order


def ps_sign_with(sk: PsSecretKey, m: Sequence[int], h: Element) -> PsSignature:
    """Deterministic signing core with a caller-chosen ``h``."""
    if h.group != G1 or h.is_identity():
        raise InvalidParameter("h must be a non-identity G1 element")
    check_compatible(sk.backend, h.backend)
    return PsSignature(h, h ** _exponent(sk, m))


def ps_sign(sk: PsSecretKey, m: Sequence[int], rng: random.Random | None = None) -> PsSignature:
    rng = rng or default_rng()
    # random_element never returns the identity
    return ps_sign_with(sk, m, sk.backend.random_element(G1, rng))


def ps_verify(pk: PsPublicKey, m: Sequence[int], sig: PsSignature) -> bool:
    if len(m) != pk.r:
        raise InvalidParameter(f"expected {pk.r} messages, got {len(m)}")
    backend = pk.backend
    check_compatible(backend, sig.sigma1.backend)
    check_compatible(backend, sig.sigma2.backend)
    if sig.sigma1.is_identity():
        return False
    lhs_g2 = pk.x_tilde * backend.multiexp(G2, pk.y_tilde, m)
    return backend.pairing(sig.sigma1, lhs_g2) == backend.pairing(sig.sigma2, pk.g_tilde)


def ps_randomize(sig: PsSignature, rng: random.Random | None = None) -> PsSignature:
    """Same message, fresh-looking signature: ``(s1^k, s2^k)`` for nonzero ``k``."""
    rng = rng or default_rng()
    k = sig.sigma1.backend.random_scalar(rng, nonzero=True)
    return PsSignature(sig.sigma1 ** k, sig.sigma2 ** k)
