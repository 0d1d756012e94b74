"""Backend-neutral view of a Type-3 bilinear group.

Group elements are written multiplicatively: ``a * b`` is the group law and
``a ** k`` is exponentiation by an integer scalar. Scalars are plain Python
ints reduced modulo the backend's group order.
"""

from __future__ import annotations

import hashlib
import random
import secrets
import struct
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import CompatibilityError, DecodeError, InvalidParameter

G1 = "G1"
G2 = "G2"
GT = "GT"
GROUPS = (G1, G2, GT)


def default_rng() -> random.Random:
    """OS-backed randomness. Seeded ``random.Random`` instances are for tests."""
    return secrets.SystemRandom()


@dataclass(frozen=True)
class BackendDescriptor:
    """Identifies a parameter set inside serialized keys and signatures.

    Wire layout: ``u8 len(name) | name | u8 len(order) | order (big-endian)
    | u16 g1_len | u16 g2_len``.
    """

    name: str
    group_order_bytes: bytes
    g1_encoded_len: int
    g2_encoded_len: int

    @property
    def order(self) -> int:
        return int.from_bytes(self.group_order_bytes, "big")

    @property
    def scalar_len(self) -> int:
        return len(self.group_order_bytes)

    def encode(self) -> bytes:
        name = self.name.encode("ascii")
        return (
            bytes([len(name)]) + name
            + bytes([len(self.group_order_bytes)]) + self.group_order_bytes
            + struct.pack(">HH", self.g1_encoded_len, self.g2_encoded_len)
        )

    @classmethod
    def decode(cls, data: bytes, offset: int = 0) -> tuple["BackendDescriptor", int]:
        try:
            ln = data[offset]
            name = data[offset + 1 : offset + 1 + ln].decode("ascii")
            offset += 1 + ln
            lo = data[offset]
            order = data[offset + 1 : offset + 1 + lo]
            offset += 1 + lo
            g1_len, g2_len = struct.unpack_from(">HH", data, offset)
        except (IndexError, UnicodeDecodeError, struct.error) as exc:
            raise DecodeError(f"truncated or malformed backend header: {exc}") from None
        if len(name) != ln or len(order) != lo:
            raise DecodeError("truncated backend header")
        return cls(name, order, g1_len, g2_len), offset + 4


class Element:
    """An immutable element of G1, G2 or GT belonging to one backend."""

    __slots__ = ("backend", "group", "raw")

    def __init__(self, backend: "PairingBackend", group: str, raw) -> None:
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("group elements are immutable")

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected a group element, got {type(other).__name__}")
        check_compatible(self.backend, other.backend)
        if other.group != self.group:
            raise CompatibilityError(f"cannot combine {self.group} with {other.group}")

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.backend, self.group, self.backend._op(self.group, self.raw, other.raw))

    def __pow__(self, k: int) -> "Element":
        k = int(k) % self.backend.order
        return Element(self.backend, self.group, self.backend._exp(self.group, self.raw, k))

    def inverse(self) -> "Element":
        return self ** -1

    def is_identity(self) -> bool:
        return self.backend._is_identity(self.group, self.raw)

    def to_bytes(self) -> bytes:
        return self.backend._encode(self.group, self.raw)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.group == other.group
            and self.backend.descriptor == other.backend.descriptor
            and self.backend._eq(self.group, self.raw, other.raw)
        )

    def __hash__(self) -> int:
        return hash((self.backend.name, self.group, self.to_bytes()))

    def __repr__(self) -> str:
        return f"<{self.backend.name} {self.group} {self.to_bytes()[:8].hex()}..>"


def check_compatible(a: "PairingBackend", b: "PairingBackend") -> None:
    if a is not b and a.descriptor != b.descriptor:
        raise CompatibilityError(f"backend mismatch: {a.name} vs {b.name}")


class PairingBackend(ABC):
    """A concrete Type-3 pairing group with prime order ``order``."""

    name: str
    order: int
    encoded_len: dict[str, int]

    @property
    def descriptor(self) -> BackendDescriptor:
        nbytes = (self.order.bit_length() + 7) // 8
        return BackendDescriptor(
            self.name,
            self.order.to_bytes(nbytes, "big"),
            self.encoded_len[G1],
            self.encoded_len[G2],
        )

    @property
    def scalar_len(self) -> int:
        return (self.order.bit_length() + 7) // 8

    # -- raw hooks implemented by each backend -------------------------------
    @abstractmethod
    def _generator_raw(self, group: str): ...

    @abstractmethod
    def _identity_raw(self, group: str): ...

    @abstractmethod
    def _op(self, group: str, a, b): ...

    @abstractmethod
    def _exp(self, group: str, a, k: int): ...

    @abstractmethod
    def _eq(self, group: str, a, b) -> bool: ...

    @abstractmethod
    def _encode(self, group: str, a) -> bytes: ...

    @abstractmethod
    def _decode(self, group: str, data: bytes): ...

    @abstractmethod
    def _pair(self, a, b): ...

    def _is_identity(self, group: str, a) -> bool:
        return self._eq(group, a, self._identity_raw(group))

    def _multiexp(self, group: str, raws: list, scalars: list[int]):
        acc = self._identity_raw(group)
        for r, k in zip(raws, scalars):
            acc = self._op(group, acc, self._exp(group, r, k))
        return acc

    # -- public API -----------------------------------------------------------
    def generator(self, group: str) -> Element:
        return Element(self, group, self._generator_raw(group))

    def identity(self, group: str) -> Element:
        return Element(self, group, self._identity_raw(group))

    def pairing(self, a: Element, b: Element) -> Element:
        check_compatible(self, a.backend)
        check_compatible(self, b.backend)
        if a.group != G1 or b.group != G2:
            raise CompatibilityError(f"pairing expects (G1, G2), got ({a.group}, {b.group})")
        return Element(self, GT, self._pair(a.raw, b.raw))

    def multiexp(self, group: str, elements: Sequence[Element], scalars: Iterable[int]) -> Element:
        """Product of ``e_i ** k_i``; the identity for empty input."""
        scalars = [int(k) % self.order for k in scalars]
        if len(scalars) != len(elements):
            raise InvalidParameter("multiexp: length mismatch")
        for e in elements:
            check_compatible(self, e.backend)
            if e.group != group:
                raise CompatibilityError(f"multiexp over {group} got a {e.group} element")
        if not elements:
            return self.identity(group)
        return Element(self, group, self._multiexp(group, [e.raw for e in elements], scalars))

    def decode(self, group: str, data: bytes) -> Element:
        if len(data) != self.encoded_len[group]:
            raise DecodeError(
                f"{group} encoding must be {self.encoded_len[group]} bytes, got {len(data)}"
            )
        return Element(self, group, self._decode(group, bytes(data)))

    def random_scalar(self, rng: random.Random, nonzero: bool = False) -> int:
        """Uniform draw from Z_p, or Z_p^* when ``nonzero``."""
        return rng.randrange(1 if nonzero else 0, self.order)

    def random_element(self, group: str, rng: random.Random) -> Element:
        """Uniform non-identity element (a random generator, since the order is prime)."""
        return self.generator(group) ** self.random_scalar(rng, nonzero=True)

    def hash_to_scalar(self, domain_tag: bytes, payload: bytes) -> int:
        """Hash into Z_p^*.

        SHA-512 over ``u16 len(tag) | tag | u32 counter | payload`` reduced
        mod p; a zero result is re-hashed with the next counter value.
        """
        if len(domain_tag) > 0xFFFF:
            raise InvalidParameter("domain tag too long")
        prefix = struct.pack(">H", len(domain_tag)) + domain_tag
        counter = 0
        while True:
            digest = hashlib.sha512(prefix + struct.pack(">I", counter) + payload).digest()
            value = int.from_bytes(digest, "big") % self.order
            if value:
                return value
            counter += 1

    def scalar_to_bytes(self, k: int) -> bytes:
        """Fixed-length big-endian encoding of a reduced scalar."""
        return (int(k) % self.order).to_bytes(self.scalar_len, "big")

    def scalar_from_bytes(self, data: bytes) -> int:
        if len(data) != self.scalar_len:
            raise DecodeError(f"scalar encoding must be {self.scalar_len} bytes")
        value = int.from_bytes(data, "big")
        if value >= self.order:
            raise DecodeError("non-canonical scalar encoding")
        return value

    def scalar_inverse(self, k: int) -> int:
        k = int(k) % self.order
        if k == 0:
            raise InvalidParameter("zero has no inverse")
        return pow(k, -1, self.order)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"
