"""Byte layout shared by keys and signatures.

Every blob is ``8-byte magic | backend header | body``. Integers are
big-endian; group elements and scalars use their backend's fixed-length
encodings, so each blob's size is a pure function of its shape.
"""

from __future__ import annotations

import struct

from .errors import DecodeError
from .group import BackendDescriptor, Element, PairingBackend, backend_for

MAGIC_LEN = 8


class Writer:
    def __init__(self, magic: bytes, backend: PairingBackend) -> None:
        assert len(magic) == MAGIC_LEN
        self.backend = backend
        self.buf = bytearray(magic + backend.descriptor.encode())

    def u32(self, v: int) -> "Writer":
        self.buf += struct.pack(">I", v)
        return self

    def blob(self, data: bytes) -> "Writer":
        if len(data) > 0xFF:
            raise ValueError("blob too long")
        self.buf += bytes([len(data)]) + data
        return self

    def element(self, *elements: Element) -> "Writer":
        for e in elements:
            self.buf += e.to_bytes()
        return self

    def scalar(self, *scalars: int) -> "Writer":
        for k in scalars:
            self.buf += self.backend.scalar_to_bytes(k)
        return self

    def getvalue(self) -> bytes:
        return bytes(self.buf)


class Reader:
    def __init__(self, data: bytes, magic: bytes) -> None:
        data = bytes(data)
        if data[:MAGIC_LEN] != magic:
            raise DecodeError(f"bad magic: expected {magic!r}, got {data[:MAGIC_LEN]!r}")
        descriptor, self.pos = BackendDescriptor.decode(data, MAGIC_LEN)
        self.backend = backend_for(descriptor)
        self.data = data

    def _take(self, n: int) -> bytes:
        chunk = self.data[self.pos : self.pos + n]
        if len(chunk) != n:
            raise DecodeError("unexpected end of data")
        self.pos += n
        return chunk

    def u32(self) -> int:
        return struct.unpack(">I", self._take(4))[0]

    def blob(self) -> bytes:
        return self._take(self._take(1)[0])

    def element(self, group: str) -> Element:
        return self.backend.decode(group, self._take(self.backend.encoded_len[group]))

    def elements(self, group: str, count: int) -> list[Element]:
        return [self.element(group) for _ in range(count)]

    def scalar(self) -> int:
        return self.backend.scalar_from_bytes(self._take(self.backend.scalar_len))

    def end(self) -> None:
        if self.pos != len(self.data):
            raise DecodeError(f"{len(self.data) - self.pos} trailing bytes")


def header_len(backend: PairingBackend) -> int:
    return MAGIC_LEN + len(backend.descriptor.encode())
