"""Exponent-tracking mock backend.

Every element is stored as its discrete logarithm with respect to a fixed
abstract generator of its group, so the pairing is just multiplication of
exponents. Worthless as cryptography; useful as an oracle, because any
protocol equation can be re-checked with integer arithmetic.
"""

from __future__ import annotations

from ..errors import PointDecodeError
from .base import G1, G2, GT, Element, PairingBackend

MERSENNE_61 = (1 << 61) - 1


class MockBackend(PairingBackend):
    """Groups of prime order ``order`` represented by exponents.

    Encoding: each element is its exponent as an 8-byte big-endian integer.
    """

    def __init__(self, order: int = MERSENNE_61, name: str = "mock-exp") -> None:
        if order >= 1 << 64:
            raise ValueError("mock order must fit in 8 bytes")
        self.order = order
        self.name = name
        self.encoded_len = {G1: 8, G2: 8, GT: 8}

    def element(self, group: str, exponent: int) -> Element:
        """The element whose tracked exponent is ``exponent``."""
        return Element(self, group, int(exponent) % self.order)

    @staticmethod
    def exponent(e: Element) -> int:
        return e.raw

    def _generator_raw(self, group):
        return 1

    def _identity_raw(self, group):
        return 0

    def _op(self, group, a, b):
        return (a + b) % self.order

    def _exp(self, group, a, k):
        return a * k % self.order

    def _eq(self, group, a, b):
        return a == b

    def _encode(self, group, a):
        return a.to_bytes(8, "big")

    def _decode(self, group, data):
        value = int.from_bytes(data, "big")
        if value >= self.order:
            raise PointDecodeError("exponent out of range")
        return value

    def _pair(self, a, b):
        return a * b % self.order


MOCK = MockBackend()
