"""BLS12-381 backend on top of the arkworks bindings.

Encodings are the standard compressed point formats (48 bytes for G1, 96 for
G2, flag bits in the top three bits of the first byte). GT elements encode to
576 bytes but cannot be decoded: the bindings expose no parser for them.
"""

from __future__ import annotations

import py_arkworks_bls12381 as ark

from ..errors import PointDecodeError
from .base import G1, G2, GT, PairingBackend

ORDER = 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001

_POINT = {G1: ark.G1Point, G2: ark.G2Point}


def _sc(k: int) -> ark.Scalar:
    return ark.Scalar.from_le_bytes(k.to_bytes(32, "little"))


class Bls12381Backend(PairingBackend):
    name = "bls12_381"
    order = ORDER
    encoded_len = {G1: 48, G2: 96, GT: 576}

    def _generator_raw(self, group):
        if group == GT:
            return ark.GT.pairing(ark.G1Point(), ark.G2Point())
        return _POINT[group]()

    def _identity_raw(self, group):
        if group == GT:
            return ark.GT.one()
        return _POINT[group].identity()

    def _op(self, group, a, b):
        return a * b if group == GT else a + b

    def _exp(self, group, a, k):
        if group != GT:
            return a * _sc(k)
        # no native GT exponentiation in the bindings
        result = ark.GT.one()
        base = a
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _eq(self, group, a, b):
        return a == b

    def _encode(self, group, a):
        if group == GT:
            return bytes.fromhex(str(a))
        return bytes(a.to_compressed_bytes())

    def _decode(self, group, data):
        if group == GT:
            raise NotImplementedError("GT decoding is not available for bls12_381")
        try:
            return _POINT[group].from_compressed_bytes(data)
        except ValueError as exc:
            raise PointDecodeError(f"invalid {group} point: {exc}") from None

    def _multiexp(self, group, raws, scalars):
        if group == GT:
            return super()._multiexp(group, raws, scalars)
        return _POINT[group].multiexp_unchecked(raws, [_sc(k) for k in scalars])

    def _pair(self, a, b):
        return ark.GT.pairing(a, b)


BLS12_381 = Bls12381Backend()
