import random

import pytest

from rsscred.errors import CompatibilityError, InvalidParameter
from rsscred.group import G1, G2, MockBackend
from rsscred.ps import (
    PsPublicKey,
    PsSecretKey,
    PsSignature,
    ps_keygen,
    ps_public_key,
    ps_randomize,
    ps_sign,
    ps_sign_with,
    ps_verify,
)


def test_keygen_exponents_mock(mock):
    sk, pk = ps_keygen(mock, 2, random.Random(3))
    g2 = mock.exponent(pk.g_tilde)
    assert [mock.exponent(Y) for Y in pk.y_tilde] == [y * g2 % mock.order for y in sk.y]
    assert mock.exponent(pk.x_tilde) == sk.x * g2 % mock.order
    # with the canonical generator the tracked exponents are the secrets themselves
    pk1 = ps_public_key(sk, mock.generator(G2))
    assert [mock.exponent(Y) for Y in pk1.y_tilde] == list(sk.y)


def test_keygen_shapes_and_errors(mock, rng):
    sk, pk = ps_keygen(mock, 1, rng)
    assert len(sk.y) == len(pk.y_tilde) == 1
    with pytest.raises(InvalidParameter):
        ps_keygen(mock, 0, rng)
    a = ps_keygen(mock, 2, random.Random(1))[1].x_tilde
    b = ps_keygen(mock, 2, random.Random(2))[1].x_tilde
    assert a != b


def test_sign_exponent_oracle(mock):
    sk = PsSecretKey(mock, 3, (2, 5))
    sig = ps_sign_with(sk, [7, 4], mock.element(G1, 1))
    assert mock.exponent(sig.sigma2) == 3 + 2 * 7 + 5 * 4 == 37
    assert ps_verify(ps_public_key(sk, mock.generator(G2)), [7, 4], sig)


def test_sign_verify_and_two_seeds(backend):
    sk, pk = ps_keygen(backend, 3, random.Random(9))
    m = [11, 12, 13]
    s1 = ps_sign(sk, m, random.Random(1))
    s2 = ps_sign(sk, m, random.Random(2))
    assert s1.sigma1 != s2.sigma1
    assert ps_verify(pk, m, s1) and ps_verify(pk, m, s2)
    assert not ps_verify(pk, [12, 12, 13], s1)


def test_identity_sigma1_rejected(backend, rng):
    sk, pk = ps_keygen(backend, 2, rng)
    one = backend.identity(G1)
    assert not ps_verify(pk, [1, 2], PsSignature(one, one))
    assert not ps_verify(pk, [1, 2], PsSignature(one, backend.random_element(G1, rng)))
    with pytest.raises(InvalidParameter):
        ps_sign_with(sk, [1, 2], one)


def test_length_mismatch(mock, rng):
    sk, pk = ps_keygen(mock, 2, rng)
    with pytest.raises(InvalidParameter):
        ps_sign(sk, [1], rng)
    with pytest.raises(InvalidParameter):
        ps_verify(pk, [1, 2, 3], ps_sign(sk, [1, 2], rng))


def test_backend_mismatch(mock, bls, rng):
    sk, pk = ps_keygen(bls, 1, rng)
    sig = ps_sign(ps_keygen(mock, 1, rng)[0], [1], rng)
    with pytest.raises(CompatibilityError):
        ps_verify(pk, [1], sig)


@pytest.mark.parametrize("name", ["mock-exp", "bls12_381"])
def test_correctness_rerandomization_and_rejection(name):
    from rsscred.group import get_backend

    backend = get_backend(name)
    rng = random.Random(name)
    for trial in range(100):
        r = rng.randint(1, 8)
        sk, pk = ps_keygen(backend, r, rng)
        m = [backend.random_scalar(rng) for _ in range(r)]
        sig = ps_sign(sk, m, rng)
        assert ps_verify(pk, m, sig)
        rs = ps_randomize(sig, rng)
        assert rs.sigma1 != sig.sigma1
        assert ps_verify(pk, m, rs)
        which = trial % 3
        if which == 0:
            bad_m = list(m)
            bad_m[rng.randrange(r)] += 1
            assert not ps_verify(pk, bad_m, sig)
        elif which == 1:
            assert not ps_verify(pk, m, PsSignature(sig.sigma1 * backend.generator(G1), sig.sigma2))
        else:
            assert not ps_verify(pk, m, PsSignature(sig.sigma1, sig.sigma2 * backend.generator(G1)))


def test_serialization(backend, rng):
    sk, pk = ps_keygen(backend, 4, rng)
    sig = ps_sign(sk, [1, 2, 3, 4], rng)
    assert PsSecretKey.from_bytes(sk.to_bytes()) == sk
    assert PsPublicKey.from_bytes(pk.to_bytes()) == pk
    assert PsSignature.from_bytes(sig.to_bytes()) == sig
    g1, g2 = backend.encoded_len[G1], backend.encoded_len[G2]
    header = 8 + len(backend.descriptor.encode())
    assert len(sig.to_bytes()) == header + 2 * g1
    assert len(pk.to_bytes()) == header + 4 + (2 + 4) * g2


def test_small_order_mock_signs(rng):
    small = MockBackend(order=101, name="mock-101")
    sk, pk = ps_keygen(small, 1, rng)
    assert ps_verify(pk, [5], ps_sign(sk, [5], rng))
