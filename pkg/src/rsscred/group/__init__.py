"""Pairing group backends."""

from .base import (
    G1,
    G2,
    GT,
    BackendDescriptor,
    Element,
    PairingBackend,
    check_compatible,
    default_rng,
)
from .mock import MOCK, MockBackend

_BACKENDS: dict = {}


def get_backend(name: str) -> PairingBackend:
    """Look a backend up by its descriptor name."""
    if not _BACKENDS:
        from .bls12_381 import BLS12_381

        _BACKENDS[BLS12_381.name] = BLS12_381
        _BACKENDS[MOCK.name] = MOCK
    try:
        return _BACKENDS[name]
    except KeyError:
        raise KeyError(f"unknown backend {name!r}; known: {sorted(_BACKENDS)}") from None


def backend_for(descriptor: BackendDescriptor) -> PairingBackend:
    """Backend matching a decoded header, checking the parameters agree."""
    from ..errors import CompatibilityError, DecodeError

    try:
        backend = get_backend(descriptor.name)
    except KeyError as exc:
        raise DecodeError(str(exc)) from None
    if backend.descriptor != descriptor:
        raise CompatibilityError(f"header parameters do not match backend {descriptor.name}")
    return backend


__all__ = [
    "G1", "G2", "GT", "BackendDescriptor", "Element", "PairingBackend",
    "MOCK", "MockBackend", "backend_for", "check_compatible", "default_rng", "get_backend",
]
