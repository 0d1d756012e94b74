"""``rsscred`` command-line tool: issuer, holder and verifier roles.

Exit codes:
    0  success (verify: accepted)
    1  verify: signature rejected
    2  invalid argument (bad n, attribute-count mismatch, unknown or empty keep-set)
    3  I/O failure
    4  malformed input file
    5  issuer signature invalid for the document (redact)

Setting ``RSS_CREDS_TEST_MODE=1`` adds a ``--seed`` flag to keygen, issue and
redact for reproducible runs; without it all randomness comes from the OS.
``RSS_CREDS_HOME`` is the default keystore directory.
"""

from __future__ import annotations

import argparse
import base64
import binascii
import datetime as dt
import hashlib
import json
import os
import random
import sys
from pathlib import Path

from .bench import FORMATS, BenchConfig, emit_table, run_bench
from .codec import (
    RedactedCredential,
    RedactionPolicy,
    canonicalize,
    encode_attributes,
    redact,
    verify_credential,
)
from .errors import (
    CodecError,
    CompatibilityError,
    DecodeError,
    InvalidParameter,
    InvalidSignatureEncoding,
    SignatureInvalid,
)
from .group import default_rng, get_backend
from .rss import RssPublicKey, RssSecretKey, RssSignature, rss_keygen, rss_sign

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_IO, EXIT_MALFORMED, EXIT_BADSIG = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _test_mode_enabled() -> bool:
    return os.environ.get("RSS_CREDS_TEST_MODE") == "1"


def keystore_home() -> Path:
    return Path(os.environ.get("RSS_CREDS_HOME", Path.home() / ".rsscred"))


def _rng(args) -> random.Random:
    seed = getattr(args, "seed", None)
    return random.Random(seed) if seed is not None else default_rng()


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror}") from None


def _write(path: Path, data: bytes, private: bool = False) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if private:
            fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o600)
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.chmod(path, 0o600)
        else:
            path.write_bytes(data)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load_pub(path: str) -> RssPublicKey:
    try:
        return RssPublicKey.from_bytes(_read(path))
    except (DecodeError, InvalidParameter, CompatibilityError) as exc:
        raise CliError(EXIT_MALFORMED, f"bad public key {path}: {exc}") from None


def _load_keystore(path: str) -> tuple[RssSecretKey, RssPublicKey, dict]:
    try:
        entry = json.loads(_read(path))
        sk = RssSecretKey.from_bytes(base64.b64decode(entry["secret_key"], validate=True))
        pk = RssPublicKey.from_bytes(base64.b64decode(entry["public_key"], validate=True))
    except (ValueError, KeyError, TypeError, binascii.Error, DecodeError, InvalidParameter) as exc:
        raise CliError(EXIT_MALFORMED, f"bad keystore file {path}: {exc}") from None
    return sk, pk, entry


def _load_credential(path: str):
    try:
        return canonicalize(_read(path))
    except CodecError as exc:
        raise CliError(EXIT_MALFORMED, f"bad credential {path}: {exc}") from None


def cmd_keygen(args) -> int:
    if args.attributes < 1:
        raise CliError(EXIT_USAGE, f"--attributes must be >= 1, got {args.attributes}")
    try:
        backend = get_backend(args.backend)
    except KeyError as exc:
        raise CliError(EXIT_USAGE, str(exc.args[0])) from None
    sk, pk = rss_keygen(backend, args.attributes, _rng(args))
    pk_bytes, sk_bytes = pk.to_bytes(), sk.to_bytes()
    key_id = hashlib.sha256(pk_bytes).hexdigest()[:16]
    out = Path(args.out) if args.out else keystore_home() / f"{key_id}.key"
    pub = out.with_name(out.name + ".pub")
    entry = {
        "role": "issuer",
        "key_id": key_id,
        "created_at": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
        "backend": backend.name,
        "n": args.attributes,
        "secret_key": base64.b64encode(sk_bytes).decode(),
        "public_key": base64.b64encode(pk_bytes).decode(),
    }
    _write(out, json.dumps(entry, indent=2).encode(), private=True)
    _write(pub, pk_bytes)
    _emit(
        args,
        {"key_id": key_id, "keyfile": str(out), "public_key": str(pub),
         "public_key_bytes": len(pk_bytes), "secret_key_bytes": len(sk_bytes), "n": args.attributes},
        f"key id:      {key_id}\nkeyfile:     {out}\npublic key:  {pub} ({len(pk_bytes)} bytes)\n"
        f"secret key:  {len(sk_bytes)} bytes (in keyfile only)",
    )
    return EXIT_OK


def cmd_issue(args) -> int:
    sk, pk, _ = _load_keystore(args.key)
    cred = _load_credential(args.credential)
    if cred.n != sk.n:
        raise CliError(EXIT_USAGE, f"credential has {cred.n} attributes, key expects {sk.n}")
    sig = rss_sign(sk, encode_attributes(cred, sk.backend), _rng(args))
    data = sig.to_bytes()
    _write(Path(args.out), data)
    _emit(args, {"signature": args.out, "signature_bytes": len(data), "n": cred.n},
          f"signature:   {args.out} ({len(data)} bytes, n={cred.n})")
    return EXIT_OK


def _keep_paths(values: list[str]) -> list[str]:
    paths = [p.strip() for v in values for p in v.split(",")]
    return [p for p in paths if p]


def cmd_redact(args) -> int:
    pk = _load_pub(args.pub)
    cred = _load_credential(args.credential)
    try:
        sig = RssSignature.from_bytes(_read(args.sig))
    except (DecodeError, InvalidParameter, CompatibilityError) as exc:
        raise CliError(EXIT_MALFORMED, f"bad signature file {args.sig}: {exc}") from None
    keep = _keep_paths(args.keep)
    if not keep:
        raise CliError(EXIT_USAGE, "--keep names no attributes")
    if cred.n != pk.n:
        raise CliError(EXIT_USAGE, f"credential has {cred.n} attributes, key expects {pk.n}")
    try:
        rc = redact(cred, sig, RedactionPolicy.keeping(keep), pk, _rng(args))
    except CodecError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    except (SignatureInvalid, CompatibilityError) as exc:
        raise CliError(EXIT_BADSIG, str(exc)) from None
    _write(Path(args.out), rc.to_json())
    _emit(args, {"redacted": args.out, "disclosed": [p for p, _ in rc.attributes],
                 "indices": list(rc.indices), "n": rc.n},
          f"redacted:    {args.out} (kept {len(rc.indices)} of {rc.n}: {', '.join(p for p, _ in rc.attributes)})")
    return EXIT_OK


def cmd_verify(args) -> int:
    pk = _load_pub(args.pub)
    try:
        rc = RedactedCredential.from_document(_read(args.redacted))
    except InvalidSignatureEncoding as exc:
        _emit(args, {"accepted": False, "reason": str(exc)}, f"REJECTED: {exc}")
        return EXIT_REJECT
    except CodecError as exc:
        raise CliError(EXIT_MALFORMED, f"bad redacted credential {args.redacted}: {exc}") from None
    verdict = verify_credential(rc, pk)
    disclosed = {p: v for p, v in rc.attributes}
    if verdict:
        _emit(args, {"accepted": True, "disclosed": disclosed},
              "ACCEPTED\n" + "\n".join(f"  {p} = {v}" for p, v in disclosed.items()))
        return EXIT_OK
    _emit(args, {"accepted": False, "reason": verdict.reason}, f"REJECTED: {verdict.reason}")
    return EXIT_REJECT


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x)


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x)


def cmd_bench(args) -> int:
    try:
        config = BenchConfig(
            ns=args.n, keep_ratios=args.keep_ratio, iterations=args.iterations,
            warmup=args.warmup, seed=args.seed, backend=args.backend, workers=args.workers,
        )
        get_backend(config.backend)
    except (InvalidParameter, KeyError) as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    data = emit_table(run_bench(config), args.format)
    if args.out:
        _write(Path(args.out), data)
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsscred", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="print one JSON object per command")
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p):
        if _test_mode_enabled():
            p.add_argument("--seed", type=int, help="deterministic randomness (test mode only)")
        return p

    p = seeded(sub.add_parser("keygen", help="generate an issuer key pair"))
    p.add_argument("--attributes", type=int, required=True, help="number of attributes n")
    p.add_argument("--out", help="keystore file (default: $RSS_CREDS_HOME/<key id>.key)")
    p.add_argument("--backend", default="bls12_381")
    p.set_defaults(func=cmd_keygen)

    p = seeded(sub.add_parser("issue", help="sign a credential document"))
    p.add_argument("--key", required=True)
    p.add_argument("--credential", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_issue)

    p = seeded(sub.add_parser("redact", help="derive a redacted credential (public key only)"))
    p.add_argument("--pub", required=True)
    p.add_argument("--credential", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--keep", action="append", required=True, help="comma-separated paths; repeatable")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_redact)

    p = sub.add_parser("verify", help="verify a redacted credential")
    p.add_argument("--pub", required=True)
    p.add_argument("--redacted", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time and size table for the RSS operations")
    p.add_argument("--n", type=_int_list, default=(5,), help="comma-separated attribute counts")
    p.add_argument("--keep-ratio", type=_float_list, default=(0.4,), help="comma-separated ratios in (0, 1]")
    p.add_argument("--iterations", type=int, default=30)
    p.add_argument("--warmup", type=int, default=3)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", default="bls12_381")
    p.add_argument("--workers", type=int, default=1, help="threads for batched verification")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        if args.json:
            print(json.dumps({"error": str(exc), "exit_code": exc.code}))
        print(f"rsscred: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
