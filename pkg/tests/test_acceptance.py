"""Exit criteria, one test each. A PASS/FAIL line per criterion is printed
in the terminal summary of every pytest run that includes this module."""

import contextlib
import json
import math
import random
import shutil
import string
import time

import pytest

from conftest import ACCEPTANCE_RESULTS
from oracle import Instance
from rsscred.bench import CATEGORIES, BenchConfig, emit_table, run_bench, time_calls
from rsscred.cli import main as cli_main
from rsscred.codec import RedactionPolicy, canonicalize, encode_attributes, redact, verify_credential
from rsscred.group import G1, G2, MOCK, get_backend
from rsscred.ps import PsSignature, ps_keygen, ps_randomize, ps_sign, ps_verify
from rsscred.rss import (
    IndexSet,
    RssSecretKey,
    RssSignature,
    public_key_layout_size,
    rss_derive,
    rss_derive_with,
    rss_keygen,
    rss_pk_size,
    rss_public_key,
    rss_sign,
    rss_sign_with,
    rss_signature_size,
    rss_verify,
)

BLS = get_backend("bls12_381")


@contextlib.contextmanager
def criterion(name):
    info = {"detail": ""}
    try:
        yield info
    except BaseException:
        ACCEPTANCE_RESULTS.append((name, False, info["detail"]))
        raise
    ACCEPTANCE_RESULTS.append((name, True, info["detail"]))


def random_subject(rng, n):
    paths = set()
    while len(paths) < n:
        depth = rng.choice([1, 1, 2])
        paths.add(".".join("".join(rng.choices(string.ascii_lowercase, k=rng.randint(1, 6))) for _ in range(depth)))
    paths = sorted(paths)
    # drop paths that would be both a leaf and a parent
    clean = [p for p in paths if not any(q.startswith(p + ".") for q in paths)]
    while len(clean) < n:
        extra = "z" * (len(clean) + 7)
        if extra not in clean:
            clean.append(extra)
    return {p: "".join(rng.choices(string.printable, k=rng.randint(0, 20))) for p in clean[:n]}


def test_c1_correctness_suite():
    with criterion("C1 correctness n=1..8 x 50 credentials") as info:
        rng = random.Random("c1")
        t0 = time.perf_counter()
        failures = total = 0
        for n in range(1, 9):
            sk, pk = rss_keygen(BLS, n, rng)
            for _ in range(50):
                cred = canonicalize({"credentialSubject": random_subject(rng, n)})
                assert cred.n == n
                sig = rss_sign(sk, encode_attributes(cred, BLS), rng)
                keep = rng.sample(cred.paths, rng.randint(1, n))
                rc = redact(cred, sig, RedactionPolicy.keeping(keep), pk, rng)
                total += 1
                failures += not verify_credential(rc, pk)
        elapsed = time.perf_counter() - t0
        info["detail"] = f"{total - failures}/{total} accepted in {elapsed:.1f}s"
        assert total == 400 and failures == 0
        assert elapsed < 120


def test_c2_constant_signature_size():
    with criterion("C2 constant derived-signature size") as info:
        rng = random.Random("c2")
        sizes = {}
        for n in (2, 6, 10):
            sk, pk = rss_keygen(BLS, n, rng)
            m = [BLS.random_scalar(rng) for _ in range(n)]
            sig = rss_sign(sk, m, rng)
            for k in sorted({1, math.ceil(n / 2), n}):
                I = IndexSet(tuple(rng.sample(range(1, n + 1), k)), n)
                d = rss_derive(pk, sig, m, I, rng)
                assert rss_verify(pk, d, {i: m[i - 1] for i in I})
                sizes[(n, k)] = rss_signature_size(d)
        info["detail"] = f"sizes={sorted(set(sizes.values()))} over {len(sizes)} cases"
        assert len(set(sizes.values())) == 1


def test_c3_linear_public_key():
    with criterion("C3 affine public-key size") as info:
        rng = random.Random("c3")
        ns = (1, 2, 4, 8, 16)
        sizes = {n: rss_pk_size(rss_keygen(BLS, n, rng)[1]) for n in ns}
        slope = sizes[2] - sizes[1]
        intercept = sizes[1] - slope
        residuals = [sizes[n] - (intercept + slope * n) for n in ns]
        layout = [sizes[n] - public_key_layout_size(BLS, n) for n in ns]
        info["detail"] = f"size = {intercept} + {slope}*n, residuals={residuals}"
        assert residuals == [0] * len(ns)
        assert layout == [0] * len(ns)
        assert slope == 2 * BLS.encoded_len[G1] + BLS.encoded_len[G2]


def test_c4_oracle_equivalence():
    with criterion("C4 mock-backend integer oracle, 200 instances") as info:
        rng = random.Random("c4")
        q = MOCK.order
        mismatches = checks = 0
        for _ in range(200):
            n = rng.randint(1, 5)
            x, y = rng.randrange(q), rng.randrange(1, q)
            gamma, eta = rng.randrange(1, q), rng.randrange(1, q)
            inst = Instance(x, y, n, gamma, eta)
            sk = RssSecretKey(MOCK, x, y, n)
            pk = rss_public_key(sk, MOCK.element(G1, gamma), MOCK.element(G2, eta))
            m = [rng.randrange(q) for _ in range(n)]
            a, r, t = rng.randrange(1, q), rng.randrange(1, q), rng.randrange(1, q)
            I = sorted(rng.sample(range(1, n + 1), rng.randint(1, n)))
            d = rss_derive_with(pk, rss_sign_with(sk, m, MOCK.element(G1, a)), m, IndexSet(tuple(I), n), r, t)
            tracked = tuple(MOCK.exponent(e) for e in d.components())
            expected = inst.derive(inst.sign(a, m), m, I, r, t)
            disclosed = {i: m[i - 1] for i in I}
            checks += 1
            mismatches += tracked != expected
            mismatches += inst.equations(expected, disclosed) != (True, True)
            mismatches += rss_verify(pk, d, disclosed) is not True
            for pos in range(4):
                bumped = list(expected)
                bumped[pos] = (bumped[pos] + 1) % q
                groups = (G1, G1, G1, G2)
                sig = RssSignature(*(MOCK.element(g, e) for g, e in zip(groups, bumped)))
                checks += 1
                mismatches += inst.verify(tuple(bumped), disclosed)
                mismatches += rss_verify(pk, sig, disclosed) != inst.verify(tuple(bumped), disclosed)
        info["detail"] = f"{checks} checks, {mismatches} mismatches"
        assert mismatches == 0


def _derived_instance(rng, n=None):
    n = n or rng.randint(2, 8)
    sk, pk = rss_keygen(BLS, n, rng)
    m = [BLS.random_scalar(rng) for _ in range(n)]
    sig = rss_sign(sk, m, rng)
    I = IndexSet(tuple(rng.sample(range(1, n + 1), rng.randint(1, n))), n)
    return pk, m, sig, I, rss_derive(pk, sig, m, I, rng)


def test_c5_tamper_rejection():
    with criterion("C5 tamper rejection, 100 trials x 6 kinds") as info:
        rng = random.Random("c5")
        rejected = {k: 0 for k in ("value", "index set", "sigma1", "sigma2", "sigma3", "sigma_tilde")}
        for _ in range(100):
            pk, m, _, I, d = _derived_instance(rng)
            disclosed = {i: m[i - 1] for i in I}
            assert rss_verify(pk, d, disclosed)

            i = rng.choice(I.indices)
            rejected["value"] += not rss_verify(pk, d, {**disclosed, i: (disclosed[i] + 1) % BLS.order})

            if I.complement:
                j = rng.choice(I.complement)
                moved = {k: v for k, v in disclosed.items() if k != i}
                moved[j] = disclosed[i]
            else:
                moved = {k: v for k, v in disclosed.items() if k != i}
            rejected["index set"] += not rss_verify(pk, d, moved)

            parts = list(d.components())
            for pos, name in enumerate(("sigma1", "sigma2", "sigma3", "sigma_tilde")):
                bumped = list(parts)
                bumped[pos] = bumped[pos] * BLS.generator(bumped[pos].group)
                rejected[name] += not rss_verify(pk, RssSignature(*bumped), disclosed)
        info["detail"] = json.dumps(rejected)
        assert all(v == 100 for v in rejected.values())


def test_c6_rerandomization():
    with criterion("C6 re-randomized derivations, 100 trials") as info:
        rng = random.Random("c6")
        ok = 0
        for _ in range(100):
            pk, m, sig, I, a = _derived_instance(rng)
            b = rss_derive(pk, sig, m, I, rng)
            disclosed = {i: m[i - 1] for i in I}
            distinct = all(x.to_bytes() != y.to_bytes() for x, y in zip(a.components(), b.components()))
            ok += distinct and rss_verify(pk, a, disclosed) and rss_verify(pk, b, disclosed)
        info["detail"] = f"{ok}/100"
        assert ok == 100


def test_c7_paper_scenario(tmp_path, sample_path, monkeypatch, capsys):
    with criterion("C7 five-attribute scenario via CLI + table + <5s per op at n=6") as info:
        shutil.copy(sample_path, tmp_path / "cred.json")
        monkeypatch.chdir(tmp_path)
        assert cli_main(["keygen", "--attributes", "5", "--out", "issuer.key"]) == 0
        assert cli_main(["issue", "--key", "issuer.key", "--credential", "cred.json", "--out", "cred.sig"]) == 0
        assert cli_main(["redact", "--pub", "issuer.key.pub", "--credential", "cred.json", "--sig", "cred.sig",
                         "--keep", "name,address.country", "--out", "redacted.json"]) == 0
        capsys.readouterr()
        assert cli_main(["--json", "verify", "--pub", "issuer.key.pub", "--redacted", "redacted.json"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["accepted"] and set(out["disclosed"]) == {"name", "address.country"}
        assert canonicalize(sample_path.read_text()).paths == (
            "address.country", "address.postcode", "address.street", "birthDate", "name")

        (report,) = run_bench(BenchConfig(ns=(5,), keep_ratios=(0.4,), iterations=30, warmup=2))
        table = emit_table(report, "text").decode()
        assert [r.category for r in report.rows] == list(CATEGORIES)
        assert all(label in table for label in CATEGORIES)

        rng = random.Random("c7")
        n = 6
        worst = {}
        sk, pk = rss_keygen(BLS, n, rng)
        m = [BLS.random_scalar(rng) for _ in range(n)]
        sig = rss_sign(sk, m, rng)
        I = IndexSet((1, 5), n)
        d = rss_derive(pk, sig, m, I, rng)
        ops = {
            "keygen": lambda: rss_keygen(BLS, n, rng),
            "sign": lambda: rss_sign(sk, m, rng),
            "derive": lambda: rss_derive(pk, sig, m, I, rng),
            "verify": lambda: rss_verify(pk, d, {1: m[0], 5: m[4]}),
        }
        for name, fn in ops.items():
            worst[name] = max(time_calls(fn, 5))
        info["detail"] = "max ms at n=6: " + ", ".join(f"{k}={v:.1f}" for k, v in worst.items())
        assert all(v < 5000 for v in worst.values())


def test_c8_ps_baseline():
    with criterion("C8 PS baseline r=1..8, 100 trials") as info:
        rng = random.Random("c8")
        ok = 0
        for _ in range(100):
            r = rng.randint(1, 8)
            sk, pk = ps_keygen(BLS, r, rng)
            m = [BLS.random_scalar(rng) for _ in range(r)]
            sig = ps_sign(sk, m, rng)
            one = BLS.identity(G1)
            ok += (
                ps_verify(pk, m, sig)
                and ps_verify(pk, m, ps_randomize(sig, rng))
                and not ps_verify(pk, m, PsSignature(one, sig.sigma2))
            )
        info["detail"] = f"{ok}/100"
        assert ok == 100
