"""Timing and size table for the RSS operations.

One report per ``(n, kept)`` pair, with the five rows of the reference
measurement table. Runtimes come from ``time.perf_counter_ns`` around each
call, warm-up excluded. Sizes are lengths of the serialized artifacts; the
verification row has no artifact and reports no size.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import platform
import random
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .errors import InvalidParameter
from .group import G1, G2, get_backend
from .rss import (
    IndexSet,
    rss_derive,
    rss_public_key,
    rss_secret_key,
    rss_sign,
    rss_verify,
    rss_verify_many,
)

CATEGORIES = ("public key", "private key", "signature", "derived signature", "verifying signature")
MIN_ITERATIONS = 30
FORMATS = ("text", "csv", "json")


@dataclass(frozen=True)
class BenchConfig:
    ns: tuple[int, ...] = (5,)
    keep_ratios: tuple[float, ...] = (0.4,)
    iterations: int = MIN_ITERATIONS
    warmup: int = 3
    seed: int = 0
    backend: str = "bls12_381"
    workers: int = 1

    def __post_init__(self):
        if self.iterations < MIN_ITERATIONS:
            raise InvalidParameter(f"iterations must be >= {MIN_ITERATIONS}, got {self.iterations}")
        if self.warmup < 0:
            raise InvalidParameter("warmup must be >= 0")
        if not self.ns or any(n < 1 for n in self.ns):
            raise InvalidParameter(f"every n must be >= 1, got {self.ns}")
        if not self.keep_ratios or any(not 0 < r <= 1 for r in self.keep_ratios):
            raise InvalidParameter(f"keep ratios must lie in (0, 1], got {self.keep_ratios}")
        if self.workers < 1:
            raise InvalidParameter("workers must be >= 1")


@dataclass(frozen=True)
class BenchRow:
    category: str
    runtime_ms: float
    stddev_ms: float
    size_bytes: int | None


@dataclass(frozen=True)
class BenchReport:
    backend: str
    n: int
    kept: int
    iterations: int
    warmup: int
    rows: tuple[BenchRow, ...]
    environment: dict = field(default_factory=dict)

    def row(self, category: str) -> BenchRow:
        for r in self.rows:
            if r.category == category:
                return r
        raise KeyError(category)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "BenchReport":
        rows = tuple(BenchRow(**r) for r in d["rows"])
        return cls(**{**d, "rows": rows})


def environment() -> dict:
    return {
        "python": platform.python_version(),
        "platform": platform.platform(),
        "machine": platform.machine(),
        "cpu_count": os.cpu_count(),
    }


def kept_count(n: int, ratio: float) -> int:
    return min(n, max(1, round(ratio * n)))


def time_calls(fn: Callable[[], object], iterations: int, warmup: int = 0) -> list[float]:
    """Per-call wall times in milliseconds, warm-up calls discarded."""
    for _ in range(warmup):
        fn()
    out = []
    for _ in range(iterations):
        t0 = time.perf_counter_ns()
        fn()
        out.append((time.perf_counter_ns() - t0) / 1e6)
    return out


def _bench_one(config: BenchConfig, n: int, ratio: float) -> BenchReport:
    backend = get_backend(config.backend)
    rng = random.Random(f"{config.seed}:{n}:{ratio}")
    kept = kept_count(n, ratio)
    I = IndexSet(tuple(rng.sample(range(1, n + 1), kept)), n)

    samples: dict[str, list[float]] = {c: [] for c in CATEGORIES}
    sizes: dict[str, set[int]] = {c: set() for c in CATEGORIES[:4]}

    def clock(category, fn):
        t0 = time.perf_counter_ns()
        value = fn()
        elapsed = (time.perf_counter_ns() - t0) / 1e6
        if record:
            samples[category].append(elapsed)
        return value

    for it in range(config.warmup + config.iterations):
        record = it >= config.warmup
        sk = clock("private key", lambda: rss_secret_key(backend, n, rng))
        pk = clock(
            "public key",
            lambda: rss_public_key(sk, backend.random_element(G1, rng), backend.random_element(G2, rng)),
        )
        m = [backend.random_scalar(rng) for _ in range(n)]
        sig = clock("signature", lambda: rss_sign(sk, m, rng))
        derived = clock("derived signature", lambda: rss_derive(pk, sig, m, I, rng))
        disclosed = {i: m[i - 1] for i in I}
        ok = clock("verifying signature", lambda: rss_verify(pk, derived, disclosed))
        if not ok:
            raise RuntimeError(f"benchmark derived signature failed to verify (n={n})")
        if record:
            sizes["public key"].add(len(pk.to_bytes()))
            sizes["private key"].add(len(sk.to_bytes()))
            sizes["signature"].add(len(sig.to_bytes()))
            sizes["derived signature"].add(len(derived.to_bytes()))


    if config.workers > 1:
        # amortized per-signature time of threaded batches under the last key
        samples["verifying signature"] = _parallel_verify_ms(pk, (derived, disclosed), config)

    rows = []
    for c in CATEGORIES:
        s = samples[c]
        size = None
        if c in sizes:
            if len(sizes[c]) != 1:
                raise RuntimeError(f"{c} size varied across iterations: {sorted(sizes[c])}")
            (size,) = sizes[c]
        rows.append(BenchRow(c, statistics.fmean(s), statistics.stdev(s) if len(s) > 1 else 0.0, size))
    env = {**environment(), "workers": config.workers, "seed": config.seed}
    return BenchReport(backend.name, n, kept, config.iterations, config.warmup, tuple(rows), env)


def _parallel_verify_ms(pk, item, config: BenchConfig) -> list[float]:
    batch = [item] * config.iterations
    out = []
    for _ in range(3):
        t0 = time.perf_counter_ns()
        results = rss_verify_many(pk, batch, workers=config.workers)
        out.append((time.perf_counter_ns() - t0) / 1e6 / len(batch))
        assert all(results)
    return out


def run_bench(config: BenchConfig) -> list[BenchReport]:
    return [_bench_one(config, n, r) for n in config.ns for r in config.keep_ratios]


def sig_figs(x: float, digits: int = 2) -> str:
    """Round to ``digits`` significant figures without scientific notation."""
    if x == 0 or not math.isfinite(x):
        return f"{x:g}"
    rounded = round(x, digits - 1 - math.floor(math.log10(abs(x))))
    return f"{rounded:f}".rstrip("0").rstrip(".")


def _text(reports: Sequence[BenchReport]) -> str:
    out = io.StringIO()
    for rep in reports:
        out.write(
            f"backend={rep.backend} n={rep.n} kept={rep.kept} "
            f"iterations={rep.iterations} warmup={rep.warmup}\n"
        )
        out.write(f"{'Category':<22}{'Runtime (ms)':>14}{'Std dev (ms)':>14}{'Size (bytes)':>14}\n")
        for row in rep.rows:
            size = "N/A" if row.size_bytes is None else str(row.size_bytes)
            out.write(
                f"{row.category:<22}{sig_figs(row.runtime_ms):>14}"
                f"{sig_figs(row.stddev_ms):>14}{size:>14}\n"
            )
        env = ", ".join(f"{k}={v}" for k, v in rep.environment.items())
        out.write(f"environment: {env}\n\n")
    return out.getvalue()


def _csv(reports: Sequence[BenchReport]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["category", "runtime_ms", "stddev_ms", "size_bytes"])
    for rep in reports:
        for row in rep.rows:
            w.writerow([row.category, repr(row.runtime_ms), repr(row.stddev_ms),
                        "" if row.size_bytes is None else row.size_bytes])
    return out.getvalue()


def emit_table(reports: BenchReport | Sequence[BenchReport], fmt: str = "text") -> bytes:
    if isinstance(reports, BenchReport):
        reports = [reports]
    if fmt == "text":
        return _text(reports).encode()
    if fmt == "csv":
        return _csv(reports).encode()
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2).encode()
    raise InvalidParameter(f"unknown format {fmt!r}; expected one of {FORMATS}")


def reports_from_json(data: bytes | str) -> list[BenchReport]:
    return [BenchReport.from_dict(d) for d in json.loads(data)]
