"""Serialized public-key and signature sizes as the attribute count grows.

    python scripts/size_scaling.py --max-n 16 [--backend bls12_381]
"""

import argparse
import csv
import random
import sys

from rsscred.group import get_backend
from rsscred.rss import IndexSet, rss_derive, rss_keygen, rss_pk_size, rss_sign, rss_signature_size


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=16)
    ap.add_argument("--backend", default="bls12_381")
    args = ap.parse_args()

    backend = get_backend(args.backend)
    rng = random.Random(0)
    w = csv.writer(sys.stdout)
    w.writerow(["n", "public_key_bytes", "secret_key_bytes", "signature_bytes", "derived_min_bytes", "derived_max_bytes"])
    for n in range(1, args.max_n + 1):
        sk, pk = rss_keygen(backend, n, rng)
        m = [backend.random_scalar(rng) for _ in range(n)]
        sig = rss_sign(sk, m, rng)
        derived = [rss_signature_size(rss_derive(pk, sig, m, IndexSet(tuple(range(1, k + 1)), n), rng))
                   for k in (1, n)]
        w.writerow([n, rss_pk_size(pk), len(sk.to_bytes()), rss_signature_size(sig), min(derived), max(derived)])


if __name__ == "__main__":
    main()
