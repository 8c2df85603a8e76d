#!/usr/bin/env python3
"""Probe the composition law gamma(k) gamma(k') = gamma(k+k') experimentally.

Samples integral label vectors within a bound, computes the induced
permutations of Irr(W) by numerical monodromy, and reports every composition
mismatch as a finding (this is a probe of an open conjecture, not a test:
mismatches are reported, the exit code stays 0 unless the machinery fails).

usage: gamma_probe.py [descriptor] [bound] [samples]
"""
import itertools
import random
import sys

from reflekt.groups import build_group
from reflekt.chars import character_table
from reflekt.fake import FakeDegreeSet
from reflekt.kz import LabelVector, gamma_scan


def label_from_flat(g, flat):
    vals = []
    pos = 0
    for o in g.orbits:
        vals.append(tuple(complex(x) for x in flat[pos : pos + o.order]))
        pos += o.order
    return LabelVector(tuple(vals))


def main() -> int:
    descriptor = sys.argv[1] if len(sys.argv) > 1 else "S3"
    bound = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    samples = int(sys.argv[3]) if len(sys.argv) > 3 else 12
    g = build_group(descriptor)
    fs = FakeDegreeSet(g, character_table(g))
    ncomp = sum(o.order for o in g.orbits)

    rng = random.Random(0)
    pairs = []
    for _ in range(samples):
        k1 = [rng.randint(-bound, bound) for _ in range(ncomp)]
        k2 = [rng.randint(-bound, bound) for _ in range(ncomp)]
        pairs.append((tuple(k1), tuple(k2)))

    needed = sorted({k for k1, k2 in pairs for k in (k1, k2, tuple(a + b for a, b in zip(k1, k2)))})
    labels = [label_from_flat(g, flat) for flat in needed]
    results = gamma_scan(fs, labels)
    perm = {flat: dict(r["pairs"]) for flat, r in zip(needed, results)}

    print(f"{descriptor}: probing {len(pairs)} compositions, bound {bound}")
    mismatches = 0
    for k1, k2 in pairs:
        ksum = tuple(a + b for a, b in zip(k1, k2))
        composed = {i: perm[k1][perm[k2][i]] for i in perm[k2]}
        status = "ok" if composed == perm[ksum] else "MISMATCH"
        mismatches += status != "ok"
        print(f"  k={k2} then k'={k1}: composed {'=' if status == 'ok' else '!='} gamma(k+k')  [{status}]")
    print(f"findings: {mismatches} mismatch(es) out of {len(pairs)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
