"""Compare the numba kernels with the numpy fallback on realistic inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Fox counts are timed on the full order-6 scan of the nine-cusp sextic and on
the order-4 scan of the Artin (2,4,4) group; rank mod p on random dense
matrices.  Both back ends must return identical arrays; the script exits
nonzero if they ever disagree.
"""

import argparse
import sys
import time

import numpy as np

from charvar import _kernels
from charvar.cli import corpus_documents
from charvar.document import parse_document
from charvar.fox import _flat_relators, _scan_exponents
from charvar.linalg import modular_prime


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def fox_case(name, order):
    doc = parse_document(dict(corpus_documents())[name])
    p = doc.presentation
    gens, signs, starts = _flat_relators(p)
    exps = _scan_exponents(p, order)
    return lambda use: _kernels.fox_counts(gens, signs, starts, exps, order, p.ngens, use_numba=use)


def rank_case(n, seed):
    rng = np.random.default_rng(seed)
    prime, _ = modular_prime(12)
    a = rng.integers(0, prime, size=(n, n), dtype=np.int64)
    a[:, -1] = a[:, 0]  # force a rank deficiency
    return lambda use: _kernels.rank_mod_p(a, prime, use_numba=use)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    _kernels.warmup()
    cases = [
        ("fox_counts sextic N=6", fox_case("sextic_nine_cusps", 6)),
        ("fox_counts artin N=4", fox_case("artin_2_4_4", 4)),
        ("fox_counts artin N=12", fox_case("artin_2_4_4", 12)),
        ("rank_mod_p 60x60", rank_case(60, 1)),
        ("rank_mod_p 200x200", rank_case(200, 2)),
    ]
    print(f"{'kernel':<24}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    ok = True
    for label, fn in cases:
        fn(True)  # compile for this signature
        t_np, r_np = best_of(lambda: fn(False), args.repeat)
        t_nb, r_nb = best_of(lambda: fn(True), args.repeat)
        same = np.array_equal(np.asarray(r_np), np.asarray(r_nb))
        ok &= same
        flag = "" if same else "  MISMATCH"
        print(f"{label:<24}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>9.1f}x{flag}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
