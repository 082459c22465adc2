"""Integer hot loops: Fox evaluation at torsion characters and rank mod p.

Each kernel has a numba version and a pure-numpy version.  The numba path
is used when numba imports and ``CHARVAR_NUMBA`` is not ``0``; set
``CHARVAR_NUMBA=0`` to force the numpy fallback.  Both paths return
identical integer arrays.
"""

import os

import numpy as np

try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


def numba_enabled() -> bool:
    return _HAVE_NUMBA and os.environ.get("CHARVAR_NUMBA", "1") != "0"


def backend() -> str:
    return "numba" if numba_enabled() else "numpy"


# ---------------------------------------------------------------------------
# Fox matrix exponent counts
#
# A relator is a run of letters (gen, sign).  For a torsion character with
# x_i -> zeta_N^{e_i}, the Fox entry (row, gen) is a signed sum of powers
# zeta^p; counts[b, row, gen, p] accumulates those signs.  A positive letter
# contributes +zeta^(prefix before it), a negative letter -zeta^(prefix after).
# ---------------------------------------------------------------------------

@njit(cache=True)
def _fox_counts_numba(gens, signs, starts, exps, modulus, ngens):
    nbatch = exps.shape[0]
    nrel = starts.shape[0] - 1
    out = np.zeros((nbatch, nrel, ngens, modulus), dtype=np.int64)
    for b in range(nbatch):
        for r in range(nrel):
            p = 0
            for k in range(starts[r], starts[r + 1]):
                g = gens[k]
                if signs[k] > 0:
                    out[b, r, g, p] += 1
                    p = (p + exps[b, g]) % modulus
                else:
                    p = (p - exps[b, g]) % modulus
                    out[b, r, g, p] -= 1
    return out


def _fox_counts_numpy(gens, signs, starts, exps, modulus, ngens):
    nbatch = exps.shape[0]
    nrel = starts.shape[0] - 1
    out = np.zeros((nbatch, nrel, ngens, modulus), dtype=np.int64)
    nlet = gens.shape[0]
    if nlet == 0 or nbatch == 0:
        return out
    rows = np.repeat(np.arange(nrel), np.diff(starts))
    step = signs[None, :] * exps[:, gens]                 # (B, L)
    after = np.cumsum(step, axis=1)
    # restart the running product at each relator boundary
    base = np.zeros((nbatch, nrel), dtype=np.int64)
    nonempty = starts[:-1] < starts[1:]
    idx = starts[:-1][nonempty]
    base[:, nonempty] = np.where(idx > 0, after[:, np.maximum(idx - 1, 0)], 0)
    after = after - base[:, rows]
    before = after - step
    pos = np.where(signs[None, :] > 0, before, after) % modulus
    val = np.broadcast_to(np.where(signs > 0, 1, -1), pos.shape)
    bidx = np.broadcast_to(np.arange(nbatch)[:, None], pos.shape)
    np.add.at(out, (bidx.ravel(), np.broadcast_to(rows, pos.shape).ravel(),
                    np.broadcast_to(gens, pos.shape).ravel(), pos.ravel()), val.ravel())
    return out


def fox_counts(gens, signs, starts, exps, modulus, ngens, *, use_numba=None):
    """Signed exponent counts for a batch of torsion characters.

    gens, signs: flattened letters of all relators; starts: relator offsets
    (length s + 1); exps: (B, n) exponents modulo ``modulus``.
    """
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    signs = np.ascontiguousarray(signs, dtype=np.int64)
    starts = np.ascontiguousarray(starts, dtype=np.int64)
    exps = np.ascontiguousarray(np.asarray(exps, dtype=np.int64) % modulus)
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        return _fox_counts_numba(gens, signs, starts, exps, int(modulus), int(ngens))
    return _fox_counts_numpy(gens, signs, starts, exps, int(modulus), int(ngens))


# ---------------------------------------------------------------------------
# rank over F_p (p < 2^31 so products fit in int64)
# ---------------------------------------------------------------------------

@njit(cache=True)
def _rank_mod_p_numba(a, p):
    m, n = a.shape
    a = a.copy() % p
    rank = 0
    for c in range(n):
        piv = -1
        for i in range(rank, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(n):
                t = a[rank, j]
                a[rank, j] = a[piv, j]
                a[piv, j] = t
        # modular inverse by Fermat
        inv = 1
        base = a[rank, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, n):
            a[rank, j] = (a[rank, j] * inv) % p
        for i in range(rank + 1, m):
            f = a[i, c]
            if f != 0:
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[rank, j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def _rank_mod_p_numpy(a, p):
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    rank = 0
    for c in range(n):
        if rank == m:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank, c:] = (a[rank, c:] * inv) % p
        f = a[rank + 1:, c].copy()
        a[rank + 1:, c:] = (a[rank + 1:, c:] - (f[:, None] * a[rank, c:][None, :]) % p) % p
        rank += 1
    return rank


def rank_mod_p(a, p, *, use_numba=None):
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba:
        return int(_rank_mod_p_numba(a, int(p)))
    return int(_rank_mod_p_numpy(a, int(p)))


def warmup() -> None:
    """Compile the numba kernels (no-op on the numpy path)."""
    if not numba_enabled():
        return
    g = np.array([0, 0], dtype=np.int64)
    s = np.array([1, -1], dtype=np.int64)
    st = np.array([0, 2], dtype=np.int64)
    fox_counts(g, s, st, np.zeros((1, 1), dtype=np.int64), 2, 1)
    rank_mod_p(np.eye(2, dtype=np.int64), 7)
