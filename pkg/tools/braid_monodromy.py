"""Zariski-van Kampen presentations of pi_1(P^2 - C) by numerical braid monodromy.

Usage:  python tools/braid_monodromy.py {conic,deltoid,sextic} [--seed S]

Pipeline
--------
1. Apply a random rational projective change of coordinates so that the
   projection [x:y:z] -> [x:z] from [0:1:0] is generic for C and the line
   z = 0 is transverse.
2. Critical values: roots of the squarefree part of disc_y f(x, y, 1),
   computed exactly with sympy and then numerically.
3. For every critical value, follow the six (or d) roots along a lasso from
   a base point and read the braid from the real-part ordering of the
   strands; a swap of neighbours i, i+1 in which the strand moving right
   passes below is the counterclockwise half-twist sigma_i.
4. With fibre generators x_1..x_d taken as vertical loops from a base point
   far below the fibre, sigma_i acts by x_i -> x_{i+1},
   x_{i+1} -> x_{i+1} x_i x_{i+1}^-1 (this fixes x_d ... x_1, the loop
   around infinity).  Each lasso contributes the relations x_j = beta(x_j);
   the line at infinity adds x_d ... x_1 = 1.

The resulting presentation is printed as JSON (generators and relator
strings).  sympy is only used by this script, never by the package.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

import numpy as np
import sympy as sp

X, Y, Z = sp.symbols("x y z")

CURVES = {
    # smooth conic: pi_1 = Z/2
    "conic": X**2 + Y**2 - Z**2,
    # three-cuspidal quartic (deltoid): pi_1 has order 12
    "deltoid": X**2 * Y**2 + Y**2 * Z**2 + Z**2 * X**2 - 2 * X * Y * Z * (X + Y + Z),
    # sextic with nine cusps, dual to a smooth cubic
    "sextic": X**6 + Y**6 + Z**6 - 2 * (X**3 * Y**3 + X**3 * Z**3 + Y**3 * Z**3),
}


def generic_affine(f, rng):
    """Random rational coordinate change; returns (g(x, y), degree) with z = 1."""
    deg = sp.Poly(f, X, Y, Z).total_degree()
    while True:
        m = sp.Matrix(3, 3, lambda i, j: sp.Rational(rng.randint(-9, 9), rng.randint(1, 5)))
        if m.det() == 0:
            continue
        xs = m * sp.Matrix([X, Y, Z])
        g = sp.expand(f.subs({X: xs[0], Y: xs[1], Z: xs[2]}, simultaneous=True))
        gp = sp.Poly(g, X, Y, Z)
        # [0:1:0] not on the curve: y^deg coefficient nonzero
        if gp.coeff_monomial(Y**deg) == 0:
            continue
        # z = 0 transverse: g(x, y, 0) squarefree of full degree
        at_inf = sp.Poly(g.subs(Z, 0).subs(X, 1), Y)
        if at_inf.degree() != deg or sp.discriminant(at_inf) == 0:
            continue
        aff = sp.Poly(g.subs(Z, 1), X, Y)
        py = sp.Poly(aff.as_expr(), Y)
        disc = sp.Poly(sp.discriminant(py.as_expr(), Y), X)
        sqf = sp.Poly(sp.quo(disc.as_expr(), sp.gcd(disc.as_expr(), sp.diff(disc.as_expr(), X))), X)
        return aff, deg, disc, sqf


class Fibre:
    def __init__(self, aff, deg):
        py = sp.Poly(aff.as_expr(), Y)
        coeffs = py.all_coeffs()  # highest power of y first
        self.coeffs = [np.array([complex(c) for c in sp.Poly(co, X).all_coeffs()]) for co in coeffs]
        self.deg = deg

    def roots(self, x: complex) -> np.ndarray:
        c = [np.polyval(co, x) for co in self.coeffs]
        return np.roots(c)


def _match(prev: np.ndarray, new: np.ndarray):
    """Greedy nearest matching; returns reordered new and the max displacement."""
    order = []
    used = set()
    for p in prev:
        d = np.abs(new - p)
        for j in np.argsort(d):
            if j not in used:
                used.add(j)
                order.append(j)
                break
    new = new[order]
    return new, float(np.max(np.abs(new - prev)))


def _separation(r: np.ndarray) -> float:
    d = np.abs(r[:, None] - r[None, :])
    d[np.diag_indices(len(r))] = np.inf
    return float(d.min())


def track(fibre: Fibre, path, start_roots):
    """Follow the roots along path(t), t in [0, 1]; returns the list of configurations."""
    t, h = 0.0, 1e-3
    cur = start_roots
    out = [cur]
    while t < 1.0:
        h = min(h, 1.0 - t)
        new, move = _match(cur, fibre.roots(path(t + h)))
        if move > 0.2 * _separation(cur) and h > 1e-12:
            h /= 2
            continue
        t += h
        cur = new
        out.append(cur)
        if move < 0.05 * _separation(cur):
            h *= 1.5
    return out


def braid_word(configs):
    """Half-twists read off the real-part ordering: list of (i, +1/-1)."""
    word = []
    perm = list(np.argsort(configs[0].real))  # position -> strand
    for cfg in configs[1:]:
        while True:
            swapped = False
            for i in range(len(perm) - 1):
                a, b = perm[i], perm[i + 1]
                if cfg[a].real > cfg[b].real:
                    # strand a moves right past b; it passes below if its imaginary part is smaller
                    sign = 1 if cfg[a].imag < cfg[b].imag else -1
                    word.append((i, sign))
                    perm[i], perm[i + 1] = b, a
                    swapped = True
            if not swapped:
                break
    return word


def act(word_letters, twist):
    """Apply one half-twist to a free-group word (letters (gen, sign))."""
    i, s = twist
    out = []
    for g, e in word_letters:
        if s > 0:
            if g == i:
                img = [(i + 1, 1)]
            elif g == i + 1:
                img = [(i + 1, 1), (i, 1), (i + 1, -1)]
            else:
                img = [(g, 1)]
        else:
            if g == i:
                img = [(i, -1), (i + 1, 1), (i, 1)]
            elif g == i + 1:
                img = [(i, 1)]
            else:
                img = [(g, 1)]
        if e < 0:
            img = [(h, -t) for h, t in reversed(img)]
        out.extend(img)
    return reduce_word(out)


def reduce_word(w):
    st = []
    for lt in w:
        if st and st[-1][0] == lt[0] and st[-1][1] == -lt[1]:
            st.pop()
        else:
            st.append(lt)
    return st


def lasso(base: complex, c: complex, eps: float):
    u = (c - base) / abs(c - base)
    near = c - eps * u
    theta0 = np.angle(near - c)

    def path_in(t):
        return base + (near - base) * t

    def circle(t):
        return c + eps * np.exp(1j * (theta0 + 2 * np.pi * t))

    def path_out(t):
        return near + (base - near) * t

    return path_in, circle, path_out


def fmt(w, names):
    return " ".join(names[g] + ("" if e > 0 else "^-1") for g, e in w) or "1"


def presentation(curve: str, seed: int):
    rng = random.Random(seed)
    aff, deg, disc, sqf = generic_affine(CURVES[curve], rng)
    crit = np.roots([complex(c) for c in sqf.all_coeffs()])
    fibre = Fibre(aff, deg)
    dmin = min(abs(a - b) for i, a in enumerate(crit) for b in crit[i + 1:]) if len(crit) > 1 else 1.0
    eps = 0.25 * dmin
    spread = max(abs(crit - crit.mean())) if len(crit) else 1.0
    base = crit.mean() - 1j * (2 * spread + 1) + 0.123 * spread
    for c in crit:
        for c2 in crit:
            if c2 is c:
                continue
            # distance from c2 to the segment base -> c
            seg = c - base
            t = np.clip(((c2 - base) * np.conj(seg)).real / abs(seg) ** 2, 0, 1)
            if abs(base + t * seg - c2) < 1.5 * eps and abs(c2 - c) > 1e-9:
                raise RuntimeError("lasso passes too close to another critical value; try another seed")
    r0 = fibre.roots(base)
    if _separation(r0) < 1e-6 or len(set(np.round(r0.real, 9))) < deg:
        raise RuntimeError("degenerate base fibre")
    names = [f"x{j + 1}" for j in range(deg)]
    relators = []
    for c in crit:
        configs = []
        cur = r0
        for piece in lasso(base, c, eps):
            seg = track(fibre, piece, cur)
            configs.extend(seg if not configs else seg[1:])
            cur = seg[-1]
        beta = braid_word(configs)
        for j in range(deg):
            w = [(j, 1)]
            for tw in beta:
                w = act(w, tw)
            rel = reduce_word(w + [(j, -1)])
            if rel:
                relators.append(fmt(rel, names))
    relators.append(fmt([(j, 1) for j in reversed(range(deg))], names))
    # drop duplicates, keep first occurrence
    seen, rels = set(), []
    for r in relators:
        if r not in seen:
            seen.add(r)
            rels.append(r)
    disc_degrees = sorted(int(m) for _, m in sp.factor_list(disc.as_expr())[1] for _ in [0])
    return {"generators": names, "relators": rels, "seed": seed,
            "critical_values": len(crit), "discriminant_degree": disc.degree(),
            "discriminant_factor_multiplicities": disc_degrees}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("curve", choices=sorted(CURVES))
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    print(json.dumps(presentation(args.curve, args.seed), indent=1))
    return 0


if __name__ == "__main__":
    sys.exit(main())
