"""Brute-force reference computations, independent of the library algorithms."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


# -- cube category as function tables ---------------------------------------

def cube_points(k):
    return list(itertools.product((0, 1), repeat=k))


def face_table(k, i, tau):
    """delta_i^{k,tau} as a tuple of images of the points of I^{k-1}."""
    return tuple(p[:i - 1] + (tau,) + p[i - 1:] for p in cube_points(k - 1))


def degeneracy_table(k, i):
    return tuple(p[:i - 1] + p[i:] for p in cube_points(k))


def apply_table(table, k, p):
    return table[cube_points(k).index(tuple(p))]


def compose_tables(g, g_src, f, f_src):
    """g after f, with source dims of g and f given."""
    return tuple(apply_table(g, g_src, q) for q in f)


def hom_closure(max_dim):
    """All maps I^k -> I^n (k, n <= max_dim) generated by faces and degeneracies.

    Returned as {(k, n): set of tables}; the closure stays inside dims
    <= max_dim, which suffices because every morphism factors through a
    smaller cube.
    """
    gens = []
    for m in range(1, max_dim + 1):
        for i in range(1, m + 1):
            gens += [(m - 1, m, face_table(m, i, 0)), (m - 1, m, face_table(m, i, 1)),
                     (m, m - 1, degeneracy_table(m, i))]
    found = {(k, k): {tuple(cube_points(k))} for k in range(max_dim + 1)}
    frontier = [(k, k, t) for (k, _), ts in found.items() for t in ts]
    while frontier:
        nxt = []
        for k, n, t in frontier:
            for a, b, g in gens:
                if a != n:
                    continue
                h = compose_tables(g, a, t, k)
                bucket = found.setdefault((k, b), set())
                if h not in bucket:
                    bucket.add(h)
                    nxt.append((k, b, h))
        frontier = nxt
    return found


# -- integer linear algebra -------------------------------------------------

def det(rows):
    rows = [list(map(Fraction, r)) for r in rows]
    n, sign, out = len(rows), 1, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        out *= rows[c][c]
        for r in range(c + 1, n):
            q = rows[r][c] / rows[c][c]
            rows[r] = [a - q * b for a, b in zip(rows[r], rows[c])]
    return int(sign * out)


def rational_rank(rows, ncols):
    rows = [list(map(Fraction, r)) for r in rows]
    rank, col = 0, 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                q = rows[r][col] / rows[rank][col]
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def invariant_factors_by_minors(rows, ncols):
    """Nonzero invariant factors as ratios of gcds of k x k minors."""
    m = len(rows)
    out, prev = [], 1
    for k in range(1, min(m, ncols) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(ncols), k):
                g = gcd(g, det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def cokernel(rows, nrows, ncols):
    """(free rank, torsion list) of Z^nrows / column span."""
    f = invariant_factors_by_minors(rows, ncols) if nrows and ncols else []
    return nrows - len(f), [d for d in f if d > 1]


def free_homology(mats, ranks, n):
    """H_n of a free complex: ranks[k] = rank of C_k, mats[k] = d_k as rows (k >= 1)."""
    r_out = rational_rank(mats[n], ranks[n]) if n >= 1 and ranks[n - 1] and ranks[n] else 0
    if n + 1 < len(ranks) and ranks[n] and ranks[n + 1]:
        r_in = rational_rank(mats[n + 1], ranks[n + 1])
        tors = [d for d in invariant_factors_by_minors(mats[n + 1], ranks[n + 1]) if d > 1]
    else:
        r_in, tors = 0, []
    return ranks[n] - r_out - r_in, sorted(tors)


# -- cubical sets -----------------------------------------------------------

def nondegenerate_complex(X, top):
    """Free complex on nondegenerate cubes, dropping degenerate faces."""
    from cubhom.chain import face_sign
    ranks = [len(X.nondeg.get(k, ())) for k in range(top + 1)]
    mats = [None]
    for k in range(1, top + 1):
        src, dst = X.nondeg.get(k, ()), X.nondeg.get(k - 1, ())
        idx = {z: r for r, z in enumerate(dst)}
        m = [[0] * len(src) for _ in dst]
        for c, z in enumerate(src):
            for (i, t), f in X.faces[z].items():
                if not f.deleted:
                    m[idx[f.base]][c] += face_sign(i, t)
        mats.append(m)
    return ranks, mats


def all_cubes_bruteforce(X, k):
    """Every (surjection, nondegenerate cube) pair of dimension k."""
    from cubhom.cubical_set import CubeRef
    out = set()
    for z, m in X.dims.items():
        for deleted in itertools.combinations(range(1, k + 1), k - m) if k >= m else ():
            out.add(CubeRef(k, z, deleted))
    return out
