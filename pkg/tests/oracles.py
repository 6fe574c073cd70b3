"""Brute-force reference computations.

Nothing here calls into the package's linear algebra or cochain code: vectors are
plain lists of Fractions, determinants use the Leibniz sum, and the CE differential
is evaluated straight from its defining formula on basis tuples.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

Z = Fraction(0)


def table_of(g):
    """c[i][j] = list of coefficients of [e_i, e_j]."""
    n = g.dim
    return [[list(g.basis_bracket(i, j)) for j in range(n)] for i in range(n)]


def brack(c, x, y):
    n = len(c)
    out = [Z] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            for k, v in enumerate(c[i][j]):
                if v:
                    out[k] += xi * yj * v
    return out


def unit(n, i):
    return [Fraction(int(a == i)) for a in range(n)]


def jacobiator(c, i, j, k):
    n = len(c)
    e = [unit(n, a) for a in range(n)]
    t1 = brack(c, e[i], brack(c, e[j], e[k]))
    t2 = brack(c, e[j], brack(c, e[k], e[i]))
    t3 = brack(c, e[k], brack(c, e[i], e[j]))
    return [a + b + d for a, b, d in zip(t1, t2, t3)]


def is_lie(c) -> bool:
    n = len(c)
    for i in range(n):
        for j in range(n):
            if any(a + b for a, b in zip(c[i][j], c[j][i])):
                return False
    return all(not any(jacobiator(c, i, j, k)) for i, j, k in itertools.combinations(range(n), 3))


# -- elimination ----------------------------------------------------------------------

def rank(vectors) -> int:
    rows = [list(v) for v in vectors if any(v)]
    r = 0
    if not rows:
        return 0
    ncol = len(rows[0])
    for col in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def in_span(vectors, v) -> bool:
    return rank(list(vectors) + [v]) == rank(vectors)


def is_ideal(c, basis) -> bool:
    n = len(c)
    return all(in_span(basis, brack(c, unit(n, t), w)) for t in range(n) for w in basis)


def is_subalgebra(c, basis) -> bool:
    return all(in_span(basis, brack(c, a, b)) for a in basis for b in basis)


def same_subspace(A, B) -> bool:
    return rank(A) == rank(B) == rank(list(A) + list(B))


# -- cochains ---------------------------------------------------------------------------

def perm_parity(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def det(M):
    k = len(M)
    if k == 0:
        return Fraction(1)
    tot = Z
    for p in itertools.permutations(range(k)):
        prod = Fraction(1)
        for r in range(k):
            prod *= M[r][p[r]]
            if not prod:
                break
        if prod:
            tot += perm_parity(p) * prod
    return tot


def cochain_eval(coeffs, n, p, w, args):
    """ω(args) for ω stored at combo_index * w + a over lexicographic p-subsets of range(n)."""
    out = [Z] * w
    for idx, S in enumerate(itertools.combinations(range(n), p)):
        blk = coeffs[idx * w:(idx + 1) * w]
        if not any(blk):
            continue
        dv = det([[args[r][s] for s in S] for r in range(p)])
        if dv:
            for a in range(w):
                out[a] += dv * blk[a]
    return out


def ce_brute(act, c, coeffs, n, p, w):
    """Coefficients of δω in degree p+1, from
    δω(x_0..x_p) = Σ (−1)^i x_i·ω(..x̂_i..) + Σ_{i<j} (−1)^{i+j} ω([x_i,x_j], ..x̂_i..x̂_j..)."""
    out = []
    for T in itertools.combinations(range(n), p + 1):
        xs = [unit(n, t) for t in T]
        val = [Z] * w
        for i in range(p + 1):
            rest = xs[:i] + xs[i + 1:]
            v = act(T[i], cochain_eval(coeffs, n, p, w, rest))
            s = -1 if i % 2 else 1
            val = [a + s * b for a, b in zip(val, v)]
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                rest = [brack(c, xs[i], xs[j])] + [xs[t] for t in range(p + 1) if t not in (i, j)]
                v = cochain_eval(coeffs, n, p, w, rest)
                s = -1 if (i + j) % 2 else 1
                val = [a + s * b for a, b in zip(val, v)]
        out.extend(val)
    return out


def matvec(M, v):
    return [sum((a * b for a, b in zip(row, v)), Z) for row in M]


def mat(Mobj):
    """Package Matrix → list of row lists."""
    return [list(Mobj.row(i)) for i in range(Mobj.rows)]


def hom_action(c, Bi, Bc, Ci, Cc):
    """x·η = π[x, s η(·)] − η(pr_i[x, ·]) on η stored row-major (a*k + b), via actual brackets."""
    n = len(c)
    k = len(Bi[0]) if Bi else 0
    m = len(Bc[0]) if Bc else 0
    cols_i = [[Bi[r][b] for r in range(n)] for b in range(k)]
    cols_c = [[Bc[r][a] for r in range(n)] for a in range(m)]

    def act(t, eta):
        x = unit(n, t)
        out = [Z] * (m * k)
        for b in range(k):
            img = [sum((eta[a * k + b] * cols_c[a][r] for a in range(m)), Z) for r in range(n)]
            term1 = matvec(Cc, brack(c, x, img)) if m else []
            y = matvec(Ci, brack(c, x, cols_i[b]))
            for a in range(m):
                out[a * k + b] = term1[a] - sum((eta[a * k + bb] * y[bb] for bb in range(k)), Z)
        return out
    return act


def mu_phi(c, Bi, Bc, Ci, Cc, M):
    """μ_φ(e_t, u_b) = π[e_t, u+φu] − φ pr_i[e_t, u+φu], stored like a C¹(g; i*⊗i^c) cochain.
    Vanishes identically iff graph(φ) is an ideal (for φ small in the chart sense)."""
    n = len(c)
    k = len(Bi[0]) if Bi else 0
    m = len(M)
    out = []
    for t in range(n):
        x = unit(n, t)
        blk = [Z] * (m * k)
        for b in range(k):
            u = [Bi[r][b] + sum((Bc[r][a] * M[a][b] for a in range(m)), Z) for r in range(n)]
            z = brack(c, x, u)
            zc = matvec(Cc, z)
            zi = matvec(Ci, z)
            for a in range(m):
                blk[a * k + b] = zc[a] - sum((M[a][bb] * zi[bb] for bb in range(k)), Z)
        out.extend(blk)
    return out


def heisenberg_kuranishi(alpha, beta, x, y):
    """Hand expansion for [e1,e2]=e3, i = span{e3}, φ(e3) = α e1 + β e2:
    −φ(pr_i[x e1 + y e2, φ e3]) = (αy − βx)(α e1 + β e2)."""
    s = alpha * y - beta * x
    return [alpha * s, beta * s]


def inverse(M):
    """Gauss-Jordan inverse of a square list-matrix (None if singular)."""
    n = len(M)
    A = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col]), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return [r[n:] for r in A]


def conjugate_table(c, A):
    """Structure constants of x,y ↦ A[A⁻¹x, A⁻¹y] (an isomorphic Lie algebra)."""
    n = len(c)
    Ai = inverse(A)
    cols = [[Ai[r][j] for r in range(n)] for j in range(n)]
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = matvec(A, brack(c, cols[i], cols[j]))
            if any(v):
                out[(i, j)] = v
    return out
