"""Charts, jets, the Kuranishi map, fiberwise maps σ/τ/μ_φ and certificates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .brackets import HALF, SubalgebraData, bott_subalgebra, ideal_m2
from .complexes import ComplexId, ce_differential, ce_matrix, cohomology, _Pi_matrix
from .config import ChartOverlapError, ContractViolation, TransversalityError
from .exactlin import (ZERO, ONE, Matrix, Subspace, complement, direct_sum_check, inverse, kernel_basis,
                       orth_complement, rank, solve, fmt)
from .liealg import (Certificate, IdealData, LieAlgebra, Representation, bracket, split_coordinates,
                     standard_representations, vec_json)
from .multilin import Cochain, CochainSpace, CoeffModule


def _a0(d: IdealData) -> CochainSpace:
    return CochainSpace(0, d.n, CoeffModule("i*⊗i^c", d.m * d.k))


def phi_matrix(d: IdealData, phi) -> Matrix:
    if isinstance(phi, Matrix):
        return phi
    if phi.space.p != 0 or phi.space.coeff.dim != d.m * d.k:
        raise ContractViolation("expected a degree-0 cochain in C(g; i*⊗i^c)")
    return Matrix(d.m, d.k, tuple(phi.coeffs))


def phi_cochain(d: IdealData, M: Matrix) -> Cochain:
    if M.rows != d.m or M.cols != d.k:
        raise ContractViolation("map i → i^c must be an m×k matrix in complement coordinates")
    return Cochain(_a0(d), tuple(M.entries))


@dataclass(frozen=True)
class Jet2Deformation:
    """φ_t ≈ tη + t²ω."""
    base: IdealData
    eta: Cochain
    omega: Cochain | None = None

    def at(self, t) -> Cochain:
        t = Fraction(t)
        out = self.eta.scale(t)
        if self.omega is not None:
            out = out + self.omega.scale(t * t)
        return out


def graph_subspace(d: IdealData, phi) -> Subspace:
    M = phi_matrix(d, phi)
    if d.k == 0:
        return Subspace.zero(d.n)
    cols = []
    for b in range(d.k):
        u = d.Bi.col(b)
        w = d.Bc.apply(M.col(b)) if d.m else [ZERO] * d.n
        cols.append([x + y for x, y in zip(u, w)])
    return Subspace(d.n, Matrix.from_cols(cols, d.n))


def subalgebra_graph(s: SubalgebraData, xi: Cochain) -> Subspace:
    """graph(ξ) = {u + ξ(u)} for ξ ∈ Hom(h, h^c) stored as a 1-cochain on h."""
    if xi.space.p != 1 or xi.space.domain_dim != s.k or xi.space.coeff.dim != s.m:
        raise ContractViolation("expected ξ ∈ C¹(h; h^c)")
    if s.k == 0:
        return Subspace.zero(s.n)
    cols = []
    for b in range(s.k):
        w = s.Bc.apply(xi.block((b,))) if s.m else [ZERO] * s.n
        cols.append([x + y for x, y in zip(s.Bh.col(b), w)])
    return Subspace(s.n, Matrix.from_cols(cols, s.n))


def chart_inverse(d: IdealData, W: Subspace) -> Cochain:
    """φ with graph(φ) = W, for W transverse to i^c."""
    if W.dim != d.k or W.ambient_dim != d.n:
        raise TransversalityError("W has the wrong dimension", {"dim": W.dim, "expected": d.k})
    if d.k == 0:
        return _a0(d).zero()
    A = d.coord_i @ W.basis   # k x k
    K = kernel_basis(A)
    if K.dim:
        wv = W.basis.apply(K.vectors()[0])
        raise TransversalityError("W meets the complement", {"vector": vec_json(wv)})
    Bm = d.coord_c @ W.basis @ inverse(A) if d.m else Matrix.zeros(0, d.k)
    return phi_cochain(d, Bm)


def chart_transition(W: Subspace, c1: Subspace, c2: Subspace, phi1: Matrix) -> Matrix:
    """Re-express graph(φ1: W → c1) as graph(Bφ1(id + Aφ1)^{-1}: W → c2)."""
    k = W.dim
    for c in (c1, c2):
        if not direct_sum_check(W, c):
            raise ContractViolation("not a complement of W")
    if phi1.rows != c1.dim or phi1.cols != k:
        raise ContractViolation("φ1 must be dim(c1) × dim(W)")
    if c1.dim == 0 or k == 0:
        return Matrix.zeros(c2.dim, k)
    cW, c2c = split_coordinates(W.basis, c2.basis)
    A = cW @ c1.basis      # k x m
    B = c2c @ c1.basis     # m x m
    X = Matrix.identity(k) + A @ phi1
    try:
        Xinv = inverse(X)
    except ZeroDivisionError:
        raise ChartOverlapError("id + Aφ is not invertible", {"A_phi": [[fmt(a) for a in r] for r in (A @ phi1).to_rows()]})
    return B @ phi1 @ Xinv


def chart_graph(W: Subspace, c: Subspace, phi: Matrix) -> Subspace:
    cols = [[x + y for x, y in zip(W.basis.col(b), c.basis.apply(phi.col(b)) if c.dim else [ZERO] * W.ambient_dim)]
            for b in range(W.dim)]
    return Subspace(W.ambient_dim, Matrix.from_cols(cols, W.ambient_dim)) if cols else Subspace.zero(W.ambient_dim)


def _hom_delta(d: IdealData, c: Cochain) -> Cochain:
    return ce_differential(standard_representations(d).ad_hom, c)


def jet_cocycle(mode: str, context, jet: Cochain) -> Certificate:
    if mode == "ideal":
        r = _hom_delta(context, jet)
    elif mode == "subalgebra":
        r = ce_differential(bott_subalgebra(context), jet)
    elif mode == "morphism":
        if isinstance(context, IdealData):
            rep = standard_representations(context).ad_quot
        else:
            g, h, Phi = context
            rep = Representation(g, h.dim, tuple(h.ad(Phi.col(t)) for t in range(g.dim)))
        r = ce_differential(rep, jet)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    ok = r.is_zero()
    return Certificate(ok, f"jet_cocycle_{mode}", {} if ok else {"delta": r.to_json()})


def kuranishi(d: IdealData, eta: Cochain):
    """(½ m2(η,η), class_is_zero)."""
    if not _hom_delta(d, eta).is_zero():
        raise ContractViolation("η is not a 0-cocycle")
    kur = ideal_m2(d, eta, eta).scale(HALF)
    if not _hom_delta(d, kur).is_zero():
        raise ContractViolation("Kuranishi cochain is not closed")
    D0 = ce_matrix(standard_representations(d).ad_hom, 0).dense()
    zero_class = kur.is_zero() or solve(D0, list(kur.coeffs)) is not None
    return kur, zero_class


def extend_to_second_order(d: IdealData, eta: Cochain):
    """ω with δ^Hom ω = −½ m2(η,η) (free variables zero), or None."""
    if not _hom_delta(d, eta).is_zero():
        raise ContractViolation("η is not a 0-cocycle")
    rhs = ideal_m2(d, eta, eta).scale(-HALF)
    D0 = ce_matrix(standard_representations(d).ad_hom, 0).dense()
    x = solve(D0, list(rhs.coeffs))
    if x is None:
        return None
    return Cochain(eta.space, tuple(x))


# -- fiberwise maps ------------------------------------------------------------------

def _split(g: LieAlgebra, W: Subspace, comp: Subspace | None):
    C = comp if comp is not None else complement(W)
    cw, cc = split_coordinates(W.basis, C.basis)
    return C, cw, cc


def sigma_fiber(g: LieAlgebra, W: Subspace, comp: Subspace | None = None) -> Cochain:
    """σ_W(x)(w) = π_{g/W}[x, w] as a 1-cochain with values in W*⊗g/W."""
    C, cw, cc = _split(g, W, comp)
    n, k, m = g.dim, W.dim, C.dim
    sp = CochainSpace(1, n, CoeffModule("W*⊗g/W", m * k))
    e = [[ONE if a == b else ZERO for a in range(n)] for b in range(n)]

    def blk(S):
        out = [ZERO] * (m * k)
        for b in range(k):
            z = cc.apply(bracket(g, e[S[0]], W.basis.col(b))) if m else []
            for a in range(m):
                out[a * k + b] = z[a]
        return out
    return Cochain.from_blocks(sp, blk)


def sigma_certificate(g: LieAlgebra, W: Subspace) -> Certificate:
    s = sigma_fiber(g, W)
    if s.is_zero():
        return Certificate(True, "sigma_zero")
    k = W.dim
    for idx, x in enumerate(s.coeffs):
        if x:
            t, r = divmod(idx, s.space.coeff.dim)
            return Certificate(False, "sigma_zero", {"x": t, "w": r % k, "value": fmt(x)})
    return Certificate(False, "sigma_zero")


def tau_apply(g: LieAlgebra, W: Subspace, eta: Cochain, comp: Subspace | None = None):
    """All values τ_W(η)(e_a, e_b, w_c), a < b, with the given (default orthogonal) splitting."""
    C = comp if comp is not None else orth_complement(W)
    cw, cc = split_coordinates(W.basis, C.basis)
    n, k, m = g.dim, W.dim, C.dim
    e = [[ONE if a == b else ZERO for a in range(n)] for b in range(n)]

    def eta_val(x, wc):
        # η(x, w) for x ∈ g (vector), w ∈ W (W-coordinates) → g/W coordinates
        out = [ZERO] * m
        for t, xt in enumerate(x):
            if not xt:
                continue
            blk = eta.block((t,))
            for a in range(m):
                out[a] += xt * sum((blk[a * k + b] * wc[b] for b in range(k) if wc[b]), ZERO)
        return out

    def pi(v):
        return cc.apply(v) if m else []

    def s(v):
        return C.basis.apply(v) if m else [ZERO] * n

    def prW(v):
        return cw.apply(v) if k else []

    vals = {}
    for a in range(n):
        for b in range(a + 1, n):
            x, y = e[a], e[b]
            for c in range(k):
                w = W.basis.col(c)
                wc = [ONE if j == c else ZERO for j in range(k)]
                t1 = pi(bracket(g, x, s(eta_val(y, wc))))
                t2 = eta_val(y, prW(bracket(g, x, w)))
                t3 = pi(bracket(g, y, s(eta_val(x, wc))))
                t4 = eta_val(x, prW(bracket(g, y, w)))
                t5 = eta_val(bracket(g, x, y), wc)
                vals[(a, b, c)] = [p1 - p2 - p3 + p4 - p5 for p1, p2, p3, p4, p5 in zip(t1, t2, t3, t4, t5)]
    return vals


def tau_identity_check(g: LieAlgebra, W: Subspace) -> Certificate:
    C = orth_complement(W)
    sig = sigma_fiber(g, W, C)
    vals = tau_apply(g, W, sig, C)
    for key, v in vals.items():
        if any(v):
            return Certificate(False, "tau_sigma", {"triple": list(key), "value": vec_json(v)})
    return Certificate(True, "tau_sigma", {}, {"triples": len(vals)})


def vertical_tangent_check(d: IdealData) -> Certificate:
    """Linear part at φ = 0 of μ_φ(x,u) = π[x, u+φu] − φ pr_i[x, u+φu] against δ^Hom on C⁰."""
    import sympy

    n, k, m = d.n, d.k, d.m
    R = sympy.Rational

    def sm(M: Matrix):
        return sympy.Matrix(M.rows, M.cols, [R(x.numerator, x.denominator) for x in M.entries])
    syms = sympy.symbols(f"p0:{m * k}") if m * k else ()
    Msym = sympy.Matrix(m, k, list(syms)) if m * k else sympy.zeros(m, k)
    Bi, Bc, Ci, Cc = sm(d.Bi), sm(d.Bc), sm(d.coord_i), sm(d.coord_c)
    D0 = ce_matrix(standard_representations(d).ad_hom, 0).dense()
    lin_rows, const_ok = [], True
    for t in range(n):
        ad = sm(d.algebra.ad_basis(t))
        for a in range(m):
            for b in range(k):
                lin_rows.append(None)
        for b in range(k):
            vec = Bi[:, b] + Bc * Msym[:, b]
            z = ad * vec
            out = Cc * z - Msym * (Ci * z)
            for a in range(m):
                expr = sympy.expand(out[a, 0])
                poly = sympy.Poly(expr, *syms) if syms else None
                const = poly.coeff_monomial(1) if poly is not None else expr
                if const != 0:
                    const_ok = False
                row = []
                for v in syms:
                    c = poly.coeff_monomial(v)
                    row.append(Fraction(int(c.p), int(c.q)))
                lin_rows[t * m * k + a * k + b] = row
    L = Matrix.from_rows(lin_rows, m * k) if lin_rows else Matrix.zeros(0, m * k)
    ok = const_ok and L == D0
    wit = {}
    if not ok:
        bad = [i for i, (x, y) in enumerate(zip(L.entries, D0.entries)) if x != y]
        wit = {"constant_term_zero": const_ok, "first_mismatch": bad[:1]}
    return Certificate(ok, "vertical_tangent", wit, {"C0": m * k, "C1": n * m * k})


# -- certificates ----------------------------------------------------------------------

def certify_rigidity(d: IdealData, method: str) -> Certificate:
    if method == "whitehead":
        rep = cohomology(ComplexId("quotient", d), 2)
        h2 = rep.table[2]["H"]
        ok = h2 == 0
        wit = {"H2_quotient": h2}
        if not ok:
            wit["note"] = "sufficient condition fails; this does not show the ideal is non-rigid"
        return Certificate(ok, "whitehead", wit, {"quotient": rep.table})
    if method == "h0pi":
        mor = cohomology(ComplexId("morphism", d), 1)
        hom = cohomology(ComplexId("hom_ideal", d), 0)
        z0 = hom.table[0]["Z"]
        from .complexes import coord_complex
        cx = coord_complex(ComplexId("morphism", d), 1)
        Z1 = cx.H(1).Z
        if Z1.dim and d.n >= 1 and z0:
            img = _Pi_matrix(d, 1) @ Z1.basis
            r = rank(img)
        else:
            r = 0
        ok = r == z0
        wit = {"rank_H0_Pi": r, "dim_H0_hom": z0}
        if not ok:
            wit["note"] = "H0(Pi) is not surjective; sufficient condition fails"
        return Certificate(ok, "h0pi", wit, {"morphism": mor.table, "hom_ideal": hom.table})
    raise ValueError(f"unknown rigidity method {method!r}")


def certify_stability(d: IdealData, method: str) -> Certificate:
    hom = cohomology(ComplexId("hom_ideal", d), 1)
    z0 = hom.table[0]["Z"]
    if method == "h1":
        h1 = hom.table[1]["H"]
        tab = hom.table
    elif method in ("h1_wedge", "h1-wedge"):
        w = cohomology(ComplexId("wedge_ideal", d), 1)
        h1 = w.table[1]["H"]
        tab = w.table
        method = "h1_wedge"
    else:
        raise ValueError(f"unknown stability method {method!r}")
    ok = h1 == 0
    wit = {"H1": h1, "tangent_dim_Z0": z0}
    if not ok:
        wit["note"] = "H1 is nonzero; sufficient condition fails, stability is not decided"
    return Certificate(ok, method, wit, {"table": tab, "Z0": z0})
