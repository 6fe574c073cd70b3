"""Deformation complexes, cochain maps between them, cohomology and the two LES.

Differentials are built once per (representation, degree) as sparse column
dicts and memoized with ``lru_cache`` (which is internally locked). Subcomplexes
are handled in intrinsic coordinates: a basis matrix S_k into the ambient
cochain space and the restricted differential S_{k+1}^{-1} δ S_k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .config import ContractViolation, MembershipError, DEFAULT_LIMITS, check_cap
from .exactlin import (ZERO, ONE, LeftInverse, Matrix, Subspace, image_basis, kernel_basis,
                       rank, solve, solve_many, subspace_ops, _rref_sparse, fmt)
from .liealg import (Certificate, IdealData, LieAlgebra, Representation, adjoint, bracket,
                     gl_representation, standard_representations)
from .multilin import Cochain, CochainSpace, CoeffModule, comb_index, map_coefficients, pullback, wedge_basis

TAGS = ("ad", "morphism", "bott", "hom_ideal", "wedge_ideal", "quotient", "gl_restricted", "nr_restricted")
HOM_TAGS = ("i*⊗g/i", "i*⊗i^c")


# -- sparse CE matrices -------------------------------------------------------

@dataclass(frozen=True)
class SparseCols:
    rows: int
    cols: int
    data: tuple  # one dict {row: value} per column

    def apply(self, v: Sequence) -> list:
        out = [ZERO] * self.rows
        for j, x in enumerate(v):
            if x:
                for i, a in self.data[j].items():
                    out[i] += a * x
        return out

    def dense(self) -> Matrix:
        ent = [ZERO] * (self.rows * self.cols)
        for j, col in enumerate(self.data):
            for i, a in col.items():
                ent[i * self.cols + j] = a
        return Matrix(self.rows, self.cols, tuple(ent))


@lru_cache(maxsize=256)
def ce_matrix(rep: Representation, p: int) -> SparseCols:
    """Matrix of δ: C^p(g;V) → C^{p+1}(g;V) for the representation rep."""
    g = rep.algebra
    n, mdim = g.dim, rep.module_dim
    src = wedge_basis(n, p)
    dst_idx = comb_index(n, p + 1)
    # support of the structure constants per output index m
    supp = {}
    for a in range(n):
        for b in range(a + 1, n):
            for m in range(n):
                cm = g.const(a, b, m)
                if cm:
                    supp.setdefault(m, []).append((a, b, cm))
    act_cols = [[rep.action[t].col(w) for w in range(mdim)] for t in range(n)]
    cols = []
    for S in src:
        Sset = set(S)
        # action terms and bracket terms only depend on S; the w index just shifts
        act_terms = []
        for t in range(n):
            if t in Sset:
                continue
            T = tuple(sorted(S + (t,)))
            pos = T.index(t)
            act_terms.append((dst_idx[T], -1 if pos % 2 else 1, t))
        br_terms = {}
        for mpos, m in enumerate(S):
            R = S[:mpos] + S[mpos + 1:]
            Rset = set(R)
            sgn_m = -1 if mpos % 2 else 1  # sorting (m, R) into S
            for a, b, cm in supp.get(m, ()):
                if a in Rset or b in Rset:
                    continue
                T = tuple(sorted(R + (a, b)))
                i, j = T.index(a), T.index(b)
                s = sgn_m * (-1 if (i + j) % 2 else 1)
                key = dst_idx[T]
                br_terms[key] = br_terms.get(key, ZERO) + s * cm
        for w in range(mdim):
            col = {}
            for Ti, s, t in act_terms:
                base = Ti * mdim
                for r, val in enumerate(act_cols[t][w]):
                    if val:
                        col[base + r] = col.get(base + r, ZERO) + s * val
            for Ti, val in br_terms.items():
                if val:
                    col[Ti * mdim + w] = col.get(Ti * mdim + w, ZERO) + val
            cols.append({k: v for k, v in col.items() if v})
    return SparseCols(len(wedge_basis(n, p + 1)) * mdim, len(src) * mdim, tuple(cols))


def ce_differential(r: Representation, c: Cochain) -> Cochain:
    if c.space.domain_dim != r.algebra.dim or c.space.coeff.dim != r.module_dim:
        raise ContractViolation("cochain does not live in C(g;V) for this representation",
                                {"domain": c.space.domain_dim, "coeff": c.space.coeff.dim,
                                 "rep_dim": r.module_dim})
    M = ce_matrix(r, c.space.p)
    return Cochain(c.space.shifted(1), tuple(M.apply(c.coeffs)))


# -- complex identities ---------------------------------------------------------

@dataclass(frozen=True)
class ComplexId:
    tag: str
    context: IdealData

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown complex tag {self.tag!r}")


def _mod(tag: str, dim: int) -> CoeffModule:
    return CoeffModule(tag, dim)


def ambient_rep(cid: ComplexId) -> Representation:
    d = cid.context
    reps = standard_representations(d)
    t = cid.tag
    if t in ("ad", "nr_restricted"):
        return reps.ad
    if t == "morphism":
        return reps.ad_quot
    if t == "bott":
        return reps.bott
    if t in ("hom_ideal", "wedge_ideal"):
        return reps.ad_hom
    if t == "quotient":
        return _quot_adjoint(d)
    if t == "gl_restricted":
        return _gl_rep(d.algebra)
    raise ValueError(t)


@lru_cache(maxsize=64)
def _quot_adjoint(d: IdealData) -> Representation:
    return adjoint(d.quotient)


@lru_cache(maxsize=64)
def _gl_rep(g: LieAlgebra) -> Representation:
    return gl_representation(g)


def ambient_space(cid: ComplexId, k: int) -> CochainSpace:
    d = cid.context
    n, kk, m = d.n, d.k, d.m
    t = cid.tag
    if t in ("ad", "nr_restricted"):
        return CochainSpace(k, n, _mod("g", n))
    if t == "morphism":
        return CochainSpace(k, n, _mod("g/i", m))
    if t == "bott":
        return CochainSpace(k, kk, _mod("g/i", m), "i")
    if t in ("hom_ideal", "wedge_ideal"):
        return CochainSpace(k, n, _mod("i*⊗g/i", m * kk))
    if t == "quotient":
        return CochainSpace(k, m, _mod("g/i", m), "g/i")
    if t == "gl_restricted":
        return CochainSpace(k, n, _mod("gl(g)", n * n))
    raise ValueError(t)


def _compatible(c: Cochain, sp: CochainSpace) -> bool:
    a, b = c.space, sp
    if a.p != b.p or a.domain_dim != b.domain_dim or a.coeff.dim != b.coeff.dim:
        return False
    if a.coeff.tag == b.coeff.tag:
        return True
    return a.coeff.tag in HOM_TAGS and b.coeff.tag in HOM_TAGS


def linear_map_matrix(f, src: CochainSpace, dst_dim: int) -> Matrix:
    cols = [list(f(src.basis_element(j)).coeffs) for j in range(src.dim)]
    if not cols:
        return Matrix.zeros(dst_dim, 0)
    return Matrix.from_cols(cols, dst_dim)


# -- cochain maps ---------------------------------------------------------------

def _hom_space(d: IdealData, k: int) -> CochainSpace:
    return CochainSpace(k, d.n, _mod("i*⊗g/i", d.m * d.k))


def map_Pi(d: IdealData, c: Cochain) -> Cochain:
    """C^{k+1}(g; g/i) → C^k(g; i*⊗g/i), φ ↦ (−1)^{k+1} φ(x_1..x_k, u)."""
    K = c.space.p
    if K < 1:
        raise ContractViolation("map_Pi needs a cochain of degree at least 1")
    if c.space.coeff.dim != d.m or c.space.domain_dim != d.n:
        raise ContractViolation("map_Pi expects a C(g; g/i) cochain")
    sgn = -1 if K % 2 else 1
    kk, m = d.k, d.m
    Bi = d.Bi
    sp = _hom_space(d, K - 1)

    def blk(S):
        out = [ZERO] * (m * kk)
        for b in range(kk):
            for t in range(d.n):
                w = Bi[t, b]
                if not w:
                    continue
                v = c.on_basis(S + (t,))
                for a in range(m):
                    if v[a]:
                        out[a * kk + b] += sgn * w * v[a]
        return out
    return Cochain.from_blocks(sp, blk)


def post_pi(d: IdealData, c: Cochain) -> Cochain:
    """C^k(g; g) → C^k(g; g/i), φ ↦ π∘φ."""
    return map_coefficients(c, d.coord_c, _mod("g/i", d.m))


def map_Pibar(d: IdealData, c: Cochain) -> Cochain:
    """Coset of C^k(g;g) mod C_i^k ↦ (−1)^k (π∘φ)|_{Λ^{k−1}g∧i}."""
    if c.space.p < 1:
        raise ContractViolation("map_Pibar needs k >= 1")
    return map_Pi(d, post_pi(d, c))


def restrict_to_ideal(d: IdealData, c: Cochain) -> Cochain:
    """ι*: C^k(g; W) → C^k(i; W)."""
    return pullback(c, d.Bi, "i")


def pullback_pi(d: IdealData, c: Cochain) -> Cochain:
    """C^k(g/i; g/i) → C^k(g; g/i), ψ ↦ ψ(π·, …, π·)."""
    return pullback(c, d.coord_c, "g")


def map_res_wedge(d: IdealData, c: Cochain, check: bool = True) -> Cochain:
    """C_∧^k → C^{k+1}(i; g/i), φ ↦ (−1)^{k+1} φ|_{Λ^{k+1} i} (last slot is the i* slot)."""
    k = c.space.p
    if c.space.coeff.tag not in HOM_TAGS or c.space.coeff.dim != d.m * d.k:
        raise ContractViolation("map_res_wedge expects a C(g; i*⊗g/i) cochain")
    if check and not wedge_subspace(d, k).contains_vector(list(c.coeffs)):
        raise MembershipError("cochain is not in the wedge subcomplex", {"degree": k})
    kk, m = d.k, d.m
    sp = CochainSpace(k + 1, kk, _mod("g/i", m), "i")
    if k + 1 > kk:
        return sp.zero()
    pc = pullback(c, d.Bi, "i")
    s = -1 if (k + 1) % 2 else 1

    def blk(T):
        b = pc.block(T[:k])
        return [s * b[a * kk + T[k]] for a in range(m)]
    return Cochain.from_blocks(sp, blk)


def res_h0_injective(d: IdealData) -> Certificate:
    """H⁰(res): H⁰(i◁g) → H¹(i; g/i) (trivial action) has zero kernel.

    Surjectivity is not expected in general; dims["surjective"] records it per pair.
    """
    Z0 = kernel_basis(ce_matrix(standard_representations(d).ad_hom, 0).dense())
    h1 = _bott_h1(d)
    if Z0.dim == 0:
        return Certificate(True, "res_h0_injective", {}, {"Z0": 0, "H1_bott": h1, "surjective": h1 == 0})
    sp0 = _hom_space(d, 0)
    imgs = [list(map_res_wedge(d, Cochain(sp0, tuple(z)), check=False).coeffs) for z in Z0.vectors()]
    B1 = image_basis(ce_matrix(standard_representations(d).bott, 0).dense()) if d.k and d.m else None
    dim1 = len(imgs[0])
    cols = imgs + (B1.vectors() if B1 is not None else [])
    r = rank(Matrix.from_cols(cols, dim1)) if dim1 else 0
    nb = B1.dim if B1 is not None else 0
    ok = r == Z0.dim + nb
    return Certificate(ok, "res_h0_injective", {} if ok else {"rank": r, "expected": Z0.dim + nb},
                       {"Z0": Z0.dim, "B1_bott": nb, "H1_bott": h1, "surjective": r - nb == h1})


def _bott_h1(d: IdealData) -> int:
    if not (d.k and d.m):
        return 0
    bott = standard_representations(d).bott
    c1 = d.k * d.m
    z1 = c1 - rank(ce_matrix(bott, 1).dense()) if d.k >= 2 else c1
    return z1 - rank(ce_matrix(bott, 0).dense())


def _pi_star_matrix(d: IdealData) -> Matrix:
    n, kk, m = d.n, d.k, d.m
    ent = [ZERO] * (m * kk * n * n)
    N = n * n
    for a in range(m):
        for b in range(kk):
            for r in range(n):
                ca = d.coord_c[a, r]
                if not ca:
                    continue
                for s in range(n):
                    w = d.Bi[s, b]
                    if w:
                        ent[(a * kk + b) * N + r * n + s] = ca * w
    return Matrix(m * kk, N, tuple(ent))


def map_pi_star(d: IdealData, c: Cochain) -> Cochain:
    """C^k(g; gl(g)) → C^k(g; i*⊗g/i), ω ↦ π∘ω(·)|_i."""
    if c.space.coeff.dim != d.n * d.n:
        raise ContractViolation("map_pi_star expects gl(g) coefficients")
    return map_coefficients(c, _pi_star_matrix(d), _mod("i*⊗g/i", d.m * d.k))


def nr_membership(d: IdealData, c: Cochain) -> Certificate:
    """φ ∈ C_i^k(g;g): π φ(x_1..x_k) = 0 as soon as one argument lies in i."""
    k = c.space.p
    if k == 0:
        v = d.coord_c.apply(c.coeffs) if d.m else []
        ok = not any(v)
        return Certificate(ok, "nr_membership", {} if ok else {"value": [fmt(x) for x in v]})
    for R in wedge_basis(d.n, k - 1):
        for b in range(d.k):
            u = d.Bi.col(b)
            val = [ZERO] * d.n
            for t, ut in enumerate(u):
                if ut:
                    w = c.on_basis(R + (t,))
                    val = [x + ut * y for x, y in zip(val, w)]
            pv = d.coord_c.apply(val) if d.m else []
            if any(pv):
                return Certificate(False, "nr_membership",
                                   {"args": list(R), "ideal_slot": b, "value": [fmt(x) for x in pv]})
    return Certificate(True, "nr_membership")


def map_pibar_star(d: IdealData, c: Cochain, check: bool = True) -> Cochain:
    """C_i^k(g;g) → C^k(g/i; g/i), induced map on quotients."""
    if check:
        cert = nr_membership(d, c)
        if not cert.verdict:
            raise MembershipError("cochain is not in C_i(g;g)", cert.witness)
    pulled = pullback(c, d.Bc, "g/i")
    return map_coefficients(pulled, d.coord_c, _mod("g/i", d.m))


# -- subcomplex bases -----------------------------------------------------------

@lru_cache(maxsize=256)
def _Pi_matrix(d: IdealData, K: int) -> Matrix:
    """Matrix of Π: C^K(g; g/i) → C^{K−1}(g; i*⊗g/i)."""
    src = CochainSpace(K, d.n, _mod("g/i", d.m))
    return linear_map_matrix(lambda c: map_Pi(d, c), src, _hom_space(d, K - 1).dim)


@lru_cache(maxsize=256)
def _Pibar_matrix(d: IdealData, K: int) -> Matrix:
    src = CochainSpace(K, d.n, _mod("g", d.n))
    return linear_map_matrix(lambda c: map_Pibar(d, c), src, _hom_space(d, K - 1).dim)


@lru_cache(maxsize=256)
def wedge_subspace(d: IdealData, k: int) -> Subspace:
    """C_∧^k = image of Π in C^k(g; i*⊗g/i); C_∧^0 is all of C^0."""
    dim = _hom_space(d, k).dim
    if k == 0:
        return Subspace.full(dim)
    if k + 1 > d.n:
        return Subspace.zero(dim)
    return image_basis(_Pi_matrix(d, k + 1))


@lru_cache(maxsize=256)
def nr_subspace(d: IdealData, k: int) -> Subspace:
    """C_i^k(g;g); in degree 0 this is i itself."""
    if k == 0:
        return d.ideal
    return kernel_basis(_Pibar_matrix(d, k))


@lru_cache(maxsize=256)
def gl_restricted_subspace(d: IdealData, k: int) -> Subspace:
    n = d.n
    K0 = kernel_basis(_pi_star_matrix(d)) if d.m * d.k else Subspace.full(n * n)
    kv = K0.vectors()
    N = n * n
    ncomb = len(wedge_basis(n, k))
    dim = ncomb * N
    cols = []
    for s in range(ncomb):
        for v in kv:
            col = [ZERO] * dim
            col[s * N:(s + 1) * N] = v
            cols.append(col)
    if not cols:
        return Subspace.zero(dim)
    return Subspace(dim, Matrix.from_cols(cols, dim))


def subcomplex_basis(cid: ComplexId, k: int):
    """Basis of the subcomplex inside the ambient space, or None for a full complex."""
    if cid.tag == "wedge_ideal":
        return wedge_subspace(cid.context, k)
    if cid.tag == "nr_restricted":
        return nr_subspace(cid.context, k)
    if cid.tag == "gl_restricted":
        return gl_restricted_subspace(cid.context, k)
    return None


def in_subcomplex(cid: ComplexId, c: Cochain) -> bool:
    S = subcomplex_basis(cid, c.space.p)
    return S is None or S.contains_vector(list(c.coeffs))


def differential(cid: ComplexId, c: Cochain) -> Cochain:
    sp = ambient_space(cid, c.space.p)
    if not _compatible(c, sp):
        raise ContractViolation(f"cochain does not belong to the {cid.tag} complex",
                                {"expected": repr(sp), "got": repr(c.space)})
    if c.space.coeff.tag != sp.coeff.tag:
        c = c.retag(sp.coeff)
    if not in_subcomplex(cid, c):
        raise MembershipError(f"cochain is not in the {cid.tag} subcomplex", {"degree": c.space.p})
    out = ce_differential(ambient_rep(cid), c)
    if cid.tag in ("nr_restricted", "gl_restricted", "wedge_ideal") and not in_subcomplex(cid, out):
        raise MembershipError(f"differential left the {cid.tag} subcomplex", {"degree": c.space.p + 1})
    return out


def delta_hom_ideal(d: IdealData, c: Cochain) -> Cochain:
    """δ^Hom by the explicit three-sum formula, evaluated with actual brackets."""
    if c.space.coeff.tag not in HOM_TAGS or c.space.coeff.dim != d.m * d.k or c.space.domain_dim != d.n:
        raise ContractViolation("delta_hom_ideal expects a C(g; i*⊗g/i) cochain")
    g, n, kk, m = d.algebra, d.n, d.k, d.m
    K = c.space.p
    sp = CochainSpace(K + 1, n, c.space.coeff, c.space.domain)
    e = [[ONE if a == b else ZERO for a in range(n)] for b in range(n)]
    Bi_cols = d.Bi.to_cols()

    def blk(T):
        out = [ZERO] * (m * kk)
        for i, ti in enumerate(T):
            s = -1 if i % 2 else 1
            R = T[:i] + T[i + 1:]
            Mi = c.block(R)
            for b in range(kk):
                # π[x_i, s(ω(..)(u))]
                v = d.Bc.apply([Mi[a * kk + b] for a in range(m)])
                z = d.coord_c.apply(bracket(g, e[ti], v))
                # − ω(..)(pr_i[x_i, u])
                w = d.coord_i.apply(bracket(g, e[ti], Bi_cols[b]))
                for a in range(m):
                    corr = sum((Mi[a * kk + bb] * w[bb] for bb in range(kk) if w[bb]), ZERO)
                    out[a * kk + b] += s * (z[a] - corr)
        for i in range(len(T)):
            for j in range(i + 1, len(T)):
                s = -1 if (i + j) % 2 else 1
                R = tuple(t for t in T if t not in (T[i], T[j]))
                zb = g.basis_bracket(T[i], T[j])
                for l, zl in enumerate(zb):
                    if zl:
                        val = c.on_basis((l,) + R)
                        for idx in range(m * kk):
                            if val[idx]:
                                out[idx] += s * zl * val[idx]
        return out
    return Cochain.from_blocks(sp, blk)


# -- coordinate complexes and cohomology ------------------------------------------

@dataclass
class CoordComplex:
    """Complex in intrinsic coordinates: dims[j] and d[j]: degree j → j+1."""
    name: str
    dims: list
    d: list
    embed: list = field(default_factory=list)    # basis matrices into ambient spaces, or None
    spaces: list = field(default_factory=list)   # ambient CochainSpace per degree
    _h: dict = field(default_factory=dict, repr=False)

    @property
    def top(self) -> int:
        return len(self.d) - 1

    def H(self, j: int) -> "HData":
        if j not in self._h:
            dj = self.d[j] if j < len(self.d) else Matrix.zeros(0, self.dims[j])
            dprev = self.d[j - 1] if j > 0 else Matrix.zeros(self.dims[0], 0)
            self._h[j] = HData.build(dj, dprev)
        return self._h[j]

    def to_ambient(self, j: int, v: Sequence) -> Cochain:
        E = self.embed[j]
        vec = E.apply(v) if E is not None else list(v)
        return Cochain(self.spaces[j], tuple(vec))


def _restricted(D, S: Matrix, T: Matrix) -> Matrix:
    """Intrinsic matrix of D restricted to span S, landing in span T."""
    if S.cols == 0:
        return Matrix.zeros(T.cols, 0)
    img = [D.apply(col) for col in S.to_cols()]
    return _coords_many(img, T)


def _coords_many(img: list, T: Matrix) -> Matrix:
    if T.cols == 0:
        if any(any(v) for v in img):
            raise MembershipError("map leaves the subcomplex")
        return Matrix.zeros(0, len(img))
    if not img:
        return Matrix.zeros(T.cols, 0)
    sols = solve_many(T, img)
    if any(x is None for x in sols):
        raise MembershipError("map leaves the subcomplex")
    return Matrix.from_cols(sols, T.cols)


@dataclass
class HData:
    Z: Subspace
    B: Subspace
    reps: list
    _li: object = None

    @property
    def dim(self) -> int:
        return len(self.reps)

    @staticmethod
    def build(dj: Matrix, dprev: Matrix) -> "HData":
        Z = kernel_basis(dj)
        B = image_basis(dprev)
        reps = _reps_mod_image(Z, B)
        cols = reps + B.vectors()
        li = LeftInverse(Matrix.from_cols(cols, Z.ambient_dim)) if cols else None
        return HData(Z, B, reps, li)

    def classify(self, z: Sequence):
        """Coordinates of the class of a cocycle z in the basis of reps."""
        if self._li is None:
            if any(z):
                raise ContractViolation("vector is not a cocycle")
            return []
        x = self._li.coords(list(z), check=True)
        if x is None:
            raise ContractViolation("vector is not a cocycle")
        return x[:len(self.reps)]


def _reps_mod_image(Z: Subspace, B: Subspace) -> list:
    n = Z.ambient_dim
    rows = [{j: x for j, x in enumerate(v) if x} for v in B.vectors()]
    red, piv = _rref_sparse(rows, n)
    reps = []
    for z in Z.vectors():
        v = dict((j, x) for j, x in enumerate(z) if x)
        for r, p in zip(red, piv):
            f = v.get(p)
            if f:
                for k2, val in r.items():
                    nv = v.get(k2, ZERO) - f * val
                    if nv:
                        v[k2] = nv
                    else:
                        v.pop(k2, None)
        # reduced modulo the image; keep it if independent of what is already chosen
        test_rows = red + [v]
        if len(_rref_sparse(test_rows, n)[1]) > len(piv):
            red, piv = _rref_sparse(test_rows, n)
            reps.append([v.get(j, ZERO) for j in range(n)])
    return reps


@lru_cache(maxsize=256)
def ambient_matrix(cid: ComplexId, k: int) -> Matrix:
    return ce_matrix(ambient_rep(cid), k).dense()


def domain_dim(cid: ComplexId) -> int:
    d = cid.context
    return {"bott": d.k, "quotient": d.m}.get(cid.tag, d.n)


def coord_complex(cid: ComplexId, top: int, shift: int = 0, sign: int = 1) -> CoordComplex:
    """Degrees j = 0..top+1, where degree j uses form degree j+shift."""
    dims, ds, embeds, spaces = [], [], [], []
    nd = domain_dim(cid)

    def basis(k):
        S = subcomplex_basis(cid, k)
        return S.basis if S is not None else None
    for j in range(top + 2):
        k = j + shift
        sp = ambient_space(cid, k)
        E = basis(k) if k <= nd else Matrix.zeros(sp.dim, 0)
        spaces.append(sp)
        embeds.append(E)
        dims.append(E.cols if E is not None else sp.dim)
    for j in range(top + 1):
        k = j + shift
        S, T = embeds[j], embeds[j + 1]
        if k >= nd:
            D = Matrix.zeros(T.cols if T is not None else ambient_space(cid, k + 1).dim,
                             S.cols if S is not None else ambient_space(cid, k).dim)
            ds.append(D)
            continue
        if S is None and T is None:
            D = ambient_matrix(cid, k)
            ds.append(D.scale(sign) if sign != 1 else D)
        else:
            Dsp = ce_matrix(ambient_rep(cid), k)
            S = S if S is not None else Matrix.identity(Dsp.cols)
            T = T if T is not None else Matrix.identity(Dsp.rows)
            R = _restricted(Dsp, S, T)
            ds.append(R.scale(sign) if sign != 1 else R)
    return CoordComplex(cid.tag, dims, ds, embeds, spaces)


@dataclass
class CohomologyReport:
    complex: ComplexId
    table: list      # dicts with degree, C, Z, B, H
    reps: list       # per degree, list of Cochain

    def dims(self, key: str = "H") -> list:
        return [row[key] for row in self.table]

    def to_json(self) -> dict:
        return {"complex": self.complex.tag, "complement": self.complex.context.complement_rule,
                "table": self.table,
                "representatives": [[c.to_json() for c in rs] for rs in self.reps]}


def cohomology(cid: ComplexId, max_degree: int) -> CohomologyReport:
    check_cap("max_degree", max_degree, DEFAULT_LIMITS)
    cx = coord_complex(cid, max_degree)
    table, reps = [], []
    for j in range(max_degree + 1):
        h = cx.H(j)
        table.append({"degree": j, "C": cx.dims[j], "Z": h.Z.dim, "B": h.B.dim, "H": h.dim})
        reps.append([cx.to_ambient(j, r) for r in h.reps])
    return CohomologyReport(cid, table, reps)


# -- short exact sequences and connecting maps -------------------------------------

@dataclass
class ShortExactSequence:
    """0 → A --f--> B --g--> C → 0 in intrinsic coordinates (degree j)."""
    name: str
    A: CoordComplex
    B: CoordComplex
    C: CoordComplex
    f: list
    g: list

    @property
    def top(self) -> int:
        return min(self.A.top, self.B.top, self.C.top)


def _coords_in(S: Subspace, v) -> list:
    x = LeftInverse(S.basis).coords(v, check=True) if S.dim else ([] if not any(v) else None)
    if x is None:
        raise MembershipError("vector is not in the subcomplex")
    return x


def _map_into(F: Matrix, T: Matrix | None) -> Matrix:
    if T is None:
        return F
    return _coords_many(F.to_cols(), T)


def _compose_embed(F: Matrix, E: Matrix | None) -> Matrix:
    return F if E is None else F @ E


@lru_cache(maxsize=32)
def top_ses(d: IdealData, top: int) -> ShortExactSequence:
    """C_i(g;g)[1] ↪ C(g;g)[1] ↠ C_∧ with the surjection Π̄∘p."""
    A = coord_complex(ComplexId("nr_restricted", d), top, shift=1, sign=-1)
    B = coord_complex(ComplexId("ad", d), top, shift=1, sign=-1)
    C = coord_complex(ComplexId("wedge_ideal", d), top)
    f = [A.embed[j] for j in range(top + 2)]
    g = []
    for j in range(top + 2):
        if j + 1 > d.n:
            g.append(Matrix.zeros(C.dims[j], B.dims[j]))
        else:
            g.append(_map_into(_Pibar_matrix(d, j + 1), C.embed[j]))
    return ShortExactSequence("top", A, B, C, f, g)


@lru_cache(maxsize=256)
def _pullback_pi_matrix(d: IdealData, K: int) -> Matrix:
    src = CochainSpace(K, d.m, _mod("g/i", d.m), "g/i")
    return linear_map_matrix(lambda c: pullback_pi(d, c), src, CochainSpace(K, d.n, _mod("g/i", d.m)).dim)


@lru_cache(maxsize=32)
def bottom_ses(d: IdealData, top: int) -> ShortExactSequence:
    """C(g/i;g/i)[1] ↪ C(g;g/i)[1] ↠ C_∧ with pullback along π and Π."""
    A = coord_complex(ComplexId("quotient", d), top, shift=1, sign=-1)
    B = coord_complex(ComplexId("morphism", d), top, shift=1, sign=-1)
    C = coord_complex(ComplexId("wedge_ideal", d), top)
    f, g = [], []
    for j in range(top + 2):
        K = j + 1
        if K > d.m:
            f.append(Matrix.zeros(B.dims[j], A.dims[j]))
        else:
            f.append(_pullback_pi_matrix(d, K))
        if K > d.n:
            g.append(Matrix.zeros(C.dims[j], B.dims[j]))
        else:
            g.append(_map_into(_Pi_matrix(d, K), C.embed[j]))
    return ShortExactSequence("bottom", A, B, C, f, g)


def connecting_map(ses: ShortExactSequence, k: int, z: Sequence):
    """∂[z] for a cocycle z of C in degree k: lift, apply d, pull back. Returns
    (cocycle of A in degree k+1, class coordinates)."""
    z = list(z)
    if any(ses.C.d[k].apply(z)):
        raise ContractViolation("class is not closed in the cokernel complex", {"degree": k})
    b = solve(ses.g[k], z)
    if b is None:
        raise ContractViolation("surjection does not hit the class", {"degree": k})
    a = _pull_back(ses, k, b)
    coords = ses.A.H(k + 1).classify(a)
    # a second lift must give the same class
    K = kernel_basis(ses.g[k])
    if K.dim:
        b2 = [x + y for x, y in zip(b, K.vectors()[0])]
        a2 = _pull_back(ses, k, b2)
        if ses.A.H(k + 1).classify(a2) != coords:
            raise ContractViolation("connecting map depends on the lift", {"degree": k})
    return a, coords


def _pull_back(ses, k, b):
    db = ses.B.d[k].apply(b)
    a = solve(ses.f[k + 1], db)
    if a is None:
        raise ContractViolation("d(lift) is not in the image of the inclusion", {"degree": k})
    return a


def _induced(Fmat: Matrix, src: HData, dst: HData) -> Matrix:
    cols = [dst.classify(Fmat.apply(r)) for r in src.reps]
    return Matrix.from_cols(cols, dst.dim) if cols else Matrix.zeros(dst.dim, 0)


def les_maps(ses: ShortExactSequence, N: int) -> dict:
    out = {"f": [], "g": [], "delta": []}
    for j in range(N + 1):
        out["f"].append(_induced(ses.f[j], ses.A.H(j), ses.B.H(j)))
        out["g"].append(_induced(ses.g[j], ses.B.H(j), ses.C.H(j)))
        hc = ses.C.H(j)
        cols = [connecting_map(ses, j, r)[1] for r in hc.reps]
        dimA = ses.A.H(j + 1).dim
        out["delta"].append(Matrix.from_cols(cols, dimA) if cols else Matrix.zeros(dimA, 0))
    return out


def _img(M: Matrix, dim: int) -> Subspace:
    return image_basis(M) if M.cols and M.rows else Subspace.zero(dim)


def _ker(M: Matrix, dim: int) -> Subspace:
    return kernel_basis(M) if M.cols else Subspace.zero(dim)


def _eq(a: Subspace, b: Subspace) -> bool:
    return a.dim == b.dim and subspace_ops(a, b)[2]


def les_exactness_check(d: IdealData, which: str, max_degree: int) -> Certificate:
    check_cap("max_degree", max_degree, DEFAULT_LIMITS)
    if which not in ("top", "bottom"):
        raise ValueError("which must be top or bottom")
    ses = top_ses(d, max_degree + 1) if which == "top" else bottom_ses(d, max_degree + 1)
    mp = les_maps(ses, max_degree)
    nodes, ok, failed = [], True, []
    for j in range(max_degree + 1):
        hA, hB, hC = ses.A.H(j).dim, ses.B.H(j).dim, ses.C.H(j).dim
        prev = mp["delta"][j - 1] if j > 0 else Matrix.zeros(hA, 0)
        checks = [(f"H{j}(A)", _img(prev, hA), _ker(mp["f"][j], hA)),
                  (f"H{j}(B)", _img(mp["f"][j], hB), _ker(mp["g"][j], hB)),
                  (f"H{j}(C)", _img(mp["g"][j], hC), _ker(mp["delta"][j], hC))]
        for name, im, ker in checks:
            good = _eq(im, ker)
            nodes.append({"node": name, "image": im.dim, "kernel": ker.dim, "exact": good})
            if not good:
                ok = False
                failed.append(name)
    dims = {"A": [ses.A.H(j).dim for j in range(max_degree + 1)],
            "B": [ses.B.H(j).dim for j in range(max_degree + 1)],
            "C": [ses.C.H(j).dim for j in range(max_degree + 1)]}
    return Certificate(ok, f"les_{which}", {"nodes": nodes, "failed": failed}, dims)


def les_squares_check(d: IdealData, max_degree: int) -> Certificate:
    """∂_bottom∘id = H(π̄_*)∘∂_top on representatives of H^j(C_∧), plus the
    two cochain-level squares of the diagram."""
    top = top_ses(d, max_degree + 1)
    bot = bottom_ses(d, max_degree + 1)
    bad = []
    for j in range(max_degree + 1):
        for idx, r in enumerate(top.C.H(j).reps):
            a_top, _ = connecting_map(top, j, r)
            amb = top.A.to_ambient(j + 1, a_top)
            img = map_pibar_star(d, amb, check=False)
            c_bot = bot.A.H(j + 1).classify(list(img.coeffs))
            _, c_direct = connecting_map(bot, j, r)
            if c_bot != c_direct:
                bad.append({"degree": j, "rep": idx})
    # cochain-level squares: g_bottom∘F_B = g_top and f_bottom∘F_A = F_B∘f_top
    for j in range(max_degree + 2):
        K = j + 1
        if K > d.n:
            continue
        src = CochainSpace(K, d.n, _mod("g", d.n))
        FB = linear_map_matrix(lambda c: post_pi(d, c), src, CochainSpace(K, d.n, _mod("g/i", d.m)).dim)
        if bot.g[j] @ FB != top.g[j]:
            bad.append({"square": "surjection", "degree": j})
        if top.A.dims[j] and K <= d.m:
            amb = top.A.embed[j]
            FA_cols = [list(map_pibar_star(d, top.A.to_ambient(j, e), check=False).coeffs)
                       for e in Matrix.identity(top.A.dims[j]).to_cols()]
            FA = Matrix.from_cols(FA_cols, bot.A.dims[j])
            if bot.f[j] @ FA != FB @ amb:
                bad.append({"square": "inclusion", "degree": j})
    return Certificate(not bad, "les_squares", {"failures": bad})
