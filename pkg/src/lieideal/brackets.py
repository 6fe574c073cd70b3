"""Graded brackets on cochains, higher derived brackets and Maurer–Cartan residuals.

Everything reduces to two primitives on basis combinations:

* ``insert(outer, inner)``: Σ_{τ ∈ S(b, a−1)} sgn(τ) outer(inner(x_τ(1..b)), x_τ(b+1..)),
  where inner takes values in g and outer is Λ^a g* ⊗ M for any M;
* ``compose_end(η, η')``: Σ_{τ ∈ S(q', q)} sgn(τ) η(x_τ(q'+1..)) · η'(x_τ(1..q')),
  a product in End(W).

Degrees: a V part Λ^r g*⊗g has degree r−1, an E part Λ^q g*⊗End W has degree q.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt
from typing import Sequence

from .config import ContractViolation, DEFAULT_LIMITS, check_cap
from .exactlin import ZERO, ONE, Matrix, Subspace, complement, direct_sum_check, orth_complement
from .liealg import (IdealData, LieAlgebra, Representation, bracket, is_subalgebra,
                     restrict_algebra, split_coordinates, standard_representations, Certificate)
from .multilin import (E_KIND, V_KIND, Cochain, CochainSpace, CoeffModule, GradedElement, comb_index,
                       koszul_sign, map_coefficients, pullback, sort_sign, unshuffles, unshuffles_signed,
                       wedge_basis)

HALF = Fraction(1, 2)


# -- primitives -----------------------------------------------------------------

def insert(outer: Cochain, inner: Cochain) -> Cochain:
    a, b = outer.space.p, inner.space.p
    n = outer.space.domain_dim
    if inner.space.coeff.dim != n or inner.space.domain_dim != n:
        raise ContractViolation("inner cochain must be g-valued on the same domain")
    m = outer.space.coeff.dim
    if a == 0:
        p = max(b - 1, 0)
        return CochainSpace(p, n, outer.space.coeff, outer.space.domain).zero()
    p = a + b - 1
    sp = CochainSpace(p, n, outer.space.coeff, outer.space.domain)
    if p > n:
        return sp.zero()
    if outer.is_zero() or inner.is_zero():
        return sp.zero()
    oidx = comb_index(n, a)
    iidx = comb_index(n, b)
    out = []
    shuf = unshuffles_signed(b, a - 1)
    for T in wedge_basis(n, p):
        acc = [ZERO] * m
        for sg, tau in shuf:
            A = tuple(T[i] for i in tau[:b])
            R = tuple(T[i] for i in tau[b:])
            ii = iidx[A] * n
            Rset = set(R)
            for k in range(n):
                vk = inner.coeffs[ii + k]
                if not vk or k in Rset:
                    continue
                s2, S = sort_sign((k,) + R)
                f = sg * s2 * vk
                oo = oidx[S] * m
                for t in range(m):
                    w = outer.coeffs[oo + t]
                    if w:
                        acc[t] += f * w
        out.extend(acc)
    return Cochain(sp, tuple(out))


def _matmul_flat(A, B, N):
    out = [ZERO] * (N * N)
    for i in range(N):
        for k in range(N):
            a = A[i * N + k]
            if not a:
                continue
            for j in range(N):
                b = B[k * N + j]
                if b:
                    out[i * N + j] += a * b
    return out


def compose_end(eta: Cochain, eta2: Cochain) -> Cochain:
    qq, q2 = eta.space.p, eta2.space.p
    n = eta.space.domain_dim
    D = eta.space.coeff.dim
    N = isqrt(D)
    p = qq + q2
    sp = CochainSpace(p, n, eta.space.coeff, eta.space.domain)
    if p > n or eta.is_zero() or eta2.is_zero():
        return sp.zero()
    i1 = comb_index(n, qq)
    i2 = comb_index(n, q2)
    out = []
    shuf = unshuffles_signed(q2, qq)
    for T in wedge_basis(n, p):
        acc = [ZERO] * D
        for sg, tau in shuf:
            A = tuple(T[i] for i in tau[:q2])
            R = tuple(T[i] for i in tau[q2:])
            X = eta.coeffs[i1[R] * D:(i1[R] + 1) * D]
            Y = eta2.coeffs[i2[A] * D:(i2[A] + 1) * D]
            if not any(X) or not any(Y):
                continue
            prod = _matmul_flat(X, Y, N)
            for t in range(D):
                if prod[t]:
                    acc[t] += sg * prod[t]
        out.extend(acc)
    return Cochain(sp, tuple(out))


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


def _component_bracket(k1, c1: Cochain, k2, c2: Cochain):
    """Bracket of two homogeneous components; returns (key, Cochain) or None."""
    kind1, r1 = k1
    kind2, r2 = k2
    if kind1 == V_KIND and kind2 == V_KIND:
        p1, p2 = r1 - 1, r2 - 1
        res = insert(c1, c2).scale(_sgn(p1 * p2)) - insert(c2, c1)
        return (V_KIND, res.space.p), res
    if kind1 == V_KIND and kind2 == E_KIND:
        if r2 == 0:
            return None
        res = -insert(c2, c1)
        return (E_KIND, res.space.p), res
    if kind1 == E_KIND and kind2 == V_KIND:
        if r1 == 0:
            return None
        p = r2 - 1
        res = insert(c1, c2).scale(_sgn(p * r1))
        return (E_KIND, res.space.p), res
    res = compose_end(c1, c2).scale(_sgn(r1 * r2)) - compose_end(c2, c1)
    return (E_KIND, res.space.p), res


def extended_bracket(a: GradedElement, b: GradedElement) -> GradedElement:
    carrier = "L+End" if "L+End" in (a.carrier, b.carrier) else "L"
    acc: dict = {}
    for k1, c1 in a.parts:
        if c1.is_zero():
            continue
        for k2, c2 in b.parts:
            if c2.is_zero():
                continue
            r = _component_bracket(k1, c1, k2, c2)
            if r is None:
                continue
            key, val = r
            acc[key] = acc[key] + val if key in acc else val
    return GradedElement.make(carrier, acc)


def gerstenhaber_bracket(a: GradedElement, b: GradedElement) -> GradedElement:
    if a.carrier != "L" or b.carrier != "L":
        raise ContractViolation("gerstenhaber_bracket works on C(g;g)[1] only")
    return extended_bracket(a, b)


# -- standard elements ------------------------------------------------------------

def _mod(tag, dim):
    return CoeffModule(tag, dim)


def mu_cochain(g: LieAlgebra) -> Cochain:
    n = g.dim
    sp = CochainSpace(2, n, _mod("g", n))
    return Cochain.from_blocks(sp, lambda S: g.basis_bracket(*S))


def skew_cochain(n: int, table) -> Cochain:
    """2-cochain from a flat c[(i*n+j)*n+k] table (only i<j is read)."""
    sp = CochainSpace(2, n, _mod("g", n))
    return Cochain.from_blocks(sp, lambda S: [table[(S[0] * n + S[1]) * n + k] for k in range(n)])


def ad_cochain_of(mu: Cochain) -> Cochain:
    """ad_μ ∈ Λ^1 g* ⊗ gl(g): block t is the matrix y ↦ μ(e_t, y), row-major."""
    n = mu.space.domain_dim
    sp = CochainSpace(1, n, _mod("gl(g)", n * n))

    def blk(S):
        t = S[0]
        M = [ZERO] * (n * n)
        for s in range(n):
            col = mu.on_basis((t, s))
            for r in range(n):
                M[r * n + s] = col[r]
        return M
    return Cochain.from_blocks(sp, blk)


def jacobiator_cochain(mu: Cochain) -> Cochain:
    """Jac_μ(x1,x2,x3) = μ(μ(x1,x2),x3) + μ(μ(x2,x3),x1) + μ(μ(x3,x1),x2)."""
    n = mu.space.domain_dim
    sp = CochainSpace(3, n, _mod("g", n))

    def mm(i, j, l):
        v = mu.on_basis((i, j))
        out = [ZERO] * n
        for k, vk in enumerate(v):
            if vk:
                w = mu.on_basis((k, l))
                out = [o + vk * x for o, x in zip(out, w)]
        return out

    def blk(S):
        a, b, c = S
        return [x + y + z for x, y, z in zip(mm(a, b, c), mm(b, c, a), mm(c, a, b))]
    return Cochain.from_blocks(sp, blk)


def theta_lie_rep(g: LieAlgebra) -> GradedElement:
    mu = mu_cochain(g)
    return GradedElement.make("L+End", {(V_KIND, 2): mu, (E_KIND, 1): ad_cochain_of(mu)})


# -- subalgebra context -------------------------------------------------------------

@dataclass(frozen=True)
class SubalgebraData:
    algebra: LieAlgebra
    sub: Subspace
    complement: Subspace
    Bh: Matrix
    Bc: Matrix
    coord_h: Matrix
    coord_c: Matrix
    h_algebra: LieAlgebra
    complement_rule: str = "pivot"

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((self.algebra, self.Bh, self.Bc))
            object.__setattr__(self, "_h", h)
        return h

    @property
    def n(self):
        return self.algebra.dim

    @property
    def k(self):
        return self.sub.dim

    @property
    def m(self):
        return self.complement.dim


def make_subalgebra_data(g: LieAlgebra, h: Subspace, complement_rule="pivot") -> SubalgebraData:
    cert = is_subalgebra(g, h)
    if not cert.verdict:
        raise ContractViolation("subspace is not a subalgebra", cert.witness)
    if isinstance(complement_rule, Subspace):
        C, rule = complement_rule, "explicit"
        if not direct_sum_check(h, C):
            raise ContractViolation("explicit complement is not transverse")
    elif complement_rule == "pivot":
        C, rule = complement(h), "pivot"
    else:
        C, rule = orth_complement(h), "orthogonal"
    ch, cc = split_coordinates(h.basis, C.basis)
    return SubalgebraData(g, h, C, h.basis, C.basis, ch, cc, restrict_algebra(g, h.basis, ch), rule)


@lru_cache(maxsize=64)
def bott_subalgebra(s: SubalgebraData) -> Representation:
    g = s.algebra
    acts = []
    for b in range(s.k):
        A = g.ad(s.Bh.col(b))
        acts.append(s.coord_c @ A @ s.Bc if s.m else Matrix.zeros(0, 0))
    return Representation(s.h_algebra, s.m, tuple(acts))


# -- Voronov datasets -------------------------------------------------------------------

@dataclass(frozen=True)
class VoronovData:
    carrier: str            # "ideal-dataset" or "subalgebra-dataset"
    context: object         # IdealData or SubalgebraData
    theta: GradedElement

    @property
    def abelian_part(self) -> str:
        return "C(g; i*⊗i^c)" if self.carrier == "ideal-dataset" else "Λ h*⊗h^c"

    def a_space(self, degree: int) -> CochainSpace:
        c = self.context
        if self.carrier == "ideal-dataset":
            return CochainSpace(degree, c.n, _mod("i*⊗i^c", c.m * c.k))
        return CochainSpace(degree + 1, c.k, _mod("h^c", c.m), "h")

    def a_degree(self, a: Cochain) -> int:
        return a.space.p if self.carrier == "ideal-dataset" else a.space.p - 1

    def check_a(self, a: Cochain):
        sp = self.a_space(self.a_degree(a))
        if a.space.domain_dim != sp.domain_dim or a.space.coeff.dim != sp.coeff.dim:
            raise ContractViolation("argument is not an element of the abelian part",
                                    {"expected": repr(sp), "got": repr(a.space)})
        if a.space.coeff.tag != sp.coeff.tag:
            a = a.retag(sp.coeff)
        return a

    def I(self, a: Cochain) -> GradedElement:
        a = self.check_a(a)
        c = self.context
        if self.carrier == "ideal-dataset":
            E = map_coefficients(a, _incl_matrix(c), _mod("gl(g)", c.n * c.n))
            return GradedElement.of(E, E_KIND, "L+End")
        V = map_coefficients(pullback(a, c.coord_h, "g"), c.Bc, _mod("g", c.n))
        return GradedElement.of(V, V_KIND, "L")

    def P(self, x: GradedElement, degree: int) -> Cochain:
        """Projection onto the abelian part in the given degree."""
        c = self.context
        sp = self.a_space(degree)
        if self.carrier == "ideal-dataset":
            E = x.get(E_KIND, degree)
            if E is None:
                return sp.zero()
            return map_coefficients(E, _proj_matrix(c), sp.coeff)
        V = x.get(V_KIND, degree + 1)
        if V is None:
            return sp.zero()
        r = pullback(V, c.Bh, "h")
        return map_coefficients(r, c.coord_c, sp.coeff)


@lru_cache(maxsize=64)
def _incl_matrix(d: IdealData) -> Matrix:
    """M (m×k) ↦ Bc M coord_i (n×n), on row-major vectorizations."""
    n, m, k = d.n, d.m, d.k
    ent = [ZERO] * (n * n * m * k)
    for r in range(n):
        for s in range(n):
            for a in range(m):
                bc = d.Bc[r, a]
                if not bc:
                    continue
                for b in range(k):
                    ci = d.coord_i[b, s]
                    if ci:
                        ent[(r * n + s) * (m * k) + a * k + b] = bc * ci
    return Matrix(n * n, m * k, tuple(ent))


@lru_cache(maxsize=64)
def _proj_matrix(d: IdealData) -> Matrix:
    """A (n×n) ↦ coord_c A Bi (m×k)."""
    n, m, k = d.n, d.m, d.k
    ent = [ZERO] * (m * k * n * n)
    for a in range(m):
        for b in range(k):
            for r in range(n):
                cc = d.coord_c[a, r]
                if not cc:
                    continue
                for s in range(n):
                    bi = d.Bi[s, b]
                    if bi:
                        ent[(a * k + b) * n * n + r * n + s] = cc * bi
    return Matrix(m * k, n * n, tuple(ent))


@lru_cache(maxsize=64)
def ideal_dataset(d: IdealData) -> VoronovData:
    return VoronovData("ideal-dataset", d, theta_lie_rep(d.algebra))


@lru_cache(maxsize=64)
def subalgebra_dataset(s: SubalgebraData) -> VoronovData:
    return VoronovData("subalgebra-dataset", s, GradedElement.of(mu_cochain(s.algebra)))


def voronov_higher_bracket(v: VoronovData, args: Sequence[Cochain]) -> Cochain:
    """m_k(a_1..a_k) = P⟦…⟦⟦Θ, I a_1⟧, I a_2⟧, …, I a_k⟧."""
    if not args:
        raise ContractViolation("need at least one argument")
    check_cap("max_arity", len(args), DEFAULT_LIMITS)
    args = [v.check_a(a) for a in args]
    out_deg = sum(v.a_degree(a) for a in args) + 1
    X = v.theta
    for a in args:
        X = extended_bracket(X, v.I(a))
        if X.is_zero():
            break
    return v.P(X, out_deg)


def validate_voronov(v: VoronovData, samples: Sequence[tuple]) -> Certificate:
    """The four dataset clauses, each checked separately.

    samples: list of (a, b, x, y) with a, b in the abelian part and x, y in L.
    """
    res = {}
    tt = extended_bracket(v.theta, v.theta)
    res["theta_squared_zero"] = tt.is_zero()
    res["theta_in_ker_P"] = all(v.P(v.theta, dg).is_zero() for dg in range(0, 4))
    ab, pi, kerP = True, True, True
    for a, b, x, y in samples:
        if not extended_bracket(v.I(a), v.I(b)).is_zero():
            ab = False
        if v.P(v.I(a), v.a_degree(a)) != v.check_a(a):
            pi = False
        kx = _kill_P(v, x)
        ky = _kill_P(v, y)
        z = extended_bracket(kx, ky)
        if z.degrees() and any(not v.P(z, dg).is_zero() for dg in z.degrees()):
            kerP = False
    res["abelian"] = ab
    res["P_after_I_is_identity"] = pi
    res["ker_P_closed"] = kerP
    return Certificate(all(res.values()), "voronov_dataset", res)


def _kill_P(v: VoronovData, x: GradedElement) -> GradedElement:
    """x − I(P(x)) lies in ker P."""
    out = x
    for dg in x.degrees():
        pa = v.P(x, dg)
        if not pa.is_zero():
            out = out - v.I(pa)
    return out


# -- closed forms -----------------------------------------------------------------

def _mat(blk, m, k):
    return Matrix(m, k, tuple(blk))


def ideal_m2(d: IdealData, psi: Cochain, phi: Cochain) -> Cochain:
    """m2(ψ,φ)(x,u) = −ψ(pr_i[x, φu]) − φ(pr_i[x, ψu]) for degree-0 arguments."""
    if psi.space.p != 0 or phi.space.p != 0:
        raise ContractViolation("ideal_m2 closed form needs degree-0 arguments")
    n, m, k = d.n, d.m, d.k
    Mpsi, Mphi = _mat(psi.coeffs, m, k), _mat(phi.coeffs, m, k)
    sp = CochainSpace(1, n, psi.space.coeff)
    g = d.algebra

    def blk(S):
        t = S[0]
        if not (m and k):
            return []
        C = d.coord_i @ g.ad_basis(t) @ d.Bc   # k x m
        out = (Mpsi @ C @ Mphi) + (Mphi @ C @ Mpsi)
        return [-x for x in out.entries]
    return Cochain.from_blocks(sp, blk)


def _xi_apply(s: SubalgebraData, xi: Cochain, hv):
    """ξ(h) as a vector of g, for h given in h-coordinates."""
    # ξ is a 1-cochain on h: block b holds the h^c coordinates of ξ(h_b)
    M = Matrix(s.k, s.m, tuple(xi.coeffs)).T if s.m and s.k else Matrix.zeros(s.m, s.k)
    return s.Bc.apply(M.apply(hv)) if s.m else [ZERO] * s.n


def _xi_of_g(s: SubalgebraData, xi: Cochain, v):
    """ξ(p_h v) in g for v ∈ g."""
    return _xi_apply(s, xi, s.coord_h.apply(v))


def subalg_m1(s: SubalgebraData, xi: Cochain) -> Cochain:
    from .complexes import ce_differential
    return ce_differential(bott_subalgebra(s), xi.retag(_mod("h^c", s.m)) if xi.space.coeff.tag != "h^c" else xi)


def subalg_m2(s: SubalgebraData, xi: Cochain, eta: Cochain) -> Cochain:
    """Closed form for ξ, η ∈ Λ^1 h*⊗h^c."""
    if xi.space.p != 1 or eta.space.p != 1:
        raise ContractViolation("subalg_m2 closed form needs degree-0 (form degree 1) arguments")
    g = s.algebra
    sp = CochainSpace(2, s.k, _mod("h^c", s.m), "h")
    eh = [[ONE if a == b else ZERO for a in range(s.k)] for b in range(s.k)]

    def blk(S):
        i, j = S
        h1, h2 = s.Bh.col(i), s.Bh.col(j)
        xh1, xh2 = _xi_apply(s, xi, eh[i]), _xi_apply(s, xi, eh[j])
        yh1, yh2 = _xi_apply(s, eta, eh[i]), _xi_apply(s, eta, eh[j])
        terms = [bracket(g, yh1, xh2),
                 [-x for x in _xi_of_g(s, xi, bracket(g, yh1, h2))],
                 [-x for x in bracket(g, yh2, xh1)],
                 _xi_of_g(s, xi, bracket(g, yh2, h1)),
                 [-x for x in _xi_of_g(s, eta, bracket(g, h1, xh2))],
                 _xi_of_g(s, eta, bracket(g, h2, xh1))]
        tot = [sum(col, ZERO) for col in zip(*terms)]
        return s.coord_c.apply(tot)
    return Cochain.from_blocks(sp, blk)


def subalg_m3_diag(s: SubalgebraData, xi: Cochain) -> Cochain:
    """m3(ξ,ξ,ξ)(h1,h2) = −6 ξ(p_h[ξh1, ξh2])."""
    g = s.algebra
    sp = CochainSpace(2, s.k, _mod("h^c", s.m), "h")
    eh = [[ONE if a == b else ZERO for a in range(s.k)] for b in range(s.k)]

    def blk(S):
        i, j = S
        z = bracket(g, _xi_apply(s, xi, eh[i]), _xi_apply(s, xi, eh[j]))
        return [-6 * x for x in s.coord_c.apply(_xi_of_g(s, xi, z))]
    return Cochain.from_blocks(sp, blk)


def subalg_m123(s: SubalgebraData, *args: Cochain) -> Cochain:
    """Closed forms on degree-0 arguments: m1 = δ_Bott, m2, m3 (by polarization of the cube)."""
    if len(args) == 1:
        return subalg_m1(s, args[0])
    if any(a.space.p != 1 for a in args):
        return voronov_higher_bracket(subalgebra_dataset(s), args)
    if len(args) == 2:
        return subalg_m2(s, *args)
    if len(args) == 3:
        a, b, c = args
        f = lambda x: subalg_m3_diag(s, x)
        tot = (f(a + b + c) - f(a + b) - f(a + c) - f(b + c) + f(a) + f(b) + f(c))
        return tot.scale(Fraction(1, 6))
    sp = CochainSpace(len(args) * 0 + 2, s.k, _mod("h^c", s.m), "h")
    return sp.zero()


# -- mapping cone L[1] ⊕ 𝔞 -----------------------------------------------------------

@dataclass(frozen=True)
class ConeElement:
    l: GradedElement | None = None
    a: Cochain | None = None

    def __add__(self, other: "ConeElement") -> "ConeElement":
        l = self.l if other.l is None else (other.l if self.l is None else self.l + other.l)
        a = self.a if other.a is None else (other.a if self.a is None else self.a + other.a)
        return ConeElement(l, a)

    def scale(self, s) -> "ConeElement":
        return ConeElement(None if self.l is None else self.l.scale(s),
                           None if self.a is None else self.a.scale(s))

    def is_zero(self) -> bool:
        return (self.l is None or self.l.is_zero()) and (self.a is None or self.a.is_zero())

    def pieces(self):
        out = []
        if self.l is not None and not self.l.is_zero():
            out.append(("L", self.l))
        if self.a is not None and not self.a.is_zero():
            out.append(("A", self.a))
        return out


def cone_degree(v: VoronovData, kind: str, x) -> int:
    return x.degree - 1 if kind == "L" else v.a_degree(x)


def _cone_pure(v: VoronovData, pieces: list) -> ConeElement:
    k = len(pieces)
    kinds = [p[0] for p in pieces]
    nL = kinds.count("L")
    if k == 1:
        kind, x = pieces[0]
        if kind == "L":
            dx = extended_bracket(v.theta, x)
            return ConeElement(-dx, v.P(x, x.degree))
        return ConeElement(None, voronov_higher_bracket(v, [x]))
    if nL >= 2:
        if k == 2:
            x, y = pieces[0][1], pieces[1][1]
            return ConeElement(extended_bracket(x, y).scale(_sgn(x.degree)), None)
        return ConeElement()
    if nL == 1:
        pos = kinds.index("L")
        degs = [cone_degree(v, kd, x) for kd, x in pieces]
        perm = [pos] + [i for i in range(k) if i != pos]
        eps = koszul_sign(perm, degs)
        x = pieces[pos][1]
        rest = [pieces[i][1] for i in perm[1:]]
        X = x
        for a in rest:
            X = extended_bracket(X, v.I(a))
        out_deg = x.degree + sum(v.a_degree(a) for a in rest)
        return ConeElement(None, v.P(X, out_deg).scale(eps))
    return ConeElement(None, voronov_higher_bracket(v, [p[1] for p in pieces]))


def mapping_cone_brackets(v: VoronovData, args: Sequence[ConeElement]) -> ConeElement:
    """m_k on L[1] ⊕ 𝔞, multilinear in possibly mixed arguments."""
    check_cap("max_arity", len(args), DEFAULT_LIMITS)
    total = ConeElement()
    plist = [a.pieces() for a in args]
    if any(not p for p in plist):
        return total

    def rec(i, acc):
        nonlocal total
        if i == len(plist):
            total = total + _cone_pure(v, acc)
            return
        for pc in plist[i]:
            rec(i + 1, acc + [pc])
    rec(0, [])
    return total


# -- MC residuals ---------------------------------------------------------------------

@dataclass(frozen=True)
class MCResidual:
    structure: str
    residual: object
    is_zero: bool

    def to_json(self) -> dict:
        r = self.residual
        if isinstance(r, ConeElement):
            payload = {"L": None if r.l is None else {f"{k[0]}{k[1]}": c.to_json() for k, c in r.l.parts},
                       "a": None if r.a is None else r.a.to_json()}
        else:
            payload = r.to_json()
        return {"structure": self.structure, "zero": bool(self.is_zero), "residual": payload}


def _hom_delta(d: IdealData, c: Cochain) -> Cochain:
    from .complexes import ce_differential
    return ce_differential(standard_representations(d).ad_hom, c)


def mc_residual(structure: str, context, inputs) -> MCResidual:
    if structure == "dgl1a_ideal":
        d, phi = context, inputs
        if phi.space.p != 0:
            raise ContractViolation("MC elements of the ideal structure have degree 0")
        r = _hom_delta(d, phi) + ideal_m2(d, phi, phi).retag(phi.space.coeff).scale(HALF)
        return MCResidual(structure, r, r.is_zero())
    if structure == "linfty_subalgebra":
        s, xi = context, inputs
        r = subalg_m1(s, xi) + subalg_m2(s, xi, xi).scale(HALF) + subalg_m3_diag(s, xi).scale(Fraction(1, 6))
        return MCResidual(structure, r, r.is_zero())
    if structure == "linfty_simultaneous":
        d = context
        mu_p, ad_p, phi = inputs
        _check_ad_consistent(mu_p, ad_p)
        v = ideal_dataset(d)
        x = GradedElement.make("L+End", {(V_KIND, 2): mu_p, (E_KIND, 1): ad_p})
        a = v.check_a(phi)
        X = ConeElement(x, a)
        tot = ConeElement()
        for k in (1, 2, 3):
            tot = tot + mapping_cone_brackets(v, [X] * k).scale(Fraction(1, factorial(k)))
        return MCResidual(structure, tot, tot.is_zero())
    raise ValueError(f"unknown structure {structure!r}")


def _check_ad_consistent(mu_p: Cochain, ad_p: Cochain):
    want = ad_cochain_of(mu_p)
    if want.coeffs != ad_p.coeffs:
        diff = [i for i, (a, b) in enumerate(zip(want.coeffs, ad_p.coeffs)) if a != b]
        raise ContractViolation("ad' is not x ↦ μ'(x, ·)", {"first_bad_coefficient": diff[0]})


# -- L∞ relations -------------------------------------------------------------------------

class LInfinity:
    """Uniform access to the three structures for relation checks."""

    def __init__(self, structure: str, context):
        self.structure = structure
        self.context = context
        if structure == "dgl1a_ideal":
            self.v = ideal_dataset(context)
        elif structure == "linfty_subalgebra":
            self.v = subalgebra_dataset(context)
        elif structure == "linfty_simultaneous":
            self.v = ideal_dataset(context)
        else:
            raise ValueError(structure)

    def deg(self, x) -> int:
        if isinstance(x, ConeElement):
            ps = x.pieces()
            degs = {cone_degree(self.v, kd, y) for kd, y in ps}
            if len(degs) > 1:
                raise ContractViolation("inhomogeneous cone element")
            return degs.pop() if degs else 0
        return self.v.a_degree(x)

    def m(self, args: list):
        if self.structure == "linfty_simultaneous":
            return mapping_cone_brackets(self.v, args)
        k = len(args)
        if self.structure == "dgl1a_ideal":
            if k == 1:
                return _hom_delta(self.context, args[0].retag(_mod("i*⊗g/i", args[0].space.coeff.dim))).retag(
                    self.v.a_space(0).coeff)
            if k == 2 and all(a.space.p == 0 for a in args):
                return ideal_m2(self.context, *args).retag(self.v.a_space(0).coeff)
            if k >= 3:
                return self.v.a_space(sum(a.space.p for a in args) + 1).zero()
            return voronov_higher_bracket(self.v, args)
        if k == 1:
            return subalg_m1(self.context, args[0])
        if all(a.space.p == 1 for a in args) and k <= 3:
            return subalg_m123(self.context, *args)
        return voronov_higher_bracket(self.v, args)


def linfty_relation_residual(structure: str, context, n: int, args: Sequence):
    """Σ_{i+j=n+1} Σ_{σ ∈ Sh(i, n−i)} ε(σ) m_j(m_i(x_σ(1..i)), x_σ(i+1..n))."""
    if len(args) != n:
        raise ContractViolation("need exactly n arguments")
    L = structure if isinstance(structure, LInfinity) else LInfinity(structure, context)
    degs = [L.deg(x) for x in args]
    total = None
    for i in range(1, n + 1):
        for sigma in unshuffles(i, n - i):
            eps = koszul_sign(sigma, degs)
            inner = L.m([args[s] for s in sigma[:i]])
            term = L.m([inner] + [args[s] for s in sigma[i:]]).scale(eps)
            total = term if total is None else total + term
    return total
