"""Lie algebras from structure constants, ideals, quotients, representations."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .config import ContractViolation, DEFAULT_LIMITS, check_cap
from .exactlin import ZERO, ONE, Matrix, Subspace, complement, fmt, inverse, orth_complement, q, direct_sum_check


@dataclass(frozen=True)
class Certificate:
    verdict: bool
    method: str
    witness: dict = field(default_factory=dict)
    dims: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.verdict)

    def to_json(self) -> dict:
        return {"verdict": bool(self.verdict), "method": self.method,
                "witness": _jsonable(self.witness), "dims": _jsonable(self.dims)}


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Matrix):
        return [[fmt(a) for a in r] for r in x.to_rows()]
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def vec_json(v) -> list:
    return [fmt(a) for a in v]


@dataclass(frozen=True, eq=True)
class LieAlgebra:
    dim: int
    c: tuple  # flat, c[(i*n + j)*n + k]
    basis_names: tuple = ()

    def __post_init__(self):
        check_cap("max_dim", self.dim, DEFAULT_LIMITS)
        if len(self.c) != self.dim ** 3:
            raise ValueError("structure constant array must have dim^3 entries")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i + 1}" for i in range(self.dim)))

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((self.dim, self.c))
            object.__setattr__(self, "_h", h)
        return h

    @staticmethod
    def from_brackets(n: int, table: dict, names=None) -> "LieAlgebra":
        """table maps (i, j) with i < j to a coefficient vector or {k: coeff}."""
        c = [ZERO] * n ** 3
        for (i, j), v in table.items():
            if i == j:
                raise ValueError("bracket of a basis vector with itself must vanish")
            if isinstance(v, dict):
                items = v.items()
            else:
                items = enumerate(v)
            for k, val in items:
                val = q(val)
                k = int(k)
                c[(i * n + j) * n + k] += val
                c[(j * n + i) * n + k] -= val
        return LieAlgebra(n, tuple(c), tuple(names) if names else ())

    @staticmethod
    def from_constants(n: int, const) -> "LieAlgebra":
        """const[i][j][k] nested lists. No skew completion is done."""
        return LieAlgebra(n, tuple(q(const[i][j][k]) for i in range(n) for j in range(n) for k in range(n)))

    @staticmethod
    def abelian(n: int) -> "LieAlgebra":
        return LieAlgebra(n, (ZERO,) * n ** 3)

    def const(self, i: int, j: int, k: int) -> Fraction:
        n = self.dim
        return self.c[(i * n + j) * n + k]

    def basis_bracket(self, i: int, j: int) -> list:
        n = self.dim
        base = (i * n + j) * n
        return list(self.c[base:base + n])

    def bracket(self, x: Sequence, y: Sequence) -> list:
        return bracket(self, x, y)

    def ad(self, x: Sequence) -> Matrix:
        n = self.dim
        cols = [bracket(self, x, [ONE if a == j else ZERO for a in range(n)]) for j in range(n)]
        return Matrix.from_cols(cols, n) if n else Matrix.zeros(0, 0)

    def ad_basis(self, i: int) -> Matrix:
        n = self.dim
        return Matrix(n, n, tuple(self.const(i, j, k) for k in range(n) for j in range(n)))

    def to_json(self) -> dict:
        n = self.dim
        br = []
        for i in range(n):
            for j in range(i + 1, n):
                v = self.basis_bracket(i, j)
                if any(v):
                    br.append({"i": i, "j": j, "coeffs": {str(k): fmt(a) for k, a in enumerate(v) if a}})
        return {"dim": n, "basis_names": list(self.basis_names), "brackets": br}

    @staticmethod
    def from_json(obj: dict) -> "LieAlgebra":
        n = int(obj["dim"])
        table = {}
        for b in obj.get("brackets", []):
            i, j = int(b["i"]), int(b["j"])
            if not (0 <= i < j < n):
                raise ValueError(f"bracket entry needs 0 <= i < j < dim, got ({i},{j})")
            coeffs = {int(k): q(v) for k, v in b["coeffs"].items()}
            if any(not 0 <= k < n for k in coeffs):
                raise ValueError(f"coefficient index out of range in bracket ({i},{j})")
            table[(i, j)] = coeffs
        names = obj.get("basis_names") or None
        if names is not None and len(names) != n:
            raise ValueError("basis_names has wrong length")
        return LieAlgebra.from_brackets(n, table, names)


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> list:
    n = g.dim
    if len(x) != n or len(y) != n:
        raise ContractViolation("vector length does not match algebra dimension")
    out = [ZERO] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj or i == j:
                continue
            f = q(xi) * q(yj)
            base = (i * n + j) * n
            for k in range(n):
                ck = g.c[base + k]
                if ck:
                    out[k] += f * ck
    return out


def jacobiator(g: LieAlgebra, i: int, j: int, l: int) -> list:
    n = g.dim
    out = [ZERO] * n
    for k in range(n):
        s = ZERO
        for m in range(n):
            s += (g.const(i, j, m) * g.const(m, l, k) + g.const(j, l, m) * g.const(m, i, k)
                  + g.const(l, i, m) * g.const(m, j, k))
        out[k] = s
    return out


def validate_lie_algebra(g: LieAlgebra) -> Certificate:
    n = g.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if g.const(i, j, k) != -g.const(j, i, k):
                    return Certificate(False, "antisymmetry", {"triple": [i, j, k]}, {"dim": n})
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                J = jacobiator(g, i, j, l)
                if any(J):
                    return Certificate(False, "jacobi", {"triple": [i, j, l], "jacobiator": vec_json(J)},
                                       {"dim": n})
    return Certificate(True, "jacobi", {}, {"dim": n})


def _e(n, i):
    return [ONE if a == i else ZERO for a in range(n)]


def is_subalgebra(g: LieAlgebra, W: Subspace) -> Certificate:
    vs = W.vectors()
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            z = bracket(g, vs[a], vs[b])
            if not W.contains_vector(z):
                return Certificate(False, "subalgebra", {"pair": [a, b], "bracket": vec_json(z)}, {"dim": W.dim})
    return Certificate(True, "subalgebra", {}, {"dim": W.dim})


def is_ideal(g: LieAlgebra, W: Subspace) -> Certificate:
    vs = W.vectors()
    for a in range(g.dim):
        ea = _e(g.dim, a)
        for b, w in enumerate(vs):
            z = bracket(g, ea, w)
            if not W.contains_vector(z):
                return Certificate(False, "ideal", {"pair": [a, b], "bracket": vec_json(z)}, {"dim": W.dim})
    return Certificate(True, "ideal", {}, {"dim": W.dim})


@dataclass(frozen=True)
class Representation:
    algebra: LieAlgebra
    module_dim: int
    action: tuple  # of Matrix, one per basis vector of the algebra

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((self.algebra, self.module_dim, self.action))
            object.__setattr__(self, "_h", h)
        return h

    def check(self) -> Certificate:
        g = self.algebra
        n = g.dim
        for i in range(n):
            for j in range(i + 1, n):
                lhs = Matrix.zeros(self.module_dim, self.module_dim)
                for k, ck in enumerate(g.basis_bracket(i, j)):
                    if ck:
                        lhs = lhs + self.action[k].scale(ck)
                A, B = self.action[i], self.action[j]
                rhs = A @ B - B @ A
                if lhs != rhs:
                    return Certificate(False, "representation", {"pair": [i, j]})
        return Certificate(True, "representation")

    def act(self, x: Sequence) -> Matrix:
        M = Matrix.zeros(self.module_dim, self.module_dim)
        for i, xi in enumerate(x):
            if xi:
                M = M + self.action[i].scale(xi)
        return M


def trivial_representation(g: LieAlgebra, m: int) -> Representation:
    return Representation(g, m, tuple(Matrix.zeros(m, m) for _ in range(g.dim)))


def adjoint(g: LieAlgebra) -> Representation:
    return Representation(g, g.dim, tuple(g.ad_basis(i) for i in range(g.dim)))


def restrict_algebra(g: LieAlgebra, B: Matrix, coords: Matrix, names=None) -> LieAlgebra:
    """Structure constants of a subalgebra with basis columns B; coords maps g → B-coordinates."""
    k = B.cols
    cols = B.to_cols()
    table = {}
    for a in range(k):
        for b in range(a + 1, k):
            table[(a, b)] = coords.apply(bracket(g, cols[a], cols[b]))
    return LieAlgebra.from_brackets(k, table, names)


@dataclass(frozen=True)
class IdealData:
    algebra: LieAlgebra
    ideal: Subspace
    complement: Subspace
    Bi: Matrix        # n x k
    Bc: Matrix        # n x m, also the section s
    coord_i: Matrix   # k x n, i-coordinates along i^c
    coord_c: Matrix   # m x n, this is π_{g/i} in i^c coordinates
    quotient: LieAlgebra
    ideal_algebra: LieAlgebra
    complement_rule: str = "pivot"

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((self.algebra, self.Bi, self.Bc))
            object.__setattr__(self, "_h", h)
        return h

    @property
    def n(self):
        return self.algebra.dim

    @property
    def k(self):
        return self.ideal.dim

    @property
    def m(self):
        return self.complement.dim

    @property
    def pr_i(self) -> Matrix:
        return self.Bi @ self.coord_i

    @property
    def pr_ic(self) -> Matrix:
        return self.Bc @ self.coord_c

    @property
    def quotient_projection(self) -> Matrix:
        return self.coord_c

    @property
    def section(self) -> Matrix:
        return self.Bc


def split_coordinates(B1: Matrix, B2: Matrix):
    """For g = span B1 ⊕ span B2, the coordinate maps onto each summand."""
    n = B1.rows
    full = B1.hstack(B2) if B1.cols and B2.cols else (B1 if B2.cols == 0 else B2)
    inv = inverse(full) if n else Matrix.zeros(0, 0)
    rows = inv.to_rows()
    k = B1.cols
    c1 = Matrix.from_rows(rows[:k], n) if k else Matrix.zeros(0, n)
    c2 = Matrix.from_rows(rows[k:], n) if n - k else Matrix.zeros(0, n)
    return c1, c2


def make_ideal_data(g: LieAlgebra, i: Subspace, complement_rule="pivot") -> IdealData:
    cert = is_ideal(g, i)
    if not cert.verdict:
        raise ContractViolation("subspace is not an ideal", cert.witness)
    if isinstance(complement_rule, Subspace):
        C = complement_rule
        rule = "explicit"
        if C.ambient_dim != g.dim or not direct_sum_check(i, C):
            raise ContractViolation("explicit complement is not transverse to the ideal",
                                    {"ideal_dim": i.dim, "complement_dim": C.dim})
    elif complement_rule == "pivot":
        C, rule = complement(i), "pivot"
    elif complement_rule in ("orth", "orthogonal"):
        C, rule = orth_complement(i), "orthogonal"
    else:
        raise ValueError(f"unknown complement rule {complement_rule!r}")
    coord_i, coord_c = split_coordinates(i.basis, C.basis)
    quot = restrict_algebra(g, C.basis, coord_c)
    ialg = restrict_algebra(g, i.basis, coord_i)
    return IdealData(g, i, C, i.basis, C.basis, coord_i, coord_c, quot, ialg, rule)


@dataclass(frozen=True)
class StandardReps:
    ad: Representation
    ad_i: Representation
    ad_quot: Representation
    ad_hom: Representation
    bott: Representation

    def __iter__(self):
        return iter((self.ad, self.ad_i, self.ad_quot, self.ad_hom, self.bott))


def hom_action(Q: Matrix, P: Matrix) -> Matrix:
    """Matrix of M ↦ Q M − M P on row-major m x k matrices M."""
    m, k = Q.rows, P.rows
    ent = [ZERO] * (m * k) ** 2
    N = m * k
    for a in range(m):
        for b in range(k):
            row = a * k + b
            for c in range(m):
                qa = Q[a, c]
                if qa:
                    ent[row * N + c * k + b] += qa
            for d in range(k):
                pd = P[d, b]
                if pd:
                    ent[row * N + a * k + d] -= pd
    return Matrix(N, N, tuple(ent))


def gl_representation(g: LieAlgebra) -> Representation:
    """gl(g) with r_x(A) = ad_x A − A ad_x."""
    n = g.dim
    acts = tuple(hom_action(g.ad_basis(i), g.ad_basis(i)) for i in range(n))
    return Representation(g, n * n, acts)


_REPS: dict = {}


def standard_representations(d: IdealData) -> StandardReps:
    hit = _REPS.get(d)
    if hit is not None:
        return hit
    g = d.algebra
    n = g.dim
    ad = adjoint(g)
    ad_i_acts, quot_acts, hom_acts = [], [], []
    for t in range(n):
        A = g.ad_basis(t)
        P = d.coord_i @ A @ d.Bi if d.k else Matrix.zeros(0, 0)
        Q = d.coord_c @ A @ d.Bc if d.m else Matrix.zeros(0, 0)
        ad_i_acts.append(P)
        quot_acts.append(Q)
        hom_acts.append(hom_action(Q, P))
    ad_i = Representation(g, d.k, tuple(ad_i_acts))
    ad_quot = Representation(g, d.m, tuple(quot_acts))
    ad_hom = Representation(g, d.m * d.k, tuple(hom_acts))
    bott_acts = []
    for b in range(d.k):
        A = g.ad(d.Bi.col(b))
        bott_acts.append(d.coord_c @ A @ d.Bc if d.m else Matrix.zeros(0, 0))
    bott = Representation(d.ideal_algebra, d.m, tuple(bott_acts))
    out = StandardReps(ad, ad_i, ad_quot, ad_hom, bott)
    _REPS[d] = out
    return out


@dataclass(frozen=True)
class CrossedModule:
    g0: LieAlgebra
    g_minus1: LieAlgebra
    phi: Matrix
    psi: Representation
    check: Certificate


def crossed_module_from_ideal(d: IdealData) -> CrossedModule:
    g, h = d.algebra, d.ideal_algebra
    psi = standard_representations(d).ad_i
    phi = d.Bi
    n, k = g.dim, d.k
    ok, wit = True, {}
    for x in range(n):
        ex = _e(n, x)
        for y in range(k):
            ey = _e(k, y)
            lhs = phi.apply(psi.action[x].apply(ey)) if k else []
            rhs = bracket(g, ex, phi.apply(ey))
            if lhs != rhs:
                ok, wit = False, {"equivariance": [x, y]}
                break
        if not ok:
            break
    if ok:
        for y1 in range(k):
            for y2 in range(k):
                e1, e2 = _e(k, y1), _e(k, y2)
                lhs = psi.act(phi.apply(e1)).apply(e2)
                if lhs != bracket(h, e1, e2):
                    ok, wit = False, {"peiffer": [y1, y2]}
    if ok:
        for x in range(n):
            for y1 in range(k):
                for y2 in range(k):
                    e1, e2 = _e(k, y1), _e(k, y2)
                    A = psi.action[x]
                    lhs = A.apply(bracket(h, e1, e2))
                    r1 = bracket(h, A.apply(e1), e2)
                    r2 = bracket(h, e1, A.apply(e2))
                    if lhs != [a + b for a, b in zip(r1, r2)]:
                        ok, wit = False, {"derivation": [x, y1, y2]}
    cert = Certificate(ok, "crossed_module", wit, {"g0": n, "g_minus1": k})
    return CrossedModule(g, h, phi, psi, cert)


def subspace_from_json(obj: dict) -> Subspace:
    n = int(obj["ambient"])
    vecs = [[q(x) for x in v] for v in obj.get("basis", [])]
    for v in vecs:
        if len(v) != n:
            raise ValueError("basis vector has wrong length")
    S = Subspace.span(n, vecs) if vecs else Subspace.zero(n)
    if S.dim != len(vecs):
        raise ValueError("basis vectors are linearly dependent")
    return S


def subspace_to_json(S: Subspace) -> dict:
    return {"ambient": S.ambient_dim, "basis": [vec_json(v) for v in S.vectors()]}
