"""Alternating cochains Λ^p V* ⊗ W over a lexicographic wedge basis.

Storage is dense: coefficient of e^S ⊗ w_a sits at ``comb_index(S) * dim W + a``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .config import ContractViolation
from .exactlin import ZERO, ONE, Matrix, fmt, q


@lru_cache(maxsize=None)
def wedge_basis(n: int, p: int) -> tuple:
    if p < 0 or p > n:
        return ()
    return tuple(itertools.combinations(range(n), p))


@lru_cache(maxsize=None)
def comb_index(n: int, p: int) -> dict:
    return {S: i for i, S in enumerate(wedge_basis(n, p))}


def sort_sign(seq: Sequence[int]):
    """(sign, sorted tuple) of an index sequence; sign 0 if there is a repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    sign = 1
    # insertion sort, counting swaps
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(seq)


def perm_sign(perm: Sequence[int]) -> int:
    inv = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inv += 1
    return -1 if inv % 2 else 1


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """ε with x_1…x_n = ε x_{σ(1)}…x_{σ(n)}; perm[k] is the (0-based) σ(k+1)."""
    if len(perm) != len(degrees):
        raise ValueError("lengths differ")
    s = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                s = -s
    return s


def unshuffles(i: int, j: int):
    """Permutations of range(i+j) increasing on the first i and on the last j slots."""
    n = i + j
    for first in itertools.combinations(range(n), i):
        fs = set(first)
        yield first + tuple(k for k in range(n) if k not in fs)


@lru_cache(maxsize=None)
def unshuffles_signed(i: int, j: int) -> tuple:
    return tuple((perm_sign(t), t) for t in unshuffles(i, j))


# -- coefficient modules ------------------------------------------------------

MODULE_TAGS = ("g", "g/i", "i", "gl(g)", "End(W)", "i*⊗g/i", "i*⊗i^c", "h^c", "W*⊗g/W")


@dataclass(frozen=True)
class CoeffModule:
    tag: str
    dim: int

    def __post_init__(self):
        if self.tag not in MODULE_TAGS and not self.tag.startswith("custom:"):
            raise ValueError(f"unknown coefficient module {self.tag!r}")


@dataclass(frozen=True)
class CochainSpace:
    p: int
    domain_dim: int
    coeff: CoeffModule
    domain: str = "g"

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("negative degree")

    @property
    def combos(self) -> tuple:
        return wedge_basis(self.domain_dim, self.p)

    @property
    def dim(self) -> int:
        return comb(self.domain_dim, self.p) * self.coeff.dim

    def shifted(self, dp: int) -> "CochainSpace":
        return CochainSpace(self.p + dp, self.domain_dim, self.coeff, self.domain)

    def zero(self) -> "Cochain":
        return Cochain(self, (ZERO,) * self.dim)

    def basis_element(self, idx: int) -> "Cochain":
        v = [ZERO] * self.dim
        v[idx] = ONE
        return Cochain(self, tuple(v))


@dataclass(frozen=True)
class Cochain:
    space: CochainSpace
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.space.dim:
            raise ValueError(f"expected {self.space.dim} coefficients, got {len(self.coeffs)}")

    @property
    def p(self) -> int:
        return self.space.p

    @staticmethod
    def from_vector(space: CochainSpace, v: Iterable) -> "Cochain":
        return Cochain(space, tuple(q(x) for x in v))

    @staticmethod
    def from_blocks(space: CochainSpace, f) -> "Cochain":
        """Build from f(S) -> coefficient vector, for each combination S."""
        out = []
        m = space.coeff.dim
        for S in space.combos:
            blk = f(S)
            if len(blk) != m:
                raise ValueError("block length mismatch")
            out.extend(q(x) for x in blk)
        return Cochain(space, tuple(out))

    def block(self, S: tuple) -> list:
        m = self.space.coeff.dim
        i = comb_index(self.space.domain_dim, self.space.p)[S]
        return list(self.coeffs[i * m:(i + 1) * m])

    def block_at(self, idx: int) -> tuple:
        m = self.space.coeff.dim
        return self.coeffs[idx * m:(idx + 1) * m]

    def on_basis(self, idx: Sequence[int]) -> list:
        """Value on (e_{i1},…,e_{ip}) for an arbitrary index tuple."""
        s, S = sort_sign(idx)
        if s == 0:
            return [ZERO] * self.space.coeff.dim
        b = self.block(S)
        return b if s == 1 else [-x for x in b]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "Cochain"):
        if self.space != other.space:
            raise ContractViolation("cochain spaces differ", {"a": repr(self.space), "b": repr(other.space)})

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.space, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.space, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Cochain":
        return Cochain(self.space, tuple(-a for a in self.coeffs))

    def scale(self, s) -> "Cochain":
        s = q(s)
        return Cochain(self.space, tuple(s * a for a in self.coeffs))

    def retag(self, coeff: CoeffModule) -> "Cochain":
        if coeff.dim != self.space.coeff.dim:
            raise ContractViolation("retag changes coefficient dimension")
        sp = CochainSpace(self.space.p, self.space.domain_dim, coeff, self.space.domain)
        return Cochain(sp, self.coeffs)

    def to_json(self) -> dict:
        m = self.space.coeff.dim
        blocks = {}
        for i, S in enumerate(self.space.combos):
            b = self.coeffs[i * m:(i + 1) * m]
            if any(b):
                blocks[json.dumps(list(S))] = [fmt(x) for x in b]
        return {"p": self.space.p, "domain": self.space.domain,
                "domain_dim": self.space.domain_dim,
                "coeff": {"tag": self.space.coeff.tag, "dim": m}, "coeffs": blocks}

    @staticmethod
    def from_json(obj: dict) -> "Cochain":
        coeff = CoeffModule(obj["coeff"]["tag"], int(obj["coeff"]["dim"]))
        sp = CochainSpace(int(obj["p"]), int(obj["domain_dim"]), coeff, obj.get("domain", "g"))
        v = [ZERO] * sp.dim
        idx = comb_index(sp.domain_dim, sp.p)
        for key, blk in obj.get("coeffs", {}).items():
            S = tuple(json.loads(key))
            if S not in idx:
                raise ValueError(f"bad combination key {key}")
            if len(blk) != coeff.dim:
                raise ValueError(f"block {key} has wrong length")
            base = idx[S] * coeff.dim
            for a, x in enumerate(blk):
                v[base + a] = q(x)
        return Cochain(sp, tuple(v))


def _det(rows: list) -> Fraction:
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    a = [list(r) for r in rows]
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = ONE / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def evaluate(c: Cochain, args: Sequence[Sequence]) -> list:
    """ω(v_1,…,v_p) = Σ_S ω_S det(V[S,:])."""
    p, n = c.space.p, c.space.domain_dim
    if len(args) != p:
        raise ContractViolation(f"expected {p} arguments, got {len(args)}")
    for v in args:
        if len(v) != n:
            raise ContractViolation(f"argument of length {len(v)}, domain has dim {n}")
    m = c.space.coeff.dim
    out = [ZERO] * m
    args = [[q(x) for x in v] for v in args]
    for i, S in enumerate(c.space.combos):
        blk = c.coeffs[i * m:(i + 1) * m]
        if not any(blk):
            continue
        d = _det([[args[col][s] for col in range(p)] for s in S])
        if d:
            for a in range(m):
                if blk[a]:
                    out[a] += d * blk[a]
    return out


@lru_cache(maxsize=512)
def _wedge_power_cached(L: Matrix, p: int) -> Matrix:
    n, n2 = L.rows, L.cols
    rows_c = wedge_basis(n, p)
    cols_c = wedge_basis(n2, p)
    ent = []
    for S in rows_c:
        for T in cols_c:
            ent.append(_det([[L[s, t] for t in T] for s in S]))
    return Matrix(len(rows_c), len(cols_c), tuple(ent))


def wedge_power(L: Matrix, p: int) -> Matrix:
    """Λ^p L: entry (S, T) is the minor det L[S, T]."""
    return _wedge_power_cached(L, p)


def pullback(c: Cochain, L: Matrix, domain: str | None = None) -> Cochain:
    """(L^*ω)(y_1..y_p) = ω(L y_1, …, L y_p) for L: new domain → old domain."""
    if L.rows != c.space.domain_dim:
        raise ContractViolation("pullback map has wrong target dimension")
    p, m = c.space.p, c.space.coeff.dim
    W = wedge_power(L, p)
    sp = CochainSpace(p, L.cols, c.space.coeff, domain or c.space.domain)
    out = [ZERO] * sp.dim
    for si in range(W.rows):
        blk = c.coeffs[si * m:(si + 1) * m]
        if not any(blk):
            continue
        for ti in range(W.cols):
            w = W.entries[si * W.cols + ti]
            if w:
                base = ti * m
                for a in range(m):
                    if blk[a]:
                        out[base + a] += w * blk[a]
    return Cochain(sp, tuple(out))


def map_coefficients(c: Cochain, A: Matrix, coeff: CoeffModule) -> Cochain:
    """Apply a linear map W → W' blockwise."""
    if A.cols != c.space.coeff.dim or A.rows != coeff.dim:
        raise ContractViolation("coefficient map has wrong shape")
    sp = CochainSpace(c.space.p, c.space.domain_dim, coeff, c.space.domain)
    out = []
    m = c.space.coeff.dim
    for i in range(len(c.space.combos)):
        out.extend(A.apply(c.coeffs[i * m:(i + 1) * m]))
    return Cochain(sp, tuple(out))


# -- graded elements ----------------------------------------------------------

V_KIND, E_KIND = "V", "E"


@dataclass(frozen=True)
class GradedElement:
    """Element of C(g;g)[1] (carrier "L") or C(g;g)[1] ⊕ C(g;End W) (carrier "L+End").

    ``parts`` maps (kind, form degree) to a Cochain. A V part of form degree r
    has degree r-1, an E part of form degree q has degree q.
    """
    carrier: str
    parts: tuple = ()  # sorted tuple of ((kind, r), Cochain)

    def __post_init__(self):
        if self.carrier not in ("L", "L+End"):
            raise ValueError("carrier must be 'L' or 'L+End'")
        for (kind, r), c in self.parts:
            if kind == E_KIND and self.carrier != "L+End":
                raise ContractViolation("End component in a C(g;g)[1] element")
            if c.space.p != r:
                raise ContractViolation("component key does not match form degree")

    @staticmethod
    def make(carrier: str, comps: dict) -> "GradedElement":
        return GradedElement(carrier, tuple(sorted(comps.items(), key=lambda kv: kv[0])))

    @staticmethod
    def of(c: Cochain, kind: str = V_KIND, carrier: str | None = None) -> "GradedElement":
        if carrier is None:
            carrier = "L" if kind == V_KIND else "L+End"
        return GradedElement.make(carrier, {(kind, c.space.p): c})

    @property
    def comps(self) -> dict:
        return dict(self.parts)

    def get(self, kind: str, r: int):
        return self.comps.get((kind, r))

    @staticmethod
    def degree_of(kind: str, r: int) -> int:
        return r - 1 if kind == V_KIND else r

    def degrees(self) -> set:
        return {self.degree_of(k, r) for (k, r), c in self.parts if not c.is_zero()}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ContractViolation("element is not homogeneous", {"degrees": sorted(ds)})
        return ds.pop() if ds else 0

    def is_zero(self) -> bool:
        return all(c.is_zero() for _, c in self.parts)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        carrier = "L+End" if "L+End" in (self.carrier, other.carrier) else "L"
        d = dict(self.parts)
        for k, c in other.parts:
            d[k] = d[k] + c if k in d else c
        return GradedElement.make(carrier, d)

    def scale(self, s) -> "GradedElement":
        return GradedElement.make(self.carrier, {k: c.scale(s) for k, c in self.parts})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def pruned(self) -> "GradedElement":
        return GradedElement.make(self.carrier, {k: c for k, c in self.parts if not c.is_zero()})
