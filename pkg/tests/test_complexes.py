import random
from fractions import Fraction

import pytest

import oracles
from conftest import rand_cochain
from lieideal import corpus
from lieideal.brackets import mu_cochain
from lieideal.complexes import (TAGS, ComplexId, ambient_space, ce_differential, cohomology, connecting_map,
                                delta_hom_ideal, differential, les_exactness_check, map_Pi, map_Pibar,
                                map_pibar_star, map_res_wedge, nr_membership, nr_subspace, res_h0_injective,
                                top_ses, wedge_subspace, ambient_rep)
from lieideal.config import CapacityError, ContractViolation, MembershipError
from lieideal.multilin import Cochain, CochainSpace, CoeffModule

SMALL_PAIRS = [("heisenberg3", "center"), ("heisenberg3", "e23"), ("sl2_plus_center", "center"),
               ("solvable2", "derived"), ("abelian3", "e12"), ("sl2xsl2", "factor1"),
               ("t3_upper_triangular", "corner")]


def _d(name, ideal):
    return corpus.load(name).ideal_data(ideal)


def _oracle_action(tag, d):
    n, m = d.n, d.m
    c = oracles.table_of(d.algebra)
    Bi, Bc, Ci, Cc = (oracles.mat(M) for M in (d.Bi, d.Bc, d.coord_i, d.coord_c))
    if tag in ("ad", "nr_restricted"):
        return c, (lambda t, v: oracles.brack(c, oracles.unit(n, t), v))
    if tag == "morphism":
        def act(t, v):
            s = [sum((Bc[r][a] * v[a] for a in range(m)), Fraction(0)) for r in range(n)]
            return oracles.matvec(Cc, oracles.brack(c, oracles.unit(n, t), s))
        return c, act
    if tag in ("hom_ideal", "wedge_ideal"):
        return c, oracles.hom_action(c, Bi, Bc, Ci, Cc)
    if tag == "quotient":
        cq = oracles.table_of(d.quotient)
        return cq, (lambda t, v: oracles.brack(cq, oracles.unit(m, t), v))
    if tag == "bott":
        ci = oracles.table_of(d.ideal_algebra)
        return ci, (lambda t, v: [Fraction(0)] * m)
    if tag == "gl_restricted":
        def act(t, A):
            ad = [oracles.brack(c, oracles.unit(n, t), oracles.unit(n, s)) for s in range(n)]  # ad[s] = column s
            out = []
            for r in range(n):
                for s in range(n):
                    v = sum((ad[j][r] * A[j * n + s] for j in range(n)), Fraction(0))
                    v -= sum((A[r * n + j] * ad[s][j] for j in range(n)), Fraction(0))
                    out.append(v)
            return out
        return c, act
    raise ValueError(tag)


@pytest.mark.parametrize("name,ideal", SMALL_PAIRS)
@pytest.mark.parametrize("tag", ["ad", "morphism", "hom_ideal", "quotient", "bott", "gl_restricted"])
def test_ce_differential_matches_brute_force(name, ideal, tag):
    d = _d(name, ideal)
    rng = random.Random(7)
    c, act = _oracle_action(tag, d)
    rep = ambient_rep(ComplexId(tag, d))
    top = 1 if tag == "gl_restricted" and d.n > 4 else 2
    for p in range(top + 1):
        sp = ambient_space(ComplexId(tag, d), p)
        if p >= sp.domain_dim:
            continue
        x = rand_cochain(rng, sp, zero_bias=0.5)
        got = ce_differential(rep, x)
        want = oracles.ce_brute(act, c, list(x.coeffs), sp.domain_dim, p, sp.coeff.dim)
        assert list(got.coeffs) == want


@pytest.mark.parametrize("name,ideal", SMALL_PAIRS)
def test_delta_hom_formula_equals_representation_differential(name, ideal):
    d = _d(name, ideal)
    rng = random.Random(3)
    rep = ambient_rep(ComplexId("hom_ideal", d))
    for p in range(3):
        x = rand_cochain(rng, ambient_space(ComplexId("hom_ideal", d), p))
        assert delta_hom_ideal(d, x).coeffs == ce_differential(rep, x).coeffs


def test_heisenberg_delta_hom_vanishes_on_c0(heis):
    sp = ambient_space(ComplexId("hom_ideal", heis), 0)
    for j in range(sp.dim):
        assert ce_differential(ambient_rep(ComplexId("hom_ideal", heis)), sp.basis_element(j)).is_zero()


def test_abelian_all_differentials_zero():
    for _, _, d in [(None, None, corpus.load("abelian3").ideal_data("e1"))]:
        for tag in ("ad", "hom_ideal", "quotient", "morphism"):
            rep = cohomology(ComplexId(tag, d), 2)
            assert all(row["H"] == row["C"] for row in rep.table)


@pytest.mark.parametrize("tag", TAGS)
def test_cohomology_table_consistency(tag, heis):
    rep = cohomology(ComplexId(tag, heis), 2)
    for row, reps in zip(rep.table, rep.reps):
        assert row["H"] == row["Z"] - row["B"] >= 0
        assert len(reps) == row["H"]
        for r in reps:
            assert differential(ComplexId(tag, heis), r).is_zero()
    assert rep.table[0]["B"] == 0


def test_cohomology_examples(heis, ss):
    assert cohomology(ComplexId("hom_ideal", heis), 0).table[0]["H"] == 2
    assert cohomology(ComplexId("hom_ideal", ss), 1).table[1]["H"] == 0
    assert cohomology(ComplexId("ad", heis), 3).dims() == [1, 4, 5, 2]


def test_cohomology_capacity(heis):
    with pytest.raises(CapacityError) as e:
        cohomology(ComplexId("ad", heis), 7)
    assert e.value.cap == "max_degree"


def test_map_pi_degree_zero_is_minus_restriction(heis):
    sp = CochainSpace(1, 3, CoeffModule("g/i", 2))
    phi = Cochain(sp, tuple(Fraction(x) for x in (1, 2, 3, 4, 5, 6)))
    out = map_Pi(heis, phi)
    # i = span{e3}: −φ(e3)
    assert list(out.coeffs) == [-5, -6]


def test_map_pibar_independent_of_representative(ss):
    rng = random.Random(11)
    for k in (1, 2):
        sp = CochainSpace(k, ss.n, CoeffModule("g", ss.n))
        x = rand_cochain(rng, sp)
        N = nr_subspace(ss, k)
        coeffs = [rng.choice([-1, 0, 1]) for _ in range(N.dim)]
        y = Cochain(sp, tuple(a + b for a, b in zip(x.coeffs, N.basis.apply(coeffs))))
        assert map_Pibar(ss, x) == map_Pibar(ss, y)


def test_wedge_subspace_closed(heis):
    rep = ambient_rep(ComplexId("hom_ideal", heis))
    for k in range(3):
        S = wedge_subspace(heis, k)
        for v in S.vectors():
            out = ce_differential(rep, Cochain(ambient_space(ComplexId("hom_ideal", heis), k), tuple(v)))
            assert wedge_subspace(heis, k + 1).contains_vector(list(out.coeffs))


def test_wedge_degree_zero_is_full_and_abelian_smaller():
    d = corpus.load("abelian3").ideal_data("e1")
    assert wedge_subspace(d, 0).dim == 2
    assert wedge_subspace(d, 1).dim < ambient_space(ComplexId("hom_ideal", d), 1).dim


def test_nr_membership(heis):
    mu = mu_cochain(heis.algebra)
    assert nr_membership(heis, mu).verdict
    sp = CochainSpace(1, 3, CoeffModule("g", 3))
    c = Cochain(sp, tuple(Fraction(x) for x in (0, 0, 0, 0, 0, 0, 1, 0, 0)))   # e3 ↦ e1
    cert = nr_membership(heis, c)
    assert not cert.verdict and cert.witness
    assert nr_membership(heis, sp.zero()).verdict
    with pytest.raises(MembershipError):
        differential(ComplexId("nr_restricted", heis), c)


def test_pibar_star_of_bracket_is_quotient_bracket(pairs):
    for name, k, d in pairs:
        if d.m == 0:
            continue
        assert map_pibar_star(d, mu_cochain(d.algebra)).coeffs == mu_cochain(d.quotient).coeffs, (name, k)


def test_res_wedge(heis):
    sp = ambient_space(ComplexId("hom_ideal", heis), 0)
    x = Cochain(sp, (Fraction(2), Fraction(-1)))
    assert list(map_res_wedge(heis, x).coeffs) == [-2, 1]
    for name, k, d in corpus.all_pairs():
        assert res_h0_injective(d).verdict, (name, k)


def test_res_wedge_membership():
    d = corpus.load("abelian3").ideal_data("e1")
    sp = ambient_space(ComplexId("hom_ideal", d), 1)
    outside = [v for v in (sp.basis_element(j) for j in range(sp.dim))
               if not wedge_subspace(d, 1).contains_vector(list(v.coeffs))]
    assert outside
    with pytest.raises(MembershipError):
        map_res_wedge(d, outside[0])


def test_connecting_map_rejects_open_class(heis):
    ses = top_ses(heis, 2)
    bad = [0] * ses.C.dims[1]
    found = False
    for j in range(ses.C.dims[1]):
        bad = [int(i == j) for i in range(ses.C.dims[1])]
        if any(ses.C.d[1].apply(bad)):
            found = True
            break
    if found:
        with pytest.raises(ContractViolation):
            connecting_map(ses, 1, bad)


@pytest.mark.parametrize("name,ideal", [("abelian3", "e1"), ("heisenberg3", "center"), ("heisenberg3", "e23"),
                                        ("sl2_plus_center", "center"), ("solvable2", "derived")])
def test_les_exact(name, ideal):
    d = _d(name, ideal)
    for which in ("top", "bottom"):
        assert les_exactness_check(d, which, 2).verdict
    with pytest.raises(ValueError):
        les_exactness_check(d, "middle", 1)


def test_res_h0_surjectivity_is_reported_per_pair(pairs):
    seen = set()
    for name, k, d in pairs:
        c = res_h0_injective(d)
        if d.k and d.m:
            assert c.dims["H1_bott"] == cohomology(ComplexId("bott", d), 1).dims()[1], (name, k)
        seen.add(c.dims["surjective"])
    # injective everywhere, surjective only sometimes
    assert seen == {True, False}
    assert not res_h0_injective(_d("heisenberg3", "e23")).dims["surjective"]
    assert res_h0_injective(_d("heisenberg3", "center")).dims["surjective"]
