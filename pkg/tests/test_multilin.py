import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import rationals
from lieideal.exactlin import Matrix
from lieideal.multilin import (Cochain, CochainSpace, CoeffModule, GradedElement, comb_index, evaluate,
                               koszul_sign, map_coefficients, perm_sign, pullback, sort_sign, unshuffles,
                               unshuffles_signed, wedge_basis, wedge_power)


def spaces(max_n=4, max_w=3):
    return st.tuples(st.integers(1, max_n), st.integers(1, max_w)).flatmap(
        lambda nw: st.integers(0, nw[0]).map(lambda p: CochainSpace(p, nw[0], CoeffModule("custom:w", nw[1]))))


def cochains(max_n=4, max_w=3):
    return spaces(max_n, max_w).flatmap(
        lambda sp: st.lists(rationals(), min_size=sp.dim, max_size=sp.dim).map(lambda v: Cochain(sp, tuple(v))))


def test_wedge_basis_is_lexicographic():
    assert wedge_basis(4, 2) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert comb_index(4, 2)[(1, 3)] == 4
    assert wedge_basis(3, 4) == ()


@given(st.permutations(range(5)))
def test_perm_and_sort_sign_agree_with_oracle(p):
    assert perm_sign(p) == oracles.perm_parity(p)
    s, srt = sort_sign(p)
    assert s == oracles.perm_parity(p) and srt == tuple(range(5))


def test_sort_sign_repeat():
    assert sort_sign([1, 2, 1]) == (0, None)


def test_koszul_sign_examples():
    # swapping two odd elements costs a sign, anything involving an even one does not
    assert koszul_sign((1, 0), (1, 1)) == -1
    assert koszul_sign((1, 0), (1, 2)) == 1
    assert koszul_sign((2, 1, 0), (1, 1, 1)) == -1
    assert koszul_sign((0, 1, 2), (3, 5, 7)) == 1


@given(st.integers(0, 4), st.integers(0, 4))
def test_unshuffles(i, j):
    us = list(unshuffles(i, j))
    assert len(us) == comb(i + j, i)
    for s in us:
        assert list(s[:i]) == sorted(s[:i]) and list(s[i:]) == sorted(s[i:])
    assert [sg for sg, _ in unshuffles_signed(i, j)] == [perm_sign(s) for s in us]


@given(cochains(), st.data())
def test_evaluate_matches_determinant_expansion(c, data):
    n, p, w = c.space.domain_dim, c.space.p, c.space.coeff.dim
    args = [data.draw(st.lists(rationals(), min_size=n, max_size=n)) for _ in range(p)]
    assert evaluate(c, args) == oracles.cochain_eval(list(c.coeffs), n, p, w, args)


@given(cochains(4, 2))
def test_cochain_is_alternating(c):
    n, p = c.space.domain_dim, c.space.p
    if p < 2:
        return
    e = [oracles.unit(n, i) for i in range(n)]
    args = [e[i] for i in range(p)]
    swapped = [args[1], args[0]] + args[2:]
    assert evaluate(c, swapped) == [-x for x in evaluate(c, args)]


@given(cochains(), st.data())
def test_pullback_is_precomposition(c, data):
    n, p = c.space.domain_dim, c.space.p
    r = data.draw(st.integers(1, 4))
    L = Matrix.from_rows(data.draw(st.lists(st.lists(rationals(), min_size=r, max_size=r), min_size=n, max_size=n)))
    pc = pullback(c, L)
    ys = [data.draw(st.lists(rationals(), min_size=r, max_size=r)) for _ in range(p)]
    assert evaluate(pc, ys) == evaluate(c, [L.apply(y) for y in ys])


def test_wedge_power_functorial():
    A = Matrix.from_rows([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    B = Matrix.from_rows([[2, 0, 1], [1, 1, 0], [0, 1, 1]])
    for p in range(4):
        assert wedge_power(A @ B, p) == wedge_power(A, p) @ wedge_power(B, p)
    assert wedge_power(A, 3).entries == (Fraction(7),)


@given(cochains())
def test_json_round_trip(c):
    obj = json.loads(json.dumps(c.to_json()))
    assert Cochain.from_json(obj) == c


def test_from_json_rejects_bad_blocks():
    sp = CochainSpace(1, 2, CoeffModule("g", 2))
    obj = sp.basis_element(0).to_json()
    obj["coeffs"] = {"[1,0]": ["1", "0"]}
    with pytest.raises((ValueError, KeyError)):
        Cochain.from_json(obj)


@given(cochains())
def test_linear_structure(c):
    assert (c + c).coeffs == c.scale(2).coeffs
    assert (c - c).is_zero()
    assert (-c).scale(-1) == c


def test_map_coefficients():
    sp = CochainSpace(1, 2, CoeffModule("g", 2))
    c = Cochain(sp, (1, 2, 3, 4))
    A = Matrix.from_rows([[1, 1]])
    out = map_coefficients(c, A, CoeffModule("custom:s", 1))
    assert out.coeffs == (Fraction(3), Fraction(7))


def test_mismatched_spaces_rejected():
    a = CochainSpace(1, 2, CoeffModule("g", 2)).zero()
    b = CochainSpace(1, 3, CoeffModule("g", 3)).zero()
    with pytest.raises(Exception):
        a + b


def test_graded_element_degrees():
    V = CochainSpace(2, 3, CoeffModule("g", 3)).basis_element(0)
    E = CochainSpace(1, 3, CoeffModule("gl(g)", 9)).basis_element(0)
    x = GradedElement.make("L+End", {("V", 2): V, ("E", 1): E})
    assert x.degree == 1
    y = GradedElement.make("L+End", {("V", 2): V, ("E", 2): CochainSpace(2, 3, CoeffModule("gl(g)", 9)).zero()})
    assert y.pruned().degree == 1
    with pytest.raises(Exception):
        GradedElement.make("L", {("E", 1): E})
