"""Tests for twists, Jucys-Murphy elements, and the central families."""

import random

import pytest

from hecketrace.coxeter import parabolic_elements
from hecketrace.hecke import algebra, embed_D_to_B, pairing, random_element, specialize_v0_one
from hecketrace.jucys_murphy import (
    T_element, U_element, affine_relation_check, beta, beta_kernel, delta,
    delta_kernel, e_prime_from_product, e_prime_from_sum, elementary_poly,
    full_twist, full_twist_inverse, jm_J, jm_j, jm_j_element, serre_check,
    sym_poly_eval, zeta, zeta_kernel,
)
from hecketrace.points import EXACT
from hecketrace.scalars import BASE_RING, alpha, alpha0

A_GEN = BASE_RING.gen("a")


def test_full_twist_b1_unequal():
    H = algebra("B", 1, unequal=True)
    a0 = alpha0()
    expected = H.one.scale(BASE_RING.one + a0 * a0) - H.generator(0).scale(a0)
    assert full_twist(H) == expected


def test_full_twist_rank_zero_and_inverse():
    for family in ("A", "B", "D"):
        H = algebra(family, 0)
        assert full_twist(H) == H.one
    for family, rank in [("A", 4), ("B", 3), ("D", 3)]:
        H = algebra(family, rank)
        assert full_twist(H) * full_twist_inverse(H) == H.one


@pytest.mark.parametrize("family,rank", [("A", 4), ("B", 3), ("D", 3)])
def test_full_twist_is_central(family, rank):
    assert full_twist(algebra(family, rank)).is_central()


def test_serre_identity():
    H = algebra("B", 3)
    assert serre_check(H.one, H.one)
    assert pairing(H.one, full_twist(H)) == BASE_RING.one
    rng = random.Random(5)
    for _ in range(20):
        w1 = rng.choice(H.cox.elements())
        w2 = rng.choice(H.cox.elements())
        assert serre_check(H.t(w1), H.t(w2))
    D = algebra("D", 3)
    for _ in range(5):
        h1 = random_element(D, rng, nterms=2, coeffs=lambda:
                            BASE_RING.monomial({"y": rng.randint(0, 1), "yb": rng.randint(0, 1)},
                                               rng.randint(1, 2)))
        h2 = random_element(D, rng, nterms=2)
        assert serre_check(h1, h2)


def test_jm_base_cases_and_words():
    B = algebra("B", 3)
    assert jm_J(B, 1) == B.generator(0) * B.generator(0)
    A = algebra("A", 4)
    for i in range(1, 5):
        word = tuple(range(i - 1, 0, -1)) + tuple(range(1, i))
        assert jm_J(A, i) == A.t_word(word)
    D = algebra("D", 3)
    assert jm_J(D, 1) == D.one
    assert jm_j(D, 1) == D.one
    assert jm_j(B, 1) == B.generator(0)


@pytest.mark.parametrize("family,rank", [("A", 4), ("B", 3), ("D", 3)])
def test_jm_commute_and_centralize(family, rank):
    H = algebra(family, rank)
    js = [jm_J(H, i) for i in range(1, rank + 1)]
    for i in range(len(js)):
        for k in range(i + 1, len(js)):
            assert js[i] * js[k] == js[k] * js[i]
    # J_rank centralizes the level-(rank-1) parabolic subalgebra
    top = js[-1]
    for u in parabolic_elements(H.cox, rank - 1):
        assert top * H.t(u) == H.t(u) * top


@pytest.mark.parametrize("unequal", [False, True])
def test_j_squares_to_J_type_B(unequal):
    H = algebra("B", 3, unequal=unequal)
    for i in range(1, 4):
        j = jm_j(H, i)
        assert j * j == jm_J(H, i)


def test_j_squares_to_J_type_D():
    H = algebra("D", 3)
    for i in range(1, 4):
        j = jm_j(H, i)
        assert j * j == jm_J(H, i)


@pytest.mark.parametrize("family,rank", [("A", 4), ("B", 3), ("D", 3)])
def test_telescoping_product(family, rank):
    H = algebra(family, rank)
    prod = H.one
    for i in range(1, rank + 1):
        prod = prod * jm_J(H, i)
    assert prod == full_twist_inverse(H)


@pytest.mark.parametrize("rank", [2, 3])
def test_affine_relations(rank):
    assert affine_relation_check(algebra("B", rank, unequal=True))
    assert affine_relation_check(algebra("B", rank))


def test_zeta_small():
    Z0 = algebra("A", 0)
    assert zeta(Z0) == Z0.one
    A1 = algebra("A", 1)
    assert zeta(A1) == A1.one.scale(BASE_RING.one + A_GEN ** -1)
    H = algebra("B", 3)
    assert zeta(H).is_central()


def test_beta_small():
    H = algebra("B", 1, unequal=True)
    a0 = alpha0()
    yb = BASE_RING.gen("yb")
    t0 = H.generator(0)
    expected = H.one + t0.scale(yb + a0) + (t0 * t0).scale(A_GEN ** -1)
    assert beta(H) == expected
    assert beta(algebra("B", 2, unequal=True)).is_central()


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_beta_collapses_to_zeta(rank):
    H = algebra("B", rank, unequal=True)
    a0 = alpha0()
    collapsed = beta(H).map_coefficients(lambda c: c.specialize({"yb": -a0}))
    assert collapsed == zeta(H)


def test_delta_small():
    D1 = algebra("D", 1)
    assert delta(D1) == D1.one.scale(BASE_RING.one + A_GEN ** -1)
    H = algebra("D", 3)
    d = delta(H)
    assert d.is_central()
    # only even powers of yb appear
    iy, iyb = BASE_RING.index["y"], BASE_RING.index["yb"]
    for c in d.terms.values():
        for exp, _ in c.num_monomials():
            assert exp[iyb] % 2 == 0 and exp[iy] == 0


@pytest.mark.parametrize("family,rank,builders", [
    ("B", 2, (zeta, zeta_kernel)),
    ("D", 3, (zeta, zeta_kernel)),
    ("B", 2, (beta, beta_kernel)),
    ("D", 2, (delta, delta_kernel)),
    ("D", 3, (delta, delta_kernel)),
])
def test_kernels_match_generic_involutions(family, rank, builders):
    build, build_kernel = builders
    unequal = build is beta
    H = algebra(family, rank, unequal=unequal)
    z = build(H)
    assert build_kernel(H) == z.bar().anti()


def test_beta_kernel_matches_generic_b3():
    H = algebra("B", 3, unequal=True)
    assert beta_kernel(H) == beta(H).bar().anti()


def test_T_element():
    H1 = algebra("B", 1, unequal=True)
    assert T_element(H1) == H1.generator(0)
    H2 = algebra("B", 2, unequal=True)
    T2 = T_element(H2)
    assert T2 * (T2 - H2.one.scale(alpha0())) == H2.one  # T_2^-1 = T_2 - alpha0
    # support conditions at n = 2, 3
    for n in (2, 3):
        H = algebra("B", n, unequal=True)
        Tn = T_element(H)
        assert Tn.supported_outside_parabolic(n - 1)
        Tn_inv = Tn - H.one.scale(alpha0())
        assert Tn * Tn_inv == H.one
        inv_coords = Tn_inv.to_inverse_basis()
        assert all(not x.fixes_above(n - 1) for x in inv_coords)
        probe = H.basis_inverse(jm_j_element(H, n)) * Tn - H.one
        assert all(not x.fixes_above(n - 1) for x in probe.to_inverse_basis())


def test_U_element():
    D1 = algebra("D", 1)
    assert U_element(D1) == D1.one
    D2 = algebra("D", 2)
    assert U_element(D2) == D2.t_word([1]).right_word_inv([0])  # t_1 t_{1'}^-1
    for k in (2, 3):
        D = algebra("D", k)
        B = algebra("B", k, unequal=True)
        lhs = embed_D_to_B(U_element(D), B)
        rhs = specialize_v0_one(T_element(B) * B.generator(0))
        assert lhs == rhs


def test_sym_poly_eval():
    H = algebra("B", 2)
    J1, J2 = jm_J(H, 1), jm_J(H, 2)
    one = H.domain.one
    assert sym_poly_eval(elementary_poly(0, 2, one), [J1, J2]) == H.one
    assert sym_poly_eval(elementary_poly(1, 2, one), [J1, J2]) == J1 + J2
    with pytest.raises(ValueError):
        sym_poly_eval(elementary_poly(1, 2, one), [H.generator(0), H.generator(1)])


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 2), ("B", 3), ("D", 3)])
def test_top_elementary_is_inverse_full_twist(family, rank):
    H = algebra(family, rank)
    js = [jm_J(H, i) for i in range(1, rank + 1)]
    top = sym_poly_eval(elementary_poly(rank, rank, H.domain.one), js)
    assert top == full_twist_inverse(H)


def test_e_prime_formulas():
    dom = EXACT
    assert e_prime_from_product(0, 3, dom) == {(0, 0, 0): dom.one}
    # single variable: the degree-2 part of 1 + alpha x - x^2 is -x^2
    p1 = e_prime_from_product(1, 1, dom)
    assert p1 == {(2,): -dom.one}
    assert e_prime_from_sum(1, 1, dom) == p1
    for n in range(1, 5):
        for k in range(n + 1):
            assert e_prime_from_product(k, n, dom) == e_prime_from_sum(k, n, dom)
