import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mwt.fields import field_of_order, irreducibles, make_field, simple_extension, Poly
from mwt.gw import (QQ, GWElement, GWError, QExtension, WittElement, describe_gw, diagonalize_gram, euler_form_transfer,
                    format_gw, gw_equal, hilbert_symbol, n_epsilon, nilpotent_exponent, trace_form_transfer,
                    witt_project)

from oracles import hilbert_bruteforce, isometric_bruteforce


def D(F, *units):
    return GWElement.diagonal(F, units)


# -- finite fields -------------------------------------------------------------

def test_f5_examples():
    F = make_field(5)
    assert D(F, 2, 3) == D(F, 1, 1)
    assert D(F, 2) != D(F, 1)
    assert D(F, 1, -1) == GWElement.hyperbolic(F)
    assert D(F, 2, 2) == D(F, 1, 1)


def test_f3_examples():
    F = make_field(3)
    assert D(F, 1, 1) != D(F, 1, 2)
    assert D(F, 1, 2) == GWElement.hyperbolic(F)
    assert D(F, 1, 1) == D(F, 2, 2)
    assert format_gw(D(F, 2, 1, 2)) == "<1,1,1>"
    assert format_gw(D(F, 2, 1)) == "<1,2>"


@pytest.mark.parametrize("p", [3, 5, 7])
def test_rank2_equality_matches_isometry(p):
    F = make_field(p)
    units = range(1, p)
    for a in itertools.product(units, repeat=2):
        for b in itertools.product(units, repeat=2):
            assert (D(F, *a) == D(F, *b)) == isometric_bruteforce(a, b, p)


def test_rank3_equality_matches_isometry():
    p = 3
    F = make_field(p)
    for a in itertools.product((1, 2), repeat=3):
        for b in itertools.product((1, 2), repeat=3):
            assert (D(F, *a) == D(F, *b)) == isometric_bruteforce(a, b, p)


def test_zero_entry_rejected():
    with pytest.raises(GWError):
        D(make_field(5), 0)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([3, 5, 7, 9, 25]), st.lists(st.integers(0, 10 ** 4), min_size=1, max_size=5),
       st.lists(st.integers(0, 10 ** 4), min_size=1, max_size=5))
def test_ring_laws(q, xs, ys):
    F = field_of_order(q)
    us = [F.primitive ** i for i in xs]
    vs = [F.primitive ** j for j in ys]
    a, b = D(F, *us), D(F, *vs)
    assert a * b == b * a
    assert (a + b) * b == a * b + b * b
    assert (a * b).rank == a.rank * b.rank
    # <u><v> = <uv> entrywise
    assert a * b == D(F, *[u * v for u in us for v in vs])
    assert a - a == 0


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7, 9]), st.integers(1, 10 ** 4))
def test_h_absorbs_units(q, i):
    F = field_of_order(q)
    u = F.primitive ** i
    h = GWElement.hyperbolic(F)
    assert D(F, u) * h == h
    assert D(F, u, -u) == h


# -- n_epsilon -------------------------------------------------------------------

@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_n_epsilon_even_is_multiple_of_h(q):
    F = field_of_order(q)
    h = GWElement.hyperbolic(F)
    for n in range(0, 9, 2):
        assert n_epsilon(F, n) == h * (n // 2)
    for n in range(1, 9, 2):
        assert n_epsilon(F, n) == h * (n // 2) + 1


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_n_epsilon_multiplicative(q):
    F = field_of_order(q)
    for m in range(-4, 5):
        for n in range(-4, 5):
            assert n_epsilon(F, m * n) == n_epsilon(F, m) * n_epsilon(F, n)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_n_epsilon_additive_rule(q):
    # (m+n)_eps = m_eps + <(-1)^m> n_eps
    F = field_of_order(q)
    for m in range(-4, 5):
        for n in range(-4, 5):
            assert n_epsilon(F, m + n) == n_epsilon(F, m) + D(F, (-1) ** (m % 2)) * n_epsilon(F, n)


def test_describe():
    F = make_field(3)
    assert describe_gw(n_epsilon(F, 2)) == "h"
    assert describe_gw(n_epsilon(F, 4)) == "2h"
    assert describe_gw(D(F, 1, 1)) == "2"
    assert describe_gw(GWElement.zero(F)) == "0"


# -- Witt ring -------------------------------------------------------------------

@pytest.mark.parametrize("q,order", [(3, 4), (7, 4), (27, 4), (5, 2), (9, 2), (13, 2), (25, 2)])
def test_witt_order_of_one(q, order):
    assert WittElement(field_of_order(q), 1, 0).additive_order() == order


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_witt_projection_is_ring_hom(q):
    F = field_of_order(q)
    elems = [D(F, *c) for c in itertools.product([F.one, F.nonsquare], repeat=2)] + \
        [D(F, 1), D(F, F.nonsquare), GWElement.zero(F), -D(F, 1)]
    for a in elems:
        for b in elems:
            assert witt_project(a + b) == witt_project(a) + witt_project(b)
            assert witt_project(a * b) == witt_project(a) * witt_project(b)
    assert witt_project(GWElement.hyperbolic(F)).is_zero()


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_witt_has_four_elements(q):
    F = field_of_order(q)
    classes = {witt_project(D(F, *c)) for r in range(1, 4)
               for c in itertools.product([F.one, F.nonsquare], repeat=r)}
    assert len(classes) == 4


# -- over QQ ---------------------------------------------------------------------

@pytest.mark.parametrize("p", [3, 5, 7])
def test_hilbert_symbol_matches_bruteforce(p):
    for a in (1, 2, 3, 5, 6, -1, -3, 7, 10, 14):
        for b in (1, 2, 3, 5, 6, -1, -3, 7, 10, 14):
            assert hilbert_symbol(a, b, p) == hilbert_bruteforce(a, b, p, k=2 if p > 3 else 3)


def test_hilbert_symbol_at_two():
    for a in (-1, 2, 3, 5, 6, 7):
        for b in (-1, 2, 3, 5, 6, 7):
            assert hilbert_symbol(a, b, 2) == hilbert_bruteforce(a, b, 2, k=5)


@pytest.mark.parametrize("a,b", [(2, 3), (5, 7), (-1, -1), (3, 6), (-3, 10), (6, 35)])
def test_hilbert_product_formula(a, b):
    from mwt.fields import prime_factors
    ps = sorted({2} | set(prime_factors(abs(a))) | set(prime_factors(abs(b))))
    prod = hilbert_symbol(a, b, "inf")
    for p in ps:
        prod *= hilbert_symbol(a, b, p)
    assert prod == 1


def test_rational_examples():
    assert D(QQ, 1, 1) == D(QQ, 2, 2)
    assert D(QQ, 1, 1) != D(QQ, 3, 3)  # 3 is not a sum of two squares
    assert D(QQ, 1, -1) == GWElement.hyperbolic(QQ)
    assert D(QQ, 5, 5) == D(QQ, 1, 1)
    assert D(QQ, 1) != D(QQ, 2)
    assert D(QQ, 1, 1, 1) != D(QQ, 1, 1, -1)
    assert D(QQ, 4) == D(QQ, 1) and D(QQ, Fraction(1, 3)) == D(QQ, 3)


def test_rational_virtual_elements():
    # <a,b> = <a+b, ab(a+b)>
    a = D(QQ, 2, 3) - D(QQ, 5)
    assert a == D(QQ, 30)
    assert a + D(QQ, 5) == D(QQ, 2, 3)
    # (2,3)_3 = -1, so <2,3> and <1,6> differ although rank, signature and disc agree
    assert D(QQ, 2, 3) - D(QQ, 1) != D(QQ, 6)
    assert gw_equal(D(QQ, 1, 1) - D(QQ, 2), D(QQ, 2))
    assert D(QQ, 3) - D(QQ, 1) != D(QQ, 1) - D(QQ, 1)


# -- Gram matrices and trace forms ---------------------------------------------

def test_diagonalize_examples():
    F = make_field(5)
    M = [[F(0), F(1)], [F(1), F(0)]]
    assert D(F, *diagonalize_gram(M)) == GWElement.hyperbolic(F)
    M = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(2)]]
    assert D(QQ, *diagonalize_gram(M)) == D(QQ, 2, 6)
    with pytest.raises(GWError):
        diagonalize_gram([[F(0), F(0)], [F(0), F(0)]])
    with pytest.raises(GWError):
        diagonalize_gram([[F(1), F(2)], [F(3), F(1)]])


def test_trace_forms_over_q():
    assert trace_form_transfer(QExtension([-2, 0, 1]), D(QQ, 1)) == D(QQ, 1, 2)
    assert trace_form_transfer(QExtension([1, 0, 1]), D(QQ, 1)) == D(QQ, 2, -2)
    assert trace_form_transfer(QExtension([-2, 0, 0, 1]), D(QQ, 1)) == D(QQ, -3, 3, 3)
    assert euler_form_transfer(QExtension([-2, 0, 1]), D(QQ, 1)) == GWElement.hyperbolic(QQ)
    assert euler_form_transfer(QExtension([-2, 0, 0, 1]), D(QQ, 1)) == D(QQ, 1, 1, -1)


def test_trace_form_f9_over_f3():
    F3 = make_field(3)
    ext = simple_extension(F3, Poly(F3, (1, 0, 1)))
    # Tr(1)=2, Tr(x^2)=-2, Tr(x)=0 -> diag(2, 1) = h
    assert trace_form_transfer(ext, D(ext.top, 1)) == GWElement.hyperbolic(F3)


@pytest.mark.parametrize("q,d", [(3, 2), (3, 3), (5, 2), (5, 3), (3, 4)])
def test_trace_form_rank_and_disc(q, d):
    # disc of the trace form is the discriminant of f up to squares
    E = field_of_order(q)
    for f in itertools.islice(irreducibles(E, d), 6):
        ext = simple_extension(E, f)
        tf = trace_form_transfer(ext, D(ext.top, 1))
        assert tf.rank == d
        # Frobenius acts on the roots as a d-cycle, so disc(f) is a square iff d is odd
        assert tf.disc().is_square() == (d % 2 == 1)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_transfers_additive(q):
    E = field_of_order(q)
    ext = simple_extension(E, next(irreducibles(E, 2)))
    T = ext.top
    rng = random.Random(q)
    for _ in range(10):
        a = D(T, *[T.primitive ** rng.randrange(T.order) for _ in range(2)])
        b = D(T, T.primitive ** rng.randrange(T.order))
        for tr in (trace_form_transfer, euler_form_transfer):
            assert tr(ext, a + b) == tr(ext, a) + tr(ext, b)


# -- nilpotence ------------------------------------------------------------------

@pytest.mark.parametrize("q,expected", [(3, 2), (7, 2), (27, 2), (5, 2), (9, 2)])
def test_nilpotent_exponent_of_augmentation(q, expected):
    F = field_of_order(q)
    a = D(F, F.nonsquare) - 1
    assert nilpotent_exponent(a) == expected


def test_nilpotent_requires_rank_zero():
    with pytest.raises(GWError):
        nilpotent_exponent(D(make_field(3), 1))
