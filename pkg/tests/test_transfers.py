import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from mwt.fields import Poly, canonical_embedding, field_of_order, irreducibles, make_field, norm_and_trace, \
    simple_extension
from mwt.gw import GWElement, euler_form_transfer, n_epsilon, trace_form_transfer, witt_project
from mwt.kmw import KMWElement, from_gw, kmw_symbol, normalize_fq, random_kmw, restrict
from mwt.transfers import (Tower, TransferError, bt_decompose, reassemble, tensor_components, transfer,
                           transfer_bt, transfer_geo, transfer_tower, transition_unit)


def value(a):
    return normalize_fq(a).value


def exts(q, degrees=(2, 3, 4), limit=None):
    E = field_of_order(q)
    for d in degrees:
        for f in itertools.islice(irreducibles(E, d), limit):
            yield simple_extension(E, f)


def gw_top(ext, *units):
    return from_gw(GWElement.diagonal(ext.top, units))


# -- golden values ----------------------------------------------------------------

def test_bt_of_one_over_f9():
    F3 = make_field(3)
    ext = simple_extension(F3, Poly(F3, (2, 1, 1)))  # y^2 + y + 2
    assert value(transfer_bt(ext, KMWElement.one(ext.top))) == GWElement.hyperbolic(F3)
    ext = simple_extension(F3, Poly(F3, (1, 0, 1)))
    assert value(transfer_geo(ext, KMWElement.one(ext.top))) == GWElement.hyperbolic(F3)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_bt_of_one_is_n_epsilon(q):
    for ext in exts(q, (2, 3, 4) if q < 9 else (2, 3), limit=6):
        assert value(transfer_bt(ext, KMWElement.one(ext.top))) == n_epsilon(ext.base, ext.d)


def test_degree_one_extension_is_identity():
    E = make_field(5)
    ext = simple_extension(E, Poly(E, (-2, 1)))
    rng = random.Random(1)
    for n in (-1, 0, 1):
        b = random_kmw(ext.top, n, rng)
        assert restrict(transfer_bt(ext, b), ext.emb) == b


# -- oracles: Scharlau transfers and norms ----------------------------------------------

@pytest.mark.parametrize("q", [3, 5])
def test_bt_matches_euler_form(q):
    for ext in exts(q):
        T = ext.top
        for b in (T.one, T.nonsquare, T.primitive ** 5):
            got = value(transfer_bt(ext, gw_top(ext, b)))
            assert got == euler_form_transfer(ext, GWElement.diagonal(T, [b]))


@pytest.mark.parametrize("q", [3, 5])
def test_geo_matches_trace_form(q):
    for ext in exts(q):
        T = ext.top
        for b in (T.one, T.nonsquare):
            got = value(transfer_geo(ext, gw_top(ext, b)))
            assert got == trace_form_transfer(ext, GWElement.diagonal(T, [b]))


@pytest.mark.parametrize("q", [3, 5, 9])
@pytest.mark.parametrize("mode", ["bt", "geo"])
def test_degree_one_transfer_is_norm(q, mode):
    rng = random.Random(q)
    for ext in exts(q, (2, 3), limit=3):
        for _ in range(5):
            u = ext.top.primitive ** rng.randrange(ext.top.order)
            got = value(transfer(ext, kmw_symbol(ext.top, 0, [u]), mode))
            assert got == norm_and_trace(ext, u)[0]


@pytest.mark.parametrize("q", [3, 5, 7])
def test_negative_degree_is_witt_transfer(q):
    for ext in exts(q, (2, 3), limit=3):
        T = ext.top
        b = GWElement.diagonal(T, [T.nonsquare])
        got = value(transfer_bt(ext, from_gw(b).eta_mul(2)))
        assert got == witt_project(euler_form_transfer(ext, b))


def test_high_degree_transfers_vanish():
    for ext in exts(5, (2, 3), limit=2):
        b = kmw_symbol(ext.top, 0, [ext.gen, ext.gen + 1])
        assert transfer_bt(ext, b).is_zero()


# -- structural properties ----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(2, 3), st.integers(-2, 1), st.integers(-1, 1),
       st.integers(0, 2 ** 32), st.sampled_from(["bt", "geo"]))
def test_projection_formula(q, d, m, n, seed, mode):
    rng = random.Random(seed)
    E = field_of_order(q)
    fs = list(irreducibles(E, d))
    ext = simple_extension(E, rng.choice(fs))
    a = random_kmw(E, m, rng)
    b = random_kmw(ext.top, n, rng)
    lhs = transfer(ext, restrict(a, ext.emb) * b, mode)
    assert lhs == a * transfer(ext, b, mode)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 9]), st.integers(2, 4), st.integers(-2, 1), st.integers(0, 2 ** 32))
def test_decompose_reassembles(q, d, n, seed):
    rng = random.Random(seed)
    E = field_of_order(q)
    if q ** d > 10 ** 4:
        d = 2
    ext = simple_extension(E, next(irreducibles(E, d)))
    b = random_kmw(ext.top, n, rng)
    for strategy in ("factor", "linear") if d in (2, 3) else ("factor",):
        terms = bt_decompose(ext, b, strategy)
        assert all(p.deg < d for t in terms for p in t.polys)
        assert reassemble(ext, terms, n) == b


def test_transfer_rejects_wrong_field():
    E = make_field(3)
    ext = simple_extension(E, Poly(E, (1, 0, 1)))
    with pytest.raises(TransferError):
        transfer_bt(ext, KMWElement.one(E))
    with pytest.raises(TransferError):
        transfer(ext, KMWElement.one(ext.top), "nope")


# -- towers -----------------------------------------------------------------------------

@pytest.mark.parametrize("q,k", [(3, 4), (5, 4), (3, 6)])
def test_geo_is_independent_of_tower(q, k):
    p = field_of_order(q).p
    top = make_field(p, k)
    chains = [[1, k], [1, 2, k]] + ([[1, 3, k]] if k % 3 == 0 else [])
    for n in (0, 1):
        beta = from_gw(GWElement.diagonal(top, [top.nonsquare])) if n == 0 else kmw_symbol(top, 0, [top.primitive])
        results = set()
        for ch in chains:
            for g in range(2):
                t = Tower.in_field(top, ch, [g] * (len(ch) - 1))
                results.add(normalize_fq(transfer_tower(t, beta, "geo")))
        assert len(results) == 1


def test_transition_unit_relates_bt_transfers():
    top = make_field(3, 4)
    a = Tower.in_field(top, [1, 2, 4], [0, 1])
    b = Tower.in_field(top, [1, 4], [2])
    u = transition_unit(a, b)
    for beta in (KMWElement.one(top), from_gw(GWElement.diagonal(top, [top.nonsquare])),
                 kmw_symbol(top, 0, [top.primitive])):
        twisted = from_gw(GWElement.diagonal(top, [u])) * beta
        assert transfer_tower(a, twisted, "bt") == transfer_tower(b, beta, "bt")


def test_tower_from_polys():
    E = make_field(3)
    t = Tower.from_polys(E, [Poly(E, (1, 0, 1))])
    assert t.degree == 2 and t.base is E
    assert "t^2+1" in repr(t)


# -- base change --------------------------------------------------------------------------

@pytest.mark.parametrize("d,r", [(2, 2), (2, 3), (3, 3), (4, 2)])
def test_base_change_formula(d, r):
    # res_{L/E} Tr_{F/E} = sum_j Tr_{K_j/L} res_{F -> K_j}
    E = make_field(3)
    ext = simple_extension(E, next(irreducibles(E, d)))
    L_emb = canonical_embedding(E, make_field(3, r))
    comps = tensor_components(ext, L_emb)
    assert sum(c.ext.d for c in comps) == d
    for beta in (KMWElement.one(ext.top), kmw_symbol(ext.top, 0, [ext.gen])):
        lhs = restrict(transfer_geo(ext, beta), L_emb)
        rhs = KMWElement.zero(L_emb.dst, beta.degree)
        for c in comps:
            rhs = rhs + transfer_geo(c.ext, restrict(beta, c.hom))
        assert lhs == rhs
