from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mirrorkit.coord_ring import (
    BlockMap,
    RingMonomial,
    graded_basis,
    graded_dim,
    hom_space,
    monomial_by_toric_degree,
    multiplication_rank,
    normal_form,
    product_f0,
    pushforward_of_monomial,
    pushforward_of_t,
    toric_block_sum,
    toric_degree,
    x_vars,
)
from mirrorkit.exact_poly import LaurentPolynomial


def brute_basis(n, d):
    """All (t, x) with t + |x| = d, reduced and deduplicated."""
    seen = set()
    for head in product(range(d + 1), repeat=n + 1):
        rest = d - sum(head)
        if rest >= 0:
            # head = (t, x0..x_{n-1}); x_n absorbs the remainder
            seen.add(normal_form(n, head[0], list(head[1:]) + [rest]))
    return seen


def test_normal_form_examples():
    assert normal_form(2, 3, [0, 0, 0]) == RingMonomial(2, 0, (1, 1, 1))
    assert normal_form(2, 4, [1, 0, 0]) == RingMonomial(2, 1, (2, 1, 1))
    assert normal_form(2, 2, [0, 0, 0]) == RingMonomial(2, 2, (0, 0, 0))
    with pytest.raises(ValueError):
        normal_form(2, -1, [0, 0, 0])
    with pytest.raises(ValueError):
        normal_form(2, 0, [0, -1, 0])


def test_graded_dim_examples():
    assert graded_dim(2, 1) == 4
    assert graded_dim(2, 0) == 1
    assert graded_dim(3, 2) == 15
    assert graded_dim(3, -1) == 0


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 5) for d in range(0, 9)])
def test_graded_dim_against_enumeration(n, d):
    basis = brute_basis(n, d)
    assert graded_dim(n, d) == len(basis) == len(graded_basis(n, d))
    assert set(graded_basis(n, d)) == basis


def test_toric_degree_examples():
    assert toric_degree(RingMonomial(2, 1, (0, 0, 0))) == (0, 0)
    assert toric_degree(RingMonomial(2, 1, (1, 0, 2))) == (-1, 1)
    assert toric_degree(RingMonomial(2, 0, (1, 1, 1))) == (0, 0)


def test_monomial_by_toric_degree_examples():
    assert monomial_by_toric_degree(2, 1, (0, 0)) == RingMonomial(2, 1, (0, 0, 0))
    assert monomial_by_toric_degree(2, 1, (1, 0)) == RingMonomial(2, 0, (0, 1, 0))
    assert monomial_by_toric_degree(2, 1, (5, 5)) is None


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 5) for d in range(0, 9)])
def test_toric_tag_is_injective(n, d):
    basis = graded_basis(n, d)
    tags = [toric_degree(m) for m in basis]
    assert len(set(tags)) == len(tags)
    assert all(monomial_by_toric_degree(n, d, v) == m for v, m in zip(tags, basis))


monomials = st.integers(1, 3).flatmap(
    lambda n: st.builds(
        lambda t, xs, n=n: normal_form(n, t, xs),
        st.integers(0, 5),
        st.lists(st.integers(0, 3), min_size=n + 1, max_size=n + 1),
    )
)


@settings(max_examples=80, deadline=None)
@given(monomials, st.data())
def test_toric_degree_is_additive(m1, data):
    m2 = data.draw(
        st.builds(lambda t, xs: normal_form(m1.n, t, xs), st.integers(0, 5),
                  st.lists(st.integers(0, 3), min_size=m1.n + 1, max_size=m1.n + 1))
    )
    prod = m1 * m2
    assert prod.degree == m1.degree + m2.degree
    assert toric_degree(prod) == tuple(a + b for a, b in zip(toric_degree(m1), toric_degree(m2)))


def test_hom_space_serre_marker():
    h = hom_space(2, 0, 2)
    assert h.dim == graded_dim(2, 2) and h.serre_dual_of is None and len(h.basis) == h.dim
    dual = hom_space(2, 3, 1)
    assert dual.basis is None and dual.serre_dual_of == (1, 2) and dual.shift == 2
    assert dual.dim == graded_dim(2, 1)


def blocks_of(bm):
    return {(l, k): p for l, k, p in bm.nonzero_blocks()}


def test_pushforward_of_t_n2():
    x = LaurentPolynomial.gens(x_vars(2))
    one = LaurentPolynomial.constant(x_vars(2), 1)
    bm = pushforward_of_t(2)
    assert blocks_of(bm) == {(1, 0): one, (2, 1): one, (0, 2): x[0] * x[1] * x[2]}


def test_pushforward_of_t_n1():
    one = LaurentPolynomial.constant(x_vars(1), 1)
    assert blocks_of(pushforward_of_t(1)) == {(1, 0): one, (0, 1): product_f0(1)}


def test_pushforward_rejects_wrong_f_degree():
    x0, x1, x2 = LaurentPolynomial.gens(x_vars(2))
    with pytest.raises(ValueError):
        pushforward_of_t(2, f=x0 * x1)
    with pytest.raises(ValueError):
        pushforward_of_monomial(RingMonomial(2, 1, (0, 0, 0)), 0, 2)


@pytest.mark.parametrize("n", range(1, 5))
def test_t_to_the_n_plus_1_is_multiplication_by_f(n):
    x = LaurentPolynomial.gens(x_vars(n))
    f = sum(g ** (n + 1) for g in x[1:]) + x[0] ** (n + 1)
    for poly in (product_f0(n), f):
        comp = pushforward_of_t(n, poly)
        for k in range(1, n + 1):
            comp = pushforward_of_t(n, poly, i=k) @ comp
        assert blocks_of(comp) == {(l, l): poly for l in range(n + 1)}


def test_pushforward_of_x1_is_diagonal():
    x1 = LaurentPolynomial.gens(x_vars(2))[1]
    bm = pushforward_of_monomial(RingMonomial(2, 0, (0, 1, 0)), 0, 1)
    assert blocks_of(bm) == {(l, l): x1 for l in range(3)}


def test_pushforward_n1_tx0():
    bm = pushforward_of_monomial(RingMonomial(1, 1, (1, 0)), 0, 2)
    entries = bm.nonzero_blocks()
    assert len(entries) == 2
    for _, _, p in entries:
        (exp, _), = p.terms()
        assert exp[1] - exp[0] == -1


@pytest.mark.parametrize("n", range(1, 4))
def test_pushforward_equals_toric_block_sum(n):
    for d in range(0, 4):
        for m in graded_basis(n, d):
            assert pushforward_of_monomial(m, 0, d) == toric_block_sum(n, 0, d, toric_degree(m))


@pytest.mark.parametrize("n", range(1, 4))
def test_pushforward_respects_multiplication(n):
    mons = [m for d in range(0, 3) for m in graded_basis(n, d)]
    for a in mons:
        for b in mons:
            if a.degree + b.degree > 4:
                continue
            pa = pushforward_of_monomial(a, 0, a.degree)
            pb = pushforward_of_monomial(b, a.degree, a.degree + b.degree)
            assert pb @ pa == pushforward_of_monomial(a * b, 0, a.degree + b.degree)


def test_block_map_validation():
    vs = x_vars(1)
    zero = LaurentPolynomial(vs)
    x0 = LaurentPolynomial.gens(vs)[0]
    with pytest.raises(ValueError):
        BlockMap(1, 0, 0, ((x0, zero), (zero, zero)))
    with pytest.raises(ValueError):
        BlockMap(1, 0, 0, ((zero,),))


def test_block_map_json():
    j = pushforward_of_t(1).to_json()
    assert j["blocks"] == ["0", "1 * x0^1 * x1^1", "1", "0"]


@pytest.mark.parametrize("n,d", [(n, d) for n in range(1, 4) for d in range(0, 4)])
def test_generated_in_degree_one(n, d):
    rank, dim = multiplication_rank(n, d)
    assert rank == dim


def test_monomial_json_round_trip():
    m = RingMonomial(3, 2, (0, 1, 4, 0))
    assert RingMonomial.from_json(3, m.to_json()) == m
    assert m.to_json() == {"t": 2, "x": [0, 1, 4, 0]}
