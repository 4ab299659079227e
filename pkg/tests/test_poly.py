import random
from collections import Counter

from hypothesis import given, settings, strategies as st

from oracles import poly_eval_sizes, univariate_count
from polyspan import famcat as fc
from polyspan import poly as pl
from polyspan import span as sp
from polyspan.reconstruct import PolySource
from polyspan.reconstruct.laws import random_2cell_into
from polyspan.finset import FinMap, FinSet, compose_map, identity, pullback
from polyspan.sampling import random_bijection, random_cart_cell, random_general_cell, random_map, random_poly, \
    random_set

ONE = FinSet(1)


def fm(dom, cod, table):
    return FinMap(FinSet(dom), FinSet(cod), tuple(table))


def univariate(fibers):
    """The polynomial 1 -> 1 with one base point per entry of ``fibers``."""
    E, B = sum(fibers), len(fibers)
    p = [b for b, n in enumerate(fibers) for _ in range(n)]
    return pl.Polynomial(fm(E, 1, [0] * E), fm(E, B, p), fm(B, 1, [0] * B))


def smp(seed=0):
    return fc.Sampler(seed=seed, max_entry=2, count=4)


def test_compose_with_identity():
    P = random_poly(random.Random(1), FinSet(2), FinSet(2), 3)
    for comp in (pl.compose_poly_witness(pl.identity_poly(P.tgt), P),
                 pl.compose_poly_witness(P, pl.identity_poly(P.src))):
        assert sorted(comp.poly.fiber_sizes()) == sorted(P.fiber_sizes())
        assert fc.is_invertible(pl.comparison(comp), smp()).ok


def test_univariate_composite_counts():
    P, Q = univariate([1, 2]), univariate([0, 1])
    R = pl.compose_poly(Q, P)
    assert Counter(R.fiber_sizes()) == Counter([0, 1, 2])
    counts = [len(fc.poly_functor(R)(fc.Family.from_sizes(ONE, [n])).entries[0]) for n in range(4)]
    # q(p(n)) with p(n) = n + n^2 and q(m) = 1 + m
    assert counts == [univariate_count([0, 1], univariate_count([1, 2], n)) for n in range(4)]
    assert counts == [1, 3, 7, 13]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_eval_sizes_match_oracle(seed):
    rng = random.Random(seed)
    I, J = random_set(rng, 3, 1), random_set(rng, 3, 1)
    P = random_poly(rng, I, J, 3)
    sizes = [rng.randint(0, 3) for _ in range(I.size)]
    got = list(fc.poly_functor(P)(fc.Family.from_sizes(I, sizes)).sizes)
    assert got == poly_eval_sizes(P.s, P.p, P.t, sizes)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_composite_comparison_is_natural_iso(seed):
    rng = random.Random(seed)
    I, J, K = (random_set(rng, 2, 1) for _ in range(3))
    P, Q = random_poly(rng, I, J, 2), random_poly(rng, J, K, 2)
    comp = pl.compose_poly_witness(Q, P)
    cmp = pl.comparison(comp)
    S = smp(seed)
    assert fc.is_invertible(cmp, S).ok
    assert fc.is_natural(cmp, S).ok
    assert fc.is_identity_cell(fc.vcomp(pl.comparison_inverse(comp), cmp), S).ok


def test_cartesian_identities():
    P = random_poly(random.Random(3), FinSet(2), FinSet(2), 3)
    Q = random_poly(random.Random(4), FinSet(2), FinSet(1), 3)
    i = pl.identity_cart(P)
    assert pl.vcomp_cart(i, i) == i
    h = pl.hcomp_cart(pl.identity_cart(Q), i)
    assert h == pl.identity_cart(pl.compose_poly(Q, P))


def _cart_chain(rng, I, J):
    b = random_cart_cell(rng, I, J, 2)
    Q = b.src
    B = random_set(rng, 2) if Q.B.size else FinSet(0)
    nu = random_map(rng, B, Q.B)
    pb = pullback(nu, Q.p)
    P = pl.Polynomial(compose_map(Q.s, pb.proj2), pb.proj1, compose_map(Q.t, nu))
    return pl.CartTwoCell(P, Q, pb.proj2, nu), b


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_cartesian_interchange(seed):
    rng = random.Random(seed)
    X, Y, Z = (random_set(rng, 2, 1) for _ in range(3))
    a1, a2 = _cart_chain(rng, X, Y)
    b1, b2 = _cart_chain(rng, Y, Z)
    lhs = pl.hcomp_cart(pl.vcomp_cart(b2, b1), pl.vcomp_cart(a2, a1))
    rhs = pl.vcomp_cart(pl.hcomp_cart(b2, a2), pl.hcomp_cart(b1, a1))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_normal_form_ignores_reparameterization(seed):
    rng = random.Random(seed)
    cell = random_general_cell(rng, random_set(rng, 3, 1), random_set(rng, 3, 1), 3)
    assert pl.general_from_representative(cell.src, cell.tgt, cell.S, cell.e, cell.f, cell.g) == cell
    perm = random_bijection(rng, cell.S)
    again = pl.general_from_representative(cell.src, cell.tgt, cell.S, compose_map(cell.e, perm),
                                           compose_map(cell.f, perm), cell.g)
    assert again == cell


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_general_composition(seed):
    rng = random.Random(seed)
    I, J = random_set(rng, 2, 1), random_set(rng, 2, 1)
    alpha = random_general_cell(rng, I, J, 2)
    assert pl.vcomp_general(pl.identity_general(alpha.tgt), alpha) == alpha
    assert pl.vcomp_general(alpha, pl.identity_general(alpha.src)) == alpha
    a1, a2 = _cart_chain(rng, I, J)
    assert pl.vcomp_general(pl.as_general(a2), pl.as_general(a1)) == pl.as_general(pl.vcomp_cart(a2, a1))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_general_semantics_functorial(seed):
    rng = random.Random(seed)
    I, J = random_set(rng, 2, 1), random_set(rng, 2, 1)
    beta = random_general_cell(rng, I, J, 2)
    tri, cart = pl.factorize(beta)
    S = smp(seed)
    assert fc.nat_equal(fc.eval_poly_cell(beta),
                        fc.vcomp(fc.eval_poly_cell(cart), fc.eval_poly_cell(tri)), S).ok
    assert fc.is_natural(fc.eval_poly_cell(beta), S).ok
    alpha = random_2cell_into(PolySource(general=True), rng, beta.src, 2)
    assert fc.nat_equal(fc.eval_poly_cell(pl.vcomp_general(beta, alpha)),
                        fc.vcomp(fc.eval_poly_cell(beta), fc.eval_poly_cell(alpha)), S).ok


def test_embeddings():
    I = identity(FinSet(2))
    for make in (pl.sigma_poly, pl.delta_poly, pl.pi_poly):
        assert make(I) == pl.identity_poly(FinSet(2))
    f = fm(3, 2, [0, 1, 1])
    d, p = pl.delta_poly(f), pl.pi_poly(f)
    assert (d.s, d.p, d.t) == (f, identity(f.dom), identity(f.dom))
    assert (p.s, p.p, p.t) == (identity(f.dom), f, identity(f.cod))
    S = sp.Span(fm(2, 2, [0, 1]), fm(2, 3, [2, 2]))
    assert pl.span_to_poly(S) == pl.Polynomial(S.left, identity(S.apex), S.right)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_embeddings_preserve_composition(seed):
    rng = random.Random(seed)
    f = random_map(rng, random_set(rng, 3, 1), random_set(rng, 3, 1))
    g = random_map(rng, f.cod, random_set(rng, 3, 1))
    for make in (pl.sigma_poly, pl.delta_poly, pl.pi_poly):
        comp = pl.compose_poly(make(g), make(f)) if make is not pl.delta_poly else \
            pl.compose_poly(make(f), make(g))
        whole = make(compose_map(g, f))
        assert sorted(comp.fiber_sizes()) == sorted(whole.fiber_sizes())
        assert comp.E.size == whole.E.size and comp.B.size == whole.B.size


def test_adjunctions_at_identity():
    I = identity(FinSet(2))
    for mode in ("sigma_delta", "delta_pi"):
        adj = pl.poly_adjunction(I, mode)
        assert pl.cells_equal(adj.unit, pl.identity_general(adj.unit.src))
        assert pl.cells_equal(adj.counit, pl.identity_general(adj.counit.src))


def test_delta_pi_counit_kernel_pair():
    adj = pl.poly_adjunction(fm(2, 1, [0, 0]), "delta_pi")
    assert adj.counit.src.E.size == 4


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_triangle_identities(seed):
    rng = random.Random(seed)
    f = random_map(rng, random_set(rng, 3), random_set(rng, 3, 1))
    for mode in ("sigma_delta", "delta_pi"):
        first, second = pl.triangle_composites(pl.poly_adjunction(f, mode))
        assert first == pl.identity_general(first.src)
        assert second == pl.identity_general(second.src)


def test_coherence_at_identities():
    I = pl.identity_poly(FinSet(2))
    assert pl.associator(I, I, I) == pl.identity_cart(I)
    P = random_poly(random.Random(7), FinSet(2), FinSet(3), 3)
    assert pl.left_unitor(P).src == pl.compose_poly(pl.identity_poly(P.tgt), P)
    assert pl.left_unitor(P).sigma.is_bijective and pl.right_unitor(P).nu.is_bijective


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32))
def test_pentagon(seed):
    rng = random.Random(seed)
    X = [random_set(rng, 2, 1) for _ in range(5)]
    P, Q, R, S = (random_poly(rng, X[i], X[i + 1], 2) for i in range(4))
    c, a, i = pl.compose_poly, pl.associator, pl.identity_cart
    left = pl.vcomp_cart(pl.hcomp_cart(i(S), a(R, Q, P)),
                         pl.vcomp_cart(a(S, c(R, Q), P), pl.hcomp_cart(a(S, R, Q), i(P))))
    right = pl.vcomp_cart(a(S, R, c(Q, P)), a(c(S, R), Q, P))
    assert left == right
