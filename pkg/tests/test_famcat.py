import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import span_matrix
from polyspan import famcat as fc
from polyspan import instances as inst
from polyspan import poly as pl
from polyspan.finset import FinMap, FinSet, Square, identity
from polyspan.sampling import random_general_cell, random_map, random_poly, random_set, random_span

ONE = FinSet(1)


def fm(dom, cod, table):
    return FinMap(FinSet(dom), FinSet(cod), tuple(table))


def smp(seed=0, count=6):
    return fc.Sampler(seed=seed, max_entry=2, count=count)


def test_identity_chain_is_identity():
    A = fc.Family.from_sizes(FinSet(3), [2, 0, 1])
    F = fc.identity_functor(FinSet(3))
    assert F(A) == A
    assert fc.poly_functor(pl.identity_poly(FinSet(3))).is_identity
    m = fc.random_family_map(A, random.Random(0))
    assert F.on_map(m) == m


def test_square_of_a_three_element_set():
    P = pl.Polynomial(fm(2, 1, [0, 0]), fm(2, 1, [0, 0]), fm(1, 1, [0]))
    assert fc.poly_functor(P)(fc.Family.from_sizes(ONE, [3])).sizes == (9,)


def test_multivariate_product():
    P = pl.Polynomial(fm(2, 2, [0, 1]), fm(2, 1, [0, 0]), fm(1, 1, [0]))
    assert fc.poly_functor(P)(fc.Family.from_sizes(FinSet(2), [2, 3])).sizes == (6,)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_span_eval_is_matrix_action(seed):
    rng = random.Random(seed)
    X, Y = random_set(rng, 4, 1), random_set(rng, 4, 1)
    S = random_span(rng, X, Y, 5)
    sizes = [rng.randint(0, 3) for _ in range(X.size)]
    got = fc.span_functor(S)(fc.Family.from_sizes(X, sizes)).sizes
    M = span_matrix(S.left, S.right)
    assert list(got) == [sum(M[j][i] * sizes[i] for i in range(X.size)) for j in range(Y.size)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_poly_eval_on_maps_is_functorial(seed):
    rng = random.Random(seed)
    I, J = random_set(rng, 2, 1), random_set(rng, 2, 1)
    F = fc.poly_functor(random_poly(rng, I, J, 2))
    A = fc.random_family(I, rng, 2)
    m1 = fc.random_family_map(A, rng, 2)
    m2 = fc.random_family_map(m1.tgt, rng, 2)
    assert F.on_map(m1.then(m2)) == F.on_map(m1).then(F.on_map(m2))
    assert F.on_map(fc.identity_family_map(A)) == fc.identity_family_map(F(A))


def test_identity_cell_evaluates_to_identity():
    P = random_poly(random.Random(2), FinSet(2), FinSet(2), 3)
    assert fc.is_identity_cell(fc.eval_poly_cell(pl.identity_general(P)), smp()).ok


def test_poly_unit_evaluates_to_family_unit():
    f = fm(3, 2, [0, 1, 1])
    adj = pl.poly_adjunction(f, "sigma_delta")
    comp = pl.compose_poly_witness(adj.right, adj.left)
    lhs = fc.vcomp(pl.comparison(comp), fc.eval_poly_cell(adj.unit))
    assert fc.nat_equal(lhs, fc.sigma_delta_adjunction(f).unit, smp()).ok


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_cell_naturality(seed):
    rng = random.Random(seed)
    cell = random_general_cell(rng, random_set(rng, 2, 1), random_set(rng, 2, 1), 2)
    assert fc.is_natural(fc.eval_poly_cell(cell), smp(seed, 20)).ok


def test_adjunctions_at_identity():
    I = identity(FinSet(2))
    for adj in (fc.sigma_delta_adjunction(I), fc.delta_pi_adjunction(I)):
        assert fc.is_identity_cell(adj.unit, smp()).ok
        assert fc.is_identity_cell(adj.counit, smp()).ok


def test_counit_folds():
    adj = fc.sigma_delta_adjunction(fm(2, 1, [0, 0]))
    m = adj.counit.at(fc.Family.from_sizes(ONE, [2]))
    assert m.src.sizes == (4,) and sorted(m.images[0]) == [0, 0, 1, 1]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_triangle_identities(seed):
    rng = random.Random(seed)
    f = random_map(rng, random_set(rng, 3), random_set(rng, 3, 1))
    S = smp(seed, 10)
    for adj in (fc.sigma_delta_adjunction(f), fc.sigma_delta_adjunction(f, True), fc.delta_pi_adjunction(f),
                fc.exists_delta_adjunction(f), fc.delta_forall_adjunction(f)):
        sampler = fc.Sampler(seed=seed, count=10, subsingleton=True) if "exists" in adj.name or \
            "forall" in adj.name else S
        assert all(v.ok for v in fc.triangle_identities(adj, sampler))


def test_mate_of_identity_square_is_identity():
    X = FinSet(2)
    I = fc.identity_functor(X)
    ident = fc.identity_adjunction(X)
    assert fc.is_identity_cell(fc.mate(fc.identity_cell(I), ident, ident, I, I), smp()).ok


def test_counit_is_a_mate():
    f = fm(3, 2, [0, 1, 1])
    adj = fc.sigma_delta_adjunction(f)
    cell = fc.mate(fc.identity_cell(adj.left), adj, fc.identity_adjunction(f.cod), adj.left,
                   fc.identity_functor(f.cod))
    assert fc.nat_equal(cell, adj.counit, smp()).ok


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_double_mate(seed):
    rep = inst.mate_checks(inst.family_instance(), seed, 3, 3)
    assert rep.ok


def test_beck_cell_at_identity_square():
    F = inst.family_instance()
    f = fm(3, 2, [0, 1, 1])
    assert fc.is_identity_cell(inst.sigma_delta_beck(F, Square(f, identity(f.dom), f, identity(f.cod))), smp()).ok


def test_beck_cell_at_kernel_pair_is_bijective():
    F = inst.family_instance()
    f = fm(2, 1, [0, 0])
    assert fc.is_invertible(inst.sigma_delta_beck(F, Square.chosen(f, f)), smp()).ok


def test_beck_cell_fails_off_pullbacks():
    """Commuting squares over sets of size <= 2 that are not pullbacks give non-invertible cells."""
    F = inst.family_instance()
    found = 0
    for na, nb, nc, np_ in itertools.product(range(1, 3), repeat=4):
        for bt, rt in itertools.product(itertools.product(range(nb), repeat=na),
                                        itertools.product(range(nb), repeat=nc)):
            for tt, lt in itertools.product(itertools.product(range(nc), repeat=np_),
                                            itertools.product(range(na), repeat=np_)):
                if any(bt[lt[k]] != rt[tt[k]] for k in range(np_)):
                    continue
                sq = Square(fm(np_, nc, tt), fm(np_, na, lt), fm(na, nb, bt), fm(nc, nb, rt))
                if sq.is_pullback:
                    continue
                v = fc.is_invertible(inst.sigma_delta_beck(F, sq), smp())
                assert not v.ok and v.witness
                found += 1
    assert found == 143


def test_nat_equal_verdicts():
    f = fm(2, 1, [0, 0])
    adj = fc.sigma_delta_adjunction(f)
    assert fc.nat_equal(adj.unit, adj.unit, smp()).ok
    other = fc.sigma_delta_adjunction(f, True)
    v = fc.nat_equal(adj.counit, fc.retarget(other.counit, adj.counit.src, adj.counit.tgt), smp())
    assert not v.ok and v.witness
    v2 = fc.nat_equal(adj.counit, fc.retarget(other.counit, adj.counit.src, adj.counit.tgt), smp())
    assert v2.witness == v.witness


def test_sub_quantifiers():
    f = fm(2, 1, [0, 0])
    zero = fc.Family(FinSet(2), ((fc.UNIT,), ()))
    both = fc.Family(FinSet(2), ((fc.UNIT,), (fc.UNIT,)))
    assert fc.forall(f)(zero).entries == ((),)
    assert fc.forall(f)(both).entries == ((fc.UNIT,),)
    assert fc.exists(f)(zero).entries == ((fc.UNIT,),)


def _subset(fam):
    return frozenset(i for i, e in enumerate(fam.entries) if e)


def test_galois_chain_exhaustive():
    checked = 0
    for na in range(0, 5):
        for nb in range(1, 5):
            for table in itertools.product(range(nb), repeat=na):
                f = fm(na, nb, table)
                subs_a = list(fc.all_subsingleton_families(f.dom))
                subs_b = list(fc.all_subsingleton_families(f.cod))
                for S in subs_a:
                    for T in subs_b:
                        pre = _subset(fc.delta(f)(T))
                        assert (_subset(fc.exists(f)(S)) <= _subset(T)) == (_subset(S) <= pre)
                        assert (pre <= _subset(S)) == (_subset(T) <= _subset(fc.forall(f)(S)))
                        checked += 1
    assert checked == 88762


def test_size_budget():
    P = pl.Polynomial(fm(3, 1, [0, 0, 0]), fm(3, 1, [0, 0, 0]), fm(1, 1, [0]))
    A = fc.Family.from_sizes(ONE, [4])
    with fc.size_budget(10):
        with pytest.raises(fc.BudgetExceeded):
            fc.poly_functor(P)(A)
    assert fc.poly_functor(P)(A).sizes == (64,)
