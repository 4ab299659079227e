import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import (dpb_factorizations, fiber_count, maps, pullback_pairs, section_count, small_dpb_inputs,
                     substitute)
from polyspan.finset import (FinMap, FinSet, compose_map, dist_pullback, dpb_factor, fiber, identity,
                             is_pullback_square, pullback, pullback_mediate)


def fm(dom, cod, table):
    return FinMap(FinSet(dom), FinSet(cod), tuple(table))


def test_compose_with_identity():
    f = fm(3, 2, [1, 0, 1])
    assert compose_map(identity(f.cod), f) == f
    assert compose_map(f, identity(f.dom)) == f


def test_compose_forced_constant():
    f, g = fm(2, 1, [0, 0]), fm(1, 3, [2])
    assert compose_map(g, f).table == (2, 2)


def test_compose_rejects_mismatch():
    with pytest.raises(ValueError):
        compose_map(fm(2, 2, [0, 1]), fm(1, 3, [0]))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_compose_matches_substitution(data):
    f = data.draw(maps(5, 1, 5))
    g = data.draw(st.builds(lambda t: FinMap(f.cod, FinSet(4), tuple(t)),
                            st.lists(st.integers(0, 3), min_size=f.cod.size, max_size=f.cod.size)))
    assert list(compose_map(g, f).table) == substitute(g, f)


def test_equality_is_by_size():
    assert FinSet(3) == FinSet(3)
    assert fm(2, 2, [0, 1]) == identity(FinSet(2))


def test_pullback_identity_normalization():
    g = fm(3, 2, [1, 0, 1])
    pb = pullback(identity(FinSet(2)), g)
    assert pb.apex == g.dom and pb.proj2 == identity(g.dom) and pb.proj1 == g


def test_pullback_small_example():
    pb = pullback(fm(2, 2, [0, 1]), fm(1, 2, [0]))
    assert pb.apex.size == 1 and pb.pairs == ((0, 0),)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_pullback_counts(data):
    f = data.draw(maps(6, 1, 6))
    g = data.draw(st.builds(lambda t: FinMap(FinSet(len(t)), f.cod, tuple(t)),
                            st.lists(st.integers(0, f.cod.size - 1), max_size=6)))
    pb = pullback(f, g)
    assert pb.apex.size == sum(fiber_count(f, b) * fiber_count(g, b) for b in range(f.cod.size))
    assert sorted(pb.pairs) == sorted(pullback_pairs(f, g))
    assert compose_map(f, pb.proj1) == compose_map(g, pb.proj2)
    assert is_pullback_square(pb.proj2, pb.proj1, f, g)[0]


def test_mediate_at_projections_is_identity():
    f, g = fm(3, 2, [0, 1, 1]), fm(2, 2, [1, 1])
    pb = pullback(f, g)
    assert pullback_mediate(pb, pb.proj1, pb.proj2) == identity(pb.apex)


def test_mediate_into_identity_pullback():
    g = fm(2, 3, [2, 0])
    pb = pullback(identity(FinSet(3)), g)
    v = fm(4, 2, [1, 0, 0, 1])
    assert pullback_mediate(pb, compose_map(g, v), v) == v


def test_mediate_unique_exhaustively():
    """Every commuting cone from a set of size <= 2 over cospans of sets <= 3 has exactly one mediator."""
    checked = 0
    for na, nb, nc in itertools.product(range(1, 4), repeat=3):
        for ft in itertools.product(range(nb), repeat=na):
            for gt in itertools.product(range(nb), repeat=nc):
                pb = pullback(fm(na, nb, ft), fm(nc, nb, gt))
                for nu in range(3):
                    for ut in itertools.product(range(na), repeat=nu):
                        for vt in itertools.product(range(nc), repeat=nu):
                            if any(ft[a] != gt[c] for a, c in zip(ut, vt)):
                                continue
                            sols = [h for h in itertools.product(range(pb.apex.size), repeat=nu)
                                    if all(pb.pairs[k] == (a, c) for k, a, c in zip(h, ut, vt))]
                            assert len(sols) == 1
                            assert pullback_mediate(pb, fm(nu, na, ut), fm(nu, nc, vt)).table == sols[0]
                            checked += 1
    assert checked == 19466


def test_is_pullback_square_witnesses():
    f = fm(2, 1, [0, 0])
    ok, why = is_pullback_square(fm(2, 2, [0, 1]), fm(2, 2, [0, 1]), f, f)
    assert not ok and why["reason"] == "not surjective"
    ok, why = is_pullback_square(fm(1, 2, [0]), fm(1, 2, [1]), f, f)
    assert not ok


def test_dpb_identity_cases():
    u = fm(3, 2, [1, 0, 1])
    d = dist_pullback(identity(FinSet(2)), u)
    assert d.Y == u.dom and d.r == u and d.T == u.dom
    assert d.p == identity(u.dom) and d.q == identity(u.dom)
    f = fm(3, 2, [0, 0, 1])
    d = dist_pullback(f, identity(FinSet(3)))
    assert d.Y.size == 2 and d.T.size == 3


def test_dpb_sections_example():
    d = dist_pullback(fm(2, 1, [0, 0]), fm(3, 2, [0, 0, 1]))
    assert d.Y.size == 2


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_dpb_size_formula(data):
    f = data.draw(maps(4, 1, 3))
    u = data.draw(st.builds(lambda t: FinMap(FinSet(len(t)), f.dom, tuple(t)),
                            st.lists(st.integers(0, max(f.dom.size - 1, 0)), max_size=4 if f.dom.size else 0)))
    d = dist_pullback(f, u)
    assert d.Y.size == section_count(f, u)
    assert is_pullback_square(d.q, compose_map(u, d.p), f, d.r)[0]


def test_dpb_terminal_exhaustively():
    inputs = total = 0
    for f, u in small_dpb_inputs(3):
        inputs += 1
        d = dist_pullback(f, u)
        for b in range(f.cod.size):
            fib = f.fiber(b)
            for choice in itertools.product(*(u.fiber(a) for a in fib)):
                assert len(dpb_factorizations(d, b, dict(zip(fib, choice)))) == 1
                total += 1
    assert (inputs, total) == (1674, 3618)


def test_dpb_factor_at_itself_and_isomorphic_copy():
    f, u = fm(3, 2, [0, 0, 1]), fm(4, 3, [0, 1, 1, 2])
    d = dist_pullback(f, u)
    s, t = dpb_factor(d, d.T, d.Y, d.p, d.q, d.r)
    assert s == identity(d.T) and t == identity(d.Y)
    perm = FinMap(d.Y, d.Y, tuple(reversed(range(d.Y.size))))
    pb = pullback(f, compose_map(d.r, perm))
    q2 = pb.proj2
    inner = pullback_mediate(d.t_pullback, pb.proj1, compose_map(perm, q2))
    s, t = dpb_factor(d, pb.apex, d.Y, compose_map(d.p, inner), q2, compose_map(d.r, perm))
    assert t == perm and s == inner


def test_dpb_factor_rejects_non_pullback():
    f, u = fm(2, 1, [0, 0]), fm(2, 2, [0, 1])
    d = dist_pullback(f, u)
    with pytest.raises(ValueError):
        dpb_factor(d, FinSet(1), FinSet(1), fm(1, 2, [0]), fm(1, 1, [0]), fm(1, 1, [0]))


def test_fiber():
    S, inc = fiber(identity(FinSet(3)), 1)
    assert S.size == 1 and inc.table == (1,)
    S, _ = fiber(fm(4, 1, [0, 0, 0, 0]), 0)
    assert S.size == 4


@settings(max_examples=100, deadline=None)
@given(maps(6, 1, 5))
def test_fibers_partition(f):
    assert sum(fiber(f, b)[0].size for b in range(f.cod.size)) == f.dom.size
