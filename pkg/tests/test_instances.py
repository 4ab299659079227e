import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import distributivity_sizes
from polyspan import famcat as fc
from polyspan import instances as inst
from polyspan.finset import FinMap, FinSet, Square, identity
from polyspan.sampling import random_map, random_set

CONDITIONS = ("sigma_delta", "delta_tensor", "sigma_tensor", "beck_pair_coherence")


def fm(dom, cod, table):
    return FinMap(FinSet(dom), FinSet(cod), tuple(table))


@pytest.mark.parametrize("cond", CONDITIONS)
@pytest.mark.parametrize("name", ["family", "sub", "monoidal-product"])
def test_conditions_hold(name, cond):
    rep = inst.condition_check(inst.INSTANCES[name](seed=3), cond, seed=3, count=15, max_size=2)
    assert rep.ok, rep.failures()[:1]
    assert len(rep) >= 15


def test_coproduct_tensor_fails_distributivity():
    data = inst.INSTANCES["monoidal-coproduct"](seed=0)
    for cond in ("sigma_delta", "delta_tensor", "beck_pair_coherence"):
        assert inst.condition_check(data, cond, 0, 10, 2).ok
    rep = inst.condition_check(data, "sigma_tensor", 0, 20, 2)
    bad = rep.failures()
    assert bad and bad[0].witness
    assert bad[0].to_json()["verdict"] == "fail"


def test_coproduct_counterexample():
    # one empty fiber of u kills every section, but the coproduct target stays inhabited
    f, u = fm(2, 1, [0, 0]), fm(1, 2, [0])
    cell = inst.distributivity_cell(inst.monoidal_triple("coproduct"), f, u)
    A = fc.Family.from_sizes(u.dom, [1])
    assert cell.src(A).sizes == (0,) and cell.tgt(A).sizes == (1,)
    assert not fc.is_invertible(cell, fc.Sampler(seed=0, max_entry=2, count=6)).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["product", "coproduct"]))
def test_distributivity_sizes_match_oracle(seed, op):
    rng = random.Random(seed)
    f = random_map(rng, random_set(rng, 3, 1), random_set(rng, 2, 1))
    u = random_map(rng, random_set(rng, 3), f.dom)
    sizes = [rng.randint(0, 2) for _ in range(u.dom.size)]
    cell = inst.distributivity_cell(inst.monoidal_triple(op), f, u)
    A = fc.Family.from_sizes(u.dom, sizes)
    src, tgt = distributivity_sizes(f, u, sizes, op)
    assert list(cell.src(A).sizes) == src and list(cell.tgt(A).sizes) == tgt
    if op == "product":
        assert src == tgt


def test_sub_beck_exhaustive():
    """Every chosen pullback square over sets of size <= 2 satisfies both Beck conditions for subsets."""
    F = inst.sub_instance()
    T = inst.extract_beck_data(F)
    checked = 0
    for na, nb, nc in itertools.product(range(1, 3), repeat=3):
        for bt in itertools.product(range(nb), repeat=na):
            for rt in itertools.product(range(nb), repeat=nc):
                sq = Square.chosen(fm(na, nb, bt), fm(nc, nb, rt))
                assert fc.is_invertible(inst.sigma_delta_beck(F, sq), F.sampler).ok
                assert fc.is_invertible(T.beck(sq), F.sampler).ok
                checked += 1
    assert checked == sum(nb ** na * nb ** nc for na, nb, nc in itertools.product(range(1, 3), repeat=3))


def test_extracted_beck_at_identity_square():
    T = inst.extract_beck_data(inst.family_instance())
    f = fm(3, 2, [0, 1, 1])
    assert fc.is_identity_cell(T.beck(Square(f, identity(f.dom), f, identity(f.cod))), T.sampler).ok
    assert fc.is_identity_cell(T.beck(Square(identity(f.dom), f, identity(f.cod), f)), T.sampler).ok


def test_extracted_beck_at_kernel_pair_is_invertible():
    T = inst.extract_beck_data(inst.family_instance())
    f = fm(3, 1, [0, 0, 0])
    sq = Square.chosen(f, f)
    assert inst.is_kernel_pair(sq)
    assert fc.is_invertible(T.beck(sq), T.sampler).ok


def test_broken_beck_fails_only_where_asked():
    T = inst.with_broken_beck(inst.extract_beck_data(inst.family_instance()), inst.is_kernel_pair)
    f = fm(2, 1, [0, 0])
    v = fc.is_invertible(T.beck(Square.chosen(f, f)), T.sampler)
    assert not v.ok and v.witness
    g = fm(2, 2, [0, 1])
    assert fc.is_invertible(T.beck(Square.chosen(g, g)), T.sampler).ok


def test_tensor_interchange_needs_a_pullback():
    T = inst.monoidal_triple("product")
    f = fm(2, 1, [0, 0])
    with pytest.raises(ValueError):
        T.beck(Square(fm(1, 2, [0]), fm(1, 2, [1]), f, f))


@pytest.mark.parametrize("name", ["family", "sub"])
def test_pseudofunctor_coherence(name):
    rep = inst.pseudofunctor_coherence(inst.INSTANCES[name](seed=1), seed=1, count=15, max_size=2)
    assert rep.ok
    assert {"sigma_constraint_assoc", "pi_constraint_assoc", "delta_constraint_assoc"} <= rep.laws()


def test_flipped_family_instance():
    F = inst.family_instance(flip=True)
    assert inst.pseudofunctor_coherence(F, 0, 8, 2).ok
    assert inst.condition_check(F, "sigma_delta", 0, 8, 2).ok


@pytest.mark.parametrize("name", list(inst.INSTANCES))
def test_mate_checks(name):
    rep = inst.mate_checks(inst.INSTANCES[name](seed=2), seed=2, count=12, max_size=2)
    assert rep.ok
    assert rep.laws() == {"double_mate", "double_unmate", "counit_is_mate", "unit_is_mate"}


def test_samples_are_deterministic():
    a = [sq.describe() for sq in inst.sample_pullbacks(5, 12, 3)]
    b = [sq.describe() for sq in inst.sample_pullbacks(5, 12, 3)]
    assert a == b
    assert all(sq.is_pullback for sq in inst.sample_pullbacks(5, 12, 3))


def test_unknown_condition():
    with pytest.raises(ValueError):
        inst.condition_check(inst.family_instance(), "nope")
