"""Concrete pseudofunctors out of finite sets and the Beck data they carry.

Every target is a category of families over a finite index; the subset
instance restricts to families of subsingletons.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import famcat as fc
from .famcat import Adjunction, FamFunctor, FamNatTrans, Sampler
from .finset import FinMap, FinSet, Square, compose_map, dist_pullback, identity, pullback
from .report import Report
from .sampling import random_map, random_set


# ---------------------------------------------------------------- data records

@dataclass
class Pseudofunctor:
    """A pseudofunctor ``f -> F_sigma(f)`` with right adjoints ``F_delta`` and ``F_pi``.

    ``sigma_comp(g, f)`` is the constraint ``F_sigma(g) F_sigma(f) => F_sigma(g f)``;
    ``delta_comp(g, f)`` goes ``F_delta(f) F_delta(g) => F_delta(g f)``.
    """
    name: str
    sampler: Sampler
    sigma: Callable[[FinMap], FamFunctor]
    delta: Callable[[FinMap], FamFunctor]
    pi: Callable[[FinMap], FamFunctor]
    sigma_adj: Callable[[FinMap], Adjunction]
    pi_adj: Callable[[FinMap], Adjunction]
    sigma_comp: Callable
    delta_comp: Callable
    pi_comp: Callable


@dataclass
class BeckTriple:
    """A lax Beck triple: ``F_sigma -| F_delta``, a tensor part and Beck data.

    ``beck(sq)`` is a cell ``F_tensor(top) F_delta(left) => F_delta(right) F_tensor(bottom)``.
    """
    name: str
    sampler: Sampler
    sigma: Callable[[FinMap], FamFunctor]
    delta: Callable[[FinMap], FamFunctor]
    tensor: Callable[[FinMap], FamFunctor]
    sigma_adj: Callable[[FinMap], Adjunction]
    sigma_comp: Callable
    delta_comp: Callable
    tensor_comp: Callable
    beck: Callable[[Square], FamNatTrans]


# ---------------------------------------------------------------- constraint cells

def _sigma_comp_cell(make: Callable, atom: Callable) -> Callable:
    def comp(g: FinMap, f: FinMap) -> FamNatTrans:
        gf = compose_map(g, f)
        Sg, Sf, Sgf = atom(g), atom(f), atom(gf)

        def rule(A, z, elem):
            y, inner = Sg.unpack(z, elem)
            x, a = Sf.unpack(y, inner)
            return Sgf.pack(z, x, a)
        return fc.element_cell(make(g) @ make(f), make(gf), rule, "sigma-comp")
    return comp


def _pi_comp_cell(make: Callable, atom: Callable) -> Callable:
    def comp(g: FinMap, f: FinMap) -> FamNatTrans:
        gf = compose_map(g, f)
        Pg, Pf, Pgf = atom(g), atom(f), atom(gf)

        def rule(A, z, elem):
            values = {}
            for y, inner in Pg.unpack(z, elem).items():
                values.update(Pf.unpack(y, inner))
            return Pgf.pack(z, values)
        return fc.element_cell(make(g) @ make(f), make(gf), rule, "pi-comp")
    return comp


def _delta_comp_cell(g: FinMap, f: FinMap) -> FamNatTrans:
    gf = compose_map(g, f)
    return fc.element_cell(fc.delta(f) @ fc.delta(g), fc.delta(gf), lambda A, x, a: a, "delta-comp")


def _inclusion_comp(make_outer, make_inner, make_total, contravariant=False):
    def comp(g: FinMap, f: FinMap) -> FamNatTrans:
        gf = compose_map(g, f)
        src = make_outer(f) @ make_inner(g) if contravariant else make_outer(g) @ make_inner(f)
        return fc.inclusion_cell(src, make_total(gf), "sub-comp")
    return comp


# ---------------------------------------------------------------- instances

def family_instance(flip: bool = False, max_entry: int = 2, samples: int = 6, seed: int = 0) -> Pseudofunctor:
    """Families of finite sets: ``f -> Sigma_f`` with ``Delta_f`` and ``Pi_f``.

    ``flip`` tags summands as ``(a, x)`` instead of ``(x, a)``; it gives a
    second, isomorphic instance for icon tests.
    """
    def sig(f):
        return fc.sigma(f, flip)
    return Pseudofunctor(
        name="family-flipped" if flip else "family",
        sampler=Sampler(seed=seed, max_entry=max_entry, count=samples),
        sigma=sig, delta=fc.delta, pi=fc.pi,
        sigma_adj=lambda f: fc.sigma_delta_adjunction(f, flip),
        pi_adj=fc.delta_pi_adjunction,
        sigma_comp=_sigma_comp_cell(sig, lambda f: fc.Sigma(f, flip)),
        delta_comp=_delta_comp_cell,
        pi_comp=_pi_comp_cell(fc.pi, fc.Pi))


def sub_instance(samples: int = 8, seed: int = 0) -> Pseudofunctor:
    """Subsets: image, preimage and universal image along maps of finite sets."""
    return Pseudofunctor(
        name="sub",
        sampler=Sampler(seed=seed, max_entry=1, count=samples, subsingleton=True),
        sigma=fc.exists, delta=fc.delta, pi=fc.forall,
        sigma_adj=fc.exists_delta_adjunction,
        pi_adj=fc.delta_forall_adjunction,
        sigma_comp=_inclusion_comp(fc.exists, fc.exists, fc.exists),
        delta_comp=_inclusion_comp(fc.delta, fc.delta, fc.delta, contravariant=True),
        pi_comp=_inclusion_comp(fc.forall, fc.forall, fc.forall))


def monoidal_triple(op: str = "product", max_entry: int = 2, samples: int = 6, seed: int = 0) -> BeckTriple:
    """Tuples of finite sets with left Kan extension, reindexing and a fiberwise tensor.

    Left Kan extension along a map of finite sets is the fiberwise coproduct;
    ``op`` picks cartesian product or coproduct as the tensor.
    """
    def tensor(f):
        return fc.tensor(f, op)

    def atom(f):
        return fc.Tensor(f, op)

    tensor_comp = (_pi_comp_cell if op == "product" else _sigma_comp_cell)(tensor, atom)

    def beck(sq: Square) -> FamNatTrans:
        if not sq.is_pullback:
            raise ValueError("tensor interchange is defined at pullback squares")
        top, left, bottom, right = sq.top, sq.left, sq.bottom, sq.right
        src = tensor(top) @ fc.delta(left)
        tgt = fc.delta(right) @ tensor(bottom)
        T_top, T_bot = atom(top), atom(bottom)

        if op == "coproduct":
            def rule(A, c, elem):
                pos, a = T_top.unpack(c, elem)
                return T_bot.pack(right(c), left(pos), a)
        else:
            def rule(A, c, elem):
                values = T_top.unpack(c, elem)
                return T_bot.pack(right(c), {left(pos): v for pos, v in values.items()})
        return fc.element_cell(src, tgt, rule, f"tensor-interchange-{op}")

    return BeckTriple(
        name=f"monoidal-{op}",
        sampler=Sampler(seed=seed, max_entry=max_entry, count=samples),
        sigma=fc.sigma, delta=fc.delta, tensor=tensor,
        sigma_adj=fc.sigma_delta_adjunction,
        sigma_comp=_sigma_comp_cell(fc.sigma, fc.Sigma),
        delta_comp=_delta_comp_cell,
        tensor_comp=tensor_comp,
        beck=beck)


# ---------------------------------------------------------------- Beck cells

def sigma_delta_beck(F, sq: Square) -> FamNatTrans:
    """``F_sigma(top) F_delta(left) => F_delta(right) F_sigma(bottom)`` as a mate."""
    alpha = fc.vcomp(fc.inverse_cell(F.sigma_comp(sq.bottom, sq.left)), F.sigma_comp(sq.right, sq.top))
    return fc.mate(alpha, F.sigma_adj(sq.left), F.sigma_adj(sq.right), F.sigma(sq.top), F.sigma(sq.bottom))


def transpose(sq: Square) -> Square:
    return Square(sq.left, sq.top, sq.right, sq.bottom)


def extract_beck_data(F: Pseudofunctor) -> BeckTriple:
    """The triple ``(F_sigma, F_delta, F_pi)`` with Beck data obtained by mates.

    At a square, the cell ``F_pi(top) F_delta(left) => F_delta(right) F_pi(bottom)``
    is the conjugate, under the composite adjunctions, of the inverse of the
    sigma/delta Beck cell of the transposed square.
    """
    def beck(sq: Square) -> FamNatTrans:
        theta = fc.inverse_cell(sigma_delta_beck(F, transpose(sq)))
        adj1 = fc.compose_adjunctions(F.sigma_adj(sq.left), F.pi_adj(sq.top))
        adj2 = fc.compose_adjunctions(F.pi_adj(sq.bottom), F.sigma_adj(sq.right))
        cell = fc.conjugate(theta, adj1, adj2)
        cell.name = "pi-beck"
        return cell

    return BeckTriple(
        name=f"{F.name}-triple", sampler=F.sampler,
        sigma=F.sigma, delta=F.delta, tensor=F.pi,
        sigma_adj=F.sigma_adj, sigma_comp=F.sigma_comp, delta_comp=F.delta_comp,
        tensor_comp=F.pi_comp, beck=beck)


def with_broken_beck(triple: BeckTriple, when: Callable[[Square], bool] | None = None) -> BeckTriple:
    """Fault fixture: Beck data collapsed to one element per entry where ``when`` holds."""
    def beck(sq):
        cell = triple.beck(sq)
        if when is not None and not when(sq):
            return cell

        def rule(A):
            m = cell.at(A)
            return fc.FamilyMap(m.src, m.tgt, tuple(tuple(c[0] for _ in c) if c else c for c in m.images))
        return FamNatTrans(cell.src, cell.tgt, rule, "broken-beck")
    out = BeckTriple(**{**triple.__dict__})
    out.name = triple.name + "-broken"
    out.beck = beck
    return out


def is_kernel_pair(sq: Square) -> bool:
    return sq.bottom == sq.right and sq.left.dom.size > sq.bottom.dom.size


# ---------------------------------------------------------------- sampled squares

def sample_pullbacks(seed, count: int, max_size: int, chosen_only: bool = False) -> list:
    rng = random.Random(f"squares:{seed}")
    out = []
    for k in range(count):
        B = random_set(rng, max_size, 1)
        A, C = random_set(rng, max_size), random_set(rng, max_size)
        bottom, right = random_map(rng, A, B), random_map(rng, C, B)
        if k % 4 == 3:
            right = bottom  # kernel pairs
        sq = Square.chosen(bottom, right)
        if not chosen_only and k % 2 == 1 and sq.top.dom.size > 1:
            perm = list(range(sq.top.dom.size))
            rng.shuffle(perm)
            p = FinMap(sq.top.dom, sq.top.dom, tuple(perm))
            sq = Square(compose_map(sq.top, p), compose_map(sq.left, p), bottom, right)
        out.append(sq)
    return out


def sample_dpbs(seed, count: int, max_size: int) -> list:
    rng = random.Random(f"dpb:{seed}")
    out = []
    for _ in range(count):
        B = random_set(rng, max_size, 1)
        A = random_set(rng, max_size, 1)
        X = random_set(rng, max_size)
        f = random_map(rng, A, B)
        u = random_map(rng, X, A)
        out.append((f, u))
    return out


# ---------------------------------------------------------------- condition checks

def distributivity_cell(triple: BeckTriple, f: FinMap, u: FinMap) -> FamNatTrans:
    """``F_sigma(r) F_tensor(q) F_delta(p) => F_tensor(f) F_sigma(u)`` at the chosen dpb."""
    d = dist_pullback(f, u)
    S, D, T = triple.sigma, triple.delta, triple.tensor
    eta_u = triple.sigma_adj(u).unit
    eps_r = triple.sigma_adj(d.r).counit
    up = compose_map(u, d.p)
    step1 = fc.whisker(S(d.r) @ T(d.q) @ D(d.p), eta_u)
    step2 = fc.whisker(S(d.r) @ T(d.q), triple.delta_comp(u, d.p), S(u))
    step3 = fc.whisker(S(d.r), triple.beck(Square(d.q, up, f, d.r)), S(u))
    step4 = fc.whisker(None, eps_r, T(f) @ S(u))
    cell = fc.vcomp(step4, step3, step2, step1)
    cell.name = "distributivity"
    return cell


def beck_pair_conditions(triple: BeckTriple, seed=0, count: int = 10, max_size: int = 2) -> Report:
    """The four coherence conditions on Beck data: two pastings and two nullary cases."""
    rep = Report()
    rng = random.Random(f"beckpair:{seed}")
    T, D, b = triple.tensor, triple.delta, triple.beck
    smp = triple.sampler
    for k in range(count):
        # horizontal pasting
        B = random_set(rng, max_size, 1)
        A = random_set(rng, max_size, 1)
        A2 = random_set(rng, max_size)
        C = random_set(rng, max_size)
        f1, g, f2 = random_map(rng, A, B), random_map(rng, C, B), random_map(rng, A2, A)
        right = Square.chosen(f1, g)
        left = Square.chosen(f2, right.left)
        outer = Square(compose_map(right.top, left.top), left.left, compose_map(f1, f2), g)
        lhs = b(outer)
        rhs = fc.vcomp(fc.whisker(D(g), triple.tensor_comp(f1, f2)),
                       fc.whisker(None, b(right), T(f2)),
                       fc.whisker(T(right.top), b(left)),
                       fc.whisker(None, fc.inverse_cell(triple.tensor_comp(right.top, left.top)), D(left.left)))
        v = fc.nat_equal(lhs, rhs, smp, "beck_horizontal")
        rep.add("beck_horizontal", [outer.describe()], v.ok, v.witness)
        # vertical pasting
        C1 = random_set(rng, max_size, 1)
        g1 = random_map(rng, C1, B)
        C2 = random_set(rng, max_size)
        g2 = random_map(rng, C2, C1)
        bottom = Square.chosen(f1, g1)
        top = Square.chosen(bottom.top, g2)
        outer = Square(top.top, compose_map(bottom.left, top.left), f1, compose_map(g1, g2))
        lhs = b(outer)
        rhs = fc.vcomp(fc.whisker(None, triple.delta_comp(g1, g2), T(f1)),
                       fc.whisker(D(g2), b(bottom)),
                       fc.whisker(None, b(top), D(bottom.left)),
                       fc.whisker(T(top.top), fc.inverse_cell(triple.delta_comp(bottom.left, top.left))))
        v = fc.nat_equal(lhs, rhs, smp, "beck_vertical")
        rep.add("beck_vertical", [outer.describe()], v.ok, v.witness)
        # nullary cases
        v = fc.is_identity_cell(b(Square(f1, identity(A), f1, identity(B))), smp, "beck_horizontal_nullary")
        rep.add("beck_horizontal_nullary", [list(f1.table)], v.ok, v.witness)
        v = fc.is_identity_cell(b(Square(identity(C1), g1, identity(B), g1)), smp, "beck_vertical_nullary")
        rep.add("beck_vertical_nullary", [list(g1.table)], v.ok, v.witness)
    return rep


def condition_check(data, condition: str, seed=0, count: int = 10, max_size: int = 2) -> Report:
    """Check one of ``sigma_delta``, ``delta_tensor``, ``sigma_tensor``, ``beck_pair_coherence``.

    ``data`` is a :class:`Pseudofunctor` or a :class:`BeckTriple`.
    """
    triple = extract_beck_data(data) if isinstance(data, Pseudofunctor) else data
    smp = triple.sampler
    rep = Report()
    if condition == "sigma_delta":
        for sq in sample_pullbacks(seed, count, max_size):
            v = fc.is_invertible(sigma_delta_beck(triple, sq), smp, condition)
            rep.add(condition, [sq.describe()], v.ok, v.witness)
    elif condition == "delta_tensor":
        for sq in sample_pullbacks(seed, count, max_size):
            v = fc.is_invertible(triple.beck(sq), smp, condition)
            rep.add(condition, [sq.describe()], v.ok, v.witness)
    elif condition == "sigma_tensor":
        for f, u in sample_dpbs(seed, count, max_size):
            v = fc.is_invertible(distributivity_cell(triple, f, u), smp, condition)
            rep.add(condition, [list(f.table), list(u.table)], v.ok, v.witness)
    elif condition == "beck_pair_coherence":
        rep.extend(beck_pair_conditions(triple, seed, count, max_size))
    else:
        raise ValueError(f"unknown condition {condition!r}")
    return rep


def pseudofunctor_coherence(F: Pseudofunctor, seed=0, count: int = 10, max_size: int = 2) -> Report:
    """Constraint cells are invertible and associative on sampled composable triples."""
    rep = Report()
    rng = random.Random(f"pseudo:{seed}")
    smp = F.sampler
    for _ in range(count):
        W, X, Y, Z = (random_set(rng, max_size, 1) for _ in range(4))
        f, g, h = random_map(rng, W, X), random_map(rng, X, Y), random_map(rng, Y, Z)
        for label, make, comp in (("sigma", F.sigma, F.sigma_comp), ("pi", F.pi, F.pi_comp)):
            v = fc.is_invertible(comp(g, f), smp, f"{label}_constraint_invertible")
            rep.add(v.law, [list(g.table), list(f.table)], v.ok, v.witness)
            lhs = fc.vcomp(comp(h, compose_map(g, f)), fc.whisker(make(h), comp(g, f)))
            rhs = fc.vcomp(comp(compose_map(h, g), f), fc.whisker(None, comp(h, g), make(f)))
            v = fc.nat_equal(lhs, rhs, smp, f"{label}_constraint_assoc")
            rep.add(v.law, [list(h.table), list(g.table), list(f.table)], v.ok, v.witness)
        lhs = fc.vcomp(F.delta_comp(compose_map(h, g), f), fc.whisker(F.delta(f), F.delta_comp(h, g)))
        rhs = fc.vcomp(F.delta_comp(h, compose_map(g, f)), fc.whisker(None, F.delta_comp(g, f), F.delta(h)))
        v = fc.nat_equal(lhs, rhs, smp, "delta_constraint_assoc")
        rep.add(v.law, [list(h.table), list(g.table), list(f.table)], v.ok, v.witness)
        for adj in (F.sigma_adj(f), F.pi_adj(f)):
            for v in fc.triangle_identities(adj, smp):
                rep.add(v.law, [adj.name], v.ok, v.witness)
    return rep


INSTANCES = {
    "family": lambda **kw: family_instance(**kw),
    "sub": lambda **kw: sub_instance(**{k: v for k, v in kw.items() if k != "max_entry"}),
    "monoidal-product": lambda **kw: monoidal_triple("product", **kw),
    "monoidal-coproduct": lambda **kw: monoidal_triple("coproduct", **kw),
}


def mate_checks(data, seed=0, count: int = 10, max_size: int = 2) -> Report:
    """Mate and unmate are inverse on Beck cells; unit and counit are mates of identities."""
    smp = data.sampler
    rep = Report()
    for k, sq in enumerate(sample_pullbacks(f"mates:{seed}", count, max_size)):
        S = data.sigma
        adj1, adj2 = data.sigma_adj(sq.left), data.sigma_adj(sq.right)
        alpha = fc.vcomp(fc.inverse_cell(data.sigma_comp(sq.bottom, sq.left)), data.sigma_comp(sq.right, sq.top))
        beta = fc.mate(alpha, adj1, adj2, S(sq.top), S(sq.bottom))
        v = fc.nat_equal(fc.unmate(beta, adj1, adj2, S(sq.top), S(sq.bottom)), alpha, smp, "double_mate")
        rep.add(v.law, [k, sq.describe()], v.ok, v.witness)
        v = fc.nat_equal(fc.mate(fc.unmate(beta, adj1, adj2, S(sq.top), S(sq.bottom)), adj1, adj2,
                                 S(sq.top), S(sq.bottom)), beta, smp, "double_unmate")
        rep.add(v.law, [k, sq.describe()], v.ok, v.witness)
        f = sq.bottom
        adj = data.sigma_adj(f)
        ident_x, ident_y = fc.identity_adjunction(f.dom), fc.identity_adjunction(f.cod)
        counit = fc.mate(fc.identity_cell(adj.left), adj, ident_y, adj.left, fc.identity_functor(f.cod))
        v = fc.nat_equal(counit, adj.counit, smp, "counit_is_mate")
        rep.add(v.law, [k, list(f.table)], v.ok, v.witness)
        unit = fc.mate(fc.identity_cell(adj.left), ident_x, adj, fc.identity_functor(f.dom), adj.left)
        v = fc.nat_equal(unit, adj.unit, smp, "unit_is_mate")
        rep.add(v.law, [k, list(f.table)], v.ok, v.witness)
    return rep
