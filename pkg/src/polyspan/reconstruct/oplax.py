"""Oplax functors out of spans and polynomials, built from generating data.

Each builder returns an :class:`OplaxFunctor` whose local action sends a
1-cell to a functor chain and a 2-cell to a pasting of mates, Beck cells and
constraint isomorphisms.  The binary constraints are obtained from a
comultiplication by factoring through the chosen composite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .. import famcat as fc
from .. import poly as pl
from .. import span as sp
from ..famcat import FamFunctor, FamNatTrans, Sampler, identity_functor
from ..finset import FinMap, Square, compose_map, identity
from ..instances import BeckTriple, Pseudofunctor, extract_beck_data
from .source import PolySource, SpanSource


@dataclass
class OplaxFunctor:
    """Local action plus constraints ``phi(Q, P): L(Q P) => L(Q) L(P)`` and ``lam(X): L(1_X) => 1``."""
    name: str
    source: object
    sampler: Sampler
    on_1cell: Callable
    on_2cell_raw: Callable
    phi_raw: Callable
    lam: Callable
    comult: "ComultCounit | None" = None
    _cells: dict = field(default_factory=dict, repr=False)
    _phis: dict = field(default_factory=dict, repr=False)

    def __call__(self, one_cell) -> FamFunctor:
        return self.on_1cell(one_cell)

    def on_2cell(self, cell) -> FamNatTrans:
        hit = self._cells.get(cell)
        if hit is None:
            hit = self._cells[cell] = self.on_2cell_raw(cell)
        return hit

    def phi(self, second, first) -> FamNatTrans:
        key = (second, first)
        hit = self._phis.get(key)
        if hit is None:
            hit = self._phis[key] = self.phi_raw(second, first)
        return hit

    @property
    def kind(self) -> str:
        return self.source.name


@dataclass
class ComultCounit:
    """Comultiplications indexed by diagonals and counits indexed by augmentations.

    For spans ``comult(s, h, t): L(s, t) => L(h, t) L(s, h)`` and
    ``counit(h): L(h, h) => 1``.  For polynomials the diagonal is
    ``(s, p1, h, p2, t)`` and the augmentation is ``(h, 1, h)``.
    """
    source: object
    comult: Callable
    counit: Callable


# ---------------------------------------------------------------- shared mate pastings

def delta_to_pair(F, s: FinMap, u: FinMap, h: FinMap) -> FamNatTrans:
    """``F_delta(s) => F_delta(h) F_delta(u)`` for ``s = u h``, the mate of the sigma constraint."""
    adj2 = fc.compose_adjunctions(F.sigma_adj(u), F.sigma_adj(h))
    return fc.mate(F.sigma_comp(u, h), F.sigma_adj(s), adj2,
                   identity_functor(s.dom), identity_functor(s.cod))


def sigma_absorb(F, t: FinMap, v: FinMap, h: FinMap) -> FamNatTrans:
    """``F_sigma(t) F_delta(h) => F_sigma(v)`` for ``t = v h``."""
    return fc.mate(fc.inverse_cell(F.sigma_comp(v, h)), F.sigma_adj(h), fc.identity_adjunction(t.cod),
                   F.sigma(t), F.sigma(v))


def _triple(F) -> BeckTriple:
    return F if isinstance(F, BeckTriple) else extract_beck_data(F)


# ---------------------------------------------------------------- spans

def span_comult(F) -> ComultCounit:
    def comult(s, h, t):
        return fc.whisker(F.sigma(t), F.sigma_adj(h).unit, F.delta(s))

    def counit(h):
        return F.sigma_adj(h).counit
    return ComultCounit(SpanSource(), comult, counit)


def build_span_oplax(F) -> OplaxFunctor:
    """``(s, t) -> F_sigma(t) F_delta(s)`` with the mate pasting on 2-cells."""
    source = SpanSource()
    cc = span_comult(F)

    def on_1cell(S):
        return F.sigma(S.right) @ F.delta(S.left)

    def on_2cell(cell):
        (s, t), (u, v), h = (cell.src.left, cell.src.right), (cell.tgt.left, cell.tgt.right), cell.apex_map
        alpha = delta_to_pair(F, s, u, h)
        gamma = sigma_absorb(F, t, v, h)
        out = fc.vcomp(fc.whisker(None, gamma, F.delta(u)), fc.whisker(F.sigma(t), alpha))
        out.name = f"L{list(h.table)}"
        return out

    L = OplaxFunctor(f"span[{F.name}]", source, F.sampler, on_1cell, on_2cell, None,
                     lambda X: fc.identity_cell(identity_functor(X)), cc)
    L.phi_raw = lambda Q, P: span_phi_from_comult(L, cc, Q, P)
    return L


def span_factorization(Q, P):
    """The diagonal through which the identity on ``Q P`` factors, with the two projections."""
    comp = sp.compose_span_witness(Q, P)
    c1, c2 = comp.pullback.proj1, comp.pullback.proj2
    s, h, t = compose_map(P.left, c1), compose_map(P.right, c1), compose_map(Q.right, c2)
    first = sp.SpanTwoCell(sp.Span(s, h), P, c1)
    second = sp.SpanTwoCell(sp.Span(h, t), Q, c2)
    return (s, h, t), first, second


def span_phi_from_comult(L: OplaxFunctor, cc: ComultCounit, Q, P) -> FamNatTrans:
    (s, h, t), first, second = span_factorization(Q, P)
    out = fc.vcomp(fc.hcomp(L.on_2cell(second), L.on_2cell(first)), cc.comult(s, h, t))
    out.name = f"phi[{Q!r},{P!r}]"
    return out


# ---------------------------------------------------------------- invertible spans

def build_spaniso_oplax(triple) -> OplaxFunctor:
    """``(s, t) -> F_tensor(t) F_delta(s)``; constraints are whiskered Beck cells."""
    T = _triple(triple)
    source = SpanSource(iso=True)

    def on_1cell(S):
        return T.tensor(S.right) @ T.delta(S.left)

    def on_2cell(cell):
        (s, t), (u, v), h = (cell.src.left, cell.src.right), (cell.tgt.left, cell.tgt.right), cell.apex_map
        b = T.beck(Square(h, h, identity(h.cod), identity(h.cod)))
        out = fc.vcomp(fc.whisker(T.tensor(v), b, T.delta(u)),
                       fc.whisker(None, fc.inverse_cell(T.tensor_comp(v, h)), T.delta(h) @ T.delta(u)),
                       fc.whisker(T.tensor(t), fc.inverse_cell(T.delta_comp(u, h))))
        out.name = f"L{list(h.table)}"
        return out

    def phi(Q, P):
        comp = sp.compose_span_witness(Q, P)
        c1, c2 = comp.pullback.proj1, comp.pullback.proj2
        b = T.beck(Square(c2, c1, P.right, Q.left))
        out = fc.vcomp(fc.whisker(T.tensor(Q.right), b, T.delta(P.left)),
                       fc.whisker(None, fc.inverse_cell(T.tensor_comp(Q.right, c2)), T.delta(c1) @ T.delta(P.left)),
                       fc.whisker(T.tensor(comp.span.right), fc.inverse_cell(T.delta_comp(P.left, c1))))
        out.name = f"phi[{Q!r},{P!r}]"
        return out

    return OplaxFunctor(f"span_iso[{T.name}]", source, T.sampler, on_1cell, on_2cell, phi,
                        lambda X: fc.identity_cell(identity_functor(X)))


# ---------------------------------------------------------------- polynomials

def poly_comult(T: BeckTriple, general: bool = False) -> ComultCounit:
    def comult(s, p1, h, p2, t):
        return fc.vcomp(
            fc.whisker(T.sigma(t) @ T.tensor(p2), T.sigma_adj(h).unit, T.tensor(p1) @ T.delta(s)),
            fc.whisker(T.sigma(t), fc.inverse_cell(T.tensor_comp(p2, p1)), T.delta(s)))

    def counit(h):
        return T.sigma_adj(h).counit
    return ComultCounit(PolySource(general), comult, counit)


def poly_factorization(Q, P):
    """Diagonal ``(s, p1, h, p2, t)`` for the composite ``Q P`` with its two cartesian projections."""
    comp = pl.compose_poly_witness(Q, P)
    w, p1 = comp.pb2.proj1, comp.pb2.proj2
    x, y = comp.t_to_first_base, comp.t_to_second_total
    p2, z = comp.dpb.q, comp.dpb.r
    s, h, t = compose_map(P.s, w), compose_map(P.t, x), compose_map(Q.t, z)
    first = pl.CartTwoCell(pl.Polynomial(s, p1, h), P, w, x)
    second = pl.CartTwoCell(pl.Polynomial(h, p2, t), Q, y, z)
    return (s, p1, h, p2, t), first, second


def poly_phi_from_comult(L: OplaxFunctor, cc: ComultCounit, Q, P) -> FamNatTrans:
    diag, first, second = poly_factorization(Q, P)
    if L.source.general:
        first, second = pl.as_general(first), pl.as_general(second)
    out = fc.vcomp(fc.hcomp(L.on_2cell(second), L.on_2cell(first)), cc.comult(*diag))
    out.name = f"phi[{Q!r},{P!r}]"
    return out


def cart_action(T: BeckTriple, cell) -> FamNatTrans:
    """The alpha / Beck / gamma pasting for a cartesian cell ``(sigma, nu)``."""
    P, Q = cell.src, cell.tgt
    s, p, t, u, q, v = P.s, P.p, P.t, Q.s, Q.p, Q.t
    alpha = delta_to_pair(T, s, u, cell.sigma)
    b = T.beck(Square(p, cell.sigma, q, cell.nu))
    gamma = sigma_absorb(T, t, v, cell.nu)
    out = fc.vcomp(fc.whisker(None, gamma, T.tensor(q) @ T.delta(u)),
                   fc.whisker(T.sigma(t), b, T.delta(u)),
                   fc.whisker(T.sigma(t) @ T.tensor(p), alpha))
    out.name = f"L({list(cell.sigma.table)},{list(cell.nu.table)})"
    return out


def build_polyc_oplax(triple) -> OplaxFunctor:
    """``(s, p, t) -> F_sigma(t) F_tensor(p) F_delta(s)`` on cartesian cells."""
    T = _triple(triple)
    source = PolySource(general=False)
    cc = poly_comult(T)
    L = OplaxFunctor(f"poly_c[{T.name}]", source, T.sampler,
                     lambda P: T.sigma(P.t) @ T.tensor(P.p) @ T.delta(P.s),
                     lambda cell: cart_action(T, cell), None,
                     lambda X: fc.identity_cell(identity_functor(X)), cc)
    L.phi_raw = lambda Q, P: poly_phi_from_comult(L, cc, Q, P)
    return L


def pi_split(F: Pseudofunctor, p: FinMap, e: FinMap) -> FamNatTrans:
    """``F_pi(p) => F_pi(p e) F_delta(e)``, the unmate of the pi constraint."""
    return fc.unmate(F.pi_comp(p, e), F.pi_adj(e), fc.identity_adjunction(p.cod),
                     F.pi(p), F.pi(compose_map(p, e)))


def general_action(F: Pseudofunctor, T: BeckTriple, cell) -> FamNatTrans:
    """The split / alpha / Beck / gamma pasting for a general cell in normal form."""
    cell = pl.as_general(cell)
    P, Q = cell.src, cell.tgt
    s, p, t, u, q, v = P.s, P.p, P.t, Q.s, Q.p, Q.t
    e, f, g = cell.e, cell.f, cell.g
    pe = compose_map(p, e)
    split = pi_split(F, p, e)
    theta = fc.vcomp(fc.inverse_cell(F.sigma_comp(s, e)), F.sigma_comp(u, f))
    alpha = fc.mate(theta, fc.compose_adjunctions(F.sigma_adj(s), F.sigma_adj(e)),
                    fc.compose_adjunctions(F.sigma_adj(u), F.sigma_adj(f)),
                    identity_functor(e.dom), identity_functor(s.cod))
    b = T.beck(Square(pe, f, q, g))
    gamma = sigma_absorb(F, t, v, g)
    out = fc.vcomp(fc.whisker(None, gamma, F.pi(q) @ F.delta(u)),
                   fc.whisker(F.sigma(t), b, F.delta(u)),
                   fc.whisker(F.sigma(t) @ F.pi(pe), alpha),
                   fc.whisker(F.sigma(t), split, F.delta(s)))
    out.name = f"L(g={list(g.table)},e={list(e.table)})"
    return out


def build_poly_oplax(F: Pseudofunctor, triple: BeckTriple | None = None) -> OplaxFunctor:
    """``(s, p, t) -> F_sigma(t) F_pi(p) F_delta(s)`` on general cells.

    ``triple`` replaces the Beck data read off ``F``; the fault fixtures use it.
    """
    T = triple if triple is not None else extract_beck_data(F)
    source = PolySource(general=True)
    cc = poly_comult(T, general=True)
    L = OplaxFunctor(f"poly[{T.name}]", source, F.sampler,
                     lambda P: F.sigma(P.t) @ F.pi(P.p) @ F.delta(P.s),
                     lambda cell: general_action(F, T, cell), None,
                     lambda X: fc.identity_cell(identity_functor(X)), cc)
    L.phi_raw = lambda Q, P: poly_phi_from_comult(L, cc, Q, P)
    return L


BUILDERS = {
    "span": build_span_oplax,
    "span_iso": build_spaniso_oplax,
    "poly_c": build_polyc_oplax,
    "poly": build_poly_oplax,
}


# ---------------------------------------------------------------- fault fixtures

def corrupt_phi(L: OplaxFunctor, mode: str = "swap") -> OplaxFunctor:
    """Fault fixture: perturb every binary constraint.

    ``swap`` exchanges the images of the first two elements of the first
    entry that has two distinct images; ``collapse`` sends every element of
    an entry to the image of its first element.
    """
    if mode not in ("swap", "collapse"):
        raise ValueError(f"unknown corruption {mode!r}")

    def broken(second, first):
        cell = L.phi(second, first)

        def rule(A):
            m = cell.at(A)
            images = [list(c) for c in m.images]
            for c in images:
                if mode == "swap" and len(c) >= 2 and c[0] != c[1]:
                    c[0], c[1] = c[1], c[0]
                    break
                if mode == "collapse" and len(c) >= 2:
                    c[:] = [c[0]] * len(c)
            return fc.FamilyMap(m.src, m.tgt, tuple(tuple(c) for c in images))
        return FamNatTrans(cell.src, cell.tgt, rule, f"{mode}({cell.name})")

    return OplaxFunctor(f"{L.name}-{mode}", L.source, L.sampler, L.on_1cell, L.on_2cell_raw, broken, L.lam)


__all__ = ["OplaxFunctor", "ComultCounit", "build_span_oplax", "build_spaniso_oplax", "build_polyc_oplax",
           "build_poly_oplax", "BUILDERS", "corrupt_phi", "span_factorization", "poly_factorization",
           "span_comult", "poly_comult", "delta_to_pair", "sigma_absorb", "pi_split", "cart_action",
           "general_action"]
