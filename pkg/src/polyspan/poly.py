"""Polynomials ``I <-s- E -p-> B -t-> J`` over finite sets.

Composition goes through a pullback, a distributivity pullback and a second
pullback; the resulting diagram is kept as a witness and is terminal among
competing diagrams, which is how horizontal composites of cartesian cells are
computed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .famcat import FamNatTrans, FamilyMap, Pi, Sigma, poly_functor
from .finset import (DistPullback, FinMap, FinSet, Pullback, compose_all, compose_map, dist_pullback,
                     dpb_factor, identity, is_pullback_square, pullback, pullback_mediate)


@dataclass(frozen=True)
class Polynomial:
    s: FinMap
    p: FinMap
    t: FinMap

    def __post_init__(self):
        if self.s.dom != self.p.dom or self.p.cod != self.t.dom:
            raise ValueError("polynomial maps do not fit together")

    @property
    def E(self) -> FinSet:
        return self.p.dom

    @property
    def B(self) -> FinSet:
        return self.p.cod

    @property
    def src(self) -> FinSet:
        return self.s.cod

    @property
    def tgt(self) -> FinSet:
        return self.t.cod

    def fiber_sizes(self) -> list:
        return [len(self.p.fiber(b)) for b in range(self.B.size)]

    def __repr__(self):
        return f"Polynomial({list(self.s.table)}, {list(self.p.table)}, {list(self.t.table)})"


def identity_poly(X: FinSet) -> Polynomial:
    i = identity(X)
    return Polynomial(i, i, i)


def sigma_poly(f: FinMap) -> Polynomial:
    return Polynomial(identity(f.dom), identity(f.dom), f)


def delta_poly(f: FinMap) -> Polynomial:
    return Polynomial(f, identity(f.dom), identity(f.dom))


def pi_poly(f: FinMap) -> Polynomial:
    return Polynomial(identity(f.dom), f, identity(f.cod))


def span_to_poly(S) -> Polynomial:
    """``(s, t) -> (s, 1, t)``."""
    return Polynomial(S.left, identity(S.apex), S.right)


def spaniso_to_poly(S) -> Polynomial:
    """``(s, t) -> (s, t, 1)``."""
    return Polynomial(S.left, S.right, identity(S.tgt))


# ---------------------------------------------------------------- composition

@dataclass(frozen=True)
class PolyComposite:
    """``second . first`` together with the diagram that computes it.

    ``pb1`` pulls back ``first.t`` against ``second.s``; ``dpb`` is the
    distributivity pullback around ``second.p`` and ``pb1.proj2``; ``pb2``
    pulls ``first.p`` back along the map from ``dpb.T`` to ``first.B``.
    """
    poly: Polynomial
    first: Polynomial
    second: Polynomial
    pb1: Pullback
    dpb: DistPullback
    pb2: Pullback

    @property
    def t_to_first_base(self) -> FinMap:
        return compose_map(self.pb1.proj1, self.dpb.p)

    @property
    def t_to_second_total(self) -> FinMap:
        return compose_map(self.pb1.proj2, self.dpb.p)


def compose_poly_witness(second: Polynomial, first: Polynomial) -> PolyComposite:
    if first.tgt != second.src:
        raise ValueError("polynomials are not composable")
    pb1 = pullback(first.t, second.s)
    dpb = dist_pullback(second.p, pb1.proj2)
    pb2 = pullback(first.p, compose_map(pb1.proj1, dpb.p))
    poly = Polynomial(compose_map(first.s, pb2.proj1),
                      compose_map(dpb.q, pb2.proj2),
                      compose_map(second.t, dpb.r))
    return PolyComposite(poly, first, second, pb1, dpb, pb2)


def compose_poly(second: Polynomial, first: Polynomial) -> Polynomial:
    return compose_poly_witness(second, first).poly


def factor_through_composite(comp: PolyComposite, a1_to_E: FinMap, a1_to_a2: FinMap, a2_to_B: FinMap,
                             a2_to_M: FinMap, a2_to_a3: FinMap, a3_to_N: FinMap):
    """The unique map from a competing diagram into the composite's diagram.

    A competitor has ``A1 -> E`` and ``A1 -> A2 -> B`` forming a pullback
    against ``first.p``, ``A2 -> M`` agreeing over the middle set, and
    ``A2 -> A3 -> N`` forming a pullback against ``second.p``.  Returns the
    three component maps into ``H``, ``T`` and ``Y``.
    """
    P, Q = comp.first, comp.second
    ok, why = is_pullback_square(a1_to_a2, a1_to_E, P.p, a2_to_B)
    if not ok:
        raise ValueError(f"left square of competitor is not a pullback: {why}")
    ok, why = is_pullback_square(a2_to_a3, a2_to_M, Q.p, a3_to_N)
    if not ok:
        raise ValueError(f"right square of competitor is not a pullback: {why}")
    d = pullback_mediate(comp.pb1, a2_to_B, a2_to_M)
    s2, t3 = dpb_factor(comp.dpb, a2_to_a3.dom, a3_to_N.dom, d, a2_to_a3, a3_to_N)
    h1 = pullback_mediate(comp.pb2, a1_to_E, compose_map(s2, a1_to_a2))
    return h1, s2, t3


# ---------------------------------------------------------------- cartesian cells

def cartesian_defect(P: Polynomial, Q: Polynomial, sigma_map: FinMap, nu: FinMap):
    """Why ``(sigma, nu)`` fails to be a cartesian cell, or ``None``."""
    if P.src != Q.src or P.tgt != Q.tgt:
        return {"reason": "different ends"}
    if sigma_map.dom != P.E or sigma_map.cod != Q.E or nu.dom != P.B or nu.cod != Q.B:
        return {"reason": "maps have the wrong boundary"}
    if compose_map(Q.s, sigma_map) != P.s:
        return {"reason": "source triangle does not commute"}
    if compose_map(Q.t, nu) != P.t:
        return {"reason": "target triangle does not commute"}
    ok, why = is_pullback_square(P.p, sigma_map, Q.p, nu)
    if not ok:
        return {"reason": "middle square is not a pullback", "detail": why}
    return None


@dataclass(frozen=True)
class CartTwoCell:
    src: Polynomial
    tgt: Polynomial
    sigma: FinMap
    nu: FinMap
    kind = "cartesian"

    def __post_init__(self):
        defect = cartesian_defect(self.src, self.tgt, self.sigma, self.nu)
        if defect is not None:
            raise ValueError(f"not a cartesian 2-cell: {defect}")


def identity_cart(P: Polynomial) -> CartTwoCell:
    return CartTwoCell(P, P, identity(P.E), identity(P.B))


def vcomp_cart(beta: CartTwoCell, alpha: CartTwoCell) -> CartTwoCell:
    if alpha.tgt != beta.src:
        raise ValueError("cells are not vertically composable")
    return CartTwoCell(alpha.src, beta.tgt, compose_map(beta.sigma, alpha.sigma), compose_map(beta.nu, alpha.nu))


def inverse_cart(cell: CartTwoCell) -> CartTwoCell:
    return CartTwoCell(cell.tgt, cell.src, cell.sigma.inverse(), cell.nu.inverse())


def hcomp_cart(beta: CartTwoCell, alpha: CartTwoCell) -> CartTwoCell:
    """``beta * alpha`` through the terminal property of the target composite."""
    comp = compose_poly_witness(beta.src, alpha.src)
    target = compose_poly_witness(beta.tgt, alpha.tgt)
    h1, _, h3 = factor_through_composite(
        target,
        compose_map(alpha.sigma, comp.pb2.proj1),
        comp.pb2.proj2,
        compose_map(alpha.nu, comp.t_to_first_base),
        compose_map(beta.sigma, comp.t_to_second_total),
        comp.dpb.q,
        compose_map(beta.nu, comp.dpb.r))
    return CartTwoCell(comp.poly, target.poly, h1, h3)


# ---------------------------------------------------------------- general cells

@dataclass(frozen=True)
class GeneralTwoCell:
    """Normal form of a general 2-cell ``P => Q``.

    ``g: P.B -> Q.B`` and ``e`` is defined on the chosen pullback of ``g``
    along ``Q.p``, whose elements are pairs ``(b, m)``.
    """
    src: Polynomial
    tgt: Polynomial
    g: FinMap
    e: FinMap
    kind = "general"

    def __post_init__(self):
        P, Q = self.src, self.tgt
        if P.src != Q.src or P.tgt != Q.tgt:
            raise ValueError("general 2-cell between polynomials with different ends")
        if self.g.dom != P.B or self.g.cod != Q.B:
            raise ValueError("g has the wrong boundary")
        if compose_map(Q.t, self.g) != P.t:
            raise ValueError("target triangle does not commute")
        pb = self.pullback
        if self.e.dom != pb.apex or self.e.cod != P.E:
            raise ValueError("e has the wrong boundary")
        if compose_map(P.p, self.e) != pb.proj1:
            raise ValueError("e does not lie over the base")
        if compose_map(P.s, self.e) != compose_map(Q.s, pb.proj2):
            raise ValueError("source triangle does not commute")

    @property
    def pullback(self) -> Pullback:
        return pullback(self.g, self.tgt.p)

    @property
    def S(self) -> FinSet:
        return self.pullback.apex

    @property
    def f(self) -> FinMap:
        return self.pullback.proj2


def general_from_representative(P: Polynomial, Q: Polynomial, S: FinSet, e: FinMap, f: FinMap, g: FinMap) -> GeneralTwoCell:
    """Normalize any representative ``(S, e, f, g)`` whose square is a pullback."""
    if e.dom != S or f.dom != S:
        raise ValueError("representative maps must start at S")
    if compose_map(P.s, e) != compose_map(Q.s, f):
        raise ValueError("source triangle does not commute")
    pe = compose_map(P.p, e)
    ok, why = is_pullback_square(pe, f, Q.p, g)
    if not ok:
        raise ValueError(f"representative square is not a pullback: {why}")
    pb = pullback(g, Q.p)
    nu = pullback_mediate(pb, pe, f)
    return GeneralTwoCell(P, Q, g, compose_map(e, nu.inverse()))


def as_general(cell) -> GeneralTwoCell:
    if isinstance(cell, GeneralTwoCell):
        return cell
    P, Q = cell.src, cell.tgt
    pb = pullback(cell.nu, Q.p)
    over = {(P.p(x), cell.sigma(x)): x for x in range(P.E.size)}
    e = FinMap(pb.apex, P.E, tuple(over[pair] for pair in pb.pairs))
    return GeneralTwoCell(P, Q, cell.nu, e)


def as_cartesian(cell) -> CartTwoCell:
    if isinstance(cell, CartTwoCell):
        return cell
    if not cell.e.is_bijective:
        raise ValueError("general cell is not cartesian")
    return CartTwoCell(cell.src, cell.tgt, compose_map(cell.f, cell.e.inverse()), cell.g)


def is_cartesian(cell) -> bool:
    return isinstance(cell, CartTwoCell) or cell.e.is_bijective


def identity_general(P: Polynomial) -> GeneralTwoCell:
    return as_general(identity_cart(P))


def triangle_cell(P: Polynomial, e: FinMap) -> GeneralTwoCell:
    """The cell ``P => (s e, p e, t)`` given by ``e`` over the identity on ``B``."""
    Pm = Polynomial(compose_map(P.s, e), compose_map(P.p, e), P.t)
    return general_from_representative(P, Pm, e.dom, e, identity(e.dom), identity(P.B))


def factorize(cell) -> tuple[GeneralTwoCell, CartTwoCell]:
    """Split a general cell into a triangle part followed by a cartesian part."""
    gen = as_general(cell)
    tri = triangle_cell(gen.src, gen.e)
    cart = CartTwoCell(tri.tgt, gen.tgt, gen.f, gen.g)
    return tri, cart


def vcomp_general(beta, alpha) -> GeneralTwoCell:
    """``beta . alpha``; a triangle after a cartesian part is pulled back past it."""
    a, b = as_general(alpha), as_general(beta)
    if a.tgt != b.src:
        raise ValueError("cells are not vertically composable")
    g = compose_map(b.g, a.g)
    pb = pullback(g, b.tgt.p)
    pa, pbb = a.pullback, b.pullback
    table = []
    for bb, w in pb.pairs:
        m = b.e(pbb.index(a.g(bb), w))
        table.append(a.e(pa.index(bb, m)))
    return GeneralTwoCell(a.src, b.tgt, g, FinMap(pb.apex, a.src.E, tuple(table)))


def whisker_triangle_first(Q: Polynomial, tri: GeneralTwoCell) -> GeneralTwoCell:
    """``Q * tri`` for a triangle cell ``tri`` on the first factor."""
    if not tri.g.is_identity:
        raise ValueError("expected a triangle cell")
    P, Pm = tri.src, tri.tgt
    e = tri.e
    comp = compose_poly_witness(Q, P)
    compm = compose_poly_witness(Q, Pm)
    x = pullback_mediate(comp.pb2, compose_map(e, compm.pb2.proj1), compm.pb2.proj2)
    return general_from_representative(comp.poly, compm.poly, compm.poly.E, x,
                                       identity(compm.poly.E), identity(comp.poly.B))


def whisker_triangle_second(tri: GeneralTwoCell, P: Polynomial) -> GeneralTwoCell:
    """``tri * P`` for a triangle cell ``tri`` on the second factor.

    The base map is the factorization of the source composite's
    distributivity pullback through the target's.
    """
    if not tri.g.is_identity:
        raise ValueError("expected a triangle cell")
    Q, Qm = tri.src, tri.tgt
    e = tri.e
    comp = compose_poly_witness(Q, P)
    comp1 = compose_poly_witness(Qm, P)
    dpb, dpb1 = comp.dpb, comp1.dpb
    # competitor for the distributivity pullback of the target composite
    T2 = pullback(compose_map(Q.p, e), dpb.r)
    into_T = pullback_mediate(dpb.t_pullback, compose_map(e, T2.proj1), T2.proj2)
    to_base = compose_all(comp.pb1.proj1, dpb.p, into_T)
    p2 = pullback_mediate(comp1.pb1, to_base, T2.proj1)
    s, g = dpb_factor(dpb1, T2.apex, dpb.Y, p2, T2.proj2, dpb.r)
    rep = pullback(P.p, to_base)
    e_rep = pullback_mediate(comp.pb2, rep.proj1, compose_map(into_T, rep.proj2))
    f_rep = pullback_mediate(comp1.pb2, rep.proj1, compose_map(s, rep.proj2))
    return general_from_representative(comp.poly, comp1.poly, rep.apex, e_rep, f_rep, g)


def hcomp_general(beta, alpha) -> GeneralTwoCell:
    """``beta * alpha`` by interchange: triangle parts first, then cartesian parts."""
    ta, ca = factorize(alpha)
    tb, cb = factorize(beta)
    step1 = whisker_triangle_first(beta.src, ta)
    step2 = whisker_triangle_second(tb, ta.tgt)
    step3 = as_general(hcomp_cart(cb, ca))
    return vcomp_general(step3, vcomp_general(step2, step1))


def hcomp_any(beta, alpha):
    """Cartesian when both inputs are, general otherwise."""
    if isinstance(beta, CartTwoCell) and isinstance(alpha, CartTwoCell):
        return hcomp_cart(beta, alpha)
    return hcomp_general(beta, alpha)


def vcomp_any(beta, alpha):
    if isinstance(beta, CartTwoCell) and isinstance(alpha, CartTwoCell):
        return vcomp_cart(beta, alpha)
    return vcomp_general(beta, alpha)


def cells_equal(c1, c2) -> bool:
    return as_general(c1) == as_general(c2)


# ---------------------------------------------------------------- elements of the evaluation

def decode(P: Polynomial, j: int, elem) -> tuple[int, dict]:
    """Split an element of ``P(X)`` at ``j`` into a base point and its values."""
    b, inner = Sigma(P.t).unpack(j, elem)
    return b, Pi(P.p).unpack(b, inner)


def encode(P: Polynomial, j: int, b: int, values: dict):
    return Sigma(P.t).pack(j, b, Pi(P.p).pack(b, values))


def map_element(P: Polynomial, j: int, elem, fn):
    """Apply ``P`` to a family map given elementwise by ``fn(i, x)``."""
    b, values = decode(P, j, elem)
    return encode(P, j, b, {e: fn(P.s(e), v) for e, v in values.items()})


def cell_element(cell, j: int, elem):
    """The component of a 2-cell's transformation on one element."""
    gen = as_general(cell)
    b, values = decode(gen.src, j, elem)
    n = gen.g(b)
    pb = gen.pullback
    return encode(gen.tgt, j, n, {m: values[gen.e(pb.index(b, m))] for m in gen.tgt.p.fiber(n)})


def _locate(dpb: DistPullback, b: int, values: dict) -> int:
    if dpb.f.is_identity:
        return values[b]
    return dpb.element_index(b, tuple(values[a] for a in dpb.f.fiber(b)))


def comparison_forward(comp: PolyComposite, k: int, elem):
    """``(Q . P)(X) -> Q(P(X))`` read off the composition diagram."""
    P, Q, dpb = comp.first, comp.second, comp.dpb
    y, values = decode(comp.poly, k, elem)
    c = dpb.r(y)
    out = {}
    for e in Q.p.fiber(c):
        tau = dpb.t_pullback.index(e, y)
        b = comp.pb1.proj1(dpb.p(tau))
        out[e] = encode(P, Q.s(e), b, {a: values[comp.pb2.index(a, tau)] for a in P.p.fiber(b)})
    return encode(Q, k, c, out)


def comparison_backward(comp: PolyComposite, k: int, elem):
    P, Q, dpb = comp.first, comp.second, comp.dpb
    c, outer = decode(Q, k, elem)
    inner = {}
    section = {}
    for e, v in outer.items():
        b, vals = decode(P, Q.s(e), v)
        inner[e] = vals
        section[e] = comp.pb1.index(b, e)
    y = _locate(dpb, c, section)
    values = {}
    for h in comp.poly.p.fiber(y):
        a, tau = comp.pb2.pairs[h]
        e = dpb.t_pullback.pairs[tau][0]
        values[h] = inner[e][a]
    return encode(comp.poly, k, y, values)


def comparison(comp: PolyComposite) -> FamNatTrans:
    """The transformation ``Eval(Q . P) => Eval(Q) Eval(P)``."""
    src = poly_functor(comp.poly)
    tgt = poly_functor(comp.second) @ poly_functor(comp.first)
    return FamNatTrans(src, tgt, lambda A: FamilyMap.from_rule(
        src(A), tgt(A), lambda k, e: comparison_forward(comp, k, e)), "poly-comparison")


def comparison_inverse(comp: PolyComposite) -> FamNatTrans:
    src = poly_functor(comp.second) @ poly_functor(comp.first)
    tgt = poly_functor(comp.poly)
    return FamNatTrans(src, tgt, lambda A: FamilyMap.from_rule(
        src(A), tgt(A), lambda k, e: comparison_backward(comp, k, e)), "poly-comparison^-1")


def generic_element(P: Polynomial, b: int):
    """The element of ``P`` applied to its own positions that names ``b``."""
    return encode(P, P.t(b), b, {e: e for e in P.p.fiber(b)})


def cell_from_elements(P: Polynomial, Q: Polynomial, fn) -> GeneralTwoCell:
    """Read a 2-cell off a transformation given on generic elements.

    ``fn(j, elem)`` must send an element of ``P(X)`` to ``Q(X)`` where ``X``
    is the family of ``P``'s positions over its source.
    """
    g_table, values = [], {}
    for b in range(P.B.size):
        n, vals = decode(Q, P.t(b), fn(P.t(b), generic_element(P, b)))
        g_table.append(n)
        values[b] = vals
    g = FinMap(P.B, Q.B, tuple(g_table))
    pb = pullback(g, Q.p)
    e = FinMap(pb.apex, P.E, tuple(values[b][m] for b, m in pb.pairs))
    return GeneralTwoCell(P, Q, g, e)


# ---------------------------------------------------------------- coherence

def associator(R: Polynomial, Q: Polynomial, P: Polynomial) -> CartTwoCell:
    """``(R . Q) . P => R . (Q . P)``, read off the evaluation comparisons."""
    rq = compose_poly_witness(R, Q)
    left = compose_poly_witness(rq.poly, P)
    qp = compose_poly_witness(Q, P)
    right = compose_poly_witness(R, qp.poly)

    def fn(j, elem):
        e1 = comparison_forward(left, j, elem)
        e2 = comparison_forward(rq, j, e1)
        e3 = map_element(R, j, e2, lambda i, x: comparison_backward(qp, i, x))
        return comparison_backward(right, j, e3)
    return as_cartesian(cell_from_elements(left.poly, right.poly, fn))


def left_unitor(P: Polynomial) -> CartTwoCell:
    """``1 . P => P``; composition with identities is strict."""
    return CartTwoCell(compose_poly(identity_poly(P.tgt), P), P, identity(P.E), identity(P.B))


def right_unitor(P: Polynomial) -> CartTwoCell:
    return CartTwoCell(compose_poly(P, identity_poly(P.src)), P, identity(P.E), identity(P.B))


# ---------------------------------------------------------------- embeddings of 2-cells

def span_cell_to_poly(cell) -> CartTwoCell:
    """A span 2-cell ``h`` becomes the cartesian cell ``(h, h)``."""
    return CartTwoCell(span_to_poly(cell.src), span_to_poly(cell.tgt), cell.apex_map, cell.apex_map)


def spaniso_cell_to_poly(cell) -> CartTwoCell:
    """An invertible span 2-cell ``h`` becomes ``(h, 1)``."""
    return CartTwoCell(spaniso_to_poly(cell.src), spaniso_to_poly(cell.tgt), cell.apex_map,
                       identity(cell.src.tgt))


def spanco_cell_to_poly(cell) -> GeneralTwoCell:
    """A span 2-cell ``h: (u, v) => (s, t)`` becomes a triangle ``(s, t, 1) => (u, v, 1)``."""
    P, Q = spaniso_to_poly(cell.tgt), spaniso_to_poly(cell.src)
    return general_from_representative(P, Q, cell.src.apex, cell.apex_map, identity(cell.src.apex),
                                       identity(P.B))


# ---------------------------------------------------------------- adjunctions

@dataclass(frozen=True)
class PolyAdjunction:
    left: Polynomial
    right: Polynomial
    unit: object
    counit: object
    mode: str


def poly_adjunction(f: FinMap, mode: str = "sigma_delta") -> PolyAdjunction:
    X, Y = f.dom, f.cod
    idX = identity(X)
    if mode == "sigma_delta":
        L, R = sigma_poly(f), delta_poly(f)
        rl = compose_poly_witness(R, L)
        h1, _, h3 = factor_through_composite(rl, idX, idX, idX, idX, idX, idX)
        unit = CartTwoCell(identity_poly(X), rl.poly, h1, h3)
        lr = compose_poly(L, R)
        counit = CartTwoCell(lr, identity_poly(Y), compose_map(f, _iso_to(lr.E, X)), compose_map(f, _iso_to(lr.B, X)))
        return PolyAdjunction(L, R, unit, counit, mode)
    if mode == "delta_pi":
        L, R = delta_poly(f), pi_poly(f)
        rl = compose_poly_witness(R, L)
        h1, _, h3 = factor_through_composite(rl, idX, idX, idX, idX, f, identity(Y))
        unit = general_from_representative(identity_poly(Y), rl.poly, X, f, h1, h3)
        lr = compose_poly(L, R)
        diag = _unique_map(X, lr.E, [(lr.s, idX), (lr.p, _iso_from(X, lr.B))])
        counit = general_from_representative(lr, identity_poly(X), X, diag, idX, _iso_to(lr.B, X))
        return PolyAdjunction(L, R, unit, counit, mode)
    raise ValueError(f"unknown adjunction mode {mode!r}")


def _iso_to(A: FinSet, B: FinSet) -> FinMap:
    if A.size != B.size:
        raise ValueError("expected sets of equal size")
    return FinMap(A, B, tuple(range(A.size)))


def _iso_from(A: FinSet, B: FinSet) -> FinMap:
    return _iso_to(A, B)


def _unique_map(X: FinSet, E: FinSet, constraints) -> FinMap:
    """The map ``X -> E`` determined by ``m . h = k`` for each ``(m, k)``."""
    table = []
    for x in range(X.size):
        hits = [e for e in range(E.size) if all(m(e) == k(x) for m, k in constraints)]
        if len(hits) != 1:
            raise ValueError(f"no unique solution at {x}: {hits}")
        table.append(hits[0])
    return FinMap(X, E, tuple(table))


def triangle_composites(adj: PolyAdjunction) -> tuple:
    """The two triangle composites; both should be identity cells."""
    L, R = adj.left, adj.right
    idL, idR = identity_general(L), identity_general(R)
    first = vcomp_general(hcomp_general(adj.counit, idL),
                          vcomp_general(as_general(inverse_cart(associator(L, R, L))),
                                        hcomp_general(idL, adj.unit)))
    second = vcomp_general(hcomp_general(idR, adj.counit),
                           vcomp_general(as_general(associator(R, L, R)),
                                         hcomp_general(adj.unit, idR)))
    return first, second

