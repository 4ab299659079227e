"""Spans of finite sets, their composition and 2-cells."""
from __future__ import annotations

from dataclasses import dataclass

from .finset import (FinMap, FinSet, Pullback, compose_map, identity, pullback,
                     pullback_mediate)


@dataclass(frozen=True)
class Span:
    """``src <-left- apex -right-> tgt``."""
    left: FinMap
    right: FinMap

    def __post_init__(self):
        if self.left.dom != self.right.dom:
            raise ValueError("span legs have different apexes")

    @property
    def apex(self) -> FinSet:
        return self.left.dom

    @property
    def src(self) -> FinSet:
        return self.left.cod

    @property
    def tgt(self) -> FinSet:
        return self.right.cod

    def __repr__(self):
        return f"Span({list(self.left.table)}, {list(self.right.table)})"


def identity_span(X: FinSet) -> Span:
    return Span(identity(X), identity(X))


def sigma_span(f: FinMap) -> Span:
    """The covariant embedding ``f -> (1, f)``."""
    return Span(identity(f.dom), f)


def delta_span(f: FinMap) -> Span:
    """The contravariant embedding ``f -> (f, 1)``."""
    return Span(f, identity(f.dom))


@dataclass(frozen=True)
class SpanComposite:
    span: Span
    pullback: Pullback


def compose_span_witness(second: Span, first: Span) -> SpanComposite:
    if first.tgt != second.src:
        raise ValueError("spans are not composable")
    pb = pullback(first.right, second.left)
    return SpanComposite(Span(compose_map(first.left, pb.proj1), compose_map(second.right, pb.proj2)), pb)


def compose_span(second: Span, first: Span) -> Span:
    """``second . first``: go along ``first`` and then ``second``."""
    return compose_span_witness(second, first).span


@dataclass(frozen=True)
class SpanTwoCell:
    """A map of apexes commuting with both legs.  ``iso`` demands a bijection."""
    src: Span
    tgt: Span
    apex_map: FinMap
    iso: bool = False

    def __post_init__(self):
        h = self.apex_map
        if self.src.src != self.tgt.src or self.src.tgt != self.tgt.tgt:
            raise ValueError("2-cell between spans with different ends")
        if h.dom != self.src.apex or h.cod != self.tgt.apex:
            raise ValueError("apex map has the wrong boundary")
        if compose_map(self.tgt.left, h) != self.src.left:
            raise ValueError("apex map does not commute with the left legs")
        if compose_map(self.tgt.right, h) != self.src.right:
            raise ValueError("apex map does not commute with the right legs")
        if self.iso and not h.is_bijective:
            raise ValueError("invertible 2-cell required but apex map is not a bijection")


def identity_span_cell(S: Span, iso: bool = False) -> SpanTwoCell:
    return SpanTwoCell(S, S, identity(S.apex), iso)


def vcomp_span(beta: SpanTwoCell, alpha: SpanTwoCell) -> SpanTwoCell:
    if alpha.tgt != beta.src:
        raise ValueError("2-cells are not vertically composable")
    return SpanTwoCell(alpha.src, beta.tgt, compose_map(beta.apex_map, alpha.apex_map),
                       alpha.iso and beta.iso)


def hcomp_span(beta: SpanTwoCell, alpha: SpanTwoCell) -> SpanTwoCell:
    """``beta * alpha`` from ``beta.src . alpha.src`` to ``beta.tgt . alpha.tgt``."""
    src = compose_span_witness(beta.src, alpha.src)
    tgt = compose_span_witness(beta.tgt, alpha.tgt)
    h = pullback_mediate(tgt.pullback,
                         compose_map(alpha.apex_map, src.pullback.proj1),
                         compose_map(beta.apex_map, src.pullback.proj2))
    return SpanTwoCell(src.span, tgt.span, h, alpha.iso and beta.iso)


def inverse_span_cell(cell: SpanTwoCell) -> SpanTwoCell:
    return SpanTwoCell(cell.tgt, cell.src, cell.apex_map.inverse(), cell.iso)


def associator(R: Span, Q: Span, P: Span) -> SpanTwoCell:
    """``(R . Q) . P  =>  R . (Q . P)``."""
    rq = compose_span_witness(R, Q)
    left = compose_span_witness(rq.span, P)
    qp = compose_span_witness(Q, P)
    right = compose_span_witness(R, qp.span)
    to_q = compose_map(rq.pullback.proj1, left.pullback.proj2)
    to_r = compose_map(rq.pullback.proj2, left.pullback.proj2)
    into_qp = pullback_mediate(qp.pullback, left.pullback.proj1, to_q)
    h = pullback_mediate(right.pullback, into_qp, to_r)
    return SpanTwoCell(left.span, right.span, h, iso=True)


def left_unitor(P: Span) -> SpanTwoCell:
    """``1 . P => P``; composition with identities is strict."""
    comp = compose_span(identity_span(P.tgt), P)
    return SpanTwoCell(comp, P, identity(P.apex), iso=True)


def right_unitor(P: Span) -> SpanTwoCell:
    comp = compose_span(P, identity_span(P.src))
    return SpanTwoCell(comp, P, identity(P.apex), iso=True)


def sigma_compositor(g: FinMap, f: FinMap) -> SpanTwoCell:
    """``(1, g) . (1, f) => (1, g f)``."""
    return SpanTwoCell(compose_span(sigma_span(g), sigma_span(f)), sigma_span(compose_map(g, f)),
                       identity(f.dom), iso=True)


def delta_compositor(g: FinMap, f: FinMap) -> SpanTwoCell:
    """``(f, 1) . (g, 1) => (g f, 1)``."""
    return SpanTwoCell(compose_span(delta_span(f), delta_span(g)), delta_span(compose_map(g, f)),
                       identity(f.dom), iso=True)


@dataclass(frozen=True)
class SpanAdjunction:
    left: Span
    right: Span
    unit: SpanTwoCell
    counit: SpanTwoCell


def span_adjunction(f: FinMap) -> SpanAdjunction:
    """``(1, f)`` is left adjoint to ``(f, 1)``."""
    L, R = sigma_span(f), delta_span(f)
    rl = compose_span_witness(R, L)
    diag = pullback_mediate(rl.pullback, identity(f.dom), identity(f.dom))
    unit = SpanTwoCell(identity_span(f.dom), rl.span, diag)
    lr = compose_span(L, R)
    counit = SpanTwoCell(lr, identity_span(f.cod), f)
    return SpanAdjunction(L, R, unit, counit)


def triangle_cells(adj: SpanAdjunction) -> tuple[SpanTwoCell, SpanTwoCell]:
    """The two triangle composites; both should be identities."""
    L, R = adj.left, adj.right
    # L => L.(R.L) => (L.R).L => L
    a = hcomp_span(identity_span_cell(L), adj.unit)
    b = inverse_span_cell(associator(L, R, L))
    c = hcomp_span(adj.counit, identity_span_cell(L))
    first = vcomp_span(c, vcomp_span(b, a))
    # R => (R.L).R => R.(L.R) => R
    d = hcomp_span(adj.unit, identity_span_cell(R))
    e = associator(R, L, R)
    f = hcomp_span(identity_span_cell(R), adj.counit)
    second = vcomp_span(f, vcomp_span(e, d))
    return first, second


def to_matrix(S: Span) -> list[list[int]]:
    """Entry ``[j][i]`` counts apex elements from ``i`` to ``j``."""
    M = [[0] * S.src.size for _ in range(S.tgt.size)]
    for m in range(S.apex.size):
        M[S.right(m)][S.left(m)] += 1
    return M


def span_from_matrix(M: list[list[int]], n_src: int) -> Span:
    """A span whose matrix is ``M``; apex elements are listed column by column."""
    pairs = [(i, j) for i in range(n_src) for j in range(len(M)) for _ in range(M[j][i])]
    apex = FinSet(len(pairs))
    return Span(FinMap(apex, FinSet(n_src), tuple(i for i, _ in pairs)),
                FinMap(apex, FinSet(len(M)), tuple(j for _, j in pairs)))
