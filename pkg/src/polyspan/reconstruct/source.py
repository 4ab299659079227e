"""Uniform access to the four source bicategories: spans, invertible spans,
polynomials with cartesian cells and polynomials with general cells."""
from __future__ import annotations

import random

from .. import poly as pl
from .. import span as sp
from ..finset import FinMap, FinSet, compose_map, identity
from ..sampling import random_bijection, random_cart_cell, random_general_cell, random_map, random_poly, \
    random_set, random_span


class SpanSource:
    def __init__(self, iso: bool = False):
        self.iso = iso
        self.name = "span_iso" if iso else "span"

    def compose(self, second, first):
        return sp.compose_span(second, first)

    def identity(self, X: FinSet):
        return sp.identity_span(X)

    def identity_cell(self, S):
        return sp.identity_span_cell(S, self.iso)

    def vcomp(self, beta, alpha):
        return sp.vcomp_span(beta, alpha)

    def hcomp(self, beta, alpha):
        return sp.hcomp_span(beta, alpha)

    def associator(self, R, Q, P):
        cell = sp.associator(R, Q, P)
        return sp.SpanTwoCell(cell.src, cell.tgt, cell.apex_map, self.iso)

    def random_1cell(self, rng: random.Random, I: FinSet, J: FinSet, max_size: int):
        return random_span(rng, I, J, max_size)

    def random_2cell(self, rng: random.Random, I: FinSet, J: FinSet, max_size: int):
        tgt = random_span(rng, I, J, max_size)
        if self.iso:
            h = random_bijection(rng, tgt.apex)
        else:
            apex = random_set(rng, max_size) if tgt.apex.size else FinSet(0)
            h = random_map(rng, apex, tgt.apex)
        src = sp.Span(compose_map(tgt.left, h), compose_map(tgt.right, h))
        return sp.SpanTwoCell(src, tgt, h, self.iso)

    def canonical_adjunctions(self, rng: random.Random, max_size: int) -> list:
        X = random_set(rng, max_size, 1)
        if self.iso:
            f = random_bijection(rng, X)
        else:
            f = random_map(rng, X, random_set(rng, max_size, 1))
        adj = sp.span_adjunction(f)
        if self.iso:
            adj = sp.SpanAdjunction(adj.left, adj.right,
                                    sp.SpanTwoCell(adj.unit.src, adj.unit.tgt, adj.unit.apex_map, True),
                                    sp.SpanTwoCell(adj.counit.src, adj.counit.tgt, adj.counit.apex_map, True))
        return [(f"sigma{list(f.table)}", f, adj)]

    def describe(self, S) -> dict:
        return {"left": list(S.left.table), "right": list(S.right.table)}

    def ends(self, S):
        return S.src, S.tgt


class PolySource:
    """Polynomials; ``general`` selects general 2-cells instead of cartesian ones."""

    def __init__(self, general: bool = False):
        self.general = general
        self.name = "poly" if general else "poly_c"

    def compose(self, second, first):
        return pl.compose_poly(second, first)

    def identity(self, X: FinSet):
        return pl.identity_poly(X)

    def identity_cell(self, P):
        return pl.identity_general(P) if self.general else pl.identity_cart(P)

    def vcomp(self, beta, alpha):
        return pl.vcomp_general(beta, alpha) if self.general else pl.vcomp_cart(beta, alpha)

    def hcomp(self, beta, alpha):
        return pl.hcomp_general(beta, alpha) if self.general else pl.hcomp_cart(beta, alpha)

    def associator(self, R, Q, P):
        cell = pl.associator(R, Q, P)
        return pl.as_general(cell) if self.general else cell

    def random_1cell(self, rng, I, J, max_size):
        return random_poly(rng, I, J, max_size)

    def random_2cell(self, rng, I, J, max_size):
        if self.general and rng.random() < 0.75:
            return random_general_cell(rng, I, J, max_size)
        cell = random_cart_cell(rng, I, J, max_size)
        return pl.as_general(cell) if self.general else cell

    def canonical_adjunctions(self, rng, max_size) -> list:
        X = random_set(rng, max_size, 1)
        f = random_map(rng, X, random_set(rng, max_size, 1))
        out = [(f"sigma{list(f.table)}", f, pl.poly_adjunction(f, "sigma_delta"))]
        if self.general:
            out.append((f"delta{list(f.table)}", f, pl.poly_adjunction(f, "delta_pi")))
        return out

    def describe(self, P) -> dict:
        return {"s": list(P.s.table), "p": list(P.p.table), "t": list(P.t.table)}

    def ends(self, P):
        return P.src, P.tgt


def random_ends(rng: random.Random, n: int, max_size: int) -> list:
    return [random_set(rng, max_size, 1) for _ in range(n)]


__all__ = ["SpanSource", "PolySource", "random_ends", "FinMap", "identity"]
