"""Icons between gregarious functors out of spans.

An icon is fixed by its components at the spans ``(1, f)``.  The component
at ``(f, 1)`` is the conjugate of the inverse of the ``(1, f)`` component
under the transported adjunctions, and a general span ``(s, t)`` factors as
``(1, t)`` after ``(s, 1)`` with an invertible constraint.
"""
from __future__ import annotations

import random
from typing import Callable

from .. import famcat as fc
from .. import span as sp
from ..famcat import FamNatTrans, Sigma
from ..finset import FinMap
from ..report import Report
from ..sampling import random_map, random_set
from .laws import DEFAULT_BUDGET, _guard, _run, image_adjunction
from .oplax import OplaxFunctor


class Icon:
    """Components ``L(S) => K(S)`` for every span ``S``, extended from base data."""

    def __init__(self, src: OplaxFunctor, tgt: OplaxFunctor, base: Callable[[FinMap], FamNatTrans],
                 name: str = "icon"):
        if not (src.source.name == tgt.source.name == "span"):
            raise ValueError("icons are extended along spans only")
        self.src, self.tgt, self.base, self.name = src, tgt, base, name
        self._memo: dict = {}

    def sigma_component(self, f: FinMap) -> FamNatTrans:
        cell = self.base(f)
        fc._expect(cell, self.src(sp.sigma_span(f)), self.tgt(sp.sigma_span(f)), "icon base")
        return cell

    def delta_component(self, f: FinMap) -> FamNatTrans:
        adj = sp.span_adjunction(f)
        cell = fc.conjugate(fc.inverse_cell(self.sigma_component(f)),
                            image_adjunction(self.src, adj), image_adjunction(self.tgt, adj))
        cell.name = f"{self.name}_delta{list(f.table)}"
        return cell

    def component(self, S) -> FamNatTrans:
        hit = self._memo.get(S)
        if hit is not None:
            return hit
        s, t = S.left, S.right
        if s.is_identity:
            out = self.sigma_component(t)
        elif t.is_identity:
            out = self.delta_component(s)
        else:
            up, down = sp.sigma_span(t), sp.delta_span(s)
            L, K = self.src, self.tgt
            out = fc.vcomp(fc.inverse_cell(K.phi(up, down)),
                           fc.hcomp(self.component(up), self.component(down)),
                           L.phi(up, down))
            out.name = f"{self.name}{S!r}"
        self._memo[S] = out
        return out


def icon_extend(base: Callable[[FinMap], FamNatTrans], L: OplaxFunctor, K: OplaxFunctor,
                name: str = "icon", seed=0, probes: int = 5, max_size: int = 2) -> Icon:
    """Extend base components at ``(1, f)`` to an icon ``L => K``.

    The base must be invertible, since the ``(f, 1)`` components are built
    from its inverse; ``probes`` random maps are tested before returning.
    """
    icon = Icon(L, K, base, name)
    rng = random.Random(f"extend:{name}:{seed}")
    for _ in range(probes):
        f = random_map(rng, random_set(rng, max_size, 1), random_set(rng, max_size, 1))
        verdict = fc.is_invertible(icon.sigma_component(f), L.sampler)
        if not verdict.ok:
            raise ValueError(f"base component at {list(f.table)} is not invertible: {verdict.witness}")
    return icon


def flip_base(L: OplaxFunctor, K: OplaxFunctor) -> Callable[[FinMap], FamNatTrans]:
    """Components ``(x, a) -> (a, x)`` between the plain and the flipped summand tags."""
    def base(f):
        plain, flipped = Sigma(f, False), Sigma(f, True)

        def rule(A, y, elem):
            x, a = plain.unpack(y, elem)
            return flipped.pack(y, x, a)
        return fc.element_cell(L(sp.sigma_span(f)), K(sp.sigma_span(f)), rule, f"flip{list(f.table)}")
    return base


def unflip_base(L: OplaxFunctor, K: OplaxFunctor) -> Callable[[FinMap], FamNatTrans]:
    def base(f):
        plain, flipped = Sigma(f, False), Sigma(f, True)

        def rule(A, y, elem):
            x, a = flipped.unpack(y, elem)
            return plain.pack(y, x, a)
        return fc.element_cell(L(sp.sigma_span(f)), K(sp.sigma_span(f)), rule, f"unflip{list(f.table)}")
    return base


def identity_base(L: OplaxFunctor) -> Callable[[FinMap], FamNatTrans]:
    return lambda f: fc.identity_cell(L(sp.sigma_span(f)))


def mate_inverse(icon: Icon, f: FinMap) -> FamNatTrans:
    """The pasting ``K(l) => K(l) L(r) L(l) => K(l) K(r) L(l) => L(l)`` at ``l = (1, f)``."""
    adj = sp.span_adjunction(f)
    L, K = icon.src, icon.tgt
    l_adj, k_adj = image_adjunction(L, adj), image_adjunction(K, adj)
    Kl, Ll = K(adj.left), L(adj.left)
    out = fc.vcomp(fc.whisker(None, k_adj.counit, Ll),
                   fc.whisker(Kl, icon.component(adj.right), Ll),
                   fc.whisker(Kl, l_adj.unit))
    out.name = f"mateinv{list(f.table)}"
    return out


def check_mate_inverse(icon: Icon, f: FinMap, report: Report, inputs: list) -> None:
    S = icon.src.sampler
    forward = icon.component(sp.sigma_span(f))
    _guard(report, "mateinv_left", inputs, lambda: fc.is_identity_cell(fc.vcomp(mate_inverse(icon, f), forward), S))
    _guard(report, "mateinv_right", inputs, lambda: fc.is_identity_cell(fc.vcomp(forward, mate_inverse(icon, f)), S))


def check_icon(icon: Icon, seed=0, count: int = 20, max_size: int = 2, budget: int | None = DEFAULT_BUDGET) -> Report:
    """Local naturality, compatibility with both constraints, and invertibility at left adjoints."""
    L, K = icon.src, icon.tgt
    src, S = L.source, L.sampler
    report = Report()
    rng = random.Random(f"icon:{icon.name}:{seed}")

    def body(out, k):
        X, Y, Z = (random_set(rng, max_size, 1) for _ in range(3))
        cell = src.random_2cell(rng, X, Y, max_size)
        _guard(out, "icon_naturality", [k, src.describe(cell.src), src.describe(cell.tgt)],
               lambda: fc.nat_equal(fc.vcomp(K.on_2cell(cell), icon.component(cell.src)),
                                    fc.vcomp(icon.component(cell.tgt), L.on_2cell(cell)), S))
        P, Q = src.random_1cell(rng, X, Y, max_size), src.random_1cell(rng, Y, Z, max_size)
        _guard(out, "icon_binary", [k, src.describe(P), src.describe(Q)],
               lambda: fc.nat_equal(fc.vcomp(K.phi(Q, P), icon.component(src.compose(Q, P))),
                                    fc.vcomp(fc.hcomp(icon.component(Q), icon.component(P)), L.phi(Q, P)), S))
        _guard(out, "icon_nullary", [k, X.size],
               lambda: fc.nat_equal(fc.vcomp(K.lam(X), icon.component(src.identity(X))), L.lam(X), S))
        f = random_map(rng, X, Y)
        _guard(out, "icon_left_adjoint_invertible", [k, list(f.table)],
               lambda: fc.is_invertible(icon.component(sp.sigma_span(f)), S))
        check_mate_inverse(icon, f, out, [k, list(f.table)])

    return _run(report, count, rng, body, budget)


__all__ = ["Icon", "icon_extend", "flip_base", "unflip_base", "identity_base", "mate_inverse",
           "check_mate_inverse", "check_icon"]
