"""Budgeted law checks for oplax functors and their comultiplication presentation."""
from __future__ import annotations

import random

from .. import famcat as fc
from .. import poly as pl
from .. import span as sp
from ..finset import FinMap, FinSet, compose_map, identity, pullback, pullback_mediate
from ..report import Report, Verdict
from ..sampling import random_bijection, random_map, random_set
from .oplax import ComultCounit, OplaxFunctor, poly_phi_from_comult, span_phi_from_comult


def _record(report: Report, verdict: Verdict, law: str, inputs: list) -> Verdict:
    verdict.law, verdict.inputs = law, inputs
    report.verdicts.append(verdict)
    return verdict


def _guard(report: Report, law: str, inputs: list, thunk) -> Verdict:
    """Run a check; a construction error is itself a failing verdict."""
    try:
        return _record(report, thunk(), law, inputs)
    except (ValueError, KeyError) as exc:
        return report.add(law, inputs, False, {"error": str(exc)})


# ---------------------------------------------------------------- random 2-cells into a fixed target

def random_2cell_into(source, rng: random.Random, tgt, max_size: int):
    """A random 2-cell of ``source`` whose target is ``tgt``."""
    if source.name.startswith("span"):
        if source.iso:
            h = random_bijection(rng, tgt.apex)
        else:
            apex = random_set(rng, max_size) if tgt.apex.size else FinSet(0)
            h = random_map(rng, apex, tgt.apex)
        return sp.SpanTwoCell(sp.Span(compose_map(tgt.left, h), compose_map(tgt.right, h)), tgt, h, source.iso)
    Q = tgt
    B = random_set(rng, max_size) if Q.B.size else FinSet(0)
    g = random_map(rng, B, Q.B)
    pb = pullback(g, Q.p)
    if not source.general or rng.random() < 0.3 or Q.src.size == 0:
        perm = random_bijection(rng, pb.apex)
        inv = perm.inverse()
        f = compose_map(pb.proj2, inv)
        P = pl.Polynomial(compose_map(Q.s, f), compose_map(pb.proj1, inv), compose_map(Q.t, g))
        cell = pl.CartTwoCell(P, Q, f, g)
        return pl.as_general(cell) if source.general else cell
    # general: the pullback plus a few extra elements over B, shuffled
    extra = rng.randint(0, max_size) if B.size else 0
    E = FinSet(pb.apex.size + extra)
    perm = random_bijection(rng, E)
    p_table = [0] * E.size
    s_table = [0] * E.size
    for k in range(E.size):
        if k < pb.apex.size:
            p_table[perm(k)] = pb.proj1(k)
            s_table[perm(k)] = Q.s(pb.proj2(k))
        else:
            p_table[perm(k)] = rng.randrange(B.size)
            s_table[perm(k)] = rng.randrange(Q.src.size)
    e = FinMap(pb.apex, E, tuple(perm(k) for k in range(pb.apex.size)))
    P = pl.Polynomial(FinMap(E, Q.src, tuple(s_table)), FinMap(E, B, tuple(p_table)), compose_map(Q.t, g))
    return pl.GeneralTwoCell(P, Q, g, e)


def _ends(rng: random.Random, n: int, max_size: int) -> list:
    return [random_set(rng, max_size, 1) for _ in range(n)]


def _unitor(source, P, left: bool):
    if source.name.startswith("span"):
        cell = sp.left_unitor(P) if left else sp.right_unitor(P)
        return sp.SpanTwoCell(cell.src, cell.tgt, cell.apex_map, source.iso)
    cell = pl.left_unitor(P) if left else pl.right_unitor(P)
    return pl.as_general(cell) if source.general else cell


# ---------------------------------------------------------------- sampling driver

DEFAULT_BUDGET = 400
MAX_REDRAWS = 40


def _run(report: Report, count: int, rng: random.Random, body, budget: int | None) -> Report:
    """Call ``body(local, k)`` for ``k < count``; the body draws its own sample from ``rng``.

    A sample whose evaluation would build a family above ``budget`` elements
    is discarded with its verdicts and redrawn; ``report.redrawn`` counts these.
    """
    for k in range(count):
        for _ in range(MAX_REDRAWS):
            local = Report()
            try:
                with fc.size_budget(budget):
                    body(local, k)
            except fc.BudgetExceeded:
                report.redrawn += 1
                continue
            report.extend(local)
            break
        else:
            report.add("budget", [k], False,
                       {"reason": f"no sample within {budget} elements after {MAX_REDRAWS} draws"})
    return report


# ---------------------------------------------------------------- oplax laws

def check_oplax_laws(L: OplaxFunctor, seed=0, triples: int = 30, units: int = 30, max_size: int = 2,
                     budget: int | None = DEFAULT_BUDGET) -> Report:
    """Associativity, both unit laws, local functoriality and naturality of phi."""
    src = L.source
    S = L.sampler
    report = Report()
    rng = random.Random(f"oplax:{L.name}:{seed}")

    def triple(out, k):
        X0, X1, X2, X3 = _ends(rng, 4, max_size)
        P = src.random_1cell(rng, X0, X1, max_size)
        Q = src.random_1cell(rng, X1, X2, max_size)
        R = src.random_1cell(rng, X2, X3, max_size)
        inputs = [k, src.describe(P), src.describe(Q), src.describe(R)]

        def assoc():
            lhs = fc.vcomp(fc.whisker(None, L.phi(R, Q), L(P)), L.phi(src.compose(R, Q), P))
            rhs = fc.vcomp(fc.whisker(L(R), L.phi(Q, P)), L.phi(R, src.compose(Q, P)),
                           L.on_2cell(src.associator(R, Q, P)))
            return fc.nat_equal(lhs, rhs, S)
        _guard(out, "assoc", inputs, assoc)

        alpha = src.random_2cell(rng, X0, X1, max_size)
        beta = src.random_2cell(rng, X1, X2, max_size)

        def naturality():
            lhs = fc.vcomp(L.phi(beta.tgt, alpha.tgt), L.on_2cell(src.hcomp(beta, alpha)))
            rhs = fc.vcomp(fc.hcomp(L.on_2cell(beta), L.on_2cell(alpha)), L.phi(beta.src, alpha.src))
            return fc.nat_equal(lhs, rhs, S)
        _guard(out, "phi_naturality", [k, src.describe(alpha.src), src.describe(beta.src)], naturality)

        later = src.random_2cell(rng, X0, X1, max_size)
        earlier = random_2cell_into(src, rng, later.src, max_size)

        def functoriality():
            return fc.nat_equal(L.on_2cell(src.vcomp(later, earlier)),
                                fc.vcomp(L.on_2cell(later), L.on_2cell(earlier)), S)
        _guard(out, "local_functoriality", [k, src.describe(earlier.src), src.describe(later.tgt)],
               functoriality)

    def unit(out, k):
        X, Y = _ends(rng, 2, max_size)
        P = src.random_1cell(rng, X, Y, max_size)
        inputs = [k, src.describe(P)]

        def left():
            lhs = fc.vcomp(fc.whisker(None, L.lam(Y), L(P)), L.phi(src.identity(Y), P))
            return fc.nat_equal(lhs, L.on_2cell(_unitor(src, P, True)), S)

        def right():
            lhs = fc.vcomp(fc.whisker(L(P), L.lam(X)), L.phi(P, src.identity(X)))
            return fc.nat_equal(lhs, L.on_2cell(_unitor(src, P, False)), S)
        _guard(out, "unit_left", inputs, left)
        _guard(out, "unit_right", inputs, right)
        _guard(out, "local_identity", inputs,
               lambda: fc.is_identity_cell(L.on_2cell(src.identity_cell(P)), S))

    _run(report, triples, rng, triple, budget)
    return _run(report, units, rng, unit, budget)


# ---------------------------------------------------------------- gregariousness

def image_adjunction(L: OplaxFunctor, adj) -> fc.Adjunction:
    """Transport an adjunction ``l -| r`` of the source along ``L``.

    The unit is ``phi(r, l) . L(unit) . lam^-1`` and the counit is
    ``lam . L(counit) . phi(l, r)^-1``.
    """
    l, r = adj.left, adj.right
    X, Y = L.source.ends(l)
    unit = fc.vcomp(L.phi(r, l), L.on_2cell(adj.unit), fc.inverse_cell(L.lam(X)))
    counit = fc.vcomp(L.lam(Y), L.on_2cell(adj.counit), fc.inverse_cell(L.phi(l, r)))
    return fc.Adjunction(L(l), L(r), unit, counit, f"image({adj.left!r})")


def check_gregarious(L: OplaxFunctor, mode: str = "constraint", seed=0, count: int = 30,
                     max_size: int = 2, budget: int | None = DEFAULT_BUDGET) -> Report:
    """``constraint``: phi is invertible when its outer factor is a canonical left adjoint.
    ``adjunction_preservation``: canonical adjunctions go to adjunctions.  ``both`` also
    reports whether the two modes agree."""
    if mode not in ("constraint", "adjunction_preservation", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    src, S = L.source, L.sampler
    report = Report()
    rng = random.Random(f"greg:{L.name}:{seed}")

    def body(out, k):
        for tag, f, adj in src.canonical_adjunctions(rng, max_size):
            X, Y = src.ends(adj.left)
            inputs = [k, tag]
            results = []
            if mode in ("constraint", "both"):
                W = random_set(rng, max_size, 1)
                P = src.random_1cell(rng, W, X, max_size)
                checks = (("lam_invertible", [], lambda: L.lam(X)),
                          ("phi_left_adjoint_invertible", [src.describe(P)], lambda: L.phi(adj.left, P)),
                          ("phi_left_right_invertible", [], lambda: L.phi(adj.left, adj.right)))
                ok = True
                for law, extra, cell in checks:
                    ok = _guard(out, law, inputs + extra, lambda: fc.is_invertible(cell(), S)).ok and ok
                results.append(ok)
            if mode in ("adjunction_preservation", "both"):
                try:
                    tri = fc.triangle_identities(image_adjunction(L, adj), S)
                except (ValueError, KeyError) as exc:
                    tri = [Verdict("triangle", [], False, {"error": str(exc)})]
                ok = True
                for v in tri:
                    ok = _record(out, v, f"preserves_{v.law}", inputs).ok and ok
                results.append(ok)
            if mode == "both":
                agree = results[0] == results[1]
                out.add("modes_agree", inputs, agree,
                        None if agree else {"constraint": results[0], "adjunction": results[1]})

    return _run(report, count, rng, body, budget)


# ---------------------------------------------------------------- comultiplication presentation

def _span_comult_from(L: OplaxFunctor) -> ComultCounit:
    def comult(s, h, t):
        first, second = sp.Span(s, h), sp.Span(h, t)
        comp = sp.compose_span_witness(second, first)
        diag = pullback_mediate(comp.pullback, identity(s.dom), identity(s.dom))
        delta = sp.SpanTwoCell(sp.Span(s, t), comp.span, diag)
        return fc.vcomp(L.phi(second, first), L.on_2cell(delta))

    def counit(h):
        aug = sp.SpanTwoCell(sp.Span(h, h), sp.identity_span(h.cod), h)
        return fc.vcomp(L.lam(h.cod), L.on_2cell(aug))
    return ComultCounit(L.source, comult, counit)


def _poly_comult_from(L: OplaxFunctor) -> ComultCounit:
    general = L.source.general

    def lift(cell):
        return pl.as_general(cell) if general else cell

    def comult(s, p1, h, p2, t):
        first, second = pl.Polynomial(s, p1, h), pl.Polynomial(h, p2, t)
        comp = pl.compose_poly_witness(second, first)
        E, T, B = p1.dom, p1.cod, p2.cod
        h1, _, h3 = pl.factor_through_composite(comp, identity(E), p1, identity(T), identity(T), p2, identity(B))
        delta = pl.CartTwoCell(pl.Polynomial(s, compose_map(p2, p1), t), comp.poly, h1, h3)
        return fc.vcomp(L.phi(second, first), L.on_2cell(lift(delta)))

    def counit(h):
        T = h.dom
        aug = pl.CartTwoCell(pl.Polynomial(h, identity(T), h), pl.identity_poly(h.cod), h, h)
        return fc.vcomp(L.lam(h.cod), L.on_2cell(lift(aug)))
    return ComultCounit(L.source, comult, counit)


def reduce_constraints(mode: str, L: OplaxFunctor, data: ComultCounit | None = None):
    """``to_comult``: read comultiplication and counit off ``(phi, lam)``.
    ``to_constraints``: rebuild ``(phi, lam)`` on the local action of ``L`` from ``data``."""
    is_span = L.source.name.startswith("span")
    if mode == "to_comult":
        return _span_comult_from(L) if is_span else _poly_comult_from(L)
    if mode == "to_constraints":
        if data is None:
            raise ValueError("to_constraints needs comultiplication data")
        out = OplaxFunctor(f"{L.name}-rebuilt", L.source, L.sampler, L.on_1cell, L.on_2cell_raw, None,
                           lambda X: data.counit(identity(X)), data)
        build = span_phi_from_comult if is_span else poly_phi_from_comult
        out.phi_raw = lambda Q, P: build(out, data, Q, P)
        return out
    raise ValueError(f"unknown mode {mode!r}")


def _random_span_diagonal(rng, max_size):
    T = random_set(rng, max_size)
    return [random_map(rng, T, random_set(rng, max_size, 1)) for _ in range(3)]


def _random_poly_diagonal(rng, max_size, n: int = 2):
    """Maps ``E = A0 -> A1 -> ... -> An`` with legs from ``A0``, each ``A1..A(n-1)`` and ``An``."""
    sets = [random_set(rng, max_size) for _ in range(n + 1)]
    sets[-1] = random_set(rng, max_size, 1)
    for i in range(n - 1, -1, -1):
        if sets[i + 1].size == 0:
            sets[i] = FinSet(0)
    chain = [random_map(rng, sets[i], sets[i + 1]) for i in range(n)]
    legs = [random_map(rng, A, random_set(rng, max_size, 1)) for A in sets]
    return chain, legs


def _span(L, s, t):
    return L(sp.Span(s, t))


def _poly(L, s, p, t):
    return L(pl.Polynomial(s, p, t))


def check_round_trip(L: OplaxFunctor, seed=0, count: int = 30, max_size: int = 2,
                     budget: int | None = DEFAULT_BUDGET) -> Report:
    """Both round trips between ``(phi, lam)`` and ``(Phi, Lambda)`` are identities."""
    src, S = L.source, L.sampler
    is_span = src.name.startswith("span")
    report = Report()
    rng = random.Random(f"round:{L.name}:{seed}")
    rebuilt = reduce_constraints("to_constraints", L, reduce_constraints("to_comult", L))
    again = None
    if L.comult is not None:
        again = reduce_constraints("to_comult", reduce_constraints("to_constraints", L, L.comult))

    def body(out, k):
        X, Y, Z = _ends(rng, 3, max_size)
        P, Q = src.random_1cell(rng, X, Y, max_size), src.random_1cell(rng, Y, Z, max_size)
        inputs = [k, src.describe(P), src.describe(Q)]
        _guard(out, "round_trip_phi", inputs, lambda: fc.nat_equal(rebuilt.phi(Q, P), L.phi(Q, P), S))
        _guard(out, "round_trip_lam", [k, X.size], lambda: fc.nat_equal(rebuilt.lam(X), L.lam(X), S))
        if again is None:
            return
        if is_span:
            diag = tuple(_random_span_diagonal(rng, max_size))
            aug = diag[1]
        else:
            (p1, p2), (s, h, t) = _random_poly_diagonal(rng, max_size)
            diag, aug = (s, p1, h, p2, t), h
        _guard(out, "round_trip_comult", [k] + [list(m.table) for m in diag],
               lambda: fc.nat_equal(again.comult(*diag), L.comult.comult(*diag), S))
        _guard(out, "round_trip_counit", [k, list(aug.table)],
               lambda: fc.nat_equal(again.counit(aug), L.comult.counit(aug), S))

    return _run(report, count, rng, body, budget)


def check_comult_conditions(L: OplaxFunctor, data: ComultCounit | None = None, seed=0, count: int = 20,
                            max_size: int = 2, budget: int | None = DEFAULT_BUDGET) -> Report:
    """Naturality of Phi, naturality of Lambda, coassociativity and counitality."""
    data = data if data is not None else L.comult
    if data is None:
        data = reduce_constraints("to_comult", L)
    report = Report()
    rng = random.Random(f"comult:{L.name}:{seed}")
    check = _span_conditions if L.source.name.startswith("span") else _poly_conditions
    return _run(report, count, rng, lambda out, k: check(L, data, L.sampler, rng, max_size, out, k), budget)


def _span_conditions(L, data, S, rng, max_size, report, k):
    Phi, Lam = data.comult, data.counit
    s, h, t = _random_span_diagonal(rng, max_size)
    T = s.dom
    R = random_set(rng, max_size) if T.size else FinSet(0)
    f = random_map(rng, R, T)
    u, kk, v = compose_map(s, f), compose_map(h, f), compose_map(t, f)
    inputs = [k] + [list(m.table) for m in (s, h, t, f)]

    def cell(a, b, c, d):
        return L.on_2cell(sp.SpanTwoCell(sp.Span(a, b), sp.Span(c, d), f))

    def cond1():
        lhs = fc.vcomp(fc.hcomp(cell(kk, v, h, t), cell(u, kk, s, h)), Phi(u, kk, v))
        return fc.nat_equal(lhs, fc.vcomp(Phi(s, h, t), cell(u, v, s, t)), S)
    _guard(report, "comult_naturality", inputs, cond1)

    M = random_set(rng, max_size)
    N = random_set(rng, max_size, 1)
    g = random_map(rng, M, N)
    q = random_map(rng, N, random_set(rng, max_size, 1))
    p = compose_map(q, g)

    def cond2():
        moved = L.on_2cell(sp.SpanTwoCell(sp.Span(p, p), sp.Span(q, q), g))
        return fc.nat_equal(fc.vcomp(Lam(q), moved), Lam(p), S)
    _guard(report, "counit_naturality", [k, list(g.table), list(q.table)], cond2)

    kmap = random_map(rng, T, random_set(rng, max_size, 1))

    def cond3():
        lhs = fc.vcomp(fc.whisker(None, Phi(h, kmap, t), _span(L, s, h)), Phi(s, h, t))
        rhs = fc.vcomp(fc.whisker(_span(L, kmap, t), Phi(s, h, kmap)), Phi(s, kmap, t))
        return fc.nat_equal(lhs, rhs, S)
    _guard(report, "coassociativity", inputs[:4] + [list(kmap.table)], cond3)

    _guard(report, "counit_left", inputs[:4],
           lambda: fc.is_identity_cell(fc.vcomp(fc.whisker(_span(L, s, t), Lam(s)), Phi(s, s, t)), S))
    _guard(report, "counit_right", inputs[:4],
           lambda: fc.is_identity_cell(fc.vcomp(fc.whisker(None, Lam(t), _span(L, s, t)), Phi(s, t, t)), S))


def _poly_conditions(L, data, S, rng, max_size, report, k):
    Phi, Lam = data.comult, data.counit
    general = L.source.general

    def on(cell):
        return L.on_2cell(pl.as_general(cell) if general else cell)
    (p1, p2), (s, h, t) = _random_poly_diagonal(rng, max_size)
    B = p2.cod
    inputs = [k] + [list(m.table) for m in (s, p1, h, p2, t)]
    I = random_set(rng, max_size) if B.size else FinSet(0)
    g = random_map(rng, I, B)
    pb_s = pullback(g, p2)
    c, q2 = pb_s.proj2, pb_s.proj1
    pb_r = pullback(c, p1)
    f, q1 = pb_r.proj2, pb_r.proj1
    u, kk, v = compose_map(s, f), compose_map(h, c), compose_map(t, g)

    def cond1():
        whole = on(pl.CartTwoCell(pl.Polynomial(u, compose_map(q2, q1), v),
                                  pl.Polynomial(s, compose_map(p2, p1), t), f, g))
        first = on(pl.CartTwoCell(pl.Polynomial(u, q1, kk), pl.Polynomial(s, p1, h), f, c))
        second = on(pl.CartTwoCell(pl.Polynomial(kk, q2, v), pl.Polynomial(h, p2, t), c, g))
        lhs = fc.vcomp(fc.hcomp(second, first), Phi(u, q1, kk, q2, v))
        return fc.nat_equal(lhs, fc.vcomp(Phi(s, p1, h, p2, t), whole), S)
    _guard(report, "comult_naturality", inputs + [list(g.table)], cond1)

    R = random_set(rng, max_size)
    T = random_set(rng, max_size, 1)
    fm = random_map(rng, R, T)
    tm = random_map(rng, T, random_set(rng, max_size, 1))
    sm = compose_map(tm, fm)

    def cond2():
        moved = on(pl.CartTwoCell(pl.Polynomial(sm, identity(R), sm), pl.Polynomial(tm, identity(T), tm), fm, fm))
        return fc.nat_equal(fc.vcomp(Lam(tm), moved), Lam(sm), S)
    _guard(report, "counit_naturality", [k, list(fm.table), list(tm.table)], cond2)

    (a, b, cc), (s3, h3, k3, t3) = _random_poly_diagonal(rng, max_size, 3)

    def cond3():
        lhs = fc.vcomp(fc.whisker(None, Phi(h3, b, k3, cc, t3), _poly(L, s3, a, h3)),
                       Phi(s3, a, h3, compose_map(cc, b), t3))
        rhs = fc.vcomp(fc.whisker(_poly(L, k3, cc, t3), Phi(s3, a, h3, b, k3)),
                       Phi(s3, compose_map(b, a), k3, cc, t3))
        return fc.nat_equal(lhs, rhs, S)
    _guard(report, "coassociativity", [k] + [list(m.table) for m in (a, b, cc, s3, h3, k3, t3)], cond3)

    p = compose_map(p2, p1)
    E, Bs = p.dom, p.cod
    PL = _poly(L, s, p, t)
    _guard(report, "counit_left", inputs,
           lambda: fc.is_identity_cell(fc.vcomp(fc.whisker(PL, Lam(s)), Phi(s, identity(E), s, p, t)), S))
    _guard(report, "counit_right", inputs,
           lambda: fc.is_identity_cell(fc.vcomp(fc.whisker(None, Lam(t), PL), Phi(s, p, t, identity(Bs), t)), S))


def check_pseudo(L: OplaxFunctor, seed=0, count: int = 20, max_size: int = 2,
                 budget: int | None = DEFAULT_BUDGET) -> Report:
    """Invertibility of every sampled binary and nullary constraint."""
    src, S = L.source, L.sampler
    report = Report()
    rng = random.Random(f"pseudo:{L.name}:{seed}")

    def body(out, k):
        X, Y, Z = _ends(rng, 3, max_size)
        P, Q = src.random_1cell(rng, X, Y, max_size), src.random_1cell(rng, Y, Z, max_size)
        _guard(out, "phi_invertible", [k, src.describe(P), src.describe(Q)],
               lambda: fc.is_invertible(L.phi(Q, P), S))
        _guard(out, "lam_invertible", [k, X.size], lambda: fc.is_invertible(L.lam(X), S))

    return _run(report, count, rng, body, budget)


__all__ = ["check_oplax_laws", "check_gregarious", "image_adjunction", "reduce_constraints",
           "check_round_trip", "check_comult_conditions", "check_pseudo", "random_2cell_into", "DEFAULT_BUDGET"]
