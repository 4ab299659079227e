"""Seeded random generators for maps, spans, polynomials, squares and cells."""
from __future__ import annotations

import random

from .finset import FinMap, FinSet, compose_map, identity, pullback
from .poly import GeneralTwoCell, Polynomial
from .span import Span


def rng_for(seed, *tags) -> random.Random:
    return random.Random(":".join(str(t) for t in (seed,) + tags))


def random_set(rng: random.Random, max_size: int, min_size: int = 0) -> FinSet:
    return FinSet(rng.randint(min_size, max_size))


def random_map(rng: random.Random, X: FinSet, Y: FinSet) -> FinMap:
    if Y.size == 0 and X.size > 0:
        raise ValueError("no map into the empty set")
    return FinMap(X, Y, tuple(rng.randrange(Y.size) for _ in range(X.size)))


def random_map_from(rng: random.Random, X: FinSet, max_size: int) -> FinMap:
    Y = random_set(rng, max_size, min_size=1 if X.size else 0)
    return random_map(rng, X, Y)


def random_bijection(rng: random.Random, X: FinSet) -> FinMap:
    perm = list(range(X.size))
    rng.shuffle(perm)
    return FinMap(X, X, tuple(perm))


def random_span(rng: random.Random, X: FinSet, Y: FinSet, max_apex: int) -> Span:
    if X.size == 0 or Y.size == 0:
        apex = FinSet(0)
    else:
        apex = random_set(rng, max_apex)
    return Span(random_map(rng, apex, X), random_map(rng, apex, Y))


def random_poly(rng: random.Random, I: FinSet, J: FinSet, max_size: int) -> Polynomial:
    B = FinSet(0) if J.size == 0 else random_set(rng, max_size)
    E = FinSet(0) if I.size == 0 or B.size == 0 else random_set(rng, max_size)
    return Polynomial(random_map(rng, E, I), random_map(rng, E, B), random_map(rng, B, J))


def composable_sets(rng: random.Random, n: int, max_size: int) -> list:
    return [random_set(rng, max_size, min_size=1) for _ in range(n)]


def random_pullback_square(rng: random.Random, max_size: int, chosen: bool = True):
    """A pullback square ``(top, left, bottom, right)``; optionally with a shuffled apex."""
    B = random_set(rng, max_size, 1)
    A, C = random_set(rng, max_size), random_set(rng, max_size)
    f, g = random_map(rng, A, B), random_map(rng, C, B)
    pb = pullback(f, g)
    top, left = pb.proj2, pb.proj1
    if not chosen:
        perm = random_bijection(rng, pb.apex)
        top, left = compose_map(top, perm), compose_map(left, perm)
    return top, left, f, g


def random_general_cell(rng: random.Random, I: FinSet, J: FinSet, max_size: int, tries: int = 50) -> GeneralTwoCell:
    """A random general 2-cell between random polynomials ``I -> J``.

    The base data is drawn first; the source labels are then chosen per class
    of elements forced equal by ``s e = u f``.
    """
    for _ in range(tries):
        N = FinSet(0) if J.size == 0 else random_set(rng, max_size, 1)
        B = FinSet(0) if J.size == 0 else random_set(rng, max_size, 1)
        g = random_map(rng, B, N)
        v = random_map(rng, N, J)
        M = FinSet(0) if not I.size else random_set(rng, max_size, 1)
        E = FinSet(0) if not I.size else random_set(rng, max_size, 1)
        if B.size == 0 or (M.size and not N.size):
            continue
        q = random_map(rng, M, N)
        p = random_map(rng, E, B)
        pb = pullback(g, q)
        table = []
        for b, m in pb.pairs:
            options = p.fiber(b)
            if not options:
                break
            table.append(rng.choice(options))
        else:
            parent = list(range(E.size + M.size))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x
            for k, (b, m) in enumerate(pb.pairs):
                parent[find(table[k])] = find(E.size + m)
            label = {}
            for x in range(E.size + M.size):
                label.setdefault(find(x), rng.randrange(I.size))
            s = FinMap(E, I, tuple(label[find(x)] for x in range(E.size)))
            u = FinMap(M, I, tuple(label[find(E.size + m)] for m in range(M.size)))
            e = FinMap(pb.apex, E, tuple(table))
            return GeneralTwoCell(Polynomial(s, p, compose_map(v, g)), Polynomial(u, q, v), g, e)
    empty = FinSet(0)
    P = Polynomial(FinMap(empty, I, ()), identity(empty), FinMap(empty, J, ()))
    return GeneralTwoCell(P, P, identity(empty), identity(empty))


def random_cart_cell(rng: random.Random, I: FinSet, J: FinSet, max_size: int):
    """A random cartesian cell: reindex a random target along a random base map."""
    from .poly import CartTwoCell
    Q = random_poly(rng, I, J, max_size)
    N = Q.B
    B = random_set(rng, max_size) if N.size else FinSet(0)
    nu = random_map(rng, B, N)
    pb = pullback(nu, Q.p)
    perm = random_bijection(rng, pb.apex)
    inv = perm.inverse()
    P = Polynomial(compose_map(Q.s, compose_map(pb.proj2, inv)), compose_map(pb.proj1, inv),
                   compose_map(Q.t, nu))
    return CartTwoCell(P, Q, compose_map(pb.proj2, inv), nu)
