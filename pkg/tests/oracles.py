"""Brute-force reference computations, written without the library's algorithms."""
import itertools

from hypothesis import strategies as st

from polyspan.finset import FinMap, FinSet


def maps(dom_max=4, cod_min=1, cod_max=4):
    """Strategy for a random map between small sets."""
    @st.composite
    def build(draw):
        n = draw(st.integers(0, dom_max))
        m = draw(st.integers(cod_min, cod_max))
        table = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
        return FinMap(FinSet(n), FinSet(m), tuple(table))
    return build()


def all_tables(n, m):
    return itertools.product(range(m), repeat=n)


def substitute(g, f):
    return [g.table[f.table[x]] for x in range(f.dom.size)]


def pullback_pairs(f, g):
    return [(a, c) for a in range(f.dom.size) for c in range(g.dom.size) if f.table[a] == g.table[c]]


def fiber_count(f, b):
    return sum(1 for v in f.table if v == b)


def section_count(f, u):
    """Number of pairs (b, s) with s choosing a u-preimage for each point of f's fiber at b."""
    total = 0
    for b in range(f.cod.size):
        prod = 1
        for a in range(f.dom.size):
            if f.table[a] == b:
                prod *= fiber_count(u, a)
        total += prod
    return total


def span_matrix(left, right):
    M = [[0] * left.cod.size for _ in range(right.cod.size)]
    for k in range(left.dom.size):
        M[right.table[k]][left.table[k]] += 1
    return M


def poly_eval_sizes(s, p, t, sizes):
    """Entry sizes of the polynomial functor (s, p, t) on a family with the given entry sizes."""
    out = [0] * t.cod.size
    for b in range(p.cod.size):
        prod = 1
        for e in range(p.dom.size):
            if p.table[e] == b:
                prod *= sizes[s.table[e]]
        out[t.table[b]] += prod
    return out


def univariate_count(fiber_sizes, n):
    return sum(n ** k for k in fiber_sizes)


def dpb_factorizations(d, r2, p2_choice):
    """For a one-point competitor over ``b = r2`` choosing ``p2_choice[a]`` in u's fiber
    for each ``a`` over ``b``, list every ``y`` in the chosen Y that it factors through."""
    hits = []
    for y in range(d.Y.size):
        if d.r.table[y] != r2:
            continue
        ok = True
        for k, (a, yy) in enumerate(d.t_pullback.pairs):
            if yy == y and d.p.table[k] != p2_choice[a]:
                ok = False
        if ok:
            hits.append(y)
    return hits


def small_dpb_inputs(limit=3):
    for na in range(1, limit + 1):
        for nb in range(1, limit + 1):
            for nx in range(0, limit + 1):
                for ft in all_tables(na, nb):
                    for ut in all_tables(nx, na):
                        yield (FinMap(FinSet(na), FinSet(nb), ft), FinMap(FinSet(nx), FinSet(na), ut))


def distributivity_sizes(f, u, sizes, op):
    """Entry sizes at ``b`` of both sides of the distributivity comparison for a fiberwise tensor.

    The source sums, over sections ``s`` of ``u`` above ``f``'s fiber, the tensor of the chosen
    entries; the target tensors, over ``f``'s fiber, the sums of ``u``'s fibers.
    """
    src, tgt = [], []
    for b in range(f.cod.size):
        fib = [a for a in range(f.dom.size) if f.table[a] == b]
        pre = {a: [x for x in range(u.dom.size) if u.table[x] == a] for a in fib}
        total = 0
        for s in itertools.product(*(pre[a] for a in fib)):
            vals = [sizes[x] for x in s]
            total += _tensor(vals, op)
        src.append(total)
        tgt.append(_tensor([sum(sizes[x] for x in pre[a]) for a in fib], op))
    return src, tgt


def _tensor(vals, op):
    if op == "coproduct":
        return sum(vals)
    out = 1
    for v in vals:
        out *= v
    return out
