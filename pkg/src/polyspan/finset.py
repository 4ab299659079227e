"""Finite sets, maps between them, chosen pullbacks and distributivity pullbacks.

Elements of a finite set of size ``n`` are the integers ``0..n-1``.  Labels are
carried for display only and never take part in equality.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class FinSet:
    size: int
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"negative size {self.size}")
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("label count does not match size")

    def __iter__(self):
        return iter(range(self.size))

    def __len__(self):
        return self.size

    def label(self, x: int) -> str:
        return str(self.labels[x]) if self.labels is not None else str(x)

    def __repr__(self):
        return f"FinSet({self.size})"


@dataclass(frozen=True)
class FinMap:
    dom: FinSet
    cod: FinSet
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != self.dom.size:
            raise ValueError(
                f"table has {len(self.table)} entries, domain has {self.dom.size}")
        for x, v in enumerate(self.table):
            if not 0 <= v < self.cod.size:
                raise ValueError(f"value {v} at {x} outside codomain of size {self.cod.size}")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __repr__(self):
        return f"FinMap({self.dom.size}->{self.cod.size}, {list(self.table)})"

    @property
    def is_identity(self) -> bool:
        return self.dom == self.cod and all(v == x for x, v in enumerate(self.table))

    @property
    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size

    @property
    def is_bijective(self) -> bool:
        return self.dom.size == self.cod.size and self.is_injective

    def inverse(self) -> "FinMap":
        if not self.is_bijective:
            raise ValueError(f"{self!r} is not a bijection")
        inv = [0] * self.cod.size
        for x, v in enumerate(self.table):
            inv[v] = x
        return FinMap(self.cod, self.dom, tuple(inv))

    def fiber(self, b: int) -> tuple:
        return tuple(x for x, v in enumerate(self.table) if v == b)

    def then(self, g: "FinMap") -> "FinMap":
        return compose_map(g, self)


def identity(X: FinSet) -> FinMap:
    return FinMap(X, X, tuple(range(X.size)))


def compose_map(g: FinMap, f: FinMap) -> FinMap:
    """The composite ``g . f`` (apply ``f`` first)."""
    if f.cod != g.dom:
        raise ValueError(f"cannot compose: codomain {f.cod} vs domain {g.dom}")
    return FinMap(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def compose_all(*maps: FinMap) -> FinMap:
    """Right-to-left composite of several maps."""
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = compose_map(g, out)
    return out


def fiber(f: FinMap, b: int) -> tuple[FinSet, FinMap]:
    """The fiber over ``b`` with its inclusion into ``dom(f)``."""
    if not 0 <= b < f.cod.size:
        raise ValueError(f"{b} is not an element of the codomain")
    elems = f.fiber(b)
    S = FinSet(len(elems))
    return S, FinMap(S, f.dom, elems)


def empty_map(X: FinSet) -> FinMap:
    return FinMap(FinSet(0), X, ())


def terminal_map(X: FinSet) -> FinMap:
    return FinMap(X, FinSet(1), (0,) * X.size)


@dataclass(frozen=True)
class Pullback:
    """A chosen pullback of the cospan ``left -> base <- right``.

    ``pairs[k]`` is the pair of elements represented by apex element ``k``.
    """
    left: FinMap
    right: FinMap
    apex: FinSet
    proj1: FinMap
    proj2: FinMap
    pairs: tuple

    def index(self, a: int, c: int) -> int:
        try:
            return self._lookup[(a, c)]
        except KeyError:
            raise ValueError(f"({a}, {c}) is not in the pullback") from None

    @property
    def _lookup(self) -> dict:
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = {pair: k for k, pair in enumerate(self.pairs)}
            object.__setattr__(self, "_cache", cache)
        return cache

    def pair_index(self) -> dict:
        return dict(self._lookup)


def pullback(f: FinMap, g: FinMap) -> Pullback:
    """Chosen pullback of ``f: A -> B`` and ``g: C -> B``.

    Pairs are listed lexicographically, except that pulling back along an
    identity returns the other map's domain unchanged.
    """
    if f.cod != g.cod:
        raise ValueError("pullback of maps with different codomains")
    if f.is_identity:
        pairs = tuple((g.table[c], c) for c in range(g.dom.size))
        return Pullback(f, g, g.dom, g, identity(g.dom), pairs)
    if g.is_identity:
        pairs = tuple((a, f.table[a]) for a in range(f.dom.size))
        return Pullback(f, g, f.dom, identity(f.dom), f, pairs)
    by_value: dict[int, list[int]] = {}
    for c, v in enumerate(g.table):
        by_value.setdefault(v, []).append(c)
    pairs = tuple((a, c) for a, v in enumerate(f.table) for c in by_value.get(v, ()))
    P = FinSet(len(pairs))
    return Pullback(f, g, P,
                    FinMap(P, f.dom, tuple(a for a, _ in pairs)),
                    FinMap(P, g.dom, tuple(c for _, c in pairs)),
                    pairs)


def pullback_mediate(pb: Pullback, u: FinMap, v: FinMap) -> FinMap:
    """The unique ``h`` with ``proj1 . h = u`` and ``proj2 . h = v``."""
    if u.dom != v.dom:
        raise ValueError("mediating maps have different domains")
    if u.cod != pb.left.dom or v.cod != pb.right.dom:
        raise ValueError("mediating maps land in the wrong sets")
    table = []
    for x in range(u.dom.size):
        a, c = u.table[x], v.table[x]
        if pb.left.table[a] != pb.right.table[c]:
            raise ValueError(f"square does not commute at element {x}")
        table.append(pb.index(a, c))
    return FinMap(u.dom, pb.apex, tuple(table))


def is_pullback_square(top: FinMap, left: FinMap, bottom: FinMap, right: FinMap) -> tuple[bool, object]:
    """Decide whether the commuting square is a pullback.

    ``top: P -> C``, ``left: P -> A``, ``bottom: A -> B``, ``right: C -> B``.
    Returns ``(ok, witness)``; the witness names the first failure.
    """
    if compose_map(bottom, left) != compose_map(right, top):
        bad = next(x for x in range(left.dom.size)
                   if bottom.table[left.table[x]] != right.table[top.table[x]])
        return False, {"reason": "not commutative", "element": bad}
    pb = pullback(bottom, right)
    comparison = pullback_mediate(pb, left, top)
    seen: dict[int, int] = {}
    for x, k in enumerate(comparison.table):
        if k in seen:
            return False, {"reason": "not injective", "elements": [seen[k], x],
                           "pair": list(pb.pairs[k])}
        seen[k] = x
    for k, pair in enumerate(pb.pairs):
        if k not in seen:
            return False, {"reason": "not surjective", "pair": list(pair)}
    return True, None


def sections(u: FinMap, positions: Sequence[int]) -> Iterable[tuple]:
    """All choices ``s`` with ``u(s[i]) = positions[i]``, lexicographic."""
    return itertools.product(*(u.fiber(a) for a in positions))


@dataclass(frozen=True)
class DistPullback:
    """Distributivity pullback around ``u: X -> A`` and ``f: A -> B``.

    ``Y`` lists pairs ``(b, s)`` with ``s`` a section of ``u`` over the fiber
    of ``f`` at ``b``; ``T`` is the chosen pullback of ``f`` and ``r``.
    """
    f: FinMap
    u: FinMap
    Y: FinSet
    elements: tuple
    r: FinMap
    T: FinSet
    p: FinMap
    q: FinMap
    t_pullback: Pullback

    def section(self, y: int) -> dict:
        b, s = self.elements[y]
        return dict(zip(self.f.fiber(b), s))

    def element_index(self, b: int, s: tuple) -> int:
        lookup = self.__dict__.get("_cache")
        if lookup is None:
            lookup = {e: k for k, e in enumerate(self.elements)}
            object.__setattr__(self, "_cache", lookup)
        return lookup[(b, tuple(s))]


def dist_pullback(f: FinMap, u: FinMap) -> DistPullback:
    if u.cod != f.dom:
        raise ValueError("distributivity pullback needs u: X -> A and f: A -> B")
    if f.is_identity:
        elements = tuple((u.table[x], (x,)) for x in range(u.dom.size))
        Y = u.dom
        r = u
    else:
        elements = tuple((b, s) for b in range(f.cod.size)
                         for s in sections(u, f.fiber(b)))
        Y = FinSet(len(elements))
        r = FinMap(Y, f.cod, tuple(b for b, _ in elements))
    pb = pullback(f, r)
    p_table = []
    for a, y in pb.pairs:
        b, s = elements[y]
        p_table.append(s[f.fiber(b).index(a)])
    p = FinMap(pb.apex, u.dom, tuple(p_table))
    return DistPullback(f, u, Y, elements, r, pb.apex, p, pb.proj2, pb)


def dpb_factor(dpb: DistPullback, T2: FinSet, Y2: FinSet, p2: FinMap, q2: FinMap, r2: FinMap) -> tuple[FinMap, FinMap]:
    """Factor a competing pullback around ``(u, f)`` through the chosen one.

    The competitor has ``p2: T2 -> X``, ``q2: T2 -> Y2``, ``r2: Y2 -> B`` and
    its outer rectangle must be a pullback.  Returns ``(s, t)`` with
    ``p . s = p2``, ``q . s = t . q2`` and ``r2 = r . t``.
    """
    f, u = dpb.f, dpb.u
    if p2.dom != T2 or q2.dom != T2 or q2.cod != Y2 or r2.dom != Y2:
        raise ValueError("competitor maps do not fit together")
    if p2.cod != u.dom or r2.cod != f.cod:
        raise ValueError("competitor does not live over (u, f)")
    up2 = compose_map(u, p2)
    ok, witness = is_pullback_square(q2, up2, f, r2)
    if not ok:
        raise ValueError(f"competitor outer rectangle is not a pullback: {witness}")
    over = {(up2.table[t], q2.table[t]): t for t in range(T2.size)}
    t_table = []
    for y2 in range(Y2.size):
        b = r2.table[y2]
        s = tuple(p2.table[over[(a, y2)]] for a in f.fiber(b))
        if f.is_identity:
            t_table.append(s[0])
        else:
            t_table.append(dpb.element_index(b, s))
    t = FinMap(Y2, dpb.Y, tuple(t_table))
    s = pullback_mediate(dpb.t_pullback, up2, compose_map(t, q2))
    return s, t


def all_maps(X: FinSet, Y: FinSet) -> Iterable[FinMap]:
    for table in itertools.product(range(Y.size), repeat=X.size):
        yield FinMap(X, Y, table)


# JSON helpers

def map_to_json(f: FinMap, dom: str, cod: str) -> dict:
    return {"dom": dom, "cod": cod, "table": list(f.table)}


def map_from_json(obj: dict, sets: dict[str, FinSet]) -> FinMap:
    for key in ("dom", "cod", "table"):
        if key not in obj:
            raise ValueError(f"map is missing '{key}'")
    if obj["dom"] not in sets or obj["cod"] not in sets:
        raise ValueError(f"unknown set in map {obj}")
    return FinMap(sets[obj["dom"]], sets[obj["cod"]], tuple(obj["table"]))


@dataclass(frozen=True)
class Square:
    """A commuting square ``right . top = bottom . left``.

    ``top: P -> C``, ``left: P -> A``, ``bottom: A -> B``, ``right: C -> B``.
    """
    top: FinMap
    left: FinMap
    bottom: FinMap
    right: FinMap

    def __post_init__(self):
        if compose_map(self.bottom, self.left) != compose_map(self.right, self.top):
            raise ValueError("square does not commute")

    @classmethod
    def chosen(cls, bottom: FinMap, right: FinMap) -> "Square":
        pb = pullback(bottom, right)
        return cls(pb.proj2, pb.proj1, bottom, right)

    @property
    def is_pullback(self) -> bool:
        return is_pullback_square(self.top, self.left, self.bottom, self.right)[0]

    def describe(self) -> dict:
        return {k: list(getattr(self, k).table) for k in ("top", "left", "bottom", "right")}
