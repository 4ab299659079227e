"""Families of finite sets over a finite index and the functors between them.

A family over ``I`` is an ordered tuple of elements for each ``i`` in ``I``.
Elements are arbitrary hashable values so that the result of a dependent sum
or product carries a readable encoding: ``(x, a)`` for a summand and a tuple
indexed by the ascending fiber for a section.

Functors are chains of atoms read right to left.  Atoms along an identity
map are never stored, so identities act strictly.
"""
from __future__ import annotations

import contextlib
import functools
import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .finset import FinMap, FinSet, compose_map
from .report import Verdict


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class Family:
    index: FinSet
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))
        if len(self.entries) != self.index.size:
            raise ValueError(f"{len(self.entries)} entries for an index of size {self.index.size}")

    @classmethod
    def from_sizes(cls, index: FinSet, sizes) -> "Family":
        return cls(index, tuple(tuple(range(n)) for n in sizes))

    @property
    def sizes(self) -> tuple:
        return tuple(len(e) for e in self.entries)

    def position(self, i: int, elem) -> int:
        lookup = self.__dict__.get("_positions")
        if lookup is None:
            lookup = tuple({e: k for k, e in enumerate(entry)} for entry in self.entries)
            object.__setattr__(self, "_positions", lookup)
        try:
            return lookup[i][elem]
        except KeyError:
            raise ValueError(f"{elem!r} is not in entry {i}") from None

    def __repr__(self):
        return f"Family({list(self.sizes)})"


@dataclass(frozen=True)
class FamilyMap:
    """A map of families over one index; ``images[i][k]`` is the image of the k-th element."""
    src: Family
    tgt: Family
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(tuple(c) for c in self.images))
        if self.src.index != self.tgt.index:
            raise ValueError("family map between different indices")
        for i, (comp, entry) in enumerate(zip(self.images, self.src.entries)):
            if len(comp) != len(entry):
                raise ValueError(f"component {i} has the wrong length")

    @classmethod
    def from_rule(cls, src: Family, tgt: Family, rule: Callable) -> "FamilyMap":
        return cls(src, tgt, tuple(tuple(rule(i, e) for e in src.entries[i])
                                   for i in range(src.index.size)))

    def __call__(self, i: int, elem):
        return self.images[i][self.src.position(i, elem)]

    def validate(self) -> "FamilyMap":
        for i, comp in enumerate(self.images):
            for v in comp:
                self.tgt.position(i, v)
        return self

    @property
    def is_bijective(self) -> bool:
        return all(len(set(c)) == len(c) == len(t)
                   for c, t in zip(self.images, self.tgt.entries))

    def inverse(self) -> "FamilyMap":
        if not self.is_bijective:
            raise ValueError("family map is not invertible")
        inv = []
        for i, comp in enumerate(self.images):
            back = {v: e for v, e in zip(comp, self.src.entries[i])}
            inv.append(tuple(back[e] for e in self.tgt.entries[i]))
        return FamilyMap(self.tgt, self.src, tuple(inv))

    def then(self, other: "FamilyMap") -> "FamilyMap":
        if self.tgt != other.src:
            raise ValueError("family maps do not compose")
        return FamilyMap(self.src, other.tgt,
                         tuple(tuple(other(i, v) for v in comp) for i, comp in enumerate(self.images)))


def identity_family_map(A: Family) -> FamilyMap:
    return FamilyMap(A, A, A.entries)


def family_map_difference(m1: FamilyMap, m2: FamilyMap):
    """First disagreement between two family maps, or ``None``."""
    if m1.src != m2.src or m1.tgt != m2.tgt:
        return {"reason": "different families", "src": [list(m1.src.sizes), list(m2.src.sizes)],
                "tgt": [list(m1.tgt.sizes), list(m2.tgt.sizes)]}
    for i, (c1, c2) in enumerate(zip(m1.images, m2.images)):
        for e, v1, v2 in zip(m1.src.entries[i], c1, c2):
            if v1 != v2:
                return {"index": i, "element": repr(e), "values": [repr(v1), repr(v2)]}
    return None


# ---------------------------------------------------------------- atoms

def _product(entries, positions):
    return itertools.product(*(entries[x] for x in positions))


@dataclass(frozen=True)
class Delta:
    """Reindexing along ``f``."""
    f: FinMap
    symbol = "Delta"

    @property
    def src(self):
        return self.f.cod

    @property
    def tgt(self):
        return self.f.dom

    def apply(self, A: Family) -> Family:
        return Family(self.f.dom, tuple(A.entries[self.f(x)] for x in range(self.f.dom.size)))

    def apply_map(self, m: FamilyMap) -> FamilyMap:
        return FamilyMap(_apply_atom(self, m.src), _apply_atom(self, m.tgt),
                         tuple(m.images[self.f(x)] for x in range(self.f.dom.size)))


@dataclass(frozen=True)
class Sigma:
    """Fiberwise disjoint union along ``f``; summands are tagged ``(x, a)``."""
    f: FinMap
    flip: bool = False
    symbol = "Sigma"

    @property
    def src(self):
        return self.f.dom

    @property
    def tgt(self):
        return self.f.cod

    def pack(self, y: int, x: int, a):
        if self.f.is_identity:
            return a
        return (a, x) if self.flip else (x, a)

    def unpack(self, y: int, elem) -> tuple:
        if self.f.is_identity:
            return y, elem
        if self.flip:
            return elem[1], elem[0]
        return elem

    def apply(self, A: Family) -> Family:
        return Family(self.f.cod, tuple(
            tuple(self.pack(y, x, a) for x in self.f.fiber(y) for a in A.entries[x])
            for y in range(self.f.cod.size)))

    def apply_map(self, m: FamilyMap) -> FamilyMap:
        src, tgt = _apply_atom(self, m.src), _apply_atom(self, m.tgt)

        def rule(y, elem):
            x, a = self.unpack(y, elem)
            return self.pack(y, x, m(x, a))
        return FamilyMap.from_rule(src, tgt, rule)


@dataclass(frozen=True)
class Pi:
    """Fiberwise product along ``f``; sections are tuples over the ascending fiber."""
    f: FinMap
    symbol = "Pi"

    @property
    def src(self):
        return self.f.dom

    @property
    def tgt(self):
        return self.f.cod

    def pack(self, y: int, values: dict):
        if self.f.is_identity:
            return values[y]
        return tuple(values[x] for x in self.f.fiber(y))

    def unpack(self, y: int, elem) -> dict:
        if self.f.is_identity:
            return {y: elem}
        return dict(zip(self.f.fiber(y), elem))

    def apply(self, A: Family) -> Family:
        return Family(self.f.cod, tuple(tuple(_product(A.entries, self.f.fiber(y)))
                                        for y in range(self.f.cod.size)))

    def apply_map(self, m: FamilyMap) -> FamilyMap:
        src, tgt = _apply_atom(self, m.src), _apply_atom(self, m.tgt)

        def rule(y, elem):
            return tuple(m(x, a) for x, a in zip(self.f.fiber(y), elem))
        return FamilyMap.from_rule(src, tgt, rule)


@dataclass(frozen=True)
class Tensor:
    """Fiberwise tensor in finite sets: ``product`` or ``coproduct``."""
    f: FinMap
    op: str = "product"
    symbol = "Tensor"

    def __post_init__(self):
        if self.op not in ("product", "coproduct"):
            raise ValueError(f"unknown tensor {self.op}")

    @property
    def src(self):
        return self.f.dom

    @property
    def tgt(self):
        return self.f.cod

    def _inner(self):
        return Pi(self.f) if self.op == "product" else Sigma(self.f)

    def pack(self, y, *args):
        return self._inner().pack(y, *args)

    def unpack(self, y, elem):
        return self._inner().unpack(y, elem)

    def apply(self, A: Family) -> Family:
        return self._inner().apply(A)

    def apply_map(self, m: FamilyMap) -> FamilyMap:
        return self._inner().apply_map(m)


UNIT = ()


def _truth(flag: bool) -> tuple:
    return (UNIT,) if flag else ()


@dataclass(frozen=True)
class Exists:
    """Image along ``f`` of a family of subsingletons."""
    f: FinMap
    symbol = "Exists"

    @property
    def src(self):
        return self.f.dom

    @property
    def tgt(self):
        return self.f.cod

    def apply(self, A: Family) -> Family:
        return Family(self.f.cod, tuple(_truth(any(A.entries[x] for x in self.f.fiber(y)))
                                        for y in range(self.f.cod.size)))

    def apply_map(self, m: FamilyMap) -> FamilyMap:
        return unique_map(_apply_atom(self, m.src), _apply_atom(self, m.tgt))


@dataclass(frozen=True)
class Forall:
    """Universal image along ``f`` of a family of subsingletons."""
    f: FinMap
    symbol = "Forall"

    @property
    def src(self):
        return self.f.dom

    @property
    def tgt(self):
        return self.f.cod

    def apply(self, A: Family) -> Family:
        return Family(self.f.cod, tuple(_truth(all(A.entries[x] for x in self.f.fiber(y)))
                                        for y in range(self.f.cod.size)))

    def apply_map(self, m: FamilyMap) -> FamilyMap:
        return unique_map(_apply_atom(self, m.src), _apply_atom(self, m.tgt))


def unique_map(src: Family, tgt: Family) -> FamilyMap:
    """The only map between families of subsingletons, when it exists."""
    images = []
    for i, (s, t) in enumerate(zip(src.entries, tgt.entries)):
        if len(t) > 1:
            raise ValueError(f"entry {i} of the target is not a subsingleton")
        if s and not t:
            raise ValueError(f"no map: entry {i} is inhabited in the source only")
        images.append(tuple(t[0] for _ in s))
    return FamilyMap(src, tgt, tuple(images))


class BudgetExceeded(Exception):
    """An evaluation would build a family larger than the active size budget."""


_BUDGET: list = [None]


@contextlib.contextmanager
def size_budget(limit: int | None):
    """Refuse, inside the block, to build any family with more than ``limit`` elements."""
    previous = _BUDGET[0]
    _BUDGET[0] = limit
    try:
        yield
    finally:
        _BUDGET[0] = previous


def predicted_size(atom, A: Family) -> int:
    """Total number of elements of ``atom(A)``, computed from the entry sizes alone."""
    sizes = A.sizes
    f = atom.f
    if isinstance(atom, Delta):
        return sum(sizes[f(x)] for x in range(f.dom.size))
    if isinstance(atom, (Exists, Forall)):
        return f.cod.size
    if isinstance(atom, Pi) or (isinstance(atom, Tensor) and atom.op == "product"):
        total = 0
        for y in range(f.cod.size):
            prod = 1
            for x in f.fiber(y):
                prod *= sizes[x]
            total += prod
        return total
    return sum(sizes)


@functools.lru_cache(maxsize=20_000)
def _cached_apply(atom, A: Family) -> Family:
    return atom.apply(A)


def _apply_atom(atom, A: Family) -> Family:
    limit = _BUDGET[0]
    if limit is not None and predicted_size(atom, A) > limit:
        raise BudgetExceeded(f"{atom.symbol}{list(atom.f.table)} on {list(A.sizes)}")
    return _cached_apply(atom, A)


# ---------------------------------------------------------------- functors

@dataclass(frozen=True)
class FamFunctor:
    """A composite of atoms, applied from the last atom to the first."""
    src: FinSet
    tgt: FinSet
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        cur = self.src
        for atom in reversed(self.atoms):
            if atom.src != cur:
                raise ValueError(f"atom {atom.symbol} does not compose here")
            cur = atom.tgt
        if cur != self.tgt:
            raise ValueError("functor chain ends at the wrong index")

    def __call__(self, A: Family) -> Family:
        if A.index != self.src:
            raise ValueError(f"family over {A.index} given to functor from {self.src}")
        for atom in reversed(self.atoms):
            A = _apply_atom(atom, A)
        return A

    def on_map(self, m: FamilyMap) -> FamilyMap:
        for atom in reversed(self.atoms):
            m = atom.apply_map(m)
        return m

    def __matmul__(self, other: "FamFunctor") -> "FamFunctor":
        """``F @ G`` applies ``G`` first."""
        if other.tgt != self.src:
            raise ValueError("functors do not compose")
        return FamFunctor(other.src, self.tgt, self.atoms + other.atoms)

    @property
    def is_identity(self) -> bool:
        return not self.atoms

    def describe(self) -> str:
        if not self.atoms:
            return "1"
        return " ".join(f"{a.symbol}{list(a.f.table)}" for a in self.atoms)

    def __repr__(self):
        return f"FamFunctor({self.describe()})"


def identity_functor(X: FinSet) -> FamFunctor:
    return FamFunctor(X, X, ())


def atom_functor(atom) -> FamFunctor:
    if atom.f.is_identity:
        return identity_functor(atom.f.dom)
    return FamFunctor(atom.src, atom.tgt, (atom,))


def delta(f: FinMap) -> FamFunctor:
    return atom_functor(Delta(f))


def sigma(f: FinMap, flip: bool = False) -> FamFunctor:
    return atom_functor(Sigma(f, flip))


def pi(f: FinMap) -> FamFunctor:
    return atom_functor(Pi(f))


def tensor(f: FinMap, op: str) -> FamFunctor:
    return atom_functor(Tensor(f, op))


def exists(f: FinMap) -> FamFunctor:
    return atom_functor(Exists(f))


def forall(f: FinMap) -> FamFunctor:
    return atom_functor(Forall(f))


def chain(*functors: FamFunctor) -> FamFunctor:
    """Right-to-left composite of functors."""
    out = functors[-1]
    for F in reversed(functors[:-1]):
        out = F @ out
    return out


def span_functor(span) -> FamFunctor:
    return sigma(span.right) @ delta(span.left)


def poly_functor(P) -> FamFunctor:
    return chain(sigma(P.t), pi(P.p), delta(P.s))


# ---------------------------------------------------------------- transformations

class FamNatTrans:
    """A transformation between parallel functors, given by a component rule."""

    def __init__(self, src: FamFunctor, tgt: FamFunctor, rule: Callable[[Family], FamilyMap], name: str = "cell"):
        if src.src != tgt.src or src.tgt != tgt.tgt:
            raise ValueError(f"{name}: functors are not parallel")
        self.src, self.tgt, self.rule, self.name = src, tgt, rule, name
        self._cache: dict = {}

    def at(self, A: Family) -> FamilyMap:
        hit = self._cache.get(A)
        if hit is None:
            hit = self.rule(A)
            if hit.src != self.src(A) or hit.tgt != self.tgt(A):
                raise ValueError(f"{self.name}: component has the wrong boundary")
            if len(self._cache) < 4096:
                self._cache[A] = hit
        return hit

    @property
    def index(self) -> FinSet:
        return self.src.src

    def __repr__(self):
        return f"FamNatTrans({self.name}: {self.src.describe()} => {self.tgt.describe()})"


def element_cell(src: FamFunctor, tgt: FamFunctor, element_rule: Callable, name: str = "cell") -> FamNatTrans:
    """A transformation given elementwise: ``element_rule(A, j, elem)``."""
    def rule(A):
        return FamilyMap.from_rule(src(A), tgt(A), lambda j, e: element_rule(A, j, e))
    return FamNatTrans(src, tgt, rule, name)


def identity_cell(F: FamFunctor) -> FamNatTrans:
    return FamNatTrans(F, F, lambda A: identity_family_map(F(A)), "id")


def inclusion_cell(src: FamFunctor, tgt: FamFunctor, name: str = "incl") -> FamNatTrans:
    """The unique transformation between functors valued in subsingletons."""
    return FamNatTrans(src, tgt, lambda A: unique_map(src(A), tgt(A)), name)


def vcomp(*cells: FamNatTrans) -> FamNatTrans:
    """Vertical composite, right to left: ``vcomp(b, a)`` is ``a`` then ``b``."""
    cells = [c for c in cells]
    for later, earlier in zip(cells, cells[1:]):
        if earlier.tgt != later.src:
            raise ValueError(f"cannot compose {earlier!r} then {later!r}")
    if len(cells) == 1:
        return cells[0]

    def rule(A):
        m = cells[-1].at(A)
        for c in reversed(cells[:-1]):
            m = m.then(c.at(A))
        return m
    return FamNatTrans(cells[-1].src, cells[0].tgt, rule, "(" + " . ".join(c.name for c in cells) + ")")


def whisker(F: FamFunctor | None, cell: FamNatTrans, G: FamFunctor | None = None) -> FamNatTrans:
    """``F cell G``: apply ``G`` first, then the cell, then ``F``."""
    F = F if F is not None else identity_functor(cell.tgt.tgt)
    G = G if G is not None else identity_functor(cell.src.src)
    if F.is_identity and G.is_identity:
        return cell

    def rule(A):
        return F.on_map(cell.at(G(A)))
    return FamNatTrans(F @ cell.src @ G, F @ cell.tgt @ G, rule, f"[{cell.name}]")


def hcomp(beta: FamNatTrans, alpha: FamNatTrans) -> FamNatTrans:
    """Horizontal composite ``beta * alpha`` for ``alpha: G => G'`` and ``beta: F => F'``."""
    return vcomp(whisker(None, beta, alpha.tgt), whisker(beta.src, alpha))


def inverse_cell(cell: FamNatTrans) -> FamNatTrans:
    return FamNatTrans(cell.tgt, cell.src, lambda A: cell.at(A).inverse(), f"{cell.name}^-1")


def retarget(cell: FamNatTrans, src: FamFunctor, tgt: FamFunctor) -> FamNatTrans:
    """Reuse a rule with boundary functors that evaluate identically."""
    return FamNatTrans(src, tgt, cell.rule, cell.name)


# ---------------------------------------------------------------- sampling

def random_family(index: FinSet, rng: random.Random, max_entry: int = 3, subsingleton: bool = False) -> Family:
    top = 1 if subsingleton else max_entry
    sizes = [rng.randint(0, top) for _ in range(index.size)]
    if subsingleton:
        return Family(index, tuple(_truth(bool(n)) for n in sizes))
    return Family.from_sizes(index, sizes)


def random_family_map(A: Family, rng: random.Random, max_entry: int = 3) -> FamilyMap:
    """A random map out of ``A`` into a fresh family over the same index."""
    subs = all(len(e) <= 1 and all(v == UNIT for v in e) for e in A.entries)
    if subs:
        tgt = Family(A.index, tuple(e if e else _truth(rng.random() < 0.5) for e in A.entries))
        return unique_map(A, tgt)
    sizes = [max(rng.randint(0, max_entry), 1 if e else 0) for e in A.entries]
    tgt = Family.from_sizes(A.index, sizes)
    return FamilyMap(A, tgt, tuple(tuple(rng.randrange(n) for _ in e) for e, n in zip(A.entries, sizes)))


def all_subsingleton_families(index: FinSet):
    for bits in itertools.product((False, True), repeat=index.size):
        yield Family(index, tuple(_truth(b) for b in bits))


@dataclass
class Sampler:
    """Deterministic supply of test families for one target."""
    seed: int = 0
    max_entry: int = 2
    count: int = 6
    subsingleton: bool = False
    _memo: dict = field(default_factory=dict, repr=False)

    def families(self, index: FinSet) -> list:
        key = ("fam", index.size)
        if key not in self._memo:
            if self.subsingleton and 2 ** index.size <= self.count:
                self._memo[key] = list(all_subsingleton_families(index))
            else:
                rng = random.Random(f"{self.seed}:{index.size}")
                fams = [Family.from_sizes(index, [min(1, self.max_entry)] * index.size)] if not self.subsingleton \
                    else [Family(index, tuple(_truth(True) for _ in range(index.size)))]
                while len(fams) < self.count:
                    fams.append(random_family(index, rng, self.max_entry, self.subsingleton))
                self._memo[key] = fams
        return self._memo[key]

    def family_maps(self, index: FinSet) -> list:
        key = ("map", index.size)
        if key not in self._memo:
            rng = random.Random(f"{self.seed}:maps:{index.size}")
            self._memo[key] = [random_family_map(A, rng, self.max_entry) for A in self.families(index)]
        return self._memo[key]


def nat_equal(alpha: FamNatTrans, beta: FamNatTrans, sampler: Sampler, law: str = "equal") -> Verdict:
    """Compare two parallel transformations on the sampler's families."""
    if alpha.src.src != beta.src.src or alpha.tgt.tgt != beta.tgt.tgt:
        return Verdict(law, [alpha.name, beta.name], False, {"reason": "not parallel"})
    for A in sampler.families(alpha.index):
        try:
            m1, m2 = alpha.at(A), beta.at(A)
        except ValueError as exc:
            return Verdict(law, [alpha.name, beta.name], False,
                           {"family": list(A.sizes), "error": str(exc)})
        diff = family_map_difference(m1, m2)
        if diff is not None:
            return Verdict(law, [alpha.name, beta.name], False, {"family": list(A.sizes), **diff})
    return Verdict(law, [alpha.name, beta.name], True)


def is_identity_cell(cell: FamNatTrans, sampler: Sampler, law: str = "identity") -> Verdict:
    if cell.src != cell.tgt:
        for A in sampler.families(cell.index):
            if cell.src(A) != cell.tgt(A):
                return Verdict(law, [cell.name], False, {"reason": "boundaries differ", "family": list(A.sizes)})
    return nat_equal(cell, FamNatTrans(cell.src, cell.tgt, lambda A: identity_family_map(cell.src(A)), "id"),
                     sampler, law)


def is_invertible(cell: FamNatTrans, sampler: Sampler, law: str = "invertible") -> Verdict:
    for A in sampler.families(cell.index):
        try:
            m = cell.at(A)
        except ValueError as exc:
            return Verdict(law, [cell.name], False, {"family": list(A.sizes), "error": str(exc)})
        if not m.is_bijective:
            return Verdict(law, [cell.name], False,
                           {"family": list(A.sizes), "src": list(m.src.sizes), "tgt": list(m.tgt.sizes),
                            "images": [[repr(v) for v in c] for c in m.images]})
    return Verdict(law, [cell.name], True)


def is_natural(cell: FamNatTrans, sampler: Sampler, law: str = "naturality") -> Verdict:
    for m in sampler.family_maps(cell.index):
        left = cell.src.on_map(m).then(cell.at(m.tgt))
        right = cell.at(m.src).then(cell.tgt.on_map(m))
        diff = family_map_difference(left, right)
        if diff is not None:
            return Verdict(law, [cell.name], False, {"map_src": list(m.src.sizes), **diff})
    return Verdict(law, [cell.name], True)


# ---------------------------------------------------------------- adjunctions and mates

@dataclass
class Adjunction:
    left: FamFunctor
    right: FamFunctor
    unit: FamNatTrans
    counit: FamNatTrans
    name: str = "adj"


def sigma_delta_adjunction(f: FinMap, flip: bool = False) -> Adjunction:
    S, D = sigma(f, flip), delta(f)
    atom = Sigma(f, flip)
    unit = element_cell(identity_functor(f.dom), D @ S,
                        lambda A, x, a: atom.pack(f(x), x, a), f"eta_sigma{list(f.table)}")
    counit = element_cell(S @ D, identity_functor(f.cod),
                          lambda B, y, e: atom.unpack(y, e)[1], f"eps_sigma{list(f.table)}")
    return Adjunction(S, D, unit, counit, f"sigma-delta{list(f.table)}")


def delta_pi_adjunction(f: FinMap) -> Adjunction:
    D, P = delta(f), pi(f)
    atom = Pi(f)
    unit = element_cell(identity_functor(f.cod), P @ D,
                        lambda B, y, b: atom.pack(y, {x: b for x in f.fiber(y)}), f"eta_pi{list(f.table)}")
    counit = element_cell(D @ P, identity_functor(f.dom),
                          lambda A, x, e: atom.unpack(f(x), e)[x], f"eps_pi{list(f.table)}")
    return Adjunction(D, P, unit, counit, f"delta-pi{list(f.table)}")


def exists_delta_adjunction(f: FinMap) -> Adjunction:
    E, D = exists(f), delta(f)
    return Adjunction(E, D, inclusion_cell(identity_functor(f.dom), D @ E, "eta_exists"),
                      inclusion_cell(E @ D, identity_functor(f.cod), "eps_exists"), f"exists-delta{list(f.table)}")


def delta_forall_adjunction(f: FinMap) -> Adjunction:
    D, A = delta(f), forall(f)
    return Adjunction(D, A, inclusion_cell(identity_functor(f.cod), A @ D, "eta_forall"),
                      inclusion_cell(D @ A, identity_functor(f.dom), "eps_forall"), f"delta-forall{list(f.table)}")


def identity_adjunction(X: FinSet) -> Adjunction:
    I = identity_functor(X)
    return Adjunction(I, I, identity_cell(I), identity_cell(I), "id")


def compose_adjunctions(outer: Adjunction, inner: Adjunction) -> Adjunction:
    """``outer.left . inner.left`` is left adjoint to ``inner.right . outer.right``."""
    L = outer.left @ inner.left
    R = inner.right @ outer.right
    unit = vcomp(whisker(inner.right, outer.unit, inner.left), inner.unit)
    counit = vcomp(outer.counit, whisker(outer.left, inner.counit, outer.right))
    return Adjunction(L, R, unit, counit, f"({outer.name};{inner.name})")


def mate(alpha: FamNatTrans, adj1: Adjunction, adj2: Adjunction, g: FamFunctor, h: FamFunctor) -> FamNatTrans:
    """Turn ``alpha: f2 g => h f1`` into ``g u1 => u2 h``.

    ``adj1`` is ``f1 -| u1`` and ``adj2`` is ``f2 -| u2``.
    """
    f1, u1, f2, u2 = adj1.left, adj1.right, adj2.left, adj2.right
    _expect(alpha, f2 @ g, h @ f1, "mate")
    step1 = whisker(None, adj2.unit, g @ u1)
    step2 = whisker(u2, alpha, u1)
    step3 = whisker(u2 @ h, adj1.counit)
    return _named(vcomp(step3, step2, step1), f"mate({alpha.name})")


def unmate(beta: FamNatTrans, adj1: Adjunction, adj2: Adjunction, g: FamFunctor, h: FamFunctor) -> FamNatTrans:
    """Inverse of :func:`mate`: turn ``g u1 => u2 h`` into ``f2 g => h f1``."""
    f1, u1, f2, u2 = adj1.left, adj1.right, adj2.left, adj2.right
    _expect(beta, g @ u1, u2 @ h, "unmate")
    step1 = whisker(f2 @ g, adj1.unit)
    step2 = whisker(f2, beta, f1)
    step3 = whisker(None, adj2.counit, h @ f1)
    return _named(vcomp(step3, step2, step1), f"unmate({beta.name})")


def conjugate(theta: FamNatTrans, adj1: Adjunction, adj2: Adjunction) -> FamNatTrans:
    """Mate of ``theta: adj2.left => adj1.left`` with identity sides: ``adj1.right => adj2.right``."""
    X = adj1.left.src
    Y = adj1.left.tgt
    return mate(theta, adj1, adj2, identity_functor(X), identity_functor(Y))


def triangle_identities(adj: Adjunction, sampler: Sampler) -> list:
    L, R = adj.left, adj.right
    first = vcomp(whisker(None, adj.counit, L), whisker(L, adj.unit))
    second = vcomp(whisker(R, adj.counit), whisker(None, adj.unit, R))
    return [is_identity_cell(first, sampler, "triangle_left"),
            is_identity_cell(second, sampler, "triangle_right")]


def _expect(cell: FamNatTrans, src: FamFunctor, tgt: FamFunctor, where: str):
    if cell.src != src or cell.tgt != tgt:
        raise ValueError(f"{where}: expected {src.describe()} => {tgt.describe()}, "
                         f"got {cell.src.describe()} => {cell.tgt.describe()}")


def _named(cell: FamNatTrans, name: str) -> FamNatTrans:
    cell.name = name
    return cell


# ---------------------------------------------------------------- direct evaluation of 2-cells

def eval_span_cell(cell) -> FamNatTrans:
    """The transformation of a span 2-cell, computed elementwise."""
    src, tgt, h = cell.src, cell.tgt, cell.apex_map
    S_src, S_tgt = Sigma(src.right), Sigma(tgt.right)

    def rule(A, y, e):
        tau, a = S_src.unpack(y, e)
        return S_tgt.pack(y, h(tau), a)
    return element_cell(span_functor(src), span_functor(tgt), rule, "span-cell")


def eval_poly_cell(cell) -> FamNatTrans:
    """The transformation of a polynomial 2-cell (cartesian or general), elementwise."""
    from .poly import as_general
    gen = as_general(cell)
    P, Q = gen.src, gen.tgt
    St, Pp = Sigma(P.t), Pi(P.p)
    Sv, Pq = Sigma(Q.t), Pi(Q.p)
    pb = gen.pullback

    def rule(A, j, elem):
        b, inner = St.unpack(j, elem)
        values = Pp.unpack(b, inner)
        n = gen.g(b)
        out = {m: values[gen.e(pb.index(b, m))] for m in Q.p.fiber(n)}
        return Sv.pack(j, n, Pq.pack(n, out))
    return element_cell(poly_functor(P), poly_functor(Q), rule, f"{gen.kind}-cell")
