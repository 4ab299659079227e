"""Command line: compose and evaluate documents, run verification suites.

Exit codes are 0 when everything passes, 1 when a verdict fails and 2 on
bad input or configuration.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import famcat as fc
from . import instances as inst
from . import poly as pl
from . import span as sp
from .document import Document, DocumentError, dumps, load_document
from .finset import compose_map, dist_pullback, dpb_factor, identity, is_pullback_square, pullback, pullback_mediate
from . import reconstruct as rc
from .report import Report
from .sampling import random_map, random_pullback_square, random_set, random_span

SUITES = ("finset", "span", "poly-cart", "poly-general", "mates", "beck", "distributivity",
          "generic-reduction", "icons")
EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Skip(Exception):
    """The suite does not apply to the chosen instance."""


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- compose / eval

def _resolve(doc: Document, name: str, kind: str):
    table = doc.spans if kind == "span" else doc.polynomials
    if name in table:
        return table[name]
    if kind == "poly" and name in doc.spans:
        return pl.span_to_poly(doc.spans[name])
    raise DocumentError(name, f"no {'span' if kind == 'span' else 'polynomial'} named {name!r}")


def compose_document(doc: Document, first: str, second: str, kind: str):
    """``second . first`` with its witness maps; returns ``(document, witness)``."""
    P, Q = _resolve(doc, first, kind), _resolve(doc, second, kind)
    out = Document()
    if kind == "span":
        if P.tgt != Q.src:
            raise DocumentError(second, f"source {Q.src.size} does not match target {P.tgt.size} of {first}")
        w = sp.compose_span_witness(Q, P)
        out.spans = {first: P, second: Q, "composite": w.span}
        out.maps = {"pb.proj1": w.pullback.proj1, "pb.proj2": w.pullback.proj2}
    else:
        if P.tgt != Q.src:
            raise DocumentError(second, f"source {Q.src.size} does not match target {P.tgt.size} of {first}")
        w = pl.compose_poly_witness(Q, P)
        out.polynomials = {first: P, second: Q, "composite": w.poly}
        out.maps = {"pb1.proj1": w.pb1.proj1, "pb1.proj2": w.pb1.proj2,
                    "dpb.p": w.dpb.p, "dpb.q": w.dpb.q, "dpb.r": w.dpb.r,
                    "pb2.proj1": w.pb2.proj1, "pb2.proj2": w.pb2.proj2}
    return out, w


def _node(name, size):
    return f'  "{name}" [label="{name} ({size})"];'


def _edge(a, b, label):
    return f'  "{a}" -> "{b}" [label="{label}"];'


def composition_dot(w, kind: str) -> str:
    """The composition diagram, with its pullback regions grouped into clusters."""
    lines = ["digraph composite {", "  rankdir=LR;"]
    if kind == "span":
        pb, S = w.pullback, w.span
        lines += [_node("X", S.src.size), _node("A1", pb.left.dom.size), _node("Y", pb.left.cod.size),
                  _node("A2", pb.right.dom.size), _node("Z", S.tgt.size)]
        lines += ["  subgraph cluster_pb {", '    label="pb";', "  " + _node("P", pb.apex.size), "  }"]
        lines += [_edge("A1", "X", "first.left"), _edge("A1", "Y", "first.right"),
                  _edge("A2", "Y", "second.left"), _edge("A2", "Z", "second.right"),
                  _edge("P", "A1", "proj1"), _edge("P", "A2", "proj2")]
    else:
        first, second = w.first, w.second
        sizes = {"I": first.src.size, "E": first.E.size, "B": first.B.size, "J": first.tgt.size,
                 "F": second.E.size, "C": second.B.size, "K": second.tgt.size,
                 "D": w.pb1.apex.size, "T": w.dpb.T.size, "Y": w.dpb.Y.size, "S": w.pb2.apex.size}
        regions = {"pb1": ("D",), "dpb": ("T", "Y"), "pb2": ("S",)}
        for name in ("I", "E", "B", "J", "F", "C", "K"):
            lines.append(_node(name, sizes[name]))
        for region, members in regions.items():
            lines += [f"  subgraph cluster_{region} {{", f'    label="{region}";']
            lines += ["  " + _node(m, sizes[m]) for m in members]
            lines.append("  }")
        lines += [_edge("E", "I", "s"), _edge("E", "B", "p"), _edge("B", "J", "t"),
                  _edge("F", "J", "u"), _edge("F", "C", "q"), _edge("C", "K", "v"),
                  _edge("D", "B", "pb1.proj1"), _edge("D", "F", "pb1.proj2"),
                  _edge("T", "D", "dpb.p"), _edge("T", "Y", "dpb.q"), _edge("Y", "C", "dpb.r"),
                  _edge("S", "E", "pb2.proj1"), _edge("S", "T", "pb2.proj2")]
    lines.append("}")
    return "\n".join(lines) + "\n"


def eval_document(doc: Document, name: str, family: str) -> Document:
    if family not in doc.families:
        raise DocumentError(family, f"no family named {family!r}")
    A = doc.families[family]
    if name in doc.polynomials:
        F = fc.poly_functor(doc.polynomials[name])
    elif name in doc.spans:
        F = fc.span_functor(doc.spans[name])
    else:
        raise DocumentError(name, f"no span or polynomial named {name!r}")
    if A.index != F.src:
        raise DocumentError(family, f"family over {A.index.size} elements given to {name} from {F.src.size}")
    return Document(families={"result": F(A)})


# ---------------------------------------------------------------- verification suites

class Config:
    def __init__(self, instance: str, seed: int, max_size: int, samples: int):
        if max_size < 1 or samples < 1:
            raise UsageError("--max-size and --samples must be at least 1")
        if instance not in inst.INSTANCES:
            raise UsageError(f"unknown instance {instance!r}; choose from {sorted(inst.INSTANCES)}")
        self.instance, self.seed, self.max_size, self.samples = instance, seed, max_size, samples
        self._data = None

    @property
    def data(self):
        if self._data is None:
            self._data = inst.INSTANCES[self.instance](seed=self.seed)
        return self._data

    @property
    def law_size(self) -> int:
        """Set sizes for checks that evaluate composite functors."""
        return min(self.max_size, 2)

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{tag}:{self.seed}")


def suite_finset(cfg: Config):
    rep = Report()
    rng = cfg.rng("finset")
    for k in range(cfg.samples):
        B, A = random_set(rng, cfg.max_size, 1), random_set(rng, cfg.max_size, 1)
        X = random_set(rng, cfg.max_size)
        f, u = random_map(rng, A, B), random_map(rng, X, A)
        d = dist_pullback(f, u)
        expected = sum(_prod(len(u.fiber(a)) for a in f.fiber(b)) for b in range(B.size))
        rep.add("dpb_size", [k, list(f.table), list(u.table)], d.Y.size == expected,
                None if d.Y.size == expected else {"size": d.Y.size, "expected": expected})
        ok, wit = is_pullback_square(d.q, compose_map(u, d.p), f, d.r)
        rep.add("dpb_is_pullback", [k, list(f.table), list(u.table)], ok, wit)
        try:
            s, t = dpb_factor(d, d.T, d.Y, d.p, d.q, d.r)
            ok = s == identity(d.T) and t == identity(d.Y)
            wit = None if ok else {"s": list(s.table), "t": list(t.table)}
        except ValueError as exc:
            ok, wit = False, {"error": str(exc)}
        rep.add("dpb_self_factor", [k, list(f.table), list(u.table)], ok, wit)
        top, left, bottom, right = random_pullback_square(rng, cfg.max_size, chosen=False)
        ok, wit = is_pullback_square(top, left, bottom, right)
        rep.add("pullback_square", [k, list(bottom.table), list(right.table)], ok, wit)
        pb = pullback(bottom, right)
        m = pullback_mediate(pb, left, top)
        ok = sorted(m.table) == list(range(pb.apex.size))
        rep.add("pullback_comparison_bijective", [k, list(m.table)], ok, None if ok else {"table": list(m.table)})
    yield "structure", rep


def _prod(values):
    out = 1
    for v in values:
        out *= v
    return out


def _matmul(M, N):
    return [[sum(M[i][k] * N[k][j] for k in range(len(N))) for j in range(len(N[0]) if N else 0)]
            for i in range(len(M))]


def suite_span(cfg: Config):
    rep = Report()
    rng = cfg.rng("span")
    for k in range(cfg.samples):
        X, Y, Z = (random_set(rng, cfg.max_size, 1) for _ in range(3))
        P, Q = random_span(rng, X, Y, cfg.max_size), random_span(rng, Y, Z, cfg.max_size)
        got, want = sp.to_matrix(sp.compose_span(Q, P)), _matmul(sp.to_matrix(Q), sp.to_matrix(P))
        rep.add("matrix_product", [k, repr(P), repr(Q)], got == want, None if got == want else {"got": got, "want": want})
        sizes = [rng.randint(0, 2) for _ in range(X.size)]
        fam = fc.Family.from_sizes(X, sizes)
        got = list(fc.span_functor(P)(fam).sizes)
        want = [sum(row[i] * sizes[i] for i in range(X.size)) for row in sp.to_matrix(P)]
        rep.add("eval_cardinality", [k, repr(P), sizes], got == want, None if got == want else {"got": got, "want": want})
    yield "matrix", rep
    data = cfg.data
    yield "span_laws", rc.check_oplax_laws(rc.build_span_oplax(data), cfg.seed, cfg.samples, cfg.samples, cfg.law_size)
    yield "span_gregarious", rc.check_gregarious(rc.build_span_oplax(data), "both", cfg.seed, cfg.samples,
                                                 cfg.law_size)
    if isinstance(data, inst.BeckTriple) or data.name.startswith("family"):
        L = rc.build_spaniso_oplax(data)
        yield "span_iso_laws", rc.check_oplax_laws(L, cfg.seed, cfg.samples, cfg.samples, cfg.law_size)


def suite_poly_cart(cfg: Config):
    L = rc.build_polyc_oplax(cfg.data)
    yield "laws", rc.check_oplax_laws(L, cfg.seed, cfg.samples, cfg.samples, cfg.law_size)
    yield "gregarious", rc.check_gregarious(L, "both", cfg.seed, cfg.samples, cfg.law_size)


def suite_poly_general(cfg: Config):
    if not isinstance(cfg.data, inst.Pseudofunctor):
        raise Skip("general cells need dependent products; this instance has a tensor part only")
    L = rc.build_poly_oplax(cfg.data)
    yield "laws", rc.check_oplax_laws(L, cfg.seed, cfg.samples, cfg.samples, cfg.law_size)
    yield "gregarious", rc.check_gregarious(L, "both", cfg.seed, cfg.samples, cfg.law_size)
    yield "pseudo", rc.check_pseudo(L, cfg.seed, cfg.samples, cfg.law_size)
    yield "pseudofunctor_coherence", inst.pseudofunctor_coherence(cfg.data, cfg.seed, cfg.samples, cfg.law_size)


def suite_mates(cfg: Config):
    yield "mates", inst.mate_checks(cfg.data, cfg.seed, cfg.samples, cfg.max_size)
    rep = Report()
    rng = cfg.rng("triangles")
    for k in range(cfg.samples):
        f = random_map(rng, random_set(rng, cfg.max_size, 1), random_set(rng, cfg.max_size, 1))
        adjs = [cfg.data.sigma_adj(f)]
        if isinstance(cfg.data, inst.Pseudofunctor):
            adjs.append(cfg.data.pi_adj(f))
        for adj in adjs:
            for v in fc.triangle_identities(adj, cfg.data.sampler):
                rep.add(v.law, [k, adj.name], v.ok, v.witness)
    yield "triangles", rep


def suite_beck(cfg: Config):
    for cond in ("sigma_delta", "delta_tensor", "beck_pair_coherence"):
        yield cond, inst.condition_check(cfg.data, cond, cfg.seed, cfg.samples, cfg.law_size)


def suite_distributivity(cfg: Config):
    yield "sigma_tensor", inst.condition_check(cfg.data, "sigma_tensor", cfg.seed, cfg.samples, cfg.law_size)


def suite_generic_reduction(cfg: Config):
    for name, build in (("span", rc.build_span_oplax), ("poly_c", rc.build_polyc_oplax)):
        L = build(cfg.data)
        yield f"{name}_round_trip", rc.check_round_trip(L, cfg.seed, cfg.samples, cfg.law_size)
        yield f"{name}_conditions", rc.check_comult_conditions(L, None, cfg.seed, cfg.samples, cfg.law_size)


def suite_icons(cfg: Config):
    if cfg.instance != "family":
        raise Skip("icons are exercised between the plain and flipped family functors only")
    L = rc.build_span_oplax(cfg.data)
    K = rc.build_span_oplax(inst.family_instance(flip=True, seed=cfg.seed))
    cases = [("flip", rc.icon_extend(rc.flip_base(L, K), L, K, "flip", cfg.seed)),
             ("unflip", rc.icon_extend(rc.unflip_base(K, L), K, L, "unflip", cfg.seed)),
             ("identity", rc.icon_extend(rc.identity_base(L), L, L, "identity", cfg.seed))]
    for name, icon in cases:
        yield name, rc.check_icon(icon, cfg.seed, cfg.samples, cfg.law_size)


SUITE_FUNCS = {
    "finset": suite_finset, "span": suite_span, "poly-cart": suite_poly_cart,
    "poly-general": suite_poly_general, "mates": suite_mates, "beck": suite_beck,
    "distributivity": suite_distributivity, "generic-reduction": suite_generic_reduction,
    "icons": suite_icons,
}


def run_verify(suite: str, cfg: Config, out) -> int:
    """Write one JSON line per verdict and a closing summary; return the exit code."""
    if suite != "all" and suite not in SUITE_FUNCS:
        raise UsageError(f"unknown suite {suite!r}; choose from {list(SUITES) + ['all']}")
    names = SUITES if suite == "all" else (suite,)
    total = failed = 0

    def emit(obj):
        out.write(json.dumps(obj, sort_keys=True, default=str) + "\n")

    for name in names:
        try:
            for check, rep in SUITE_FUNCS[name](cfg):
                for v in rep.verdicts:
                    emit({"suite": name, "check": check, **v.to_json()})
                total += len(rep)
                failed += len(rep.failures())
        except Skip as why:
            emit({"suite": name, "instance": cfg.instance, "verdict": "skip", "reason": str(why)})
    emit({"summary": {"instance": cfg.instance, "seed": cfg.seed, "max_size": cfg.max_size,
                      "samples": cfg.samples, "verdicts": total, "failed": failed}})
    return EXIT_FAIL if failed else EXIT_PASS


# ---------------------------------------------------------------- entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polyspan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compose", help="compose two named 1-cells of a document")
    c.add_argument("first", help="applied first")
    c.add_argument("second", help="applied second")
    c.add_argument("--kind", choices=("span", "poly"), default="poly")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--out", dest="outfile")
    c.add_argument("--emit-dot", dest="dot")

    e = sub.add_parser("eval", help="evaluate a span or polynomial on a family")
    e.add_argument("name")
    e.add_argument("family")
    e.add_argument("--in", dest="infile", required=True)
    e.add_argument("--out", dest="outfile")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="all")
    v.add_argument("--instance", default="family")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-size", type=int, default=2)
    v.add_argument("--samples", type=int, default=10)
    v.add_argument("--out", dest="outfile")
    return parser


def _write(text: str, path: str | None, stdout) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "compose":
            doc, witness = compose_document(load_document(args.infile), args.first, args.second, args.kind)
            _write(dumps(doc), args.outfile, stdout)
            if args.dot:
                _write(composition_dot(witness, args.kind), args.dot, stdout)
            return EXIT_PASS
        if args.command == "eval":
            _write(dumps(eval_document(load_document(args.infile), args.name, args.family)), args.outfile, stdout)
            return EXIT_PASS
        cfg = Config(args.instance, args.seed, args.max_size, args.samples)
        if args.outfile:
            with open(args.outfile, "w", encoding="utf-8") as fh:
                return run_verify(args.suite, cfg, fh)
        return run_verify(args.suite, cfg, stdout)
    except (UsageError, DocumentError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        if args.command == "verify":
            raise
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


__all__ = ["main", "run_verify", "compose_document", "eval_document", "composition_dot", "Config", "SUITES"]
