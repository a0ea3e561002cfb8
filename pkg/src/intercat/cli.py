"""Command-line front end: parse documents, run constructions, emit results.

One JSON document per file; the kind is inferred from its keys.  All
output is canonical - sorted keys, pre-sorted lists, UTF-8, trailing
newline - so golden files and repeated runs compare byte-for-byte.

Exit codes: 0 success, 1 a verdict came back negative, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path as FsPath

from . import colimits, fibrations, oracle
from .errors import IntercatError, ParseError, ValidationError
from .finset import FinFn, fin, identity_fn
from .graphcat import (
    Functor,
    Graph,
    GraphMorphism,
    InternalCat,
    NatTrans,
    Path,
    underlying_graph,
)

DEFAULT_BOUND_ENV = "INTERCAT_BOUND"


def default_bound() -> int:
    raw = os.environ.get(DEFAULT_BOUND_ENV)
    if raw is None:
        return colimits.DEFAULT_BOUND
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"{DEFAULT_BOUND_ENV} must be an integer, got {raw!r}") from exc


# ---------------------------------------------------------------------------
# Documents


@dataclass
class Document:
    kind: str
    data: dict
    value: object
    path: FsPath | None = None


def _require(data: dict, key: str, where: str):
    if key not in data:
        raise ParseError(f"{where}: missing key {key!r}")
    return data[key]


def _cat_from_dict(data: dict, where: str, allow_partial: bool = False) -> InternalCat:
    objects = fin(*_require(data, "objects", where))
    morphisms = _require(data, "morphisms", where)
    names = []
    src = {}
    tgt = {}
    for entry in morphisms:
        name = _require(entry, "name", where)
        names.append(name)
        src[name] = _require(entry, "src", where)
        tgt[name] = _require(entry, "tgt", where)
    c1 = fin(*names)
    identities = _require(data, "identities", where)
    comp = {}
    for triple in _require(data, "composition", where):
        if len(triple) != 3:
            raise ParseError(f"{where}: composition entries are [g, f, gf] triples")
        g, f, gf = triple
        comp[(g, f)] = gf
    partial = False
    if allow_partial:
        needed = {
            (g, f) for g in c1 for f in c1 if src[g] == tgt[f]
        }
        partial = set(comp) != needed
    try:
        return InternalCat(
            objects, c1,
            FinFn(c1, objects, src), FinFn(c1, objects, tgt),
            FinFn(objects, c1, dict(identities)), comp,
            partial=partial,
        )
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _cat_to_dict(c: InternalCat) -> dict:
    return {
        "objects": sorted(c.c0.elements),
        "morphisms": [
            {"name": m, "src": c.d0.mapping[m], "tgt": c.d1.mapping[m]}
            for m in sorted(c.c1.elements)
        ],
        "identities": {x: c.i.mapping[x] for x in sorted(c.c0.elements)},
        "composition": sorted([g, f, gf] for (g, f), gf in c.comp.items()),
    }


def _graph_from_dict(data: dict, where: str) -> Graph:
    vertices = fin(*_require(data, "vertices", where))
    names = []
    src = {}
    tgt = {}
    for entry in _require(data, "edges", where):
        name = _require(entry, "name", where)
        names.append(name)
        src[name] = _require(entry, "src", where)
        tgt[name] = _require(entry, "tgt", where)
    edges = fin(*names)
    try:
        return Graph(
            vertices, edges,
            FinFn(edges, vertices, src), FinFn(edges, vertices, tgt),
        )
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _graph_to_dict(g: Graph) -> dict:
    return {
        "vertices": sorted(g.vertices.elements),
        "edges": [
            {"name": e, "src": g.src.mapping[e], "tgt": g.tgt.mapping[e]}
            for e in sorted(g.edges.elements)
        ],
    }


def _fn_from_dict(data: dict, where: str) -> FinFn:
    try:
        return FinFn(
            fin(*_require(data, "dom", where)),
            fin(*_require(data, "cod", where)),
            dict(_require(data, "map", where)),
        )
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _fn_to_dict(f: FinFn) -> dict:
    return {
        "dom": sorted(f.dom.elements),
        "cod": sorted(f.cod.elements),
        "map": dict(sorted(f.mapping.items())),
    }


def _path_to_dict(p: Path) -> dict:
    return {"from": p.src, "to": p.tgt, "edges": list(p.edges)}


def _path_from_dict(data: dict, where: str) -> Path:
    return Path(
        _require(data, "from", where),
        _require(data, "to", where),
        tuple(_require(data, "edges", where)),
    )


def _presentation_to_dict(pres: colimits.Presentation, mat: colimits.MaterializedCat) -> dict:
    return {
        "generators": _graph_to_dict(pres.gens),
        "relations": sorted(
            ([_path_to_dict(l), _path_to_dict(r)] for l, r in pres.rels),
            key=json.dumps,
        ),
        "materialization": {
            "category": _cat_to_dict(mat.cat),
            "exact": mat.exact,
            "bound": mat.bound,
        },
    }


def _presentation_from_dict(data: dict, where: str):
    gens = _graph_from_dict(_require(data, "generators", where), where)
    rels = tuple(
        (_path_from_dict(l, where), _path_from_dict(r, where))
        for l, r in _require(data, "relations", where)
    )
    pres = colimits.Presentation(gens, rels)
    matdata = _require(data, "materialization", where)
    cat = _cat_from_dict(
        _require(matdata, "category", where), where, allow_partial=True
    )
    mat = colimits.MaterializedCat(
        cat=cat,
        exact=bool(_require(matdata, "exact", where)),
        bound=int(_require(matdata, "bound", where)),
    )
    return pres, mat


def parse(path: str | FsPath) -> Document:
    """Load and validate one document; the payload decides the kind."""
    fspath = FsPath(path)
    where = str(fspath)
    try:
        text = fspath.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{where}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{where}: top level must be an object")

    if "objects" in data:
        return Document("category", data, _cat_from_dict(data, where), fspath)
    if "vertices" in data:
        return Document("graph", data, _graph_from_dict(data, where), fspath)
    if "generators" in data:
        return Document("presentation", data, _presentation_from_dict(data, where), fspath)
    if "map" in data:
        return Document("fn", data, _fn_from_dict(data, where), fspath)
    if "on_objects" in data:
        return Document("functor", data, _functor_from_dict(data, fspath), fspath)
    if "components" in data:
        return Document("nattrans", data, _nattrans_from_dict(data, fspath), fspath)
    if "F" in data and "G" in data:
        return _pair_or_span(data, fspath)
    raise ParseError(f"{where}: unrecognised document shape")


def _resolve(ref: str, base: FsPath | None) -> FsPath:
    p = FsPath(ref)
    if not p.is_absolute() and base is not None:
        p = base.parent / p
    return p


def _functor_from_dict(data: dict, base: FsPath | None) -> Functor:
    where = str(base) if base else "functor"
    dom_doc = parse(_resolve(_require(data, "dom", where), base))
    cod_doc = parse(_resolve(_require(data, "cod", where), base))
    if dom_doc.kind != "category" or cod_doc.kind != "category":
        raise ParseError(f"{where}: functor endpoints must be category files")
    dom, cod = dom_doc.value, cod_doc.value
    try:
        return Functor(
            dom, cod,
            FinFn(dom.c0, cod.c0, dict(_require(data, "on_objects", where))),
            FinFn(dom.c1, cod.c1, dict(_require(data, "on_morphisms", where))),
        )
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _functor_to_dict(fun: Functor, dom_ref: str, cod_ref: str) -> dict:
    return {
        "dom": dom_ref,
        "cod": cod_ref,
        "on_objects": dict(sorted(fun.f0.mapping.items())),
        "on_morphisms": dict(sorted(fun.f1.mapping.items())),
    }


def _nattrans_from_dict(data: dict, base: FsPath | None) -> NatTrans:
    where = str(base) if base else "nattrans"
    src_doc = parse(_resolve(_require(data, "src", where), base))
    tgt_doc = parse(_resolve(_require(data, "tgt", where), base))
    if src_doc.kind != "functor" or tgt_doc.kind != "functor":
        raise ParseError(f"{where}: nattrans endpoints must be functor files")
    src, tgt = src_doc.value, tgt_doc.value
    try:
        return NatTrans(
            src, tgt,
            FinFn(src.dom.c0, src.cod.c1, dict(_require(data, "components", where))),
        )
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _pair_or_span(data: dict, base: FsPath) -> Document:
    where = str(base)
    f_doc = parse(_resolve(data["F"], base))
    g_doc = parse(_resolve(data["G"], base))
    if f_doc.kind != g_doc.kind or f_doc.kind not in ("functor", "fn"):
        raise ParseError(f"{where}: F and G must both be functor or fn files")
    f, g = f_doc.value, g_doc.value
    if f_doc.kind == "fn":
        if f.dom == g.dom and f.cod == g.cod:
            return Document("pair", data, (f, g), base)
        raise ParseError(f"{where}: fn pair must be parallel")
    if f.dom == g.dom and f.cod == g.cod:
        return Document("pair", data, (f, g), base)
    if f.dom == g.dom:
        return Document("span", data, (f, g), base)
    raise ParseError(f"{where}: F and G share neither shape nor domain")


def serialize(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# DOT output


def to_dot(doc: Document, classes: dict[str, list[str]] | None = None) -> str:
    """Render a category, graph or presentation as a DOT digraph."""
    lines = ["digraph intercat {"]

    def edge(name: str, src: str, tgt: str) -> str:
        label = name
        if classes and name in classes and len(classes[name]) > 1:
            label = f"{name} = {{{', '.join(classes[name])}}}"
        return f'  "{src}" -> "{tgt}" [label="{label}"];'

    if doc.kind == "category":
        cat = doc.value
        for x in sorted(cat.c0.elements):
            lines.append(f'  "{x}";')
        identities = cat.identities()
        for m in sorted(cat.c1.elements):
            if m in identities:
                continue
            lines.append(edge(m, cat.d0.mapping[m], cat.d1.mapping[m]))
    elif doc.kind == "graph":
        g = doc.value
        for v in sorted(g.vertices.elements):
            lines.append(f'  "{v}";')
        for e in sorted(g.edges.elements):
            lines.append(edge(e, g.src.mapping[e], g.tgt.mapping[e]))
    elif doc.kind == "presentation":
        pres, mat = doc.value
        cat = mat.cat
        for x in sorted(cat.c0.elements):
            lines.append(f'  "{x}";')
        identities = cat.identities()
        for m in sorted(cat.c1.elements):
            if m in identities:
                continue
            lines.append(edge(m, cat.d0.mapping[m], cat.d1.mapping[m]))
    else:
        raise ParseError(f"cannot render a {doc.kind} document as DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Artifact output


class Emitter:
    """Collects canonical artifacts; writes them under --out if given."""

    def __init__(self, out_dir: str | None):
        self.out_dir = FsPath(out_dir) if out_dir else None
        self.manifest: dict = {"files": {}}

    def emit(self, name: str, data: dict, role: str | None = None) -> None:
        if self.out_dir is None:
            return
        self.out_dir.mkdir(parents=True, exist_ok=True)
        (self.out_dir / name).write_text(serialize(data), encoding="utf-8")
        if role:
            self.manifest["files"][role] = name

    def finish(self, command: str, extra: dict | None = None) -> None:
        if self.out_dir is None:
            return
        self.manifest["command"] = command
        if extra:
            self.manifest.update(extra)
        (self.out_dir / "manifest.json").write_text(
            serialize(self.manifest), encoding="utf-8"
        )


def _emit_functor(em: Emitter, role: str, fun: Functor, dom_name: str, cod_name: str) -> None:
    em.emit(dom_name, _cat_to_dict(fun.dom))
    em.emit(cod_name, _cat_to_dict(fun.cod))
    em.emit(
        f"{role}.json", _functor_to_dict(fun, dom_name, cod_name), role=role
    )


# ---------------------------------------------------------------------------
# Command handlers


def _need(doc: Document, kind: str) -> object:
    if doc.kind != kind:
        raise ParseError(f"{doc.path}: expected a {kind} document, got {doc.kind}")
    return doc.value


def _cmd_validate(args) -> int:
    doc = parse(args.file)
    print(f"{doc.kind}: ok")
    return 0


def _cmd_coproduct(args) -> int:
    cats = [_need(parse(p), "category") for p in args.files]
    result = colimits.coproduct_cat(cats)
    print(serialize(_cat_to_dict(result.cat)), end="")
    em = Emitter(args.out)
    em.emit("coproduct.json", _cat_to_dict(result.cat), role="result")
    for k, inj in enumerate(result.injections):
        _emit_functor(em, f"inj{k}", inj, f"summand{k}.json", "coproduct.json")
    em.finish("coproduct")
    return 0


def _cmd_copower2(args) -> int:
    cat = _need(parse(args.file), "category")
    cop = colimits.copower2(cat)
    print(serialize(_cat_to_dict(cop.cat)), end="")
    em = Emitter(args.out)
    em.emit("copower.json", _cat_to_dict(cop.cat), role="result")
    em.finish("copower2")
    return 0


def _pair_functors(args) -> tuple[Functor, Functor]:
    doc = parse(args.pair)
    if doc.kind not in ("pair", "span"):
        raise ParseError(f"{args.pair}: expected a pair of functors")
    f, g = doc.value
    if not isinstance(f, Functor):
        raise ParseError(f"{args.pair}: expected functor documents")
    return f, g


def _cmd_coequalize(args) -> int:
    f, g = _pair_functors(args)
    q, pres, exact = colimits.coequalize(f, g, args.bound)
    mat = colimits.MaterializedCat(cat=q.cod, exact=exact, bound=args.bound)
    payload = _presentation_to_dict(pres, mat)
    print(serialize(payload), end="")
    em = Emitter(args.out)
    em.emit("a.json", _cat_to_dict(f.dom))
    em.emit("b.json", _cat_to_dict(f.cod))
    em.emit("c.json", _cat_to_dict(q.cod))
    em.emit("f.json", _functor_to_dict(f, "a.json", "b.json"), role="f")
    em.emit("g.json", _functor_to_dict(g, "a.json", "b.json"), role="g")
    em.emit("q.json", _functor_to_dict(q, "b.json", "c.json"), role="q")
    em.emit("result.json", payload, role="result")
    em.finish("coequalize", {"kind": "coeq", "bound": args.bound, "exact": exact})
    return 0


def _cmd_from_discrete(args) -> int:
    f, g = _pair_functors(args)
    q, pres, trace = colimits.coequalize_from_discrete(f, g, args.bound)
    mat = colimits.MaterializedCat(cat=q.cod, exact=trace.exact, bound=args.bound)
    payload = _presentation_to_dict(pres, mat)
    print(serialize(payload), end="")
    em = Emitter(args.out)
    em.emit("a.json", _cat_to_dict(f.dom))
    em.emit("b.json", _cat_to_dict(f.cod))
    em.emit("c.json", _cat_to_dict(q.cod))
    em.emit("f.json", _functor_to_dict(f, "a.json", "b.json"), role="f")
    em.emit("g.json", _functor_to_dict(g, "a.json", "b.json"), role="g")
    em.emit("q.json", _functor_to_dict(q, "b.json", "c.json"), role="q")
    em.emit("result.json", payload, role="result")
    em.finish("from-discrete", {"kind": "coeq", "bound": args.bound, "exact": trace.exact})
    return 0


def _cmd_coequifier(args) -> int:
    a = _need(parse(args.first), "nattrans")
    b = _need(parse(args.second), "nattrans")
    e = colimits.coequifier(a, b)
    print(serialize(_cat_to_dict(e.cod)), end="")
    em = Emitter(args.out)
    em.emit("b.json", _cat_to_dict(e.dom))
    em.emit("c.json", _cat_to_dict(e.cod))
    em.emit("e.json", _functor_to_dict(e, "b.json", "c.json"), role="e")
    em.finish("coequifier", {"kind": "coequifier"})
    return 0


def _cmd_free_cat(args) -> int:
    g = _need(parse(args.file), "graph")
    pres, mat = colimits.free_category(g, args.bound)
    payload = _presentation_to_dict(pres, mat)
    print(serialize(payload), end="")
    em = Emitter(args.out)
    em.emit("graph.json", _graph_to_dict(g), role="graph")
    em.emit("result.json", payload, role="result")
    em.emit(
        "classes.json",
        {k: list(v) for k, v in sorted(mat.classes.items())},
        role="classes",
    )
    em.finish("free-cat", {"kind": "free", "bound": args.bound, "exact": mat.exact})
    return 0


def _cmd_coinserter(args) -> int:
    doc = parse(args.pair)
    if doc.kind != "pair" or not isinstance(doc.value[0], FinFn):
        raise ParseError(f"{args.pair}: expected a pair of fn documents")
    f, g = doc.value
    pres, mat = colimits.coinserter(f, g, args.bound)
    payload = _presentation_to_dict(pres, mat)
    print(serialize(payload), end="")
    em = Emitter(args.out)
    em.emit("result.json", payload, role="result")
    em.finish("coinserter", {"kind": "free", "bound": args.bound, "exact": mat.exact})
    return 0


def _cmd_pushout(args) -> int:
    doc = parse(args.span)
    if doc.kind not in ("pair", "span") or not isinstance(doc.value[0], Functor):
        raise ParseError(f"{args.span}: expected a span of functors")
    f, g = doc.value
    result = colimits.pushout(f, g, args.bound)
    mat = colimits.MaterializedCat(cat=result.cat, exact=result.exact, bound=args.bound)
    payload = _presentation_to_dict(result.presentation, mat)
    print(serialize(payload), end="")
    em = Emitter(args.out)
    em.emit("result.json", payload, role="result")
    em.finish("pushout", {"kind": "coeq", "bound": args.bound, "exact": result.exact})
    return 0


def _cmd_cocomma(args) -> int:
    doc = parse(args.span)
    if doc.kind not in ("pair", "span") or not isinstance(doc.value[0], Functor):
        raise ParseError(f"{args.span}: expected a span of functors")
    f, g = doc.value
    result = colimits.cocomma(f, g, args.bound)
    print(serialize(_cat_to_dict(result.cat)), end="")
    em = Emitter(args.out)
    em.emit("a.json", _cat_to_dict(f.dom))
    em.emit("b.json", _cat_to_dict(f.cod))
    em.emit("c.json", _cat_to_dict(g.cod))
    em.emit("cocomma.json", _cat_to_dict(result.cat), role="result")
    em.emit("f.json", _functor_to_dict(f, "a.json", "b.json"), role="f")
    em.emit("g.json", _functor_to_dict(g, "a.json", "c.json"), role="g")
    em.emit("left.json", _functor_to_dict(result.left, "b.json", "cocomma.json"), role="left")
    em.emit("right.json", _functor_to_dict(result.right, "c.json", "cocomma.json"), role="right")
    em.emit(
        "cell_components.json",
        {"components": dict(sorted(result.cell.components.mapping.items()))},
        role="cell",
    )
    em.finish("cocomma", {"kind": "cocomma", "bound": args.bound})
    return 0


def _cmd_conduche(args) -> int:
    fun = _need(parse(args.file), "functor")
    verdict = fibrations.is_discrete_conduche(fun)
    if verdict:
        print("yes")
        return 0
    print(f"no: {verdict.reason}: {verdict.witness!r}")
    return 1


def _cmd_pullback(args) -> int:
    f = _need(parse(args.first), "functor")
    p = _need(parse(args.second), "functor")
    result = fibrations.pullback_cat(f, p)
    print(serialize(_cat_to_dict(result.cat)), end="")
    em = Emitter(args.out)
    em.emit("pullback.json", _cat_to_dict(result.cat), role="result")
    em.finish("pullback")
    return 0


def _cmd_suspend(args) -> int:
    doc = parse(args.file)
    if doc.kind == "graph":
        cat = fibrations.suspend(doc.value.vertices)
        print(serialize(_cat_to_dict(cat)), end="")
        em = Emitter(args.out)
        em.emit("suspension.json", _cat_to_dict(cat), role="result")
        em.finish("suspend")
        return 0
    if doc.kind == "fn":
        fun = fibrations.suspend_fn(doc.value)
        if args.out is None:
            raise ParseError("suspending a function emits a functor; use --out DIR")
        em = Emitter(args.out)
        _emit_functor(em, "suspended", fun, "dom.json", "cod.json")
        em.finish("suspend")
        print(f"wrote suspended functor under {args.out}")
        return 0
    raise ParseError(f"{args.file}: suspend expects a graph (of vertices) or fn document")


def _cmd_stability(args) -> int:
    f, g = _pair_functors(args)
    along = _need(parse(args.along), "functor")
    over = _need(parse(args.over), "functor")
    report = fibrations.stability_experiment(f, g, along, over)
    payload = {
        "stable": report.stable,
        "detail": report.detail,
        "lhs": _cat_to_dict(report.lhs),
        "rhs": _cat_to_dict(report.rhs),
    }
    print(serialize(payload), end="")
    em = Emitter(args.out)
    em.emit("report.json", payload, role="result")
    em.finish("stability")
    return 0 if report.stable else 1


def _cmd_cycles_lift(args) -> int:
    cat = _need(parse(args.category), "category")
    q0 = _need(parse(args.fn), "fn")
    verdict = colimits.cycles_lift_check(cat, q0)
    if verdict:
        print("all cycles lift")
        return 0
    print(f"witness cycle: {list(verdict.witness)}")
    return 1


def _cmd_verify(args) -> int:
    out_dir = FsPath(args.dir)
    manifest_path = out_dir / "manifest.json"
    if not manifest_path.exists():
        raise ParseError(f"{out_dir}: no manifest.json (run a construction with --out)")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    files = manifest.get("files", {})
    caps = tuple(int(x) for x in args.caps.split(","))
    fam = oracle.build_test_family(*caps)
    print(f"verification family: caps {caps}, {len(fam.categories)} categories")

    if args.kind == "coeq":
        f = _need(parse(out_dir / files["f"]), "functor")
        g = _need(parse(out_dir / files["g"]), "functor")
        q = _need(parse(out_dir / files["q"]), "functor")
        if not manifest.get("exact", True):
            print("construction is truncated (exact=false); oracle not applicable")
            return 1
        verdict = oracle.verify_coequaliser(f, g, q, fam)
    elif args.kind == "free":
        result = parse(out_dir / files["result"])
        pres, mat = result.value
        if not mat.exact:
            print("materialization is truncated (exact=false); oracle not applicable")
            return 1
        graph_doc = parse(out_dir / files["graph"])
        g = graph_doc.value
        eta = GraphMorphism(
            g,
            underlying_graph(mat.cat),
            identity_fn(g.vertices),
            FinFn(g.edges, mat.cat.c1, {e: e for e in g.edges}),
        )
        verdict = oracle.verify_free_unit(g, mat.cat, eta, fam)
    else:
        raise ParseError(f"unknown verify kind {args.kind!r}")

    if verdict:
        print("ok")
        return 0
    print(f"failed: {verdict.reason}")
    return 1


def _cmd_dot(args) -> int:
    doc = parse(args.file)
    classes = None
    if doc.path is not None:
        classes_file = doc.path.parent / "classes.json"
        if classes_file.exists():
            classes = json.loads(classes_file.read_text(encoding="utf-8"))
    print(to_dot(doc, classes), end="")
    return 0


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intercat",
        description="Finite 2-colimits of internal categories over finite sets.",
    )
    parser.add_argument(
        "--seed", type=int, default=0,
        help="seed for randomized verification suites (all commands are deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bound_kw = {"type": int, "default": None, "help": "composition depth bound"}
    out_kw = {"default": None, "help": "directory for canonical artifacts"}

    p = sub.add_parser("validate"); p.add_argument("file"); p.set_defaults(handler=_cmd_validate)
    p = sub.add_parser("coproduct"); p.add_argument("files", nargs="+"); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_coproduct)
    p = sub.add_parser("copower2"); p.add_argument("file"); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_copower2)
    p = sub.add_parser("coequalize"); p.add_argument("pair"); p.add_argument("--bound", **bound_kw); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_coequalize)
    p = sub.add_parser("coequifier"); p.add_argument("first"); p.add_argument("second"); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_coequifier)
    p = sub.add_parser("free-cat"); p.add_argument("file"); p.add_argument("--bound", **bound_kw); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_free_cat)
    p = sub.add_parser("from-discrete"); p.add_argument("pair"); p.add_argument("--bound", **bound_kw); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_from_discrete)
    p = sub.add_parser("cocomma"); p.add_argument("span"); p.add_argument("--bound", **bound_kw); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_cocomma)
    p = sub.add_parser("pushout"); p.add_argument("span"); p.add_argument("--bound", **bound_kw); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_pushout)
    p = sub.add_parser("coinserter"); p.add_argument("pair"); p.add_argument("--bound", **bound_kw); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_coinserter)
    p = sub.add_parser("conduche"); p.add_argument("file"); p.set_defaults(handler=_cmd_conduche)
    p = sub.add_parser("pullback"); p.add_argument("first"); p.add_argument("second"); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_pullback)
    p = sub.add_parser("suspend"); p.add_argument("file"); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_suspend)
    p = sub.add_parser("stability"); p.add_argument("pair"); p.add_argument("along"); p.add_argument("over"); p.add_argument("--out", **out_kw); p.set_defaults(handler=_cmd_stability)
    p = sub.add_parser("cycles-lift"); p.add_argument("category"); p.add_argument("fn"); p.set_defaults(handler=_cmd_cycles_lift)
    p = sub.add_parser("verify"); p.add_argument("kind", choices=["coeq", "free"]); p.add_argument("dir"); p.add_argument("--caps", default="2,4"); p.set_defaults(handler=_cmd_verify)
    p = sub.add_parser("dot"); p.add_argument("file"); p.set_defaults(handler=_cmd_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "bound", None) is None and hasattr(args, "bound"):
        args.bound = default_bound()
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except IntercatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
