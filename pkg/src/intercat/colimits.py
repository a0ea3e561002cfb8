"""Finite 2-colimit constructions for internal categories over finite sets.

Coequalizers are computed by the paper-style two-step decomposition: first
quotient along a discrete restriction (objects, then a free category on
the induced quotient graph, then two coequifiers), then quotient a pair
that agrees on objects purely at the morphism level.

Colimits of finite categories can be infinite (glue the endpoints of the
free arrow and the walking arrow becomes a free monoid), so every
quotient-style operation returns a ``Presentation`` - quotient graph plus
path relations - as the exact carrier, alongside a depth-bounded
``MaterializedCat`` whose ``exact`` flag records whether the bounded
materialization saturated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    DomainMismatch,
    DomainNotDiscrete,
    NotCoequalising,
    NotParallel,
    NotParallel2Cells,
    NotSurjective,
    ObjectsDisagree,
    ShapeMismatch,
    ValidationError,
)
from .finset import (
    Coequalizer,
    FinFn,
    FinObj,
    Verdict,
    compose_fn,
    coequalizer,
    coproduct,
    fin,
    identity_fn,
    pair_label,
    pullback,
)
from .graphcat import (
    CatProduct,
    Functor,
    Graph,
    GraphMorphism,
    InternalCat,
    NatTrans,
    NerveLevel,
    Path,
    compose_functor,
    compose_pair_fn,
    compose_triple_fn,
    concat_paths,
    counit_from_discrete,
    disc,
    empty_path,
    is_discrete,
    nerve_level,
    product_cat,
    underlying_graph,
)

DEFAULT_BOUND = 8


# ---------------------------------------------------------------------------
# The free arrow and coproducts


def free_arrow() -> InternalCat:
    """The walking arrow: objects s, t and one non-identity morphism u."""
    c0 = fin("s", "t")
    c1 = fin("id_s", "id_t", "u")
    d0 = FinFn(c1, c0, {"id_s": "s", "id_t": "t", "u": "s"})
    d1 = FinFn(c1, c0, {"id_s": "s", "id_t": "t", "u": "t"})
    i = FinFn(c0, c1, {"s": "id_s", "t": "id_t"})
    comp = {
        ("id_s", "id_s"): "id_s",
        ("id_t", "id_t"): "id_t",
        ("u", "id_s"): "u",
        ("id_t", "u"): "u",
    }
    return InternalCat(c0, c1, d0, d1, i, comp)


@dataclass(frozen=True)
class CatCoproduct:
    cat: InternalCat
    injections: tuple[Functor, ...]

    def copair(self, fns: Sequence[Functor]) -> Functor:
        """The unique functor out of the coproduct matching each injection."""
        if len(fns) != len(self.injections):
            raise ShapeMismatch("copairing arity mismatch")
        if fns and any(f.cod != fns[0].cod for f in fns):
            raise ShapeMismatch("copairing functors must share a codomain")
        cod = fns[0].cod if fns else InternalCat(
            fin(), fin(), FinFn(fin(), fin(), {}), FinFn(fin(), fin(), {}),
            FinFn(fin(), fin(), {}), {},
        )
        f0 = {}
        f1 = {}
        for fun, inj in zip(fns, self.injections):
            for x in fun.dom.c0:
                f0[inj.f0.mapping[x]] = fun.f0.mapping[x]
            for m in fun.dom.c1:
                f1[inj.f1.mapping[m]] = fun.f1.mapping[m]
        return Functor(
            self.cat, cod,
            FinFn(self.cat.c0, cod.c0, f0),
            FinFn(self.cat.c1, cod.c1, f1),
        )


def coproduct_cat(xs: Sequence[InternalCat]) -> CatCoproduct:
    """Levelwise coproduct of categories; summand i is tagged ``i.``."""
    cp0 = coproduct([x.c0 for x in xs])
    cp1 = coproduct([x.c1 for x in xs])
    d0 = cp1.copair(
        [compose_fn(cp0.injections[i], x.d0) for i, x in enumerate(xs)]
    ) if xs else FinFn(fin(), fin(), {})
    d1 = cp1.copair(
        [compose_fn(cp0.injections[i], x.d1) for i, x in enumerate(xs)]
    ) if xs else FinFn(fin(), fin(), {})
    i_map = cp0.copair(
        [compose_fn(cp1.injections[i], x.i) for i, x in enumerate(xs)]
    ) if xs else FinFn(fin(), fin(), {})
    comp = {}
    for idx, x in enumerate(xs):
        inj = cp1.injections[idx].mapping
        for (g, f), gf in x.comp.items():
            comp[(inj[g], inj[f])] = inj[gf]
    cat = InternalCat(
        cp0.obj, cp1.obj, d0, d1, i_map, comp,
        partial=any(x.partial for x in xs),
    )
    injections = tuple(
        Functor(x, cat, cp0.injections[i], cp1.injections[i])
        for i, x in enumerate(xs)
    )
    return CatCoproduct(cat, injections)


# ---------------------------------------------------------------------------
# Copowers by the free arrow


@dataclass(frozen=True)
class Copower:
    """The copower 2 x A, classifying natural transformations out of A."""

    cat: InternalCat
    base: InternalCat
    at_src: Functor
    at_tgt: Functor

    def transpose(self, nt: NatTrans) -> Functor:
        """Turn a 2-cell F => G : A -> B into a functor 2 x A -> B."""
        if nt.src.dom != self.base:
            raise ShapeMismatch("transformation is not based at this copower")
        f_, g_ = nt.src, nt.tgt
        a, b = f_.dom, f_.cod
        alpha = nt.components.mapping
        f0 = {}
        for x in a.c0:
            f0[pair_label("s", x)] = f_.f0.mapping[x]
            f0[pair_label("t", x)] = g_.f0.mapping[x]
        f1 = {}
        for m in a.c1:
            f1[pair_label("id_s", m)] = f_.f1.mapping[m]
            f1[pair_label("id_t", m)] = g_.f1.mapping[m]
            f1[pair_label("u", m)] = b.comp[
                (alpha[a.d1.mapping[m]], f_.f1.mapping[m])
            ]
        return Functor(
            self.cat, b,
            FinFn(self.cat.c0, b.c0, f0),
            FinFn(self.cat.c1, b.c1, f1),
        )

    def untranspose(self, fun: Functor) -> NatTrans:
        """Recover the 2-cell classified by a functor 2 x A -> B."""
        if fun.dom != self.cat:
            raise ShapeMismatch("functor does not start at this copower")
        a = self.base
        src = compose_functor(fun, self.at_src)
        tgt = compose_functor(fun, self.at_tgt)
        components = FinFn(
            a.c0, fun.cod.c1,
            {x: fun.f1.mapping[pair_label("u", a.i.mapping[x])] for x in a.c0},
        )
        return NatTrans(src, tgt, components)


def copower2(a: InternalCat) -> Copower:
    """Copower of ``a`` by the free arrow, as the product 2 x a."""
    prod = product_cat(free_arrow(), a)
    at_src = Functor(
        a, prod.cat,
        FinFn(a.c0, prod.cat.c0, {x: pair_label("s", x) for x in a.c0}),
        FinFn(a.c1, prod.cat.c1, {m: pair_label("id_s", m) for m in a.c1}),
    )
    at_tgt = Functor(
        a, prod.cat,
        FinFn(a.c0, prod.cat.c0, {x: pair_label("t", x) for x in a.c0}),
        FinFn(a.c1, prod.cat.c1, {m: pair_label("id_t", m) for m in a.c1}),
    )
    return Copower(prod.cat, a, at_src, at_tgt)


# ---------------------------------------------------------------------------
# Coequalizers of pairs that agree on objects


@dataclass(frozen=True)
class CoequaliserTrace:
    """Intermediate data of the agree-on-objects coequalizer construction.

    ``limit`` is the wide limit of B1 <- A1 -> B1 over objects; ``ftilde``
    and ``gtilde`` pad each middle morphism into a composable triple; the
    quotient maps ``q1, q2, q3`` act on nerve levels 1-3, and ``action``
    composes a triple of B with a quotient class (the map used to derive
    associativity of the quotient).
    """

    limit: FinObj
    ftilde: FinFn
    gtilde: FinFn
    q1: FinFn
    c1: FinObj
    q2: FinFn
    c2: FinObj
    q3: FinFn
    c3: FinObj
    action: FinFn


def _induced(
    source_label: str,
    pairs: Iterable[tuple[str, str]],
    dom: FinObj,
    cod: FinObj,
) -> FinFn:
    """Build a map from (key, value) pairs, insisting they are consistent."""
    mapping: dict[str, str] = {}
    for key, value in pairs:
        if key in mapping and mapping[key] != value:
            raise ValidationError(
                f"{source_label} is not representative-independent at {key!r}: "
                f"{mapping[key]!r} vs {value!r}"
            )
        mapping[key] = value
    return FinFn(dom, cod, mapping)


def coequalize_on_objects(f: Functor, g: Functor) -> tuple[Functor, CoequaliserTrace]:
    """Coequalize a parallel pair of functors with equal object maps.

    The quotient is computed entirely at the morphism level: pad each
    morphism of A into all composable triples of B, compose, and take the
    quotient of B1 by the relation identifying the two composites.  The
    result is identity-on-objects, and the assembled category is validated
    in full, associativity included.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel("coequalize_on_objects needs a parallel pair")
    if f.f0 != g.f0:
        raise ObjectsDisagree("functors must agree on objects")
    a, b = f.dom, f.cod
    if a.partial or b.partial:
        raise ValidationError("coequalizers need total composition tables")

    d0b, d1b = b.d0.mapping, b.d1.mapping
    f0 = f.f0.mapping
    d0a, d1a = a.d0.mapping, a.d1.mapping

    # The wide limit: triples (p, w, q) with p, q in B1 and w in A1 that
    # become composable as p . F(w) . q.
    triples = [
        (p, w, q)
        for p in b.c1
        for w in a.c1
        for q in b.c1
        if d0b[p] == f0[d1a[w]] and f0[d0a[w]] == d1b[q]
    ]
    limit = FinObj(tuple(f"({p}|{w}|{q})" for p, w, q in triples))

    n3 = nerve_level(b, 3)
    m2 = compose_triple_fn(b, n3)
    ftilde = FinFn(
        limit, n3.carrier,
        {f"({p}|{w}|{q})": f"({p}|{f.f1.mapping[w]}|{q})" for p, w, q in triples},
    )
    gtilde = FinFn(
        limit, n3.carrier,
        {f"({p}|{w}|{q})": f"({p}|{g.f1.mapping[w]}|{q})" for p, w, q in triples},
    )

    coeq = coequalizer(compose_fn(m2, ftilde), compose_fn(m2, gtilde))
    q1 = coeq.q
    c1 = coeq.obj

    d0c = coeq.mediate(b.d0)
    d1c = coeq.mediate(b.d1)
    ic = compose_fn(q1, b.i)

    # Level 2: quotient classes have uniform endpoints, so every composable
    # pair of classes is hit by a composable pair of B; build composition
    # from representatives and insist it is representative-independent.
    pb2 = pullback(d0c, d1c)
    c2 = pb2.obj
    n2 = nerve_level(b, 2)
    p2_1, p2_2 = n2.projections
    q2 = pb2.mediate(compose_fn(q1, p2_1), compose_fn(q1, p2_2))

    mb = compose_pair_fn(b, n2)
    mc = _induced(
        "quotient composition",
        (
            (q2.mapping[t], q1.mapping[mb.mapping[t]])
            for t in n2.carrier
        ),
        c2,
        c1,
    )

    quotient = InternalCat(
        b.c0, c1, d0c, d1c, ic,
        {
            (pb2.p1.mapping[t], pb2.p2.mapping[t]): mc.mapping[t]
            for t in c2
        },
    )
    q_fun = Functor(b, quotient, identity_fn(b.c0), q1)

    # Level 3 and the action map, retained for the trace assertions.
    nq3 = nerve_level(quotient, 3)
    c3 = nq3.carrier
    p3 = n3.projections
    q3 = FinFn(
        n3.carrier, c3,
        {
            t: "({}|{}|{})".format(
                q1.mapping[p3[0].mapping[t]],
                q1.mapping[p3[1].mapping[t]],
                q1.mapping[p3[2].mapping[t]],
            )
            for t in n3.carrier
        },
    )
    act_pb = pullback(compose_fn(b.d0, m2), d1c)
    action = _induced(
        "triple action",
        (
            (
                pair_label(t, q1.mapping[m]),
                q1.mapping[b.comp[(m2.mapping[t], m)]],
            )
            for t in n3.carrier
            for m in b.c1
            if d0b[m2.mapping[t]] == d1b[m]
        ),
        act_pb.obj,
        c1,
    )

    trace = CoequaliserTrace(
        limit=limit, ftilde=ftilde, gtilde=gtilde,
        q1=q1, c1=c1, q2=q2, c2=c2, q3=q3, c3=c3, action=action,
    )
    return q_fun, trace


def factor_through_quotient(q: Functor, r: Functor) -> Functor:
    """Factor ``r`` through a quotient functor ``q`` (surjective levels).

    Raises NotCoequalising when ``r`` is not constant on the fibres of
    ``q``, i.e. when no factorisation exists.
    """
    if q.dom != r.dom:
        raise DomainMismatch("functors must share a domain")
    s0 = _induced(
        "object factorisation",
        ((q.f0.mapping[x], r.f0.mapping[x]) for x in q.dom.c0),
        q.cod.c0,
        r.cod.c0,
    )
    s1 = _induced(
        "morphism factorisation",
        ((q.f1.mapping[m], r.f1.mapping[m]) for m in q.dom.c1),
        q.cod.c1,
        r.cod.c1,
    )
    if set(s0.mapping) != set(q.cod.c0.elements) or set(s1.mapping) != set(
        q.cod.c1.elements
    ):
        raise NotCoequalising("quotient functor is not surjective; cannot factor")
    return Functor(q.cod, r.cod, s0, s1)


def coequifier(a: NatTrans, b: NatTrans) -> Functor:
    """Universal functor making two parallel 2-cells equal.

    Transposes both 2-cells through the copower by the free arrow; the two
    transposes agree on objects, so the agree-on-objects coequalizer
    applies and its quotient functor is the coequifier.
    """
    if a.src != b.src or a.tgt != b.tgt:
        raise NotParallel2Cells("coequifier needs 2-cells with shared boundary")
    cop = copower2(a.src.dom)
    ahat = cop.transpose(a)
    bhat = cop.transpose(b)
    quotient, _ = coequalize_on_objects(ahat, bhat)
    return quotient


# ---------------------------------------------------------------------------
# Presentations and bounded materialization


class Equality(Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Presentation:
    """Finitely presented category: a generator graph plus path relations."""

    gens: Graph
    rels: tuple[tuple[Path, Path], ...]

    def __post_init__(self) -> None:
        edges = set(self.gens.edges.elements)
        vertices = set(self.gens.vertices.elements)
        cleaned = []
        seen = set()
        for lhs, rhs in self.rels:
            for side in (lhs, rhs):
                if not set(side.edges) <= edges:
                    raise ValidationError(f"relation uses unknown edges: {side}")
                if side.src not in vertices or side.tgt not in vertices:
                    raise ValidationError(f"relation endpoint not a vertex: {side}")
                expected = side.src
                for e in side.edges:
                    if self.gens.src.mapping[e] != expected:
                        raise ValidationError(f"relation path does not chain: {side}")
                    expected = self.gens.tgt.mapping[e]
                if expected != side.tgt:
                    raise ValidationError(f"relation path endpoint mismatch: {side}")
            if lhs.src != rhs.src or lhs.tgt != rhs.tgt:
                raise ValidationError(
                    f"relation sides have different endpoints: {lhs} vs {rhs}"
                )
            if lhs == rhs:
                continue
            if lhs.sort_key() < rhs.sort_key():
                lhs, rhs = rhs, lhs
            if (lhs, rhs) not in seen:
                seen.add((lhs, rhs))
                cleaned.append((lhs, rhs))
        object.__setattr__(self, "rels", tuple(cleaned))


@dataclass(frozen=True)
class MaterializedCat:
    """A depth-bounded realization of a presented category.

    ``exact`` records that the class computation saturated: some round
    strictly below the exploration depth produced no new morphism classes,
    at which point every longer path provably reduces to a shorter one.
    ``classes`` maps each morphism to the labels of the paths it merges.
    """

    cat: InternalCat
    exact: bool
    bound: int
    classes: Mapping[str, tuple[str, ...]] = field(default_factory=dict)


class _PathUnionFind:
    def __init__(self) -> None:
        self.parent: dict[Path, Path] = {}

    def add(self, p: Path) -> None:
        if p not in self.parent:
            self.parent[p] = p

    def find(self, p: Path) -> Path:
        parent = self.parent
        root = p
        while parent[root] != root:
            root = parent[root]
        while parent[p] != root:
            parent[p], p = root, parent[p]
        return root

    def union(self, p: Path, q: Path) -> None:
        rp, rq = self.find(p), self.find(q)
        if rp != rq:
            # keep the shortlex-least path as the root so reps are canonical
            if rq.sort_key() < rp.sort_key():
                rp, rq = rq, rp
            self.parent[rq] = rp


def _vertex_at(pres: Presentation, p: Path, index: int) -> str:
    if index == 0:
        return p.src
    return pres.gens.tgt.mapping[p.edges[index - 1]]


def _one_step_rewrites(pres: Presentation, p: Path) -> list[Path]:
    """All one-step rewrites of ``p`` by any relation, in either direction."""
    out = []
    verts = [p.src]
    for e in p.edges:
        verts.append(pres.gens.tgt.mapping[e])
    for lhs, rhs in pres.rels:
        for old, new in ((lhs, rhs), (rhs, lhs)):
            k = len(old.edges)
            for j in range(len(p.edges) - k + 1):
                if k > 0 and p.edges[j : j + k] != old.edges:
                    continue
                if k == 0 and verts[j] != old.src:
                    continue
                out.append(
                    Path(p.src, p.tgt, p.edges[:j] + new.edges + p.edges[j + k :])
                )
    return out


def _reduce(pres: Presentation, p: Path, member: Callable[[Path], bool]) -> Path | None:
    """Greedily shrink ``p`` using shortlex-oriented rules until known.

    Returns a path satisfying ``member`` or None if reduction gets stuck.
    """
    seen = set()
    current = p
    while True:
        if member(current):
            return current
        if current in seen:
            return None
        seen.add(current)
        candidates = [
            q for q in _one_step_rewrites(pres, current)
            if q.sort_key() < current.sort_key()
        ]
        if not candidates:
            return None
        current = min(candidates, key=Path.sort_key)


def materialize(pres: Presentation, bound: int = DEFAULT_BOUND) -> MaterializedCat:
    """Realize a presentation as classes of bounded paths.

    Paths are enumerated by length and merged by relation instances whose
    both sides fit inside the current depth.  If some round introduces no
    new class the computation has saturated and the result is exact: by
    induction every longer path is congruent to a shorter one.  Acyclic
    generator graphs are explored without depth cap (path enumeration
    terminates on its own); otherwise exploration stops at ``bound``.
    """
    if bound < 1:
        raise ValueError("materialization bound must be at least 1")
    g = pres.gens
    cap = None if g.is_acyclic() else bound
    uf = _PathUnionFind()
    out_edges: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in sorted(g.edges):
        out_edges[g.src.mapping[e]].append(e)

    level = [empty_path(v) for v in g.vertices]
    for p in level:
        uf.add(p)
    known = set(level)
    exact = not level  # an empty graph materializes exactly

    depth = 0
    while level:
        depth += 1
        if cap is not None and depth > bound:
            break
        level = [
            Path(p.src, g.tgt.mapping[e], p.edges + (e,))
            for p in level
            for e in out_edges[p.tgt]
        ]
        for p in level:
            uf.add(p)
            known.add(p)
        for p in level:
            for q in _one_step_rewrites(pres, p):
                if q in known:
                    uf.union(p, q)
        # saturation check: does any class first appear at this depth?
        min_len: dict[Path, int] = {}
        for p in uf.parent:
            root = uf.find(p)
            cur = min_len.get(root)
            if cur is None or len(p) < cur:
                min_len[root] = len(p)
        if all(length < depth for length in min_len.values()):
            exact = True
            break

    groups: dict[Path, list[Path]] = {}
    for p in uf.parent:
        groups.setdefault(uf.find(p), []).append(p)
    reps = {root: min(members, key=Path.sort_key) for root, members in groups.items()}
    rep_of_path = {p: reps[uf.find(p)] for p in uf.parent}

    labels = sorted(rep.label for rep in reps.values())
    c1 = FinObj(tuple(labels))
    by_label = {rep.label: rep for rep in reps.values()}
    d0 = FinFn(c1, g.vertices, {lab: by_label[lab].src for lab in labels})
    d1 = FinFn(c1, g.vertices, {lab: by_label[lab].tgt for lab in labels})
    i = FinFn(g.vertices, c1, {v: rep_of_path[empty_path(v)].label for v in g.vertices})

    comp: dict[tuple[str, str], str] = {}
    total = True
    for glab in labels:
        for flab in labels:
            grep, frep = by_label[glab], by_label[flab]
            if grep.src != frep.tgt:
                continue
            combined = concat_paths(frep, grep)
            resolved = rep_of_path.get(combined)
            if resolved is None:
                found = _reduce(pres, combined, lambda q: q in rep_of_path)
                resolved = rep_of_path.get(found) if found is not None else None
            if resolved is None:
                total = False
                continue
            comp[(glab, flab)] = resolved.label
    if exact and not total:
        # saturation promised closure but reduction got stuck; be honest
        exact = False

    cat = InternalCat(g.vertices, c1, d0, d1, i, comp, partial=not total)
    classes = {
        rep.label: tuple(sorted(p.label for p in groups[root]))
        for root, rep in reps.items()
    }
    return MaterializedCat(cat=cat, exact=exact, bound=bound, classes=classes)


def word_problem(
    pres: Presentation, left: Path, right: Path, budget: int = 2000
) -> tuple[Equality, int]:
    """Decide path equality under the presentation, within a step budget.

    Breadth-first closure of ``left`` under relation rewrites (both
    directions, so intermediate paths may grow).  EQUAL when ``right`` is
    reached; DISTINCT when the closure is exhausted without reaching it;
    UNKNOWN when the budget runs out first.
    """
    if (left.src, left.tgt) != (right.src, right.tgt):
        return Equality.DISTINCT, 0
    if left == right:
        return Equality.EQUAL, 0
    seen = {left}
    frontier = [left]
    explored = 0
    while frontier:
        next_frontier = []
        for p in frontier:
            for q in _one_step_rewrites(pres, p):
                explored += 1
                if explored > budget:
                    return Equality.UNKNOWN, explored
                if q == right:
                    return Equality.EQUAL, explored
                if q not in seen:
                    seen.add(q)
                    next_frontier.append(q)
        frontier = next_frontier
    return Equality.DISTINCT, explored


def free_category(g: Graph, bound: int = DEFAULT_BOUND) -> tuple[Presentation, MaterializedCat]:
    """Free category on a graph: paths under concatenation.

    Acyclic graphs materialize exactly (all paths); cyclic ones are
    truncated at ``bound`` with ``exact=False`` - the walking loop already
    generates the free monoid on one generator.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    pres = Presentation(g, ())
    return pres, materialize(pres, bound)


def coinserter(f: FinFn, g: FinFn, bound: int = DEFAULT_BOUND) -> tuple[Presentation, MaterializedCat]:
    """Coinserter of the discrete pair induced by parallel set maps.

    Universally inserts a 2-cell from f to g; concretely the free category
    on the graph with vertex set the codomain and one edge per element of
    the domain, from its f-image to its g-image.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("coinserter needs a parallel pair of maps")
    graph = Graph(f.cod, f.dom, f, g)
    return free_category(graph, bound)


# ---------------------------------------------------------------------------
# Coequalizers out of a discrete category


@dataclass(frozen=True)
class DiscreteCoeqTrace:
    """Trace of the discrete-domain coequalizer construction.

    ``quotient_graph`` is the graph with the object classes as vertices
    and every morphism of B as an edge.  When the pruned generator graph
    is acyclic the construction runs literally - free category, the
    identity-coequifying 2-cell pair, the composition-coequifying pair,
    and the composite quotient functor - and all fields are populated;
    otherwise the result is carried by the presentation and the bounded
    materialization, and the 2-cell fields are None.
    """

    k0: FinFn
    quotient_graph: Graph
    exact: bool
    k: GraphMorphism | None = None
    alpha: NatTrans | None = None
    beta: NatTrans | None = None
    gamma: NatTrans | None = None
    delta: NatTrans | None = None
    p: Functor | None = None
    t: Functor | None = None


def _image_path(b: InternalCat, k0: FinFn, m: str) -> Path:
    """Path of a B-morphism in the pruned quotient graph.

    Identity morphisms map to empty paths (their generators are pruned);
    everything else to the one-edge path between its glued endpoints.
    """
    if b.is_identity(m):
        return empty_path(k0.mapping[b.d0.mapping[m]])
    return Path(k0.mapping[b.d0.mapping[m]], k0.mapping[b.d1.mapping[m]], (m,))


def _discrete_presentation(b: InternalCat, k0: FinFn) -> Presentation:
    """Presentation of the discrete-domain coequalizer.

    Generators are the non-identity morphisms of B over the glued
    vertices; identity generators are eliminated (they are forced equal to
    empty paths), and each composable pair of B contributes the relation
    "edge path of f then g = edge path of their composite".
    """
    vertices = k0.cod
    gen_edges = FinObj(tuple(m for m in b.c1 if not b.is_identity(m)))
    src = FinFn(gen_edges, vertices, {
        m: k0.mapping[b.d0.mapping[m]] for m in gen_edges
    })
    tgt = FinFn(gen_edges, vertices, {
        m: k0.mapping[b.d1.mapping[m]] for m in gen_edges
    })
    gens = Graph(vertices, gen_edges, src, tgt)
    rels = []
    for (g, f), gf in b.comp.items():
        lhs = concat_paths(_image_path(b, k0, f), _image_path(b, k0, g))
        rhs = _image_path(b, k0, gf)
        if lhs != rhs:
            rels.append((lhs, rhs))
    return Presentation(gens, tuple(rels))


def coequalize_from_discrete(
    f: Functor, g: Functor, bound: int = DEFAULT_BOUND
) -> tuple[Functor, Presentation, DiscreteCoeqTrace]:
    """Coequalize a parallel pair of functors out of a discrete category.

    Steps: coequalize on objects in finite sets; form the quotient graph
    with every morphism of B as an edge; take the free category on it;
    extend the induced graph morphism to a functor by coequifying first
    the identity comparisons and then the composition comparisons.  The
    pruned presentation is always the exact answer; the materialized
    quotient is exact precisely when the class computation saturates.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel("coequalize_from_discrete needs a parallel pair")
    if not is_discrete(f.dom):
        raise DomainNotDiscrete("domain must be a discrete category")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    b = f.cod
    if b.partial:
        raise ValidationError("coequalizers need total composition tables")

    coeq0 = coequalizer(f.f0, g.f0)
    k0 = coeq0.q
    raw_graph = Graph(
        k0.cod, b.c1, compose_fn(k0, b.d0), compose_fn(k0, b.d1)
    )
    pres = _discrete_presentation(b, k0)
    mat = materialize(pres, bound)

    if pres.gens.is_acyclic():
        quotient_fun, trace = _discrete_pipeline(b, k0, raw_graph, pres)
        return quotient_fun, pres, trace

    index = {}
    for label, members in mat.classes.items():
        for member in members:
            index[member] = label
    q1 = FinFn(
        b.c1, mat.cat.c1,
        {m: index[_image_path(b, k0, m).label] for m in b.c1},
    )
    quotient_fun = Functor(b, mat.cat, k0, q1)
    trace = DiscreteCoeqTrace(k0=k0, quotient_graph=raw_graph, exact=mat.exact)
    return quotient_fun, pres, trace


def _discrete_pipeline(
    b: InternalCat, k0: FinFn, raw_graph: Graph, pres: Presentation
) -> tuple[Functor, DiscreteCoeqTrace]:
    """The literal coequifier pipeline, for finite (acyclic) free categories."""
    free_mat = materialize(Presentation(pres.gens, ()), 1)
    assert free_mat.exact
    free_cat = free_mat.cat

    path_label = {m: _image_path(b, k0, m).label for m in b.c1}
    k = GraphMorphism(
        underlying_graph(b),
        underlying_graph(free_cat),
        k0,
        FinFn(b.c1, free_cat.c1, path_label),
    )

    # Identity comparison pair: unit path of each identity vs identity of
    # the glued object.  With pruned generators both components coincide.
    base_fun = Functor(
        disc(b.c0), free_cat, k0,
        FinFn(b.c0, free_cat.c1, {x: path_label[b.i.mapping[x]] for x in b.c0}),
    )
    alpha = NatTrans(
        base_fun, base_fun,
        FinFn(b.c0, free_cat.c1, {x: path_label[b.i.mapping[x]] for x in b.c0}),
    )
    beta = NatTrans(
        base_fun, base_fun,
        FinFn(
            b.c0, free_cat.c1,
            {x: free_cat.i.mapping[k0.mapping[x]] for x in b.c0},
        ),
    )
    p = coequifier(alpha, beta)
    mid = p.cod

    # Composition comparison pair over the discrete category of composable
    # pairs of B: image of the composite vs composite of the images.
    n2 = nerve_level(b, 2)
    pr1, pr2 = n2.projections
    pairs_obj = n2.carrier
    src_fun = Functor(
        disc(pairs_obj), mid,
        FinFn(pairs_obj, mid.c0, {
            t: k0.mapping[b.d0.mapping[pr2.mapping[t]]] for t in pairs_obj
        }),
        FinFn(pairs_obj, mid.c1, {
            t: mid.i.mapping[k0.mapping[b.d0.mapping[pr2.mapping[t]]]]
            for t in pairs_obj
        }),
    )
    tgt_fun = Functor(
        disc(pairs_obj), mid,
        FinFn(pairs_obj, mid.c0, {
            t: k0.mapping[b.d1.mapping[pr1.mapping[t]]] for t in pairs_obj
        }),
        FinFn(pairs_obj, mid.c1, {
            t: mid.i.mapping[k0.mapping[b.d1.mapping[pr1.mapping[t]]]]
            for t in pairs_obj
        }),
    )
    # NatTrans with distinct source/target object functors is not the
    # boundary shape coequifier expects; both 2-cells go between the same
    # pair, built from the common endpoint data.
    gamma = NatTrans(
        src_fun, tgt_fun,
        FinFn(pairs_obj, mid.c1, {
            t: p.f1.mapping[
                path_label[b.comp[(pr1.mapping[t], pr2.mapping[t])]]
            ]
            for t in pairs_obj
        }),
    )
    delta = NatTrans(
        src_fun, tgt_fun,
        FinFn(pairs_obj, mid.c1, {
            t: mid.comp[(
                p.f1.mapping[path_label[pr1.mapping[t]]],
                p.f1.mapping[path_label[pr2.mapping[t]]],
            )]
            for t in pairs_obj
        }),
    )
    t_fun = coequifier(gamma, delta)

    q1 = compose_fn(t_fun.f1, compose_fn(p.f1, k.h1))
    quotient_fun = Functor(b, t_fun.cod, k0, q1)
    trace = DiscreteCoeqTrace(
        k0=k0, quotient_graph=raw_graph, exact=True,
        k=k, alpha=alpha, beta=beta, gamma=gamma, delta=delta, p=p, t=t_fun,
    )
    return quotient_fun, trace


# ---------------------------------------------------------------------------
# General coequalizers


def coequalize(
    f: Functor, g: Functor, bound: int = DEFAULT_BOUND
) -> tuple[Functor, Presentation, bool]:
    """Coequalize an arbitrary parallel pair of functors.

    Two steps: restrict along the discrete counit and coequalize out of
    the discrete category of objects, then coequalize the images - which
    now agree on objects - at the morphism level.  The returned
    presentation extends the discrete step's with one relation per
    morphism of A identifying the two images.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel("coequalize needs a parallel pair")
    a, b = f.dom, f.cod
    eps = counit_from_discrete(a)
    f_disc = compose_functor(f, eps)
    g_disc = compose_functor(g, eps)
    k, pres1, trace1 = coequalize_from_discrete(f_disc, g_disc, bound)

    kf = compose_functor(k, f)
    kg = compose_functor(k, g)
    if kf.f0 != kg.f0:
        raise ValidationError("discrete step failed to equalize object maps")

    k0 = trace1.k0
    extra = []
    for m in a.c1:
        lhs = _image_path(b, k0, f.f1.mapping[m])
        rhs = _image_path(b, k0, g.f1.mapping[m])
        if lhs != rhs:
            extra.append((lhs, rhs))
    pres = Presentation(pres1.gens, pres1.rels + tuple(extra))

    if trace1.exact:
        p_fun, _ = coequalize_on_objects(kf, kg)
        return compose_functor(p_fun, k), pres, True

    mat = materialize(pres, bound)
    index = {}
    for label, members in mat.classes.items():
        for member in members:
            index[member] = label
    q1 = FinFn(
        b.c1, mat.cat.c1,
        {m: index[_image_path(b, k0, m).label] for m in b.c1},
    )
    quotient_fun = Functor(b, mat.cat, k0, q1)
    return quotient_fun, pres, False


@dataclass(frozen=True)
class PushoutResult:
    cat: InternalCat
    left: Functor
    right: Functor
    presentation: Presentation
    exact: bool


def pushout(f: Functor, g: Functor, bound: int = DEFAULT_BOUND) -> PushoutResult:
    """Pushout of a span, reduced to a coproduct plus a coequalizer."""
    if f.dom != g.dom:
        raise ShapeMismatch("pushout needs a span: shared domain")
    cp = coproduct_cat([f.cod, g.cod])
    q, pres, exact = coequalize(
        compose_functor(cp.injections[0], f),
        compose_functor(cp.injections[1], g),
        bound,
    )
    return PushoutResult(
        cat=q.cod,
        left=compose_functor(q, cp.injections[0]),
        right=compose_functor(q, cp.injections[1]),
        presentation=pres,
        exact=exact,
    )


# ---------------------------------------------------------------------------
# Cocommas


@dataclass(frozen=True)
class CocommaResult:
    """Cocomma of a span with its universal cocone."""

    cat: InternalCat
    left: Functor
    right: Functor
    cell: NatTrans
    het_classes: Mapping[str, tuple[str, ...]] = field(default_factory=dict)


def _triple_label(f: str, x: str, g: str) -> str:
    return f"({f}|{x}|{g})"


def cocomma(f: Functor, g: Functor, bound: int = DEFAULT_BOUND) -> CocommaResult:
    """Cocomma object of a span of functors.

    Objects are the disjoint union of the feet.  Morphisms add to the two
    categories a set of heteromorphisms: formal composites "g after
    component after f" - the wide limit over objects of A - quotiented by
    naturality instances taken in full composition context, so the
    quotient composes representative-independently.  Always finite over
    finite sets; ``bound`` is accepted for interface uniformity.
    """
    del bound
    if f.dom != g.dom:
        raise ShapeMismatch("cocomma needs a span: shared domain")
    a, b, c = f.dom, f.cod, g.cod
    d0b, d1b = b.d0.mapping, b.d1.mapping
    d0c, d1c = c.d0.mapping, c.d1.mapping
    f0, g0 = f.f0.mapping, g.f0.mapping

    triples = [
        (p, x, q)
        for p in b.c1
        for x in a.c0
        for q in c.c1
        if d1b[p] == f0[x] and d0c[q] == g0[x]
    ]
    limit = FinObj(tuple(_triple_label(*t) for t in triples))

    context = [
        (p, w, q)
        for p in b.c1
        for w in a.c1
        for q in c.c1
        if d1b[p] == f0[a.d0.mapping[w]] and d0c[q] == g0[a.d1.mapping[w]]
    ]
    ctx_obj = FinObj(tuple(f"[{p}|{w}|{q}]" for p, w, q in context))
    before = FinFn(
        ctx_obj, limit,
        {
            f"[{p}|{w}|{q}]": _triple_label(
                b.comp[(f.f1.mapping[w], p)], a.d1.mapping[w], q
            )
            for p, w, q in context
        },
    )
    after = FinFn(
        ctx_obj, limit,
        {
            f"[{p}|{w}|{q}]": _triple_label(
                p, a.d0.mapping[w], c.comp[(q, g.f1.mapping[w])]
            )
            for p, w, q in context
        },
    )
    het = coequalizer(before, after)
    het_by_member = dict(het.q.mapping)
    member_triples = {_triple_label(*t): t for t in triples}

    cp0 = coproduct([b.c0, c.c0])
    cp1 = coproduct([b.c1, het.obj, c.c1])
    tag_b0, tag_c0 = (inj.mapping for inj in cp0.injections)
    tag_b1, tag_h, tag_c1 = (inj.mapping for inj in cp1.injections)

    d0_pairs: list[tuple[str, str]] = []
    d1_pairs: list[tuple[str, str]] = []
    for m in b.c1:
        d0_pairs.append((tag_b1[m], tag_b0[d0b[m]]))
        d1_pairs.append((tag_b1[m], tag_b0[d1b[m]]))
    for m in c.c1:
        d0_pairs.append((tag_c1[m], tag_c0[d0c[m]]))
        d1_pairs.append((tag_c1[m], tag_c0[d1c[m]]))
    for label, t in member_triples.items():
        p, _, q = t
        d0_pairs.append((tag_h[het_by_member[label]], tag_b0[d0b[p]]))
        d1_pairs.append((tag_h[het_by_member[label]], tag_c0[d1c[q]]))
    d0k = _induced("cocomma source", d0_pairs, cp1.obj, cp0.obj)
    d1k = _induced("cocomma target", d1_pairs, cp1.obj, cp0.obj)
    ik = FinFn(
        cp0.obj, cp1.obj,
        {
            **{tag_b0[x]: tag_b1[b.i.mapping[x]] for x in b.c0},
            **{tag_c0[y]: tag_c1[c.i.mapping[y]] for y in c.c0},
        },
    )

    comp_pairs: list[tuple[tuple[str, str], str]] = []
    for (m2, m1), m in b.comp.items():
        comp_pairs.append(((tag_b1[m2], tag_b1[m1]), tag_b1[m]))
    for (m2, m1), m in c.comp.items():
        comp_pairs.append(((tag_c1[m2], tag_c1[m1]), tag_c1[m]))
    for label, (p, x, q) in member_triples.items():
        h_tag = tag_h[het_by_member[label]]
        for m in b.c1:
            if d1b[m] == d0b[p]:
                extended = _triple_label(b.comp[(p, m)], x, q)
                comp_pairs.append(
                    ((h_tag, tag_b1[m]), tag_h[het_by_member[extended]])
                )
        for m in c.c1:
            if d0c[m] == d1c[q]:
                extended = _triple_label(p, x, c.comp[(m, q)])
                comp_pairs.append(
                    ((tag_c1[m], h_tag), tag_h[het_by_member[extended]])
                )
    comp: dict[tuple[str, str], str] = {}
    for key, value in comp_pairs:
        if key in comp and comp[key] != value:
            raise ValidationError(
                f"cocomma composition not representative-independent at {key!r}"
            )
        comp[key] = value

    cat = InternalCat(cp0.obj, cp1.obj, d0k, d1k, ik, comp)
    left = Functor(
        b, cat,
        FinFn(b.c0, cp0.obj, tag_b0),
        FinFn(b.c1, cp1.obj, tag_b1),
    )
    right = Functor(
        c, cat,
        FinFn(c.c0, cp0.obj, tag_c0),
        FinFn(c.c1, cp1.obj, tag_c1),
    )
    cell = NatTrans(
        compose_functor(left, f),
        compose_functor(right, g),
        FinFn(
            a.c0, cp1.obj,
            {
                x: tag_h[het_by_member[
                    _triple_label(b.i.mapping[f0[x]], x, c.i.mapping[g0[x]])
                ]]
                for x in a.c0
            },
        ),
    )
    grouped: dict[str, list[str]] = {}
    for member, root in het_by_member.items():
        grouped.setdefault(tag_h[root], []).append(member)
    classes = {k: tuple(sorted(v)) for k, v in grouped.items()}
    return CocommaResult(cat=cat, left=left, right=right, cell=cell, het_classes=classes)


# ---------------------------------------------------------------------------
# Cycle lifting


def cycles_lift_check(b: InternalCat, q0: FinFn) -> Verdict:
    """Check that every cycle of the glued graph lifts to the graph of B.

    The quotient graph keeps every morphism of B as an edge between glued
    objects.  A cycle lifts exactly when its edges are already cyclically
    composable in B, so a failure is a closed walk through a junction that
    composes only after gluing; the search works on the junction graph and
    returns the least such cycle as a witness.
    """
    if q0.dom != b.c0:
        raise DomainMismatch("quotient map must start at the objects of B")
    if not q0.is_surjective():
        raise NotSurjective("candidate object quotient is not surjective")
    d0, d1 = b.d0.mapping, b.d1.mapping
    edges = sorted(b.c1.elements)
    allowed = {
        (e1, e2): q0.mapping[d1[e1]] == q0.mapping[d0[e2]]
        for e1 in edges
        for e2 in edges
    }
    compatible = {
        (e1, e2): d1[e1] == d0[e2] for e1 in edges for e2 in edges
    }
    successors = {
        e1: [e2 for e2 in edges if allowed[(e1, e2)]] for e1 in edges
    }

    def shortest_walk(start: str, goal: str) -> tuple[str, ...] | None:
        # BFS in the junction graph; deterministic by sorted successors
        frontier = [(start, (start,))]
        seen = {start}
        while frontier:
            next_frontier = []
            for node, walk in frontier:
                if node == goal:
                    return walk
                for nxt in successors[node]:
                    if nxt not in seen:
                        seen.add(nxt)
                        next_frontier.append((nxt, walk + (nxt,)))
            frontier = next_frontier
        return None

    witnesses = []
    for e1 in edges:
        for e2 in successors[e1]:
            if compatible[(e1, e2)]:
                continue
            # bad junction e1 -> e2: find a closed walk ... e1, e2 ...
            walk = shortest_walk(e2, e1)
            if walk is not None:
                witnesses.append(walk)
    if not witnesses:
        return Verdict.passed()
    best = min(witnesses, key=lambda w: (len(w), _least_rotation(w)))
    return Verdict.failed(
        "cycle in the glued graph has no lift", witness=_least_rotation(best)
    )


def _least_rotation(cycle: tuple[str, ...]) -> tuple[str, ...]:
    rotations = [cycle[i:] + cycle[:i] for i in range(len(cycle))]
    return min(rotations)
