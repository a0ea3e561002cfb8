"""Internal graphs, categories, functors and natural transformations.

An internal category here is a finite category with every piece explicit:
objects, morphisms, source/target/identity tables and a composition table
defined on exactly the composable pairs.  Constructors validate the full
law suite eagerly (including associativity over all composable triples)
and refuse unlawful data; ``validate_*`` expose the same checks as
verdicts for data built through the unchecked escape hatch.

A category may be marked ``partial``: its composition table is then
allowed to cover only a subset of the composable pairs, and every law is
checked where defined.  This is the carrier for depth-truncated
materializations of infinite categories; exact constructions never
produce partial tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, Iterable, Mapping

from .errors import ValidationError
from .finset import (
    FinFn,
    FinObj,
    Verdict,
    compose_fn,
    fin,
    identity_fn,
    pair_label,
)


@dataclass(frozen=True)
class Graph:
    """Internal graph: vertices, edges, source and target maps."""

    vertices: FinObj
    edges: FinObj
    src: FinFn
    tgt: FinFn

    def __post_init__(self) -> None:
        for name, m in (("src", self.src), ("tgt", self.tgt)):
            if m.dom != self.edges or m.cod != self.vertices:
                raise ValidationError(f"{name} must map edges to vertices")

    def is_acyclic(self) -> bool:
        """True when the graph has no directed cycle (self-loops included)."""
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[self.src.mapping[e]].append(self.tgt.mapping[e])
        state: dict[str, int] = {}

        def visit(v: str) -> bool:
            state[v] = 1
            for w in out[v]:
                s = state.get(w, 0)
                if s == 1 or (s == 0 and visit(w)):
                    return True
            state[v] = 2
            return False

        return not any(state.get(v, 0) == 0 and visit(v) for v in self.vertices)


class InternalCat:
    """Category internal to finite sets, with an explicit composition table.

    ``comp`` maps composable pairs ``(g, f)`` with ``d0(g) = d1(f)`` (source
    of ``g`` equals target of ``f``) to the composite ``g after f``.
    """

    __slots__ = ("c0", "c1", "d0", "d1", "i", "comp", "partial", "_key", "_pairs")

    def __init__(
        self,
        c0: FinObj,
        c1: FinObj,
        d0: FinFn,
        d1: FinFn,
        i: FinFn,
        comp: Mapping[tuple[str, str], str],
        partial: bool = False,
        _check: bool = True,
    ):
        self.c0 = c0
        self.c1 = c1
        self.d0 = d0
        self.d1 = d1
        self.i = i
        self.comp = dict(comp)
        self.partial = partial
        self._key = None
        self._pairs = None
        if _check:
            verdict = validate_category(self)
            if not verdict:
                raise ValidationError(f"{verdict.reason}: {verdict.witness!r}")

    @classmethod
    def unchecked(cls, c0, c1, d0, d1, i, comp, partial=False) -> "InternalCat":
        return cls(c0, c1, d0, d1, i, comp, partial=partial, _check=False)

    # -- basic queries ----------------------------------------------------

    def m(self, g: str, f: str) -> str:
        return self.comp[(g, f)]

    def identities(self) -> frozenset[str]:
        return frozenset(self.i.mapping.values())

    def is_identity(self, f: str) -> bool:
        return f in self.identities()

    def composable_pairs(self) -> tuple[tuple[str, str], ...]:
        if self._pairs is None:
            d0, d1 = self.d0.mapping, self.d1.mapping
            self._pairs = tuple(
                (g, f) for g in self.c1 for f in self.c1 if d0[g] == d1[f]
            )
        return self._pairs

    def composable_triples(self) -> Iterable[tuple[str, str, str]]:
        d0, d1 = self.d0.mapping, self.d1.mapping
        by_target: dict[str, list[str]] = {}
        for f in self.c1:
            by_target.setdefault(d1[f], []).append(f)
        for h in self.c1:
            for g in by_target.get(d0[h], ()):
                for f in by_target.get(d0[g], ()):
                    yield (h, g, f)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InternalCat):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def key(self) -> tuple:
        """Structural key: literal encoding, usable for caching."""
        if self._key is None:
            self._key = (
                self.c0.elements,
                self.c1.elements,
                tuple(sorted(self.d0.mapping.items())),
                tuple(sorted(self.d1.mapping.items())),
                tuple(sorted(self.i.mapping.items())),
                tuple(sorted(self.comp.items())),
                self.partial,
            )
        return self._key

    def __repr__(self) -> str:
        flag = ", partial" if self.partial else ""
        return f"InternalCat({len(self.c0)} objects, {len(self.c1)} morphisms{flag})"


def validate_category(c: InternalCat) -> Verdict:
    """Check every category law; report the first violation with a witness."""
    if c.d0.dom != c.c1 or c.d0.cod != c.c0:
        return Verdict.failed("source map shape", c.d0)
    if c.d1.dom != c.c1 or c.d1.cod != c.c0:
        return Verdict.failed("target map shape", c.d1)
    if c.i.dom != c.c0 or c.i.cod != c.c1:
        return Verdict.failed("identity map shape", c.i)
    for x in c.c0:
        ix = c.i.mapping[x]
        if c.d0.mapping[ix] != x:
            return Verdict.failed("identity source", x)
        if c.d1.mapping[ix] != x:
            return Verdict.failed("identity target", x)

    pairs = set(c.composable_pairs())
    keys = set(c.comp)
    if not keys <= pairs:
        return Verdict.failed("composition of non-composable pair", sorted(keys - pairs)[0])
    if not c.partial and keys != pairs:
        return Verdict.failed("composition table missing pair", sorted(pairs - keys)[0])
    d0, d1 = c.d0.mapping, c.d1.mapping
    morphisms = set(c.c1.elements)
    for (g, f), gf in c.comp.items():
        if gf not in morphisms:
            return Verdict.failed("composite not a morphism", (g, f, gf))
        if d0[gf] != d0[f]:
            return Verdict.failed("source of composite", (g, f))
        if d1[gf] != d1[g]:
            return Verdict.failed("target of composite", (g, f))
    for f in c.c1:
        left = (c.i.mapping[d1[f]], f)
        if left in c.comp and c.comp[left] != f:
            return Verdict.failed("left unit", f)
        right = (f, c.i.mapping[d0[f]])
        if right in c.comp and c.comp[right] != f:
            return Verdict.failed("right unit", f)
        if not c.partial and (left not in c.comp or right not in c.comp):
            return Verdict.failed("unit composite missing", f)
    for h, g, f in c.composable_triples():
        gf = c.comp.get((g, f))
        hg = c.comp.get((h, g))
        if gf is None or hg is None:
            continue
        outer_left = c.comp.get((h, gf))
        outer_right = c.comp.get((hg, f))
        if outer_left is None or outer_right is None:
            if not c.partial:
                return Verdict.failed("associativity composite missing", (h, g, f))
            continue
        if outer_left != outer_right:
            return Verdict.failed("associativity", (h, g, f))
    return Verdict.passed()


# ---------------------------------------------------------------------------
# Nerve levels


@dataclass(frozen=True)
class NerveLevel:
    """Carrier of composable n-tuples with its projection maps."""

    carrier: FinObj
    projections: tuple[FinFn, ...]


def _tuple_label(parts: Iterable[str]) -> str:
    return "(" + "|".join(parts) + ")"


def nerve_level(c: InternalCat, n: int) -> NerveLevel:
    """Level-n nerve: composable n-tuples, labelled in composition order.

    A pair ``(g|f)`` is composable as ``g after f``; a triple ``(h|g|f)``
    composes to ``h after g after f``.
    """
    if n == 0:
        return NerveLevel(c.c0, ())
    if n == 1:
        return NerveLevel(c.c1, (identity_fn(c.c1),))
    d0, d1 = c.d0.mapping, c.d1.mapping
    tuples: list[tuple[str, ...]] = [(f,) for f in c.c1]
    for _ in range(n - 1):
        tuples = [t + (f,) for t in tuples for f in c.c1 if d0[t[-1]] == d1[f]]
    labels = [_tuple_label(t) for t in tuples]
    carrier = FinObj(tuple(labels))
    projections = tuple(
        FinFn(carrier, c.c1, {_tuple_label(t): t[k] for t in tuples})
        for k in range(n)
    )
    return NerveLevel(carrier, projections)


def compose_pair_fn(c: InternalCat, level2: NerveLevel | None = None) -> FinFn:
    """Composition as a map from the level-2 nerve to morphisms."""
    if c.partial:
        raise ValidationError("total composition map unavailable on a partial category")
    lvl = level2 or nerve_level(c, 2)
    p1, p2 = lvl.projections
    return FinFn(
        lvl.carrier,
        c.c1,
        {t: c.comp[(p1.mapping[t], p2.mapping[t])] for t in lvl.carrier},
    )


def compose_triple_fn(c: InternalCat, level3: NerveLevel | None = None) -> FinFn:
    """Triple composition from the level-3 nerve to morphisms."""
    if c.partial:
        raise ValidationError("total composition map unavailable on a partial category")
    lvl = level3 or nerve_level(c, 3)
    p1, p2, p3 = lvl.projections
    mapping = {}
    for t in lvl.carrier:
        h, g, f = p1.mapping[t], p2.mapping[t], p3.mapping[t]
        mapping[t] = c.comp[(h, c.comp[(g, f)])]
    return FinFn(lvl.carrier, c.c1, mapping)


# ---------------------------------------------------------------------------
# Functors, natural transformations, graph morphisms


class Functor:
    """Internal functor: an object map and a morphism map obeying the laws."""

    __slots__ = ("dom", "cod", "f0", "f1")

    def __init__(
        self,
        dom: InternalCat,
        cod: InternalCat,
        f0: FinFn,
        f1: FinFn,
        _check: bool = True,
    ):
        self.dom = dom
        self.cod = cod
        self.f0 = f0
        self.f1 = f1
        if _check:
            verdict = validate_functor(self)
            if not verdict:
                raise ValidationError(f"{verdict.reason}: {verdict.witness!r}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.f0 == other.f0
            and self.f1 == other.f1
        )

    def __hash__(self) -> int:
        return hash((self.f0, self.f1))

    def __repr__(self) -> str:
        return f"Functor({self.dom!r} -> {self.cod!r})"


def validate_functor(fun: Functor) -> Verdict:
    a, b = fun.dom, fun.cod
    if fun.f0.dom != a.c0 or fun.f0.cod != b.c0:
        return Verdict.failed("object map shape", fun.f0)
    if fun.f1.dom != a.c1 or fun.f1.cod != b.c1:
        return Verdict.failed("morphism map shape", fun.f1)
    f0, f1 = fun.f0.mapping, fun.f1.mapping
    for f in a.c1:
        if b.d0.mapping[f1[f]] != f0[a.d0.mapping[f]]:
            return Verdict.failed("source condition", f)
        if b.d1.mapping[f1[f]] != f0[a.d1.mapping[f]]:
            return Verdict.failed("target condition", f)
    for x in a.c0:
        if f1[a.i.mapping[x]] != b.i.mapping[f0[x]]:
            return Verdict.failed("identity condition", x)
    for (g, f), gf in a.comp.items():
        image = b.comp.get((f1[g], f1[f]))
        if image is None:
            if b.partial:
                continue
            return Verdict.failed("image pair not composable", (g, f))
        if image != f1[gf]:
            return Verdict.failed("composition condition", (g, f))
    return Verdict.passed()


def identity_functor(c: InternalCat) -> Functor:
    return Functor(c, c, identity_fn(c.c0), identity_fn(c.c1))


def compose_functor(g: Functor, f: Functor) -> Functor:
    if f.cod != g.dom:
        raise ValidationError("functors do not compose: codomain/domain mismatch")
    return Functor(
        f.dom, g.cod, compose_fn(g.f0, f.f0), compose_fn(g.f1, f.f1), _check=False
    )


class NatTrans:
    """Internal natural transformation between parallel functors."""

    __slots__ = ("src", "tgt", "components")

    def __init__(self, src: Functor, tgt: Functor, components: FinFn, _check: bool = True):
        self.src = src
        self.tgt = tgt
        self.components = components
        if _check:
            verdict = validate_nattrans(self)
            if not verdict:
                raise ValidationError(f"{verdict.reason}: {verdict.witness!r}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (
            self.src == other.src
            and self.tgt == other.tgt
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return f"NatTrans({self.components!r})"


def validate_nattrans(nt: NatTrans) -> Verdict:
    f, g = nt.src, nt.tgt
    if f.dom != g.dom or f.cod != g.cod:
        return Verdict.failed("source/target functors not parallel", (f, g))
    a, b = f.dom, f.cod
    if nt.components.dom != a.c0 or nt.components.cod != b.c1:
        return Verdict.failed("component map shape", nt.components)
    alpha = nt.components.mapping
    for x in a.c0:
        if b.d0.mapping[alpha[x]] != f.f0.mapping[x]:
            return Verdict.failed("source condition", x)
        if b.d1.mapping[alpha[x]] != g.f0.mapping[x]:
            return Verdict.failed("target condition", x)
    for m in a.c1:
        x, y = a.d0.mapping[m], a.d1.mapping[m]
        left = b.comp.get((alpha[y], f.f1.mapping[m]))
        right = b.comp.get((g.f1.mapping[m], alpha[x]))
        if left is None or right is None:
            if b.partial:
                continue
            return Verdict.failed("naturality composite missing", m)
        if left != right:
            return Verdict.failed("naturality", m)
    return Verdict.passed()


def identity_nattrans(f: Functor) -> NatTrans:
    return NatTrans(f, f, compose_fn(f.cod.i, f.f0))


def whisker_left(h: Functor, nt: NatTrans) -> NatTrans:
    """Post-compose a transformation with a functor: components h1 . alpha."""
    if h.dom != nt.src.cod:
        raise ValidationError("whiskering functor must start at the 2-cell's codomain")
    return NatTrans(
        compose_functor(h, nt.src),
        compose_functor(h, nt.tgt),
        compose_fn(h.f1, nt.components),
        _check=False,
    )


@dataclass(frozen=True)
class GraphMorphism:
    """Structure-preserving map of graphs."""

    dom: Graph
    cod: Graph
    h0: FinFn
    h1: FinFn

    def __post_init__(self) -> None:
        if self.h0.dom != self.dom.vertices or self.h0.cod != self.cod.vertices:
            raise ValidationError("vertex map shape")
        if self.h1.dom != self.dom.edges or self.h1.cod != self.cod.edges:
            raise ValidationError("edge map shape")
        if compose_fn(self.cod.src, self.h1) != compose_fn(self.h0, self.dom.src):
            raise ValidationError("graph morphism does not respect sources")
        if compose_fn(self.cod.tgt, self.h1) != compose_fn(self.h0, self.dom.tgt):
            raise ValidationError("graph morphism does not respect targets")


def underlying_graph(c: InternalCat) -> Graph:
    """Forget composition and identities; every morphism becomes an edge."""
    return Graph(c.c0, c.c1, c.d0, c.d1)


# ---------------------------------------------------------------------------
# Discrete / indiscrete and the objects functor


def disc(x: FinObj) -> InternalCat:
    """Discrete category: only identity morphisms, labelled by the elements."""
    ident = identity_fn(x)
    return InternalCat(x, x, ident, ident, ident, {(e, e): e for e in x})


def indisc(x: FinObj) -> InternalCat:
    """Indiscrete category: exactly one morphism (a|b) from a to b."""
    labels = [(a, b) for a in x for b in x]
    c1 = FinObj(tuple(pair_label(a, b) for a, b in labels))
    d0 = FinFn(c1, x, {pair_label(a, b): a for a, b in labels})
    d1 = FinFn(c1, x, {pair_label(a, b): b for a, b in labels})
    i = FinFn(x, c1, {a: pair_label(a, a) for a in x})
    comp = {
        (pair_label(b, c), pair_label(a, b2)): pair_label(a, c)
        for a, b2 in labels
        for b, c in labels
        if b == b2
    }
    return InternalCat(x, c1, d0, d1, i, comp)


def objects_of(c: InternalCat) -> FinObj:
    return c.c0


def is_discrete(c: InternalCat) -> bool:
    return len(c.c1) == len(c.c0) and all(c.is_identity(f) for f in c.c1)


def counit_from_discrete(c: InternalCat) -> Functor:
    """The counit disc(C0) -> C of the disc -| objects adjunction."""
    return Functor(disc(c.c0), c, identity_fn(c.c0), c.i)


# ---------------------------------------------------------------------------
# Products and the arrow category (power by the free arrow)


@dataclass(frozen=True)
class CatProduct:
    cat: InternalCat
    p1: Functor
    p2: Functor

    def pair(self, f: Functor, g: Functor) -> Functor:
        """The unique functor into the product with the given projections."""
        if f.dom != g.dom:
            raise ValidationError("pairing needs functors with a shared domain")
        f0 = FinFn(
            f.dom.c0,
            self.cat.c0,
            {x: pair_label(f.f0.mapping[x], g.f0.mapping[x]) for x in f.dom.c0},
        )
        f1 = FinFn(
            f.dom.c1,
            self.cat.c1,
            {m: pair_label(f.f1.mapping[m], g.f1.mapping[m]) for m in f.dom.c1},
        )
        return Functor(f.dom, self.cat, f0, f1)


def product_cat(a: InternalCat, b: InternalCat) -> CatProduct:
    """Levelwise cartesian product with componentwise composition."""
    obj_pairs = [(x, y) for x in a.c0 for y in b.c0]
    mor_pairs = [(f, g) for f in a.c1 for g in b.c1]
    c0 = FinObj(tuple(pair_label(x, y) for x, y in obj_pairs))
    c1 = FinObj(tuple(pair_label(f, g) for f, g in mor_pairs))
    d0 = FinFn(
        c1, c0,
        {pair_label(f, g): pair_label(a.d0.mapping[f], b.d0.mapping[g]) for f, g in mor_pairs},
    )
    d1 = FinFn(
        c1, c0,
        {pair_label(f, g): pair_label(a.d1.mapping[f], b.d1.mapping[g]) for f, g in mor_pairs},
    )
    i = FinFn(
        c0, c1,
        {pair_label(x, y): pair_label(a.i.mapping[x], b.i.mapping[y]) for x, y in obj_pairs},
    )
    comp = {}
    for (g1, g2) in mor_pairs:
        for (f1, f2) in mor_pairs:
            if (g1, f1) in a.comp and (g2, f2) in b.comp:
                comp[(pair_label(g1, g2), pair_label(f1, f2))] = pair_label(
                    a.comp[(g1, f1)], b.comp[(g2, f2)]
                )
    cat = InternalCat(c0, c1, d0, d1, i, comp, partial=a.partial or b.partial)
    p1 = Functor(
        cat, a,
        FinFn(c0, a.c0, {pair_label(x, y): x for x, y in obj_pairs}),
        FinFn(c1, a.c1, {pair_label(f, g): f for f, g in mor_pairs}),
    )
    p2 = Functor(
        cat, b,
        FinFn(c0, b.c0, {pair_label(x, y): y for x, y in obj_pairs}),
        FinFn(c1, b.c1, {pair_label(f, g): g for f, g in mor_pairs}),
    )
    return CatProduct(cat, p1, p2)


def _square_label(f: str, g: str, u: str, v: str) -> str:
    return _tuple_label((f, g, u, v))


@dataclass(frozen=True)
class ArrowCategory:
    """Power by the free arrow: objects are morphisms, arrows are squares.

    ``transpose`` and ``untranspose`` mediate between natural
    transformations F => G and functors into this category whose endpoint
    projections are F and G.
    """

    cat: InternalCat
    base: InternalCat
    proj_src: Functor
    proj_tgt: Functor

    def transpose(self, nt: NatTrans) -> Functor:
        if nt.src.cod != self.base:
            raise ValidationError("transformation does not land in this base")
        a = nt.src.dom
        alpha = nt.components.mapping
        f0 = FinFn(a.c0, self.cat.c0, dict(alpha))
        f1 = FinFn(
            a.c1,
            self.cat.c1,
            {
                m: _square_label(
                    alpha[a.d0.mapping[m]],
                    alpha[a.d1.mapping[m]],
                    nt.src.f1.mapping[m],
                    nt.tgt.f1.mapping[m],
                )
                for m in a.c1
            },
        )
        return Functor(a, self.cat, f0, f1)

    def untranspose(self, fun: Functor) -> NatTrans:
        if fun.cod != self.cat:
            raise ValidationError("functor does not land in the arrow category")
        return NatTrans(
            compose_functor(self.proj_src, fun),
            compose_functor(self.proj_tgt, fun),
            FinFn(fun.dom.c0, self.base.c1, dict(fun.f0.mapping)),
        )


def arrow_category(b: InternalCat) -> ArrowCategory:
    """Commuting-squares category of ``b``."""
    d0, d1 = b.d0.mapping, b.d1.mapping
    squares = []
    for f in b.c1:
        for g in b.c1:
            for u in b.c1:
                if d0[u] != d0[f] or d1[u] != d0[g]:
                    continue
                for v in b.c1:
                    if d0[v] != d1[f] or d1[v] != d1[g]:
                        continue
                    if b.comp[(v, f)] == b.comp[(g, u)]:
                        squares.append((f, g, u, v))
    c0 = b.c1
    c1 = FinObj(tuple(_square_label(*s) for s in squares))
    sd0 = FinFn(c1, c0, {_square_label(*s): s[0] for s in squares})
    sd1 = FinFn(c1, c0, {_square_label(*s): s[1] for s in squares})
    ident = FinFn(
        c0,
        c1,
        {
            f: _square_label(f, f, b.i.mapping[d0[f]], b.i.mapping[d1[f]])
            for f in b.c1
        },
    )
    comp = {}
    by_target: dict[str, list[tuple[str, str, str, str]]] = {}
    for s in squares:
        by_target.setdefault(s[1], []).append(s)
    for s2 in squares:  # s2: g -> h
        for s1 in by_target.get(s2[0], ()):  # s1: f -> g
            f, g, u1, v1 = s1
            _, h, u2, v2 = s2
            comp[(_square_label(*s2), _square_label(*s1))] = _square_label(
                f, h, b.comp[(u2, u1)], b.comp[(v2, v1)]
            )
    cat = InternalCat(c0, c1, sd0, sd1, ident, comp)
    proj_src = Functor(
        cat, b, FinFn(c0, b.c0, {f: d0[f] for f in b.c1}),
        FinFn(c1, b.c1, {_square_label(*s): s[2] for s in squares}),
    )
    proj_tgt = Functor(
        cat, b, FinFn(c0, b.c0, {f: d1[f] for f in b.c1}),
        FinFn(c1, b.c1, {_square_label(*s): s[3] for s in squares}),
    )
    return ArrowCategory(cat, b, proj_src, proj_tgt)


# ---------------------------------------------------------------------------
# Paths


@dataclass(frozen=True)
class Path:
    """A directed edge sequence with its endpoints; edges in diagram order."""

    src: str
    tgt: str
    edges: tuple[str, ...]

    @property
    def label(self) -> str:
        if not self.edges:
            return f"id:{self.src}"
        return ";".join(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def sort_key(self) -> tuple:
        return (len(self.edges), self.edges, self.src)


def empty_path(vertex: str) -> Path:
    return Path(vertex, vertex, ())


def concat_paths(first: Path, second: Path) -> Path:
    """Diagram-order concatenation: ``first`` then ``second``."""
    if first.tgt != second.src:
        raise ValueError(f"paths do not concatenate: {first.tgt} != {second.src}")
    return Path(first.src, second.tgt, first.edges + second.edges)


def paths_up_to(g: Graph, n: int) -> list[Path]:
    """All paths of length at most n, in canonical (length, edges) order."""
    if n < 0:
        raise ValueError("length bound must be non-negative")
    out_edges: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in sorted(g.edges):
        out_edges[g.src.mapping[e]].append(e)
    level = [empty_path(v) for v in g.vertices]
    result = list(level)
    for _ in range(n):
        level = [
            Path(p.src, g.tgt.mapping[e], p.edges + (e,))
            for p in level
            for e in out_edges[p.tgt]
        ]
        if not level:
            break
        result.extend(level)
    return sorted(result, key=Path.sort_key)


# ---------------------------------------------------------------------------
# Isomorphism search


def _morphism_bijections(a: InternalCat, b: InternalCat, f0: FinFn):
    """Yield candidate morphism bijections compatible with f0 and structure."""
    slots: dict[tuple[str, str, bool], list[str]] = {}
    for m in b.c1:
        sig = (b.d0.mapping[m], b.d1.mapping[m], b.is_identity(m))
        slots.setdefault(sig, []).append(m)
    grouped: dict[tuple[str, str, bool], list[str]] = {}
    for m in a.c1:
        sig = (
            f0.mapping[a.d0.mapping[m]],
            f0.mapping[a.d1.mapping[m]],
            a.is_identity(m),
        )
        grouped.setdefault(sig, []).append(m)
    if set(grouped) != {s for s in slots if slots[s]} and sorted(
        len(v) for v in grouped.values()
    ) != sorted(len(v) for v in slots.values()):
        return
    for sig, sources in grouped.items():
        if len(slots.get(sig, ())) != len(sources):
            return
    sigs = sorted(grouped)
    choices = [permutations(slots[s]) for s in sigs]
    for assignment in product(*choices):
        mapping: dict[str, str] = {}
        for sig, perm in zip(sigs, assignment):
            for m, target in zip(grouped[sig], perm):
                mapping[m] = target
        yield mapping


def find_isomorphism(
    a: InternalCat, b: InternalCat, on_objects: FinFn | None = None
) -> Functor | None:
    """Search for an isomorphism a -> b; exhaustive at desk scale.

    When ``on_objects`` is given (or the object sets coincide, in which
    case the identity is tried first) only morphism bijections over that
    object map are searched.
    """
    if len(a.c0) != len(b.c0) or len(a.c1) != len(b.c1) or a.partial != b.partial:
        return None

    def try_object_map(f0: FinFn) -> Functor | None:
        for mapping in _morphism_bijections(a, b, f0):
            f1 = FinFn(a.c1, b.c1, mapping)
            candidate = Functor(a, b, f0, f1, _check=False)
            if validate_functor(candidate):
                return candidate
        return None

    if on_objects is not None:
        return try_object_map(on_objects)
    if a.c0 == b.c0:
        found = try_object_map(identity_fn(a.c0))
        if found is not None:
            return found
    for perm in permutations(b.c0.elements):
        f0 = FinFn(a.c0, b.c0, dict(zip(a.c0.elements, perm)))
        found = try_object_map(f0)
        if found is not None:
            return found
    return None


def canonically_isomorphic(a: InternalCat, b: InternalCat) -> bool:
    return find_isomorphism(a, b) is not None
