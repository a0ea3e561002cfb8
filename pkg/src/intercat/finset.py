"""Finite named sets and functions: the ambient category for everything else.

Objects are sets of string labels, morphisms are explicit total mappings.
All constructions are exact and deterministic so that outputs are stable
across runs: quotient classes are named by their lexicographically least
member, pullback pairs by ``(x|y)``, coproduct summands by ``i.x`` tags.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DomainMismatch, NotCoequalising, ShapeMismatch


@dataclass(frozen=True)
class Verdict:
    """Outcome of a law or property check, with a witness on failure.

    ``witness`` carries whatever small structure pins the verdict down: a
    violating element, a counterexample pair, or (for positive verdicts
    that promise one) an isomorphism.
    """

    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def passed(witness: object = None) -> "Verdict":
        return Verdict(True, "", witness)

    @staticmethod
    def failed(reason: str, witness: object = None) -> "Verdict":
        return Verdict(False, reason, witness)


@dataclass(frozen=True)
class FinObj:
    """A finite set of distinct string labels, kept in sorted order."""

    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(self.elements))
        if len(set(elems)) != len(elems):
            raise ValueError(f"duplicate labels in finite set: {elems}")
        object.__setattr__(self, "elements", elems)

    def __contains__(self, label: str) -> bool:
        return label in set(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FinObj({list(self.elements)!r})"


def fin(*labels: str) -> FinObj:
    """Convenience constructor: ``fin("a", "b")``."""
    return FinObj(tuple(labels))


class FinFn:
    """A total function between finite sets, given by an explicit table."""

    __slots__ = ("dom", "cod", "mapping", "_hash")

    def __init__(self, dom: FinObj, cod: FinObj, mapping: Mapping[str, str]):
        mapping = dict(mapping)
        if set(mapping) != set(dom.elements):
            missing = set(dom.elements) - set(mapping)
            extra = set(mapping) - set(dom.elements)
            raise ValueError(
                f"mapping must be defined on exactly the domain; "
                f"missing={sorted(missing)} extra={sorted(extra)}"
            )
        cod_set = set(cod.elements)
        for x, y in mapping.items():
            if y not in cod_set:
                raise ValueError(f"image {y!r} of {x!r} is not in the codomain")
        self.dom = dom
        self.cod = cod
        self.mapping = mapping
        self._hash: int | None = None

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFn):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.mapping == other.mapping
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dom, self.cod, tuple(sorted(self.mapping.items()))))
        return self._hash

    def __repr__(self) -> str:
        items = ", ".join(f"{x}->{y}" for x, y in sorted(self.mapping.items()))
        return f"FinFn({items})"

    def is_identity(self) -> bool:
        return self.dom == self.cod and all(x == y for x, y in self.mapping.items())

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.cod.elements)

    def is_injective(self) -> bool:
        values = list(self.mapping.values())
        return len(set(values)) == len(values)

    def is_bijective(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def inverse(self) -> "FinFn":
        if not self.is_bijective():
            raise ValueError("only bijections can be inverted")
        return FinFn(self.cod, self.dom, {y: x for x, y in self.mapping.items()})


def identity_fn(x: FinObj) -> FinFn:
    return FinFn(x, x, {e: e for e in x})


def compose_fn(g: FinFn, f: FinFn) -> FinFn:
    """The composite ``g after f``."""
    if f.cod != g.dom:
        raise DomainMismatch(f"cannot compose: {f.cod} != {g.dom}")
    return FinFn(f.dom, g.cod, {x: g.mapping[y] for x, y in f.mapping.items()})


def compose_maps(outer: Mapping[str, str], inner: Mapping[str, str]) -> dict[str, str]:
    """Raw table composition, for hot loops that skip FinFn construction."""
    return {x: outer[y] for x, y in inner.items()}


def terminal() -> FinObj:
    return fin("*")


def bang(x: FinObj) -> FinFn:
    """The unique map to the terminal object."""
    return FinFn(x, terminal(), {e: "*" for e in x})


# ---------------------------------------------------------------------------
# Coproducts


@dataclass(frozen=True)
class Coproduct:
    """Tagged disjoint union with its injections and copairing."""

    obj: FinObj
    injections: tuple[FinFn, ...]

    def copair(self, fns: Sequence[FinFn]) -> FinFn:
        """The unique map out of the coproduct commuting with the injections."""
        if len(fns) != len(self.injections):
            raise DomainMismatch(
                f"copairing needs {len(self.injections)} maps, got {len(fns)}"
            )
        if fns and any(f.cod != fns[0].cod for f in fns):
            raise DomainMismatch("copairing maps must share a codomain")
        for f, inj in zip(fns, self.injections):
            if f.dom != inj.dom:
                raise DomainMismatch("copairing map domain does not match summand")
        cod = fns[0].cod if fns else fin()
        mapping: dict[str, str] = {}
        for f, inj in zip(fns, self.injections):
            for x in f.dom:
                mapping[inj.mapping[x]] = f.mapping[x]
        return FinFn(self.obj, cod, mapping)


def coproduct(xs: Sequence[FinObj]) -> Coproduct:
    """Disjoint union; the i-th summand's ``x`` becomes ``"i.x"``."""
    elements: list[str] = []
    injections: list[FinFn] = []
    for i, x in enumerate(xs):
        tag = {e: f"{i}.{e}" for e in x}
        elements.extend(tag.values())
    obj = FinObj(tuple(elements))
    for i, x in enumerate(xs):
        injections.append(FinFn(x, obj, {e: f"{i}.{e}" for e in x}))
    return Coproduct(obj, tuple(injections))


# ---------------------------------------------------------------------------
# Pullbacks, products, equalizers


def pair_label(x: str, y: str) -> str:
    return f"({x}|{y})"


@dataclass(frozen=True)
class Pullback:
    """Carrier ``{(x|y) : f(x) = g(y)}`` with projections and mediator."""

    obj: FinObj
    p1: FinFn
    p2: FinFn

    def mediate(self, u: FinFn, v: FinFn) -> FinFn:
        """The unique map into the pullback from a commuting cone (u, v)."""
        if u.dom != v.dom:
            raise DomainMismatch("cone legs must share a domain")
        if u.cod != self.p1.cod or v.cod != self.p2.cod:
            raise DomainMismatch("cone legs must land in the pullback feet")
        mapping = {}
        carrier = set(self.obj.elements)
        for w in u.dom:
            label = pair_label(u.mapping[w], v.mapping[w])
            if label not in carrier:
                raise ShapeMismatch(f"cone does not commute at {w!r}")
            mapping[w] = label
        return FinFn(u.dom, self.obj, mapping)


def pullback(f: FinFn, g: FinFn) -> Pullback:
    """Pullback of a cospan ``f: X -> Z <- Y :g``."""
    if f.cod != g.cod:
        raise DomainMismatch(f"pullback needs a cospan: {f.cod} != {g.cod}")
    pairs = [
        (x, y) for x in f.dom for y in g.dom if f.mapping[x] == g.mapping[y]
    ]
    obj = FinObj(tuple(pair_label(x, y) for x, y in pairs))
    p1 = FinFn(obj, f.dom, {pair_label(x, y): x for x, y in pairs})
    p2 = FinFn(obj, g.dom, {pair_label(x, y): y for x, y in pairs})
    return Pullback(obj, p1, p2)


def product_obj(x: FinObj, y: FinObj) -> Pullback:
    """Cartesian product, as the pullback over the terminal object."""
    return pullback(bang(x), bang(y))


@dataclass(frozen=True)
class Equalizer:
    obj: FinObj
    include: FinFn


def equalizer(f: FinFn, g: FinFn) -> Equalizer:
    """The subset ``{x : f(x) = g(x)}`` with its inclusion."""
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("equalizer needs a parallel pair")
    kept = tuple(x for x in f.dom if f.mapping[x] == g.mapping[x])
    obj = FinObj(kept)
    return Equalizer(obj, FinFn(obj, f.dom, {x: x for x in kept}))


# ---------------------------------------------------------------------------
# Coequalizers


class _UnionFind:
    """Union-find with path compression over string keys."""

    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}

    def find(self, x: str) -> str:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: str, y: str) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def classes(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return {root: sorted(members) for root, members in out.items()}


@dataclass(frozen=True)
class Coequalizer:
    """Canonical surjection onto equivalence classes, plus its mediator."""

    obj: FinObj
    q: FinFn

    def mediate(self, r: FinFn) -> FinFn:
        """Factor a coequalising map ``r`` through ``q``.

        Requires ``r`` constant on each class; raises NotCoequalising
        otherwise.
        """
        if r.dom != self.q.dom:
            raise DomainMismatch("map must start where the coequalizer starts")
        mapping: dict[str, str] = {}
        for y in r.dom:
            cls = self.q.mapping[y]
            val = r.mapping[y]
            if cls in mapping and mapping[cls] != val:
                raise NotCoequalising(
                    f"map is not constant on class {cls!r}: {mapping[cls]!r} vs {val!r}"
                )
            mapping[cls] = val
        return FinFn(self.obj, r.cod, mapping)


def coequalizer(f: FinFn, g: FinFn) -> Coequalizer:
    """Quotient of the codomain by the relation generated by f(x) ~ g(x).

    Classes are named by their lexicographically least member.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("coequalizer needs a parallel pair")
    uf = _UnionFind(f.cod)
    for x in f.dom:
        uf.union(f.mapping[x], g.mapping[x])
    classes = uf.classes()
    names = {root: members[0] for root, members in classes.items()}
    obj = FinObj(tuple(names.values()))
    q = FinFn(f.cod, obj, {y: names[uf.find(y)] for y in f.cod})
    return Coequalizer(obj, q)


# ---------------------------------------------------------------------------
# Pullback stability of coequalizers


def pullback_stability_check(
    f: FinFn, g: FinFn, h: FinFn, base: FinFn
) -> Verdict:
    """Compare coequalize-then-pullback against pullback-then-coequalize.

    ``f, g: X -> Y`` is a parallel pair, ``h: Y -> B`` puts it over the
    codomain of ``base: A -> B``, and the pair is pulled back along
    ``base``.  Over finite sets the two routes always agree; the verdict
    carries the comparison isomorphism as its witness.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("stability check needs a parallel pair")
    if h.dom != f.cod or base.cod != h.cod:
        raise DomainMismatch("structure maps do not line up")
    if compose_fn(h, f) != compose_fn(h, g):
        raise ShapeMismatch("slice data does not commute: h.f != h.g")

    # Route 1: coequalize in the slice, then pull back the quotient.
    coeq = coequalizer(f, g)
    c_over = coeq.mediate(h)
    route1 = pullback(base, c_over)

    # Route 2: pull back the whole diagram, then coequalize.
    pb_y = pullback(base, h)
    pb_x = pullback(base, compose_fn(h, f))
    f_pulled = pb_y.mediate(pb_x.p1, compose_fn(f, pb_x.p2))
    g_pulled = pb_y.mediate(pb_x.p1, compose_fn(g, pb_x.p2))
    coeq2 = coequalizer(f_pulled, g_pulled)

    # Canonical comparison: class of (a|y) maps to (a|q(y)).
    into_route1 = route1.mediate(pb_y.p1, compose_fn(coeq.q, pb_y.p2))
    try:
        comparison = coeq2.mediate(into_route1)
    except NotCoequalising as exc:
        return Verdict.failed(f"comparison map ill-defined: {exc}")
    if not comparison.is_bijective():
        return Verdict.failed(
            "comparison map is not a bijection", witness=comparison
        )
    return Verdict.passed(witness=comparison)
