"""Independent brute-force verifiers for the colimit constructions.

Everything here quantifies over finite test families by exhaustive
enumeration and never reuses the construction code it is checking: free
categories are rebuilt from raw path enumeration, universal properties
are checked by counting factorisations among all functors.  By
convention this module may consume values produced by
:mod:`intercat.colimits` but never imports its internals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .errors import (
    CyclicGraph,
    InexactInput,
    InvalidCocone,
    NotCoequalising,
    NotCoequifying,
)
from .finset import FinFn, FinObj, Verdict, compose_maps, fin, identity_fn
from .graphcat import (
    Functor,
    Graph,
    GraphMorphism,
    InternalCat,
    NatTrans,
    compose_functor,
    underlying_graph,
    validate_category,
    validate_nattrans,
)


# ---------------------------------------------------------------------------
# Functor enumeration


def _assembly_plan(a: InternalCat) -> tuple[list[str], dict[str, tuple[str, str]]]:
    """Split morphisms into free choices and composition-forced ones.

    Returns the generator list (morphisms with no proper non-identity
    factorization among already-decided morphisms) and, for each forced
    morphism, one decomposition whose factors are decided earlier.
    """
    identities = a.identities()
    decided = set(identities)
    decomposition: dict[str, tuple[str, str]] = {}
    generators: list[str] = []
    pending = [m for m in sorted(a.c1) if m not in decided]
    factorizations: dict[str, list[tuple[str, str]]] = {m: [] for m in pending}
    for (g, f), gf in a.comp.items():
        if gf in factorizations and g != gf and f != gf:
            if g not in identities and f not in identities:
                factorizations[gf].append((g, f))
    while pending:
        progressed = False
        remaining = []
        for m in pending:
            usable = next(
                (
                    (g, f)
                    for g, f in sorted(factorizations[m])
                    if g in decided and f in decided
                ),
                None,
            )
            if usable is not None:
                decomposition[m] = usable
                decided.add(m)
                progressed = True
            else:
                remaining.append(m)
        if not progressed:
            # promote the least undecidable morphism to a generator
            head = remaining.pop(0)
            generators.append(head)
            decided.add(head)
        pending = remaining
    # generators must come out in canonical order regardless of promotion order
    return sorted(generators), decomposition


_functor_cache: dict[tuple, tuple[Functor, ...]] = {}


def enumerate_functors(a: InternalCat, b: InternalCat) -> tuple[Functor, ...]:
    """All functors a -> b, canonically ordered; complete by construction.

    Backtracks over object maps and generator images; images of composite
    morphisms are forced through a fixed factorization, and the full
    composition law is re-checked on every candidate.
    """
    cache_key = (a.key, b.key)
    cached = _functor_cache.get(cache_key)
    if cached is not None:
        return cached

    generators, decomposition = _assembly_plan(a)
    # forced morphisms must follow their factors
    order = generators + _topo_forced(decomposition)

    d0a, d1a = a.d0.mapping, a.d1.mapping
    d0b, d1b = b.d0.mapping, b.d1.mapping
    by_signature: dict[tuple[str, str], list[str]] = {}
    for m in b.c1:
        by_signature.setdefault((d0b[m], d1b[m]), []).append(m)
    for v in by_signature.values():
        v.sort()

    results: list[Functor] = []
    objects = a.c0.elements
    for images in product(sorted(b.c0), repeat=len(objects)):
        f0 = dict(zip(objects, images))
        f1: dict[str, str] = {
            a.i.mapping[x]: b.i.mapping[f0[x]] for x in a.c0
        }

        def backtrack(idx: int) -> None:
            if idx == len(order):
                if _composition_law_holds(a, b, f1):
                    results.append(
                        Functor(
                            a, b,
                            FinFn(a.c0, b.c0, dict(f0)),
                            FinFn(a.c1, b.c1, dict(f1)),
                            _check=False,
                        )
                    )
                return
            m = order[idx]
            if m in decomposition:
                g, f = decomposition[m]
                image = b.comp.get((f1[g], f1[f]))
                if image is None:
                    return
                f1[m] = image
                backtrack(idx + 1)
                del f1[m]
                return
            signature = (f0[d0a[m]], f0[d1a[m]])
            for image in by_signature.get(signature, ()):
                f1[m] = image
                backtrack(idx + 1)
            f1.pop(m, None)

        backtrack(0)

    out = tuple(results)
    _functor_cache[cache_key] = out
    return out


def _topo_forced(decomposition: dict[str, tuple[str, str]]) -> list[str]:
    ordered: list[str] = []
    placed: set[str] = set()

    def place(m: str) -> None:
        if m in placed or m not in decomposition:
            return
        g, f = decomposition[m]
        place(g)
        place(f)
        placed.add(m)
        ordered.append(m)

    for m in sorted(decomposition):
        place(m)
    return ordered


def _composition_law_holds(a: InternalCat, b: InternalCat, f1: dict[str, str]) -> bool:
    comp_b = b.comp
    for (g, f), gf in a.comp.items():
        image = comp_b.get((f1[g], f1[f]))
        if image is None or image != f1[gf]:
            return False
    return True


def enumerate_graph_morphisms(g: Graph, h: Graph) -> tuple[GraphMorphism, ...]:
    """All graph morphisms g -> h, canonically ordered."""
    results = []
    vs = g.vertices.elements
    for images in product(sorted(h.vertices), repeat=len(vs)):
        h0 = dict(zip(vs, images))
        candidates = []
        possible = True
        for e in sorted(g.edges):
            fits = [
                e2
                for e2 in sorted(h.edges)
                if h.src.mapping[e2] == h0[g.src.mapping[e]]
                and h.tgt.mapping[e2] == h0[g.tgt.mapping[e]]
            ]
            if not fits:
                possible = False
                break
            candidates.append((e, fits))
        if not possible:
            continue
        for combo in product(*(fits for _, fits in candidates)):
            h1 = dict(zip((e for e, _ in candidates), combo))
            results.append(
                GraphMorphism(
                    g, h,
                    FinFn(g.vertices, h.vertices, h0),
                    FinFn(g.edges, h.edges, h1),
                )
            )
    return tuple(results)


def enumerate_nattrans(f: Functor, g: Functor) -> tuple[NatTrans, ...]:
    """All natural transformations f => g, canonically ordered."""
    if f.dom != g.dom or f.cod != g.cod:
        return ()
    a, b = f.dom, f.cod
    d0b, d1b = b.d0.mapping, b.d1.mapping
    slots = []
    for x in a.c0.elements:
        fits = sorted(
            m for m in b.c1
            if d0b[m] == f.f0.mapping[x] and d1b[m] == g.f0.mapping[x]
        )
        if not fits:
            return ()
        slots.append(fits)
    results = []
    for combo in product(*slots):
        alpha = dict(zip(a.c0.elements, combo))
        ok = True
        for m in a.c1:
            x, y = a.d0.mapping[m], a.d1.mapping[m]
            if b.comp[(alpha[y], f.f1.mapping[m])] != b.comp[(g.f1.mapping[m], alpha[x])]:
                ok = False
                break
        if ok:
            results.append(
                NatTrans(f, g, FinFn(a.c0, b.c1, alpha), _check=False)
            )
    return tuple(results)


# ---------------------------------------------------------------------------
# The exhaustive test family


@dataclass(frozen=True)
class TestFamily:
    """All categories up to isomorphism within (object, morphism) caps."""

    categories: tuple[InternalCat, ...]
    caps: tuple[int, int]


def _canonical_key(cat: InternalCat) -> tuple:
    """Isomorphism-invariant encoding: minimum over structure relabellings."""
    n_obj = len(cat.c0)
    objs = cat.c0.elements
    identities = cat.identities()
    best: tuple | None = None
    for obj_perm in permutations(range(n_obj)):
        rank = {objs[k]: obj_perm[k] for k in range(n_obj)}
        groups: dict[tuple, list[str]] = {}
        for m in cat.c1:
            if m in identities:
                continue
            sig = (rank[cat.d0.mapping[m]], rank[cat.d1.mapping[m]])
            groups.setdefault(sig, []).append(m)
        sigs = sorted(groups)
        for assignment in product(*(permutations(groups[s]) for s in sigs)):
            number: dict[str, int] = {}
            for x in objs:
                number[cat.i.mapping[x]] = rank[x]
            counter = n_obj
            for sig, perm in zip(sigs, assignment):
                for m in perm:
                    number[m] = counter
                    counter += 1
            encoding = (
                n_obj,
                tuple(sorted((number[m], rank[cat.d0.mapping[m]], rank[cat.d1.mapping[m]]) for m in cat.c1)),
                tuple(sorted(
                    (number[g], number[f], number[gf])
                    for (g, f), gf in cat.comp.items()
                )),
            )
            if best is None or encoding < best:
                best = encoding
    if best is None:  # no objects at all
        best = (0, (), ())
    return best


def _enumerate_composition_tables(
    c0: FinObj,
    c1: FinObj,
    d0: dict[str, str],
    d1: dict[str, str],
    ident: dict[str, str],
):
    """Backtrack over lawful composition tables for fixed morphism data."""
    identities = set(ident.values())
    comp: dict[tuple[str, str], str] = {}
    pairs = [(g, f) for g in c1 for f in c1 if d0[g] == d1[f]]
    for g, f in pairs:
        if f in identities:
            comp[(g, f)] = g
        elif g in identities:
            comp[(g, f)] = f
    free_cells = [
        (g, f) for g, f in pairs
        if g not in identities and f not in identities
    ]
    candidates = {
        (g, f): sorted(m for m in c1 if d0[m] == d0[f] and d1[m] == d1[g])
        for g, f in free_cells
    }

    triples = [
        (h, g, f) for (h, g) in pairs for (g2, f) in pairs if g2 == g
    ]

    def no_violation() -> bool:
        # associativity on every triple whose four cells are all decided;
        # complete, so leaves of the search are lawful tables
        get = comp.get
        for h, g, f in triples:
            gf = get((g, f))
            hg = get((h, g))
            if gf is None or hg is None:
                continue
            left = get((h, gf))
            right = get((hg, f))
            if left is not None and right is not None and left != right:
                return False
        return True

    def backtrack(idx: int):
        if idx == len(free_cells):
            yield dict(comp)
            return
        cell = free_cells[idx]
        for value in candidates[cell]:
            comp[cell] = value
            if no_violation():
                yield from backtrack(idx + 1)
            del comp[cell]

    yield from backtrack(0)


def _signature_multisets(n_obj: int, n_extra: int):
    """Sorted multisets of (src, tgt) index pairs for non-identity morphisms."""
    sig_choices = [(s, t) for s in range(n_obj) for t in range(n_obj)]

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            yield tuple(acc)
            return
        for k in range(start, len(sig_choices)):
            acc.append(sig_choices[k])
            yield from rec(k, remaining - 1, acc)
            acc.pop()

    yield from rec(0, n_extra, [])


@lru_cache(maxsize=None)
def build_test_family(max_objects: int = 2, max_morphisms: int = 5) -> TestFamily:
    """Enumerate every category within the caps, one per isomorphism class.

    Identity morphisms count toward the morphism cap, so one-object
    members are exactly the monoids of order up to the cap.
    """
    seen: dict[tuple, InternalCat] = {}
    empty = InternalCat(
        fin(), fin(),
        FinFn(fin(), fin(), {}), FinFn(fin(), fin(), {}),
        FinFn(fin(), fin(), {}), {},
    )
    seen[_canonical_key(empty)] = empty
    for n_obj in range(1, max_objects + 1):
        objs = fin(*(f"x{k}" for k in range(n_obj)))
        obj_list = objs.elements
        for n_extra in range(0, max_morphisms - n_obj + 1):
            names = [f"m{k}" for k in range(n_extra)]
            for sigs in _signature_multisets(n_obj, n_extra):
                labels = list(obj_list) + names
                c1 = fin(*labels)
                d0 = {x: x for x in obj_list}
                d1 = {x: x for x in obj_list}
                ident = {x: x for x in obj_list}
                for name, (s, t) in zip(names, sigs):
                    d0[name] = obj_list[s]
                    d1[name] = obj_list[t]
                for comp in _enumerate_composition_tables(objs, c1, d0, d1, ident):
                    candidate = InternalCat.unchecked(
                        objs, c1,
                        FinFn(c1, objs, d0), FinFn(c1, objs, d1),
                        FinFn(objs, c1, ident), comp,
                    )
                    if not validate_category(candidate):
                        continue
                    key = _canonical_key(candidate)
                    if key not in seen:
                        seen[key] = InternalCat(
                            objs, c1,
                            FinFn(c1, objs, d0), FinFn(c1, objs, d1),
                            FinFn(objs, c1, ident), comp,
                        )
    ordered = tuple(seen[k] for k in sorted(seen))
    return TestFamily(ordered, (max_objects, max_morphisms))


# ---------------------------------------------------------------------------
# Universal-property verifiers


def verify_coequaliser(
    f: Functor, g: Functor, q: Functor, fam: TestFamily
) -> Verdict:
    """Check the coequalizer universal property against a test family.

    For every functor R out of B into a family member that coequalises
    (f, g), exactly one S with S . q = R must exist.
    """
    if (
        compose_maps(q.f0.mapping, f.f0.mapping) != compose_maps(q.f0.mapping, g.f0.mapping)
        or compose_maps(q.f1.mapping, f.f1.mapping) != compose_maps(q.f1.mapping, g.f1.mapping)
    ):
        raise NotCoequalising("q does not coequalise the pair")
    b, c = q.dom, q.cod
    for d in fam.categories:
        candidates = None
        for r in enumerate_functors(b, d):
            if compose_maps(r.f0.mapping, f.f0.mapping) != compose_maps(
                r.f0.mapping, g.f0.mapping
            ):
                continue
            if compose_maps(r.f1.mapping, f.f1.mapping) != compose_maps(
                r.f1.mapping, g.f1.mapping
            ):
                continue
            if candidates is None:
                candidates = enumerate_functors(c, d)
            matches = [
                s
                for s in candidates
                if compose_maps(s.f0.mapping, q.f0.mapping) == r.f0.mapping
                and compose_maps(s.f1.mapping, q.f1.mapping) == r.f1.mapping
            ]
            if len(matches) != 1:
                kind = "no factorisation" if not matches else "non-unique factorisation"
                return Verdict.failed(kind, witness=(d, r, len(matches)))
    return Verdict.passed()


def verify_free_unit(
    g: Graph, fc: InternalCat, eta: GraphMorphism, fam: TestFamily
) -> Verdict:
    """Check the free-category unit universal property against a family.

    Every graph morphism from g into the underlying graph of a family
    member must extend to exactly one functor out of fc.
    """
    if fc.partial:
        raise InexactInput("free category must be exact to verify its unit")
    for d in fam.categories:
        ud = underlying_graph(d)
        functors = None
        for h in enumerate_graph_morphisms(g, ud):
            if functors is None:
                functors = enumerate_functors(fc, d)
            matches = [
                fun
                for fun in functors
                if compose_maps(fun.f0.mapping, eta.h0.mapping) == h.h0.mapping
                and compose_maps(fun.f1.mapping, eta.h1.mapping) == h.h1.mapping
            ]
            if len(matches) != 1:
                kind = "no extension" if not matches else "non-unique extension"
                return Verdict.failed(kind, witness=(d, h, len(matches)))
    return Verdict.passed()


def verify_coequifier(
    a: NatTrans, b: NatTrans, e: Functor, fam: TestFamily
) -> Verdict:
    """Check the coequifier universal property against a test family."""
    if compose_maps(e.f1.mapping, a.components.mapping) != compose_maps(
        e.f1.mapping, b.components.mapping
    ):
        raise NotCoequifying("functor does not equalise the 2-cells")
    src = a.src.cod
    for d in fam.categories:
        candidates = None
        for h in enumerate_functors(src, d):
            if compose_maps(h.f1.mapping, a.components.mapping) != compose_maps(
                h.f1.mapping, b.components.mapping
            ):
                continue
            if candidates is None:
                candidates = enumerate_functors(e.cod, d)
            matches = [
                s
                for s in candidates
                if compose_maps(s.f0.mapping, e.f0.mapping) == h.f0.mapping
                and compose_maps(s.f1.mapping, e.f1.mapping) == h.f1.mapping
            ]
            if len(matches) != 1:
                kind = "no factorisation" if not matches else "non-unique factorisation"
                return Verdict.failed(kind, witness=(d, h, len(matches)))
    return Verdict.passed()


def verify_cocomma(
    f: Functor,
    g: Functor,
    cc: InternalCat,
    cocone: tuple[Functor, Functor, NatTrans],
    fam: TestFamily,
) -> Verdict:
    """Check the cocomma universal property against a test family.

    Every competing cocone (S, T, mu) with mu: S.f => T.g must factor
    through the given cocone by exactly one functor.
    """
    left, right, cell = cocone
    if left.dom != f.cod or right.dom != g.cod or left.cod != cc or right.cod != cc:
        raise InvalidCocone("cocone legs do not match the span")
    if cell.src != compose_functor(left, f) or cell.tgt != compose_functor(right, g):
        raise InvalidCocone("cocone 2-cell has the wrong boundary")
    if not validate_nattrans(cell):
        raise InvalidCocone("cocone 2-cell is not natural")
    b, c = f.cod, g.cod
    for d in fam.categories:
        s_list = enumerate_functors(b, d)
        t_list = enumerate_functors(c, d)
        u_list = None
        for s in s_list:
            sf = compose_functor(s, f)
            for t in t_list:
                tg = compose_functor(t, g)
                for mu in enumerate_nattrans(sf, tg):
                    if u_list is None:
                        u_list = enumerate_functors(cc, d)
                    matches = [
                        u
                        for u in u_list
                        if compose_maps(u.f0.mapping, left.f0.mapping) == s.f0.mapping
                        and compose_maps(u.f1.mapping, left.f1.mapping) == s.f1.mapping
                        and compose_maps(u.f0.mapping, right.f0.mapping) == t.f0.mapping
                        and compose_maps(u.f1.mapping, right.f1.mapping) == t.f1.mapping
                        and compose_maps(u.f1.mapping, cell.components.mapping)
                        == mu.components.mapping
                    ]
                    if len(matches) != 1:
                        kind = (
                            "no factorisation" if not matches else "non-unique factorisation"
                        )
                        return Verdict.failed(kind, witness=(d, s, t, mu, len(matches)))
    return Verdict.passed()


# ---------------------------------------------------------------------------
# Independent free-category oracle


def free_category_paths_oracle(g: Graph) -> InternalCat:
    """Free category on an acyclic graph by direct path enumeration.

    Intentionally separate from the colimits implementation: paths are
    grown by plain recursion and composition is literal concatenation.
    """
    if not g.is_acyclic():
        raise CyclicGraph("paths oracle needs an acyclic graph")
    out_edges: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in sorted(g.edges):
        out_edges[g.src.mapping[e]].append(e)

    paths: list[tuple[str, tuple[str, ...]]] = []

    def grow(vertex: str, acc: tuple[str, ...], origin: str) -> None:
        paths.append((origin, acc))
        for e in out_edges[vertex]:
            grow(g.tgt.mapping[e], acc + (e,), origin)

    for v in sorted(g.vertices):
        grow(v, (), v)

    def label(origin: str, edges: tuple[str, ...]) -> str:
        return f"id:{origin}" if not edges else ";".join(edges)

    def endpoint(origin: str, edges: tuple[str, ...]) -> str:
        return g.tgt.mapping[edges[-1]] if edges else origin

    c1 = fin(*(label(o, es) for o, es in paths))
    d0 = FinFn(c1, g.vertices, {label(o, es): o for o, es in paths})
    d1 = FinFn(c1, g.vertices, {label(o, es): endpoint(o, es) for o, es in paths})
    i = FinFn(g.vertices, c1, {v: f"id:{v}" for v in g.vertices})
    comp = {}
    for o2, es2 in paths:
        for o1, es1 in paths:
            if endpoint(o1, es1) == o2:
                comp[(label(o2, es2), label(o1, es1))] = label(o1, es1 + es2)
    return InternalCat(g.vertices, c1, d0, d1, i, comp)
