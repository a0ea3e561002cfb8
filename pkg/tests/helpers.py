"""Small categories and builders shared across the test modules."""

from __future__ import annotations

from intercat.finset import FinFn, fin, identity_fn
from intercat.graphcat import Functor, Graph, InternalCat, NatTrans, disc


def cat_from_table(objects, morphisms, composition):
    """Build a category from (name, src, tgt) rows; identities are id_<x>.

    ``composition`` only needs the non-identity entries; unit composites
    are filled in automatically.
    """
    c0 = fin(*objects)
    names = [f"id_{x}" for x in objects] + [m[0] for m in morphisms]
    c1 = fin(*names)
    d0 = {f"id_{x}": x for x in objects}
    d1 = {f"id_{x}": x for x in objects}
    for name, src, tgt in morphisms:
        d0[name] = src
        d1[name] = tgt
    comp = dict(composition)
    for x in objects:
        comp[(f"id_{x}", f"id_{x}")] = f"id_{x}"
    for name, src, tgt in morphisms:
        comp[(name, f"id_{src}")] = name
        comp[(f"id_{tgt}", name)] = name
    return InternalCat(
        c0, c1,
        FinFn(c1, c0, d0), FinFn(c1, c0, d1),
        FinFn(c0, c1, {x: f"id_{x}" for x in objects}),
        comp,
    )


def parallel_pair_cat():
    """Two objects x, y with two parallel arrows p, q: x -> y."""
    return cat_from_table(["x", "y"], [("p", "x", "y"), ("q", "x", "y")], {})


def chain_cat():
    """Three objects with composable arrows e1, e2 and their composite."""
    return cat_from_table(
        ["a", "b", "c"],
        [("e1", "a", "b"), ("e2", "b", "c"), ("e21", "a", "c")],
        {("e2", "e1"): "e21"},
    )


def z2_monoid():
    """One object, one involution."""
    return cat_from_table(["z"], [("e", "z", "z")], {("e", "e"): "id_z"})


def idempotent_monoid():
    return cat_from_table(["z"], [("e", "z", "z")], {("e", "e"): "e"})


def functor(dom, cod, on_objects, on_morphisms):
    f0 = dict(on_objects)
    f1 = dict(on_morphisms)
    for x in dom.c0:
        f1.setdefault(dom.i.mapping[x], cod.i.mapping[f0[x]])
    return Functor(
        dom, cod,
        FinFn(dom.c0, cod.c0, f0),
        FinFn(dom.c1, cod.c1, f1),
    )


def pick_object(cat, x):
    """The functor from the point selecting an object."""
    pt = disc(fin("*"))
    return Functor(
        pt, cat,
        FinFn(pt.c0, cat.c0, {"*": x}),
        FinFn(pt.c1, cat.c1, {"*": cat.i.mapping[x]}),
    )


def graph(vertices, edges):
    """Graph from vertex labels and (name, src, tgt) rows."""
    v = fin(*vertices)
    e = fin(*(name for name, _, _ in edges))
    return Graph(
        v, e,
        FinFn(e, v, {name: src for name, src, _ in edges}),
        FinFn(e, v, {name: tgt for name, _, tgt in edges}),
    )
