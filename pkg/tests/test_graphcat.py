import pytest

from intercat.errors import ValidationError
from intercat.finset import FinFn, compose_fn, fin, identity_fn
from intercat.graphcat import (
    Functor,
    GraphMorphism,
    InternalCat,
    NatTrans,
    arrow_category,
    compose_functor,
    disc,
    find_isomorphism,
    identity_functor,
    identity_nattrans,
    indisc,
    nerve_level,
    objects_of,
    paths_up_to,
    product_cat,
    underlying_graph,
    validate_category,
    validate_functor,
    validate_nattrans,
)
from intercat.colimits import free_arrow

from helpers import cat_from_table, chain_cat, functor, graph, parallel_pair_cat


# -- validation --------------------------------------------------------------


def test_disc_validates():
    assert validate_category(disc(fin("a", "b"))).ok


def test_free_arrow_validates():
    assert validate_category(free_arrow()).ok


def test_wrong_composite_source_reported():
    fa = free_arrow()
    bad_comp = dict(fa.comp)
    bad_comp[("u", "id_s")] = "id_t"  # target is fine, source is wrong
    bad = InternalCat.unchecked(fa.c0, fa.c1, fa.d0, fa.d1, fa.i, bad_comp)
    verdict = validate_category(bad)
    assert not verdict.ok
    assert verdict.reason == "source of composite"
    assert verdict.witness == ("u", "id_s")


def test_missing_pair_reported():
    fa = free_arrow()
    comp = dict(fa.comp)
    del comp[("id_t", "u")]
    bad = InternalCat.unchecked(fa.c0, fa.c1, fa.d0, fa.d1, fa.i, comp)
    assert validate_category(bad).reason == "composition table missing pair"


def test_broken_associativity_reported():
    # one object, two loops with a deliberately skewed table
    c0 = fin("z")
    c1 = fin("a", "b", "id_z")
    d = FinFn(c1, c0, {m: "z" for m in c1})
    i = FinFn(c0, c1, {"z": "id_z"})
    comp = {
        ("id_z", "id_z"): "id_z",
        ("a", "id_z"): "a", ("id_z", "a"): "a",
        ("b", "id_z"): "b", ("id_z", "b"): "b",
        ("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "a", ("b", "b"): "id_z",
    }
    bad = InternalCat.unchecked(c0, c1, d, d, i, comp)
    verdict = validate_category(bad)
    assert not verdict.ok
    assert verdict.reason == "associativity"


def test_constructor_refuses_invalid():
    fa = free_arrow()
    comp = dict(fa.comp)
    comp[("id_t", "u")] = "id_t"
    with pytest.raises(ValidationError):
        InternalCat(fa.c0, fa.c1, fa.d0, fa.d1, fa.i, comp)


# -- nerve levels -------------------------------------------------------------


def test_nerve_disc_level2_is_objects():
    d = disc(fin("a", "b", "c"))
    assert len(nerve_level(d, 2).carrier) == 3


def test_nerve_free_arrow_counts():
    fa = free_arrow()
    assert len(nerve_level(fa, 0).carrier) == 2
    assert len(nerve_level(fa, 1).carrier) == 3
    assert len(nerve_level(fa, 2).carrier) == 4
    assert len(nerve_level(fa, 3).carrier) == 5


def test_nerve_chain_level2():
    assert len(nerve_level(chain_cat(), 2).carrier) == 10


def test_nerve3_two_composition_orders_agree():
    for cat in (free_arrow(), chain_cat(), indisc(fin("a", "b"))):
        lvl = nerve_level(cat, 3)
        p1, p2, p3 = lvl.projections
        for t in lvl.carrier:
            h, g, f = p1.mapping[t], p2.mapping[t], p3.mapping[t]
            assert cat.comp[(h, cat.comp[(g, f)])] == cat.comp[(cat.comp[(h, g)], f)]


# -- disc / indisc / objects ---------------------------------------------------


def test_disc_objects_triangle():
    x = fin("a", "b")
    assert objects_of(disc(x)) == x


def test_disc_empty():
    d = disc(fin())
    assert len(d.c0) == 0 and len(d.c1) == 0


def test_indisc_counts():
    ind = indisc(fin("x", "y"))
    assert len(ind.c1) == 4
    assert validate_category(ind).ok


# -- products ------------------------------------------------------------------


def test_product_with_terminal_unit_iso():
    fa = free_arrow()
    prod = product_cat(fa, disc(fin("*")))
    iso = prod.p1
    inverse = prod.pair(identity_functor(fa), functor(fa, disc(fin("*")), {"s": "*", "t": "*"}, {"u": "*"}))
    assert compose_functor(iso, inverse) == identity_functor(fa)
    roundtrip = compose_functor(inverse, iso)
    assert roundtrip.f0 == identity_fn(prod.cat.c0)
    assert roundtrip.f1 == identity_fn(prod.cat.c1)


def test_product_disc_is_disc_of_product():
    prod = product_cat(disc(fin("a", "b")), disc(fin("c")))
    assert find_isomorphism(prod.cat, disc(fin("(a|c)", "(b|c)"))) is not None


def test_product_free_arrow_squared_counts():
    prod = product_cat(free_arrow(), free_arrow())
    assert len(prod.cat.c0) == 4
    assert len(prod.cat.c1) == 9


# -- arrow category -------------------------------------------------------------


def test_arrow_category_of_disc_is_disc():
    d = disc(fin("a", "b"))
    ac = arrow_category(d)
    assert find_isomorphism(ac.cat, d) is not None


def test_arrow_category_free_arrow_counts():
    ac = arrow_category(free_arrow())
    assert len(ac.cat.c0) == 3
    assert len(ac.cat.c1) == 6


def test_transpose_untranspose_roundtrip():
    b = parallel_pair_cat()
    pt = disc(fin("*"))
    f = functor(pt, b, {"*": "x"}, {})
    g = functor(pt, b, {"*": "y"}, {})
    ac = arrow_category(b)
    for component in ("p", "q"):
        nt = NatTrans(f, g, FinFn(pt.c0, b.c1, {"*": component}))
        assert ac.untranspose(ac.transpose(nt)) == nt


def test_transposition_is_bijective_on_squares():
    # functors into B^2 with endpoint projections (f, g) == 2-cells f => g
    b = parallel_pair_cat()
    pt = disc(fin("*"))
    f = functor(pt, b, {"*": "x"}, {})
    g = functor(pt, b, {"*": "y"}, {})
    ac = arrow_category(b)
    transposes = set()
    for component in ("p", "q"):
        nt = NatTrans(f, g, FinFn(pt.c0, b.c1, {"*": component}))
        tr = ac.transpose(nt)
        assert compose_functor(ac.proj_src, tr) == f
        assert compose_functor(ac.proj_tgt, tr) == g
        transposes.add(tr)
    assert len(transposes) == 2


# -- functors and natural transformations ----------------------------------------


def test_identity_functor_validates():
    assert validate_functor(identity_functor(chain_cat())).ok


def test_identity_nattrans_validates():
    assert validate_nattrans(identity_nattrans(identity_functor(free_arrow()))).ok


def test_nattrans_source_condition_reported():
    b = parallel_pair_cat()
    pt = disc(fin("*"))
    f = functor(pt, b, {"*": "x"}, {})
    g = functor(pt, b, {"*": "y"}, {})
    bad = NatTrans(f, g, FinFn(pt.c0, b.c1, {"*": "id_y"}), _check=False)
    assert validate_nattrans(bad).reason == "source condition"


def test_functor_composition_law_checked():
    ch = chain_cat()
    f1 = {m: m for m in ch.c1}
    f1["e21"] = "e1"  # break the composite image
    bad = Functor(ch, ch, identity_fn(ch.c0), FinFn(ch.c1, ch.c1, f1), _check=False)
    assert not validate_functor(bad).ok


# -- graph morphisms and paths ----------------------------------------------------


def test_graph_morphism_validation():
    g = graph(["a", "b"], [("e", "a", "b")])
    h = graph(["c"], [("l", "c", "c")])
    gm = GraphMorphism(
        g, h,
        FinFn(g.vertices, h.vertices, {"a": "c", "b": "c"}),
        FinFn(g.edges, h.edges, {"e": "l"}),
    )
    assert gm.h1.mapping["e"] == "l"
    with pytest.raises(ValidationError):
        GraphMorphism(
            h, g,
            FinFn(h.vertices, g.vertices, {"c": "a"}),
            FinFn(h.edges, g.edges, {"l": "e"}),
        )


def test_paths_no_edges():
    g = graph(["a", "b"], [])
    assert [p.label for p in paths_up_to(g, 3)] == ["id:a", "id:b"]


def test_paths_single_loop():
    g = graph(["v"], [("e", "v", "v")])
    assert [p.label for p in paths_up_to(g, 3)] == ["id:v", "e", "e;e", "e;e;e"]


def test_paths_chain():
    g = graph(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c")])
    assert len(paths_up_to(g, 2)) == 6


def test_underlying_graph_keeps_identities():
    fa = free_arrow()
    assert len(underlying_graph(fa).edges) == 3


# -- isomorphism search ------------------------------------------------------------


def test_find_isomorphism_relabelled():
    a = cat_from_table(["x", "y"], [("m", "x", "y")], {})
    b = cat_from_table(["p", "q"], [("n", "q", "p")], {})
    iso = find_isomorphism(a, b)
    assert iso is not None
    assert iso.f1.mapping["m"] == "n"


def test_find_isomorphism_distinguishes_monoids():
    z2 = cat_from_table(["z"], [("e", "z", "z")], {("e", "e"): "id_z"})
    idem = cat_from_table(["z"], [("e", "z", "z")], {("e", "e"): "e"})
    assert find_isomorphism(z2, idem) is None
