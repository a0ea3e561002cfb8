import pytest

from intercat.errors import (
    DomainMismatch,
    DomainNotDiscrete,
    NotParallel2Cells,
    NotSurjective,
    ObjectsDisagree,
)
from intercat.finset import FinFn, compose_fn, fin, identity_fn
from intercat.graphcat import (
    NatTrans,
    Path,
    compose_functor,
    disc,
    empty_path,
    find_isomorphism,
    identity_functor,
    identity_nattrans,
    validate_category,
    whisker_left,
)
from intercat.colimits import (
    Equality,
    Presentation,
    cocomma,
    coequalize,
    coequalize_from_discrete,
    coequalize_on_objects,
    coequifier,
    coinserter,
    coproduct_cat,
    copower2,
    cycles_lift_check,
    factor_through_quotient,
    free_arrow,
    free_category,
    materialize,
    pushout,
    word_problem,
)

from helpers import (
    cat_from_table,
    chain_cat,
    functor,
    graph,
    parallel_pair_cat,
    pick_object,
    z2_monoid,
)


def endpoints_pair():
    """The walking-arrow endpoint pair: terminal => free arrow."""
    fa = free_arrow()
    return pick_object(fa, "s"), pick_object(fa, "t")


def parallel_functors_pq():
    """2_E => (x,y,p,q) picking p and q; agree on objects."""
    fa = free_arrow()
    b = parallel_pair_cat()
    f = functor(fa, b, {"s": "x", "t": "y"}, {"u": "p"})
    g = functor(fa, b, {"s": "x", "t": "y"}, {"u": "q"})
    return f, g


# -- free arrow and coproducts -------------------------------------------------


def test_free_arrow_shape():
    fa = free_arrow()
    assert fa.c0.elements == ("s", "t")
    assert fa.c1.elements == ("id_s", "id_t", "u")


def test_coproduct_two_terminals_is_disc2():
    pt = disc(fin("*"))
    result = coproduct_cat([pt, pt])
    assert find_isomorphism(result.cat, disc(fin("a", "b"))) is not None


def test_coproduct_empty_family_is_initial():
    result = coproduct_cat([])
    assert len(result.cat.c0) == 0


def test_coproduct_free_arrows_counts():
    fa = free_arrow()
    result = coproduct_cat([fa, fa])
    assert len(result.cat.c0) == 4
    assert len(result.cat.c1) == 6


def test_coproduct_copair():
    fa = free_arrow()
    result = coproduct_cat([fa, fa])
    h = result.copair([identity_functor(fa), identity_functor(fa)])
    assert compose_functor(h, result.injections[0]) == identity_functor(fa)
    assert compose_functor(h, result.injections[1]) == identity_functor(fa)


# -- copowers -------------------------------------------------------------------


def test_copower_of_terminal_is_free_arrow():
    cop = copower2(disc(fin("*")))
    assert find_isomorphism(cop.cat, free_arrow()) is not None


def test_copower_disc_morphism_count():
    cop = copower2(disc(fin("a", "b", "c")))
    assert len(cop.cat.c1) == 9


def test_copower_transpose_roundtrip():
    b = parallel_pair_cat()
    pt = disc(fin("*"))
    fx = functor(pt, b, {"*": "x"}, {})
    gy = functor(pt, b, {"*": "y"}, {})
    cop = copower2(pt)
    for component in ("p", "q"):
        nt = NatTrans(fx, gy, FinFn(pt.c0, b.c1, {"*": component}))
        assert cop.untranspose(cop.transpose(nt)) == nt
    # identity 2-cells on a non-discrete domain round-trip too
    f, _ = parallel_functors_pq()
    cop2 = copower2(f.dom)
    nt = identity_nattrans(f)
    assert cop2.untranspose(cop2.transpose(nt)) == nt


# -- coequalizers of pairs agreeing on objects -----------------------------------


def test_coequalize_on_objects_identifies_parallel_arrows():
    f, g = parallel_functors_pq()
    q, trace = coequalize_on_objects(f, g)
    assert len(q.cod.c1) == 3
    assert q.f0.is_identity()
    assert validate_category(q.cod).ok


def test_coequalize_on_objects_equal_pair_is_iso():
    f, _ = parallel_functors_pq()
    q, _ = coequalize_on_objects(f, f)
    assert q.f1.is_bijective()


def test_coequalize_on_objects_empty_domain():
    b = parallel_pair_cat()
    e = disc(fin())
    f = functor(e, b, {}, {})
    q, _ = coequalize_on_objects(f, f)
    assert q.f1.is_bijective()


def test_coequalize_on_objects_rejects_disagreement():
    fa = free_arrow()
    f, g = endpoints_pair()
    with pytest.raises(ObjectsDisagree):
        coequalize_on_objects(f, g)


def test_trace_commutations():
    f, g = parallel_functors_pq()
    b = f.cod
    q, trace = coequalize_on_objects(f, g)
    from intercat.graphcat import compose_triple_fn, nerve_level

    m2 = compose_triple_fn(b)
    left = compose_fn(trace.q1, compose_fn(m2, trace.ftilde))
    right = compose_fn(trace.q1, compose_fn(m2, trace.gtilde))
    assert left == right
    # q2 and q3 commute with the projections
    lvl2 = nerve_level(b, 2)
    lvl2q = nerve_level(q.cod, 2)
    for k in range(2):
        assert compose_fn(lvl2q.projections[k], trace.q2) == compose_fn(
            trace.q1, lvl2.projections[k]
        )
    lvl3 = nerve_level(b, 3)
    lvl3q = nerve_level(q.cod, 3)
    for k in range(3):
        assert compose_fn(lvl3q.projections[k], trace.q3) == compose_fn(
            trace.q1, lvl3.projections[k]
        )


# -- coequifiers ------------------------------------------------------------------


def test_coequifier_identifies_components():
    b = parallel_pair_cat()
    pt = disc(fin("*"))
    fx = functor(pt, b, {"*": "x"}, {})
    gy = functor(pt, b, {"*": "y"}, {})
    a = NatTrans(fx, gy, FinFn(pt.c0, b.c1, {"*": "p"}))
    bb = NatTrans(fx, gy, FinFn(pt.c0, b.c1, {"*": "q"}))
    e = coequifier(a, bb)
    assert len(e.cod.c1) == 3
    assert whisker_left(e, a).components == whisker_left(e, bb).components


def test_coequifier_equal_cells_is_iso():
    b = parallel_pair_cat()
    pt = disc(fin("*"))
    fx = functor(pt, b, {"*": "x"}, {})
    gy = functor(pt, b, {"*": "y"}, {})
    a = NatTrans(fx, gy, FinFn(pt.c0, b.c1, {"*": "p"}))
    e = coequifier(a, a)
    assert e.f1.is_bijective()


def test_coequifier_identity_cells_is_iso():
    f, _ = parallel_functors_pq()
    a = identity_nattrans(f)
    e = coequifier(a, a)
    assert e.f1.is_bijective()


def test_coequifier_rejects_mismatched_boundary():
    f, g = parallel_functors_pq()
    a = identity_nattrans(f)
    bb = identity_nattrans(g)
    with pytest.raises(NotParallel2Cells):
        coequifier(a, bb)


# -- free categories ---------------------------------------------------------------


def test_free_category_edgeless_is_disc():
    g = graph(["a", "b"], [])
    pres, mat = free_category(g, 4)
    assert mat.exact
    assert find_isomorphism(mat.cat, disc(fin("a", "b"))) is not None


def test_free_category_chain_exact():
    g = graph(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c")])
    pres, mat = free_category(g, 8)
    assert mat.exact
    assert len(mat.cat.c1) == 6
    assert not mat.cat.partial


def test_free_category_loop_truncates():
    g = graph(["v"], [("e", "v", "v")])
    pres, mat = free_category(g, 3)
    assert not mat.exact
    assert len(mat.cat.c1) == 4
    assert mat.cat.partial
    assert pres.rels == ()


def test_materialize_saturates_with_collapsing_relation():
    g = graph(["v"], [("e", "v", "v")])
    pres = Presentation(g, ((Path("v", "v", ("e", "e")), empty_path("v")),))
    mat = materialize(pres, 8)
    assert mat.exact
    assert len(mat.cat.c1) == 2  # the quotient is the two-element group
    assert find_isomorphism(mat.cat, z2_monoid()) is not None


def test_saturation_soundness_composition_closed():
    g = graph(["v"], [("e", "v", "v")])
    pres = Presentation(g, ((Path("v", "v", ("e", "e")), Path("v", "v", ("e",))),))
    mat = materialize(pres, 8)
    assert mat.exact
    for (a, b), c in mat.cat.comp.items():
        assert c in mat.cat.c1


# -- word problem --------------------------------------------------------------------


def test_word_problem_equal():
    g = graph(["v"], [("e", "v", "v")])
    pres = Presentation(g, ((Path("v", "v", ("e", "e")), empty_path("v")),))
    verdict, _ = word_problem(pres, Path("v", "v", ("e",) * 4), empty_path("v"))
    assert verdict is Equality.EQUAL


def test_word_problem_distinct_endpoints():
    g = graph(["a", "b"], [("e", "a", "b")])
    pres = Presentation(g, ())
    verdict, _ = word_problem(pres, Path("a", "b", ("e",)), empty_path("a"))
    assert verdict is Equality.DISTINCT


def test_word_problem_distinct_exhausted():
    g = graph(["v"], [("e", "v", "v")])
    pres = Presentation(g, ())
    verdict, _ = word_problem(pres, Path("v", "v", ("e",)), Path("v", "v", ("e", "e")))
    assert verdict is Equality.DISTINCT


def test_word_problem_unknown_on_budget():
    g = graph(["v"], [("e", "v", "v"), ("f", "v", "v")])
    pres = Presentation(
        g,
        (
            (Path("v", "v", ("e", "f")), Path("v", "v", ("f", "e"))),
        ),
    )
    verdict, _ = word_problem(
        pres, Path("v", "v", ("e",) * 6 + ("f",) * 6), Path("v", "v", ("f",) * 12), budget=5
    )
    assert verdict is Equality.UNKNOWN


# -- coequalizers out of a discrete category -------------------------------------------


def test_from_discrete_equal_pair_is_iso():
    b = chain_cat()
    pt = disc(fin("*"))
    f = functor(pt, b, {"*": "a"}, {})
    q, pres, trace = coequalize_from_discrete(f, f, 8)
    assert trace.exact
    assert q.f1.is_bijective()
    assert find_isomorphism(q.cod, b) is not None


def test_from_discrete_walking_monoid():
    fa = free_arrow()
    f, g = endpoints_pair()
    q, pres, trace = coequalize_from_discrete(f, g, 3)
    assert not trace.exact
    assert len(pres.gens.vertices) == 1
    assert len(pres.gens.edges) == 1
    assert pres.rels == ()
    assert len(q.cod.c1) == 4  # bound 3 gives paths of length <= 3


def test_from_discrete_rejects_non_discrete_domain():
    fa = free_arrow()
    f = identity_functor(fa)
    with pytest.raises(DomainNotDiscrete):
        coequalize_from_discrete(f, f, 4)


def test_from_discrete_trace_pipeline_fields():
    b = chain_cat()
    pt = disc(fin("*"))
    f = functor(pt, b, {"*": "a"}, {})
    q, pres, trace = coequalize_from_discrete(f, f, 8)
    assert trace.k is not None
    # identity comparison components: unit path of i^B vs identity at the class
    assert trace.alpha is not None and trace.beta is not None
    assert trace.alpha.components == trace.beta.components
    assert trace.p is not None and trace.t is not None
    composite = compose_fn(
        trace.t.f1, compose_fn(trace.p.f1, trace.k.h1)
    )
    assert composite == q.f1


def test_from_discrete_pipeline_matches_materialization():
    # gluing two objects of the chain category head-to-tail stays acyclic
    b = cat_from_table(["a", "b", "c"], [("e1", "a", "b"), ("e2", "c", "b")], {})
    pt = disc(fin("*", "**"))
    f = functor(pt, b, {"*": "a", "**": "b"}, {})
    g = functor(pt, b, {"*": "a", "**": "b"}, {})
    q, pres, trace = coequalize_from_discrete(f, g, 8)
    mat = materialize(pres, 8)
    assert trace.exact and mat.exact
    assert find_isomorphism(q.cod, mat.cat) is not None


# -- general coequalizers -----------------------------------------------------------


def test_coequalize_equal_pair_iso():
    b = chain_cat()
    f = identity_functor(b)
    q, pres, exact = coequalize(f, f, 8)
    assert exact
    assert q.f1.is_bijective()


def test_coequalize_walking_monoid_presentation():
    f, g = endpoints_pair()
    q, pres, exact = coequalize(f, g, 3)
    assert not exact
    assert len(pres.gens.vertices) == 1
    assert len(pres.gens.edges) == 1
    assert len(q.cod.c1) == 4


def test_coequalize_agree_on_objects_matches_direct_route():
    f, g = parallel_functors_pq()
    q, pres, exact = coequalize(f, g, 8)
    assert exact
    direct, _ = coequalize_on_objects(f, g)
    assert find_isomorphism(q.cod, direct.cod) is not None


def test_coequalize_two_step_object_agreement():
    # even in truncated runs the discrete step equalizes objects
    f, g = endpoints_pair()
    q, pres, exact = coequalize(f, g, 2)
    assert len(q.cod.c0) == 1


def test_coequalize_zigzag_gluing_saturates():
    # glue source and target of an involution-free loop-free category
    b = z2_monoid()
    f = identity_functor(b)
    q, pres, exact = coequalize(f, f, 8)
    assert exact
    assert find_isomorphism(q.cod, b) is not None


# -- pushouts, coinserters, cocommas ---------------------------------------------------


def test_pushout_of_identities():
    b = chain_cat()
    f = identity_functor(b)
    result = pushout(f, f, 8)
    assert result.exact
    assert find_isomorphism(result.cat, b) is not None


def test_pushout_of_points():
    pt = disc(fin("*"))
    f = identity_functor(pt)
    result = pushout(f, f, 8)
    assert find_isomorphism(result.cat, pt) is not None


def test_pushout_glues_arrows_into_chain():
    fa = free_arrow()
    pt = disc(fin("*"))
    f = pick_object(fa, "t")
    g = pick_object(fa, "s")
    result = pushout(f, g, 8)
    assert result.exact
    assert len(result.cat.c0) == 3
    assert len(result.cat.c1) == 6
    assert compose_functor(result.left, f) == compose_functor(result.right, g)


def test_coinserter_no_edges():
    f = FinFn(fin(), fin("a", "b"), {})
    pres, mat = coinserter(f, f, 4)
    assert find_isomorphism(mat.cat, disc(fin("a", "b"))) is not None


def test_coinserter_chain_graph():
    e = fin("e1", "e2")
    v = fin("a", "b", "c")
    f = FinFn(e, v, {"e1": "a", "e2": "b"})
    g = FinFn(e, v, {"e1": "b", "e2": "c"})
    pres, mat = coinserter(f, g, 8)
    assert mat.exact
    assert len(mat.cat.c1) == 6


def test_coinserter_loop_is_walking_monoid():
    e = fin("e")
    v = fin("v")
    f = FinFn(e, v, {"e": "v"})
    pres, mat = coinserter(f, f, 5)
    assert not mat.exact
    assert len(mat.cat.c1) == 6


def test_coinserter_rejects_mismatch():
    f = FinFn(fin("e"), fin("v"), {"e": "v"})
    g = FinFn(fin("e"), fin("w"), {"e": "w"})
    with pytest.raises(DomainMismatch):
        coinserter(f, g)


def test_cocomma_terminal_span_is_free_arrow():
    pt = disc(fin("*"))
    f = identity_functor(pt)
    result = cocomma(f, f)
    assert find_isomorphism(result.cat, free_arrow()) is not None


def test_cocomma_empty_apex_is_coproduct():
    e = disc(fin())
    b = chain_cat()
    c = parallel_pair_cat()
    f = functor(e, b, {}, {})
    g = functor(e, c, {}, {})
    result = cocomma(f, g)
    cp = coproduct_cat([b, c])
    assert find_isomorphism(result.cat, cp.cat) is not None


def test_cocomma_cell_is_natural():
    fa = free_arrow()
    b = chain_cat()
    f = functor(fa, b, {"s": "a", "t": "b"}, {"u": "e1"})
    g = functor(fa, b, {"s": "b", "t": "c"}, {"u": "e2"})
    result = cocomma(f, g)
    assert result.cell.src == compose_functor(result.left, f)
    assert result.cell.tgt == compose_functor(result.right, g)
    assert validate_category(result.cat).ok


def test_factor_through_quotient():
    f, g = parallel_functors_pq()
    q, _ = coequalize_on_objects(f, g)
    s = factor_through_quotient(q, q)
    assert s.f1.is_identity()


# -- cycle lifting ------------------------------------------------------------------


def test_cycles_lift_identity_quotient():
    fa = free_arrow()
    assert cycles_lift_check(fa, identity_fn(fa.c0)).ok


def test_cycles_lift_walking_monoid_witness():
    fa = free_arrow()
    q0 = FinFn(fa.c0, fin("s"), {"s": "s", "t": "s"})
    verdict = cycles_lift_check(fa, q0)
    assert not verdict.ok
    assert verdict.witness == ("u",)


def test_cycles_lift_existing_loop():
    b = z2_monoid()
    assert cycles_lift_check(b, identity_fn(b.c0)).ok


def test_cycles_lift_rejects_non_surjection():
    fa = free_arrow()
    q0 = FinFn(fa.c0, fin("s", "t", "w"), {"s": "s", "t": "t"})
    with pytest.raises(NotSurjective):
        cycles_lift_check(fa, q0)
