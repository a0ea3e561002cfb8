"""Discrete Conduché fibrations, pullbacks of categories, suspensions.

A functor is a discrete Conduché fibration when every factorization of an
image morphism lifts uniquely; along such functors the agree-on-objects
coequalizers of :mod:`intercat.colimits` are stable under pullback, and
``stability_experiment`` computes both sides of that statement on
concrete data.  The two-point suspension embeds a finite set as the
hom-set of a two-object category and transports coequalizer stability
between the base category and the category of internal categories.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colimits import coequalize_on_objects, factor_through_quotient
from .errors import PreconditionViolated, ShapeMismatch
from .finset import (
    FinFn,
    FinObj,
    Verdict,
    coequalizer,
    coproduct,
    identity_fn,
    pair_label,
    terminal,
)
from .graphcat import (
    Functor,
    InternalCat,
    NatTrans,
    compose_functor,
    nerve_level,
    validate_functor,
)


def is_discrete_conduche(fun: Functor) -> Verdict:
    """Check unique lifting of binary factorizations.

    For every morphism upstairs and every factorization of its image into
    two composable morphisms, exactly one composable pair upstairs must
    map onto the factorization and compose to the morphism.
    """
    x, y = fun.dom, fun.cod
    f1 = fun.f1.mapping
    d0y, d1y = y.d0.mapping, y.d1.mapping
    for m in x.c1:
        image = f1[m]
        for (g, f), gf in y.comp.items():
            if gf != image:
                continue
            lifts = [
                (g2, f2)
                for (g2, f2), m2 in x.comp.items()
                if m2 == m and f1[g2] == g and f1[f2] == f
            ]
            if len(lifts) != 1:
                return Verdict.failed(
                    "factorization does not lift uniquely",
                    witness=(m, (g, f), len(lifts)),
                )
    return Verdict.passed()


def conduche_cube_check(fun: Functor) -> Verdict:
    """Check that triple factorizations also lift uniquely.

    This is a consequence of the binary condition (apply it twice), so
    running it is a consistency test; the binary condition is a checked
    precondition.
    """
    if not is_discrete_conduche(fun):
        raise PreconditionViolated("functor is not a discrete Conduché fibration")
    x, y = fun.dom, fun.cod
    f1 = fun.f1.mapping

    def triple_composites(c: InternalCat):
        out: dict[str, list[tuple[str, str, str]]] = {}
        for (g, f), gf in c.comp.items():
            for (h, g2), _ in c.comp.items():
                if g2 != gf:
                    continue
                out.setdefault(c.comp[(h, gf)], []).append((h, g, f))
        return out

    down = triple_composites(y)
    up = triple_composites(x)
    up_by_morphism: dict[str, list[tuple[str, str, str]]] = up
    for m in x.c1:
        image = f1[m]
        for triple in down.get(image, ()):
            lifts = [
                t
                for t in up_by_morphism.get(m, ())
                if (f1[t[0]], f1[t[1]], f1[t[2]]) == triple
            ]
            if len(lifts) != 1:
                return Verdict.failed(
                    "triple factorization does not lift uniquely",
                    witness=(m, triple, len(lifts)),
                )
    return Verdict.passed()


@dataclass(frozen=True)
class CatPullback:
    """Levelwise pullback of categories with its projections."""

    cat: InternalCat
    p1: Functor
    p2: Functor

    def mediate(self, u: Functor, v: Functor) -> Functor:
        """The unique functor into the pullback from a commuting cone."""
        if u.dom != v.dom:
            raise ShapeMismatch("cone functors must share a domain")
        w = u.dom
        f0 = FinFn(
            w.c0, self.cat.c0,
            {x: pair_label(u.f0.mapping[x], v.f0.mapping[x]) for x in w.c0},
        )
        f1 = FinFn(
            w.c1, self.cat.c1,
            {m: pair_label(u.f1.mapping[m], v.f1.mapping[m]) for m in w.c1},
        )
        return Functor(w, self.cat, f0, f1)


def pullback_cat(f: Functor, p: Functor) -> CatPullback:
    """Pullback of a cospan of functors, computed levelwise."""
    if f.cod != p.cod:
        raise ShapeMismatch("pullback needs a cospan of functors")
    a, b = f.dom, p.dom
    obj_pairs = [
        (x, y) for x in a.c0 for y in b.c0
        if f.f0.mapping[x] == p.f0.mapping[y]
    ]
    mor_pairs = [
        (m, n) for m in a.c1 for n in b.c1
        if f.f1.mapping[m] == p.f1.mapping[n]
    ]
    c0 = FinObj(tuple(pair_label(x, y) for x, y in obj_pairs))
    c1 = FinObj(tuple(pair_label(m, n) for m, n in mor_pairs))
    d0 = FinFn(c1, c0, {
        pair_label(m, n): pair_label(a.d0.mapping[m], b.d0.mapping[n])
        for m, n in mor_pairs
    })
    d1 = FinFn(c1, c0, {
        pair_label(m, n): pair_label(a.d1.mapping[m], b.d1.mapping[n])
        for m, n in mor_pairs
    })
    i = FinFn(c0, c1, {
        pair_label(x, y): pair_label(a.i.mapping[x], b.i.mapping[y])
        for x, y in obj_pairs
    })
    comp = {}
    for (m2, n2) in mor_pairs:
        for (m1, n1) in mor_pairs:
            if (m2, m1) in a.comp and (n2, n1) in b.comp:
                comp[(pair_label(m2, n2), pair_label(m1, n1))] = pair_label(
                    a.comp[(m2, m1)], b.comp[(n2, n1)]
                )
    cat = InternalCat(c0, c1, d0, d1, i, comp)
    p1 = Functor(
        cat, a,
        FinFn(c0, a.c0, {pair_label(x, y): x for x, y in obj_pairs}),
        FinFn(c1, a.c1, {pair_label(m, n): m for m, n in mor_pairs}),
    )
    p2 = Functor(
        cat, b,
        FinFn(c0, b.c0, {pair_label(x, y): y for x, y in obj_pairs}),
        FinFn(c1, b.c1, {pair_label(m, n): n for m, n in mor_pairs}),
    )
    return CatPullback(cat, p1, p2)


# ---------------------------------------------------------------------------
# Two-point suspension


def suspend(x: FinObj) -> InternalCat:
    """Two objects; the elements of ``x`` as the only arrows between them.

    Composition exists only against identities, so the table is forced.
    """
    objs = coproduct([terminal(), terminal()])
    mors = coproduct([terminal(), x, terminal()])
    id_src, id_tgt = "0.*", "2.*"
    c0 = objs.obj
    c1 = mors.obj
    d0 = {}
    d1 = {}
    for m in c1:
        if m == id_src:
            d0[m] = d1[m] = "0.*"
        elif m == id_tgt:
            d0[m] = d1[m] = "1.*"
        else:
            d0[m] = "0.*"
            d1[m] = "1.*"
    i = FinFn(c0, c1, {"0.*": id_src, "1.*": id_tgt})
    comp = {}
    for m in c1:
        comp[(m, i.mapping[d0[m]])] = m
        if (i.mapping[d1[m]], m) not in comp:
            comp[(i.mapping[d1[m]], m)] = m
    return InternalCat(
        c0, c1, FinFn(c1, c0, d0), FinFn(c1, c0, d1), i, comp
    )


def terminal_obj() -> FinObj:
    return fin("*")


def suspend_fn(f: FinFn) -> Functor:
    """The suspension of a set map: identity on objects, f in the middle."""
    dom = suspend(f.dom)
    cod = suspend(f.cod)
    f1 = {}
    for m in dom.c1:
        if m in ("0.*", "2.*"):
            f1[m] = m
        else:
            f1[m] = "1." + f.mapping[m[2:]]
    return Functor(
        dom, cod, identity_fn(dom.c0), FinFn(dom.c1, cod.c1, f1)
    )


def suspension_coequalizer_check(f: FinFn, g: FinFn) -> Verdict:
    """Suspension of a coequalizer vs coequalizer of suspensions.

    Both must be canonically isomorphic over finite sets; the verdict's
    witness is the comparison functor.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatch("check needs a parallel pair of set maps")
    coeq = coequalizer(f, g)
    suspended_quotient = suspend_fn(coeq.q)
    quotient, _ = coequalize_on_objects(suspend_fn(f), suspend_fn(g))
    try:
        comparison = factor_through_quotient(quotient, suspended_quotient)
    except Exception as exc:  # noqa: BLE001 - report, don't crash
        return Verdict.failed(f"comparison does not factor: {exc}")
    if not (comparison.f0.is_bijective() and comparison.f1.is_bijective()):
        return Verdict.failed("comparison is not an isomorphism", witness=comparison)
    return Verdict.passed(witness=comparison)


# ---------------------------------------------------------------------------
# Stability experiments


@dataclass(frozen=True)
class StabilityReport:
    """Both sides of a pullback-stability comparison plus the verdict."""

    lhs: InternalCat
    rhs: InternalCat
    iso: Functor | None
    stable: bool
    detail: str = ""


def stability_experiment(
    f: Functor, g: Functor, along: Functor, over: Functor
) -> StabilityReport:
    """Pull back an agree-on-objects coequalizer along a functor.

    ``f, g: A -> B`` agree on objects and live over ``along.cod`` via the
    structure functor ``over: B -> along.cod``.  The report compares the
    pullback of the quotient against the quotient of the pullbacks; when
    ``along`` is a discrete Conduché fibration the verdict must be stable.
    Non-Conduché inputs are exploratory: the report records whatever
    happens, it never asserts.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatch("stability experiment needs a parallel pair")
    if f.f0 != g.f0:
        raise ShapeMismatch("pair must agree on objects")
    if over.dom != f.cod or over.cod != along.cod:
        raise ShapeMismatch("structure functor must map B over the base")
    if compose_functor(over, f) != compose_functor(over, g):
        raise ShapeMismatch("pair is not a parallel pair in the slice")

    quotient, _ = coequalize_on_objects(f, g)
    structure = factor_through_quotient(quotient, over)

    lhs = pullback_cat(along, structure)

    pb_b = pullback_cat(along, over)
    over_a = compose_functor(over, f)
    pb_a = pullback_cat(along, over_a)
    f_pulled = pb_b.mediate(pb_a.p1, compose_functor(f, pb_a.p2))
    g_pulled = pb_b.mediate(pb_a.p1, compose_functor(g, pb_a.p2))
    quotient_pulled, _ = coequalize_on_objects(f_pulled, g_pulled)
    rhs = quotient_pulled.cod

    # Canonical comparison: each pulled-back quotient class maps to the
    # pair of its upstairs part and the downstairs class.  A conflict here
    # means the comparison is ill-defined, which already refutes stability.
    f0 = {}
    f1 = {}
    q1 = quotient.f1.mapping
    for m in pb_b.cat.c1:
        x_part = pb_b.p1.f1.mapping[m]
        b_part = pb_b.p2.f1.mapping[m]
        key = quotient_pulled.f1.mapping[m]
        value = pair_label(x_part, q1[b_part])
        if f1.get(key, value) != value:
            return StabilityReport(
                lhs.cat, rhs, None, False,
                f"comparison ill-defined at class {key!r}",
            )
        f1[key] = value
    for x in pb_b.cat.c0:
        f0[quotient_pulled.f0.mapping[x]] = x
    try:
        comparison = Functor(
            rhs, lhs.cat,
            FinFn(rhs.c0, lhs.cat.c0, f0),
            FinFn(rhs.c1, lhs.cat.c1, f1),
        )
    except Exception as exc:  # noqa: BLE001 - exploratory reporting
        return StabilityReport(lhs.cat, rhs, None, False, f"comparison ill-formed: {exc}")
    if not (comparison.f0.is_bijective() and comparison.f1.is_bijective()):
        return StabilityReport(
            lhs.cat, rhs, None, False, "comparison is not a bijection"
        )
    return StabilityReport(lhs.cat, rhs, comparison, True)
