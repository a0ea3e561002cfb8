"""Finite 2-colimits of internal categories over finite sets."""

from .finset import (
    Coequalizer,
    Coproduct,
    Equalizer,
    FinFn,
    FinObj,
    Pullback,
    Verdict,
    coequalizer,
    compose_fn,
    coproduct,
    equalizer,
    fin,
    identity_fn,
    pullback,
    pullback_stability_check,
    terminal,
)
from .graphcat import (
    ArrowCategory,
    Functor,
    Graph,
    GraphMorphism,
    InternalCat,
    NatTrans,
    Path,
    arrow_category,
    compose_functor,
    disc,
    find_isomorphism,
    identity_functor,
    indisc,
    nerve_level,
    objects_of,
    paths_up_to,
    product_cat,
    validate_category,
    validate_functor,
    validate_nattrans,
)

__version__ = "0.1.0"
