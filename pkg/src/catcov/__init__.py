"""Coverings of finite categories.

Fundamental groups through categories of fractions, Galois coverings as
orbit categories, groupoid gradings and smash products, and finite balls in
universal covers.
"""
from .category import (
    CatFunctor,
    Congruence,
    FiniteCategory,
    Ident,
    Morphism,
    PresentedCategory,
    check_functor,
    compose_functors,
    congruence_close,
    connected_components,
    identity_functor,
    is_connected,
    make_category,
    quotient_category,
)
from .coverings import (
    CoveringFunctor,
    GroupAction,
    aut_group,
    check_covering,
    covering_report,
    fibre_product,
    is_galois,
    lambda_of,
    lift_pointed,
    orbit_category,
    pullback_covering,
    star,
)
from .dot import render_dot
from .errors import BudgetExhausted, CatcovError, InvalidInput, PropertyViolation
from .fractions import (
    Walk,
    eval_universal,
    free_compose,
    normalize,
    pi1_presentation,
    walk_element,
    walk_word,
)
from .grading import (
    Grading,
    associated_grading,
    grading_morphism,
    is_effective,
    make_grading,
    regraded,
    roundtrip_iso,
    slice_pullback_check,
    smash_product,
    smash_quotient_map,
)
from .groupoids import (
    FiniteGroup,
    FiniteGroupoid,
    NormalSubgroupoid,
    as_groupoid,
    complete_groupoid,
    cyclic_group,
    group_groupoid,
    image_isomorphism,
    kernel_functor,
    quotient_groupoid,
)
from .presentation import (
    AbelianInvariants,
    GroupPresentation,
    abelianize,
    coset_enumerate,
    presentation,
    smith_normal_form,
    tietze_simplify,
    word_equal,
)
from .universal import (
    CoverBall,
    cayley_double,
    check_interior,
    covers_all,
    deck_translate,
    kronecker,
    universal_ball,
)

__version__ = "0.1.0"
