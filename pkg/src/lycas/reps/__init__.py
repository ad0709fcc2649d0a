"""Representations, tightness and the functors between representation categories."""

from .functors import (
    AlphaResult,
    BetaResult,
    functor_rism,
    functor_rlrs,
    functor_rly,
    functor_rrt,
    functor_rrt_full,
    roundtrip_alpha,
    roundtrip_beta,
    spair_roundtrip_alpha,
    spair_roundtrip_beta,
    theta2_family,
)
from .lyrep import (
    ISMRep,
    LYRep,
    check_extension,
    check_rism,
    check_rly,
    delta_default,
    extension_algebra,
    quotient_rep,
    rep_from_extension,
    sub_rep,
)
from .tightness import is_tight, l_pi_iota, levi_section, tight_sufficient
from .triplerep import (
    SPairRep,
    TripleRep,
    adjoint_rep,
    check_spair_rep,
    check_triple_rep,
    effectivize,
    minimalize,
    quotient_triple_rep,
    sub_triple_rep,
)
