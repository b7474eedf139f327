"""Large deviations and moment exponents of mismatched guesswork on finite alphabets."""

from .dist import Alphabet, Dist, cross_entropy, entropy, is_unambiguous, kl_divergence, renyi_entropy, validate
from .errors import *  # noqa: F401,F403
from .tilt import (
    FamilyMembership,
    Membership,
    TiltCurve,
    TypicalityFlags,
    family_membership,
    linear_family_level,
    tilt,
    typicality_membership,
)
from .solver import RootConfig, solve_alpha_for_entropy, solve_gamma_intersection, solve_projection
from .rate import (
    MomentPoint,
    RatePoint,
    check_hypothesis,
    e_rho_matched,
    e_rho_mismatched,
    matched_rate,
    mismatch_penalty_gap,
    mismatched_rate,
    rate_curve,
    typical_rate,
)
from .oracle import (
    GuessTable,
    TypeRecord,
    build_guess_table,
    exact_guesswork_enum,
    exact_ldp_window,
    exact_mean,
    exact_moment,
    exact_tail,
    mc_log_guesswork,
)
from .coding import CodingReport, asymptotic_report, code_length, finite_average_length, reliability

__version__ = "0.1.0"
