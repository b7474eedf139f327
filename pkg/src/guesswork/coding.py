"""One-to-one (non prefix-free) source coding with a mismatched model.

The optimal one-to-one code built from a model ``nu`` sends the sequence of
guessing rank ``r`` to the ``r``-th binary string in shortlex order, so code
lengths are ``floor(log2 r)``. Asymptotically the average length per symbol
is ``H(Pi)`` with ``Pi`` the projection of the source onto the tilted family
of ``nu``; a prefix-free code built from ``nu`` pays ``H(mu) + D(mu || nu)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .dist import Dist, entropy, kl_divergence
from .errors import BadRank, DomainError
from .oracle import GuessTable, exact_mean
from .rate import check_hypothesis, mismatched_rate
from .solver import _require_unambiguous, solve_projection


def code_length(rank: int) -> int:
    """Length in bits of the ``rank``-th string of ``"", "0", "1", "00", ...``."""
    if isinstance(rank, bool) or int(rank) != rank or rank < 1:
        raise BadRank(f"rank must be a positive integer, got {rank!r}")
    return int(rank).bit_length() - 1


@dataclass(frozen=True)
class CodingReport:
    H_mu: float
    L_matched: float
    L_mismatched: float
    penalty_one_to_one: float
    penalty_prefix_free: float
    projection_alpha: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def asymptotic_report(nu: Dist, mu: Dist) -> CodingReport:
    _require_unambiguous(nu, mu)
    check_hypothesis(nu, mu)
    alpha, proj = solve_projection(nu, mu)
    h_mu = entropy(mu)
    return CodingReport(
        H_mu=h_mu,
        L_matched=h_mu,
        L_mismatched=entropy(proj),
        penalty_one_to_one=max(kl_divergence(mu, proj), 0.0),
        penalty_prefix_free=kl_divergence(mu, nu),
        projection_alpha=alpha,
    )


def finite_average_length(table: GuessTable) -> float:
    """Exact ``(1/n) E[log G]`` in nats per symbol for the table's source and model."""
    return exact_mean(table)


def reliability(nu: Dist, mu: Dist, R: float) -> float:
    """Decay rate of ``P(length > n R)``, valid for ``H(Pi) < R < log|X|``."""
    check_hypothesis(nu, mu)
    h_pi = entropy(solve_projection(nu, mu).projection)
    if not h_pi < R < math.log(nu.size):
        raise DomainError(f"R={R} outside ({h_pi}, log {nu.size})")
    return mismatched_rate(nu, mu, R).J
