"""Large-deviation rate functions and moment growth exponents of guesswork.

For a source ``mu`` guessed in the order of a model ``nu``, the normalized
log-guesswork ``(1/n) log G`` concentrates at ``H(Pi)``, where ``Pi`` is the
projection of ``mu`` onto the tilted family of ``nu``. The rate of deviation
to level ``t`` is ``J(t) = D(gamma(t) || mu)`` with ``gamma(t)`` the member of
the tilted family of ``nu`` through ``mu`` whose cross entropy with ``nu``
equals that of ``T(nu, alpha(t))``, and ``alpha(t) >= 0`` solves
``H(T(nu, alpha)) = t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dist import Alphabet, Dist, _check_same_alphabet, cross_entropy, entropy, kl_divergence, renyi_entropy, uniform_like
from .errors import DomainError, HypothesisViolated, NoConvergence, NonPositiveRho
from .solver import (
    DEFAULT,
    RootConfig,
    _require_unambiguous,
    _tilt_entropy,
    _tilt_level,
    alpha_for_entropy_many,
    gamma_parameter,
    gamma_parameter_many,
    golden_section_max,
    solve_alpha_for_entropy,
    solve_projection,
)
from .tilt import _log_tilt, tilt

#: Distance kept from the open ends of ``(0, log|X|)`` when building grids.
ENDPOINT_DELTA = 1e-6
SCAN_POINTS = 512
VARIATIONAL_AGREEMENT = 1e-9


@dataclass(frozen=True, eq=False)
class RatePoint:
    t: float
    alpha_t: float
    gamma: Dist
    J: float


@dataclass(frozen=True)
class MomentPoint:
    rho: float
    value: float


def check_hypothesis(nu: Dist, mu: Dist) -> None:
    """Raise unless the projection of ``mu`` onto the tilted family of ``nu`` is a positive tilt.

    Equivalent test: ``H(mu || nu) < H(u || nu)``, because the cross entropy
    of ``T(nu, beta)`` with ``nu`` decreases strictly in ``beta`` and equals
    ``H(u || nu)`` at ``beta = 0``.
    """
    _check_same_alphabet(nu, mu)
    ce_mu = cross_entropy(mu, nu)
    ce_u = cross_entropy(uniform_like(nu), nu)
    if not ce_mu < ce_u:
        raise HypothesisViolated(
            f"projection is not a positive tilt: H(mu||nu)={ce_mu:.12g} >= H(u||nu)={ce_u:.12g}"
        )


def _check_t(p: Dist, t: float) -> None:
    log_k = math.log(p.size)
    if not 0.0 < t < log_k:
        raise DomainError(f"t={t} outside (0, {log_k})")


def matched_rate(mu: Dist, t: float, config: RootConfig = DEFAULT) -> RatePoint:
    _require_unambiguous(mu)
    _check_t(mu, t)
    alpha = solve_alpha_for_entropy(mu, t, config)
    gamma = tilt(mu, alpha)
    return RatePoint(t, alpha, gamma, max(kl_divergence(gamma, mu), 0.0))


def mismatched_rate(nu: Dist, mu: Dist, t: float, config: RootConfig = DEFAULT) -> RatePoint:
    _require_unambiguous(nu, mu)
    check_hypothesis(nu, mu)
    _check_t(nu, t)
    alpha = solve_alpha_for_entropy(nu, t, config)
    level = float(_tilt_level(0.0, nu.log_probs, alpha))
    beta = gamma_parameter(nu, mu, level, config)
    gamma = tilt(nu, beta, mu)
    return RatePoint(t, alpha, gamma, max(kl_divergence(gamma, mu), 0.0))


def rate_curve(nu: Dist, mu: Dist, t_grid, config: RootConfig = DEFAULT) -> list[RatePoint]:
    """Rate function on a grid, in grid order. ``nu is mu`` (or equal) uses the matched formula."""
    same = nu is mu or (nu.alphabet == mu.alphabet and np.array_equal(nu.probs, mu.probs))
    if same:
        return [matched_rate(mu, float(t), config) for t in t_grid]
    return [mismatched_rate(nu, mu, float(t), config) for t in t_grid]


# -- moment exponents ----------------------------------------------------------------------


def _check_rho(rho: float) -> None:
    if not rho > 0 or not math.isfinite(rho):
        raise NonPositiveRho(f"rho must be positive and finite, got {rho}")


def matched_variational(mu: Dist, rho: float) -> float:
    """``max_{alpha >= 0} H(T(mu, alpha)) - D(T(mu, alpha) || mu) / rho`` by golden-section search."""
    lmu = mu.log_probs

    def objective(a):
        lp = _log_tilt(0.0, lmu, a)
        p = np.exp(lp)
        return float(-np.sum(p * lp) - np.sum(p * (lp - lmu)) / rho)

    # the maximizer 1/(1+rho) lies in (0, 1)
    _, value = golden_section_max(objective, 0.0, 1.0, tol=1e-12)
    return value


def e_rho_matched(mu: Dist, rho: float) -> MomentPoint:
    """Moment growth exponent under matched guessing: the Rényi entropy of order ``1/(1+rho)``."""
    _check_rho(rho)
    closed = renyi_entropy(mu, 1.0 / (1.0 + rho))
    variational = matched_variational(mu, rho)
    if abs(closed - variational) > VARIATIONAL_AGREEMENT:
        raise NoConvergence(
            f"closed form {closed!r} and variational form {variational!r} disagree at rho={rho}"
        )
    return MomentPoint(rho, closed)


@dataclass(frozen=True, eq=False)
class _Scan:
    """Rate function sampled on a grid of ``t`` including both endpoint limits."""

    t: np.ndarray
    J: np.ndarray


def _rate_many(nu: Dist, mu: Dist, t: np.ndarray) -> np.ndarray:
    """Vectorized mismatched rate; lanes whose bisection did not converge are redone one by one."""
    lnu, lmu = nu.log_probs, mu.log_probs
    alpha = alpha_for_entropy_many(nu, t)
    level = _tilt_level(0.0, lnu, alpha)
    beta = gamma_parameter_many(nu, mu, level)
    lg = _log_tilt(lmu, lnu, beta)
    J = np.sum(np.exp(lg) * (lg - lmu), axis=-1)
    resid_t = np.abs(_tilt_entropy(lnu, alpha) - t)
    resid_level = np.abs(_tilt_level(lmu, lnu, beta) - level)
    for i in np.flatnonzero((resid_t > 1e-10) | (resid_level > 1e-10)):
        J[i] = mismatched_rate(nu, mu, float(t[i])).J
    return np.maximum(J, 0.0)


def _rate_at_log_k(nu: Dist, mu: Dist) -> float:
    """Rate at ``t = log|X|``, where ``alpha = 0`` and the level is ``H(u || nu)``."""
    level = cross_entropy(uniform_like(nu), nu)
    beta = gamma_parameter(nu, mu, level)
    return kl_divergence(tilt(nu, beta, mu), mu)


def _rate_at_zero(nu: Dist, mu: Dist) -> float:
    """Rate at ``t -> 0``: all mass on the most likely symbol under ``nu``."""
    return -float(mu.log_probs[int(np.argmax(nu.probs))])


@lru_cache(maxsize=256)
def _cached_scan(nu_key: tuple, mu_key: tuple, labels: tuple, points: int) -> _Scan:
    nu = Dist(Alphabet(labels), np.array(nu_key))
    mu = Dist(Alphabet(labels), np.array(mu_key))
    log_k = math.log(nu.size)
    inner = np.linspace(ENDPOINT_DELTA, log_k - ENDPOINT_DELTA, points)
    t = np.concatenate([[0.0], inner, [log_k]])
    J = np.concatenate([[_rate_at_zero(nu, mu)], _rate_many(nu, mu, inner), [_rate_at_log_k(nu, mu)]])
    return _Scan(t, J)


def _rate_or_limit(nu: Dist, mu: Dist, t: float) -> float:
    log_k = math.log(nu.size)
    if t <= 0.0:
        return _rate_at_zero(nu, mu)
    if t >= log_k:
        return _rate_at_log_k(nu, mu)
    try:
        return mismatched_rate(nu, mu, t).J
    except NoConvergence:
        # t within double-precision reach of an endpoint
        return _rate_at_zero(nu, mu) if t < 0.5 * log_k else _rate_at_log_k(nu, mu)


def e_rho_mismatched(nu: Dist, mu: Dist, rho: float, points: int = SCAN_POINTS) -> MomentPoint:
    """Moment growth exponent of guesswork ordered by ``nu`` on a source ``mu``.

    Computed as ``(1/rho) sup_t {rho t - J(t)}`` over ``t in [0, log|X|]``: a
    grid scan locates the best cell, then golden-section search refines it.
    """
    _check_rho(rho)
    _require_unambiguous(nu, mu)
    check_hypothesis(nu, mu)
    scan = _cached_scan(tuple(nu.probs), tuple(mu.probs), nu.alphabet.labels, points)
    values = rho * scan.t - scan.J
    i = int(np.argmax(values))
    lo, hi = scan.t[max(i - 1, 0)], scan.t[min(i + 1, len(scan.t) - 1)]
    t_best, best = golden_section_max(lambda t: rho * t - _rate_or_limit(nu, mu, t), lo, hi, tol=1e-10)
    best = max(best, float(values[i]))
    value = min(max(best / rho, 0.0), math.log(nu.size))
    return MomentPoint(rho, value)


def mismatch_penalty_gap(nu: Dist, mu: Dist, rho: float) -> float:
    """Excess of the mismatched moment exponent over the matched one (non-negative in theory)."""
    return e_rho_mismatched(nu, mu, rho).value - e_rho_matched(mu, rho).value


def typical_rate(nu: Dist, mu: Dist) -> float:
    """``H(Pi)``, the level where the rate function vanishes."""
    return entropy(solve_projection(nu, mu).projection)
