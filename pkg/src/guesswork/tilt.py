"""Tilted families, linear-family levels and the typicality-set predicates.

The tilt of a base ``nu`` with respect to a reference ``mu`` at order ``alpha``
is the Gibbs distribution ``x -> mu(x) nu(x)**alpha / Z``. With a uniform
reference this is the ordinary tilted family of ``nu``; ``alpha = 1`` gives
``nu`` back and ``alpha = 0`` gives the reference.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .dist import Dist, _check_same_alphabet, cross_entropy, is_unambiguous, uniform_like
from .errors import AmbiguousDistribution, DegenerateBase

#: Log-weight margin beyond which every non-extreme symbol underflows to exactly 0.
UNDERFLOW_EXPONENT = 745.0
MEMBERSHIP_TOL = 1e-9


def log_spread(p: Dist) -> float:
    lp = p.log_probs
    return float(lp.max() - lp.min())


def _log_tilt(log_ref: np.ndarray, log_base: np.ndarray, alpha):
    """Normalized log-probabilities of the tilt; ``alpha`` may be a 1-D array (one row per entry)."""
    a = np.asarray(alpha, dtype=float)
    lw = log_ref + np.multiply.outer(a, log_base)
    # max-shifted normalizer; scipy's logsumexp costs more than the arithmetic on short rows
    lw = lw - lw.max(axis=-1, keepdims=True)
    return lw - np.log(np.exp(lw).sum(axis=-1, keepdims=True))


def _extreme_gap(log_p: np.ndarray, positive: bool) -> float:
    s = np.sort(log_p)
    return float(s[-1] - s[-2]) if positive else float(s[1] - s[0])


def _is_limit(base: Dist, alpha: float, reference: Dist | None) -> bool:
    """True when the finite tilt equals its point-mass limit in double precision."""
    if math.isinf(alpha):
        return True
    ref_spread = log_spread(reference) if reference is not None else 0.0
    return abs(alpha) * _extreme_gap(base.log_probs, alpha > 0) - ref_spread > UNDERFLOW_EXPONENT


def _limit(base: Dist, alpha: float) -> Dist:
    idx = int(np.argmax(base.probs) if alpha > 0 else np.argmin(base.probs))
    return Dist.point_mass(base.alphabet, idx)


def tilt(base: Dist, alpha: float, reference: Dist | None = None) -> Dist:
    """Tilt ``base`` to order ``alpha`` against ``reference`` (uniform if omitted).

    ``alpha`` may be ``math.inf`` / ``-math.inf``, giving the point mass on the
    most / least likely symbol of ``base``. Finite orders large enough that the
    log-domain result would already be that point mass return the limit directly.
    """
    if reference is not None:
        _check_same_alphabet(base, reference)
    if alpha == 0:
        return reference if reference is not None else uniform_like(base)
    if _is_limit(base, alpha, reference):
        return _limit(base, alpha)
    log_ref = reference.log_probs if reference is not None else np.zeros(base.size)
    return Dist(base.alphabet, np.exp(_log_tilt(log_ref, base.log_probs, alpha)))


@dataclass(frozen=True, eq=False)
class TiltCurve:
    """The one-parameter family ``alpha -> tilt(base, alpha, reference)``."""

    base: Dist
    reference: Dist = field(default=None)

    def __post_init__(self):
        if not is_unambiguous(self.base):
            raise AmbiguousDistribution(f"tilt base must be unambiguous: {self.base!r}")
        if self.reference is None:
            object.__setattr__(self, "reference", uniform_like(self.base))
        else:
            _check_same_alphabet(self.base, self.reference)

    def __call__(self, alpha: float) -> Dist:
        return tilt(self.base, alpha, self.reference)

    at = __call__


def linear_family_level(nu: Dist, alpha: float) -> float:
    """Cross-entropy level ``H(T(nu, alpha) || nu)`` shared by the linear family of order ``alpha``."""
    return cross_entropy(tilt(nu, alpha), nu)


def in_linear_family(gamma: Dist, nu: Dist, alpha: float, tol: float = 1e-9) -> bool:
    return abs(cross_entropy(gamma, nu) - linear_family_level(nu, alpha)) <= tol


class Membership(enum.Enum):
    POSITIVE_TILT = "positive"
    NEGATIVE_TILT = "negative"
    UNIFORM = "uniform"
    NOT_MEMBER = "not-member"


class FamilyMembership(NamedTuple):
    kind: Membership
    alpha: float | None

    @property
    def is_member(self) -> bool:
        return self.kind is not Membership.NOT_MEMBER


def family_membership(candidate: Dist, nu: Dist, tol: float = MEMBERSHIP_TOL) -> FamilyMembership:
    """Classify ``candidate`` as a positive tilt, negative tilt, uniform, or outside the tilted family of ``nu``.

    Membership means ``log candidate = alpha * log nu + const``. The slope is
    read off the two symbols where ``log nu`` differs most and every
    coordinate is then checked against the affine fit.
    """
    _check_same_alphabet(candidate, nu)
    lnu = nu.log_probs
    spread = float(lnu.max() - lnu.min())
    if spread < tol:
        raise DegenerateBase("base distribution has no spread in log-space")
    if np.any(candidate.probs <= 0):
        return FamilyMembership(Membership.NOT_MEMBER, None)
    lc = candidate.log_probs
    hi, lo = int(np.argmax(lnu)), int(np.argmin(lnu))
    alpha = float((lc[hi] - lc[lo]) / (lnu[hi] - lnu[lo]))
    resid = lc - alpha * lnu
    if resid.max() - resid.min() > tol:
        return FamilyMembership(Membership.NOT_MEMBER, None)
    if abs(alpha) * spread <= tol:
        return FamilyMembership(Membership.UNIFORM, 0.0)
    kind = Membership.POSITIVE_TILT if alpha > 0 else Membership.NEGATIVE_TILT
    return FamilyMembership(kind, alpha)


class TypicalityFlags(NamedTuple):
    """Membership of a type in the more-likely (D), less-likely (E) and as-likely (B) sets."""

    inD: bool
    inE: bool
    inB: bool


def typicality_membership(type_: Dist, nu: Dist, alpha: float, eps: float) -> TypicalityFlags:
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    diff = cross_entropy(type_, nu) - linear_family_level(nu, alpha)
    return TypicalityFlags(inD=diff <= eps, inE=diff >= -eps, inB=-eps <= diff <= 0)
