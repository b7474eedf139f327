"""Bracketed scalar root finding for the three monotone maps of the tilt geometry.

* ``alpha -> H(T(nu, alpha))`` on ``alpha >= 0`` (decreasing),
* ``beta -> H(T(nu, beta) || nu)`` on the real line (decreasing),
* ``beta -> H(T(nu, mu, beta) || nu)`` on the real line (decreasing).

Every root is found by bisection on an expanding bracket. A false-position
step (Illinois variant) is tried first and abandoned for a plain midpoint
whenever it fails to halve the bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .dist import Dist, _check_same_alphabet, cross_entropy, is_unambiguous
from .errors import AmbiguousDistribution, DomainError, NoConvergence
from .tilt import _log_tilt, log_spread, tilt

#: Bracket half-width (in units of 1/spread(log nu)) for the vectorized bisections.
WIDE_BRACKET = 1e4
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RootConfig:
    f_tol: float = 1e-12
    x_tol: float = 1e-12
    max_iter: int = 200
    bracket_expand_limit: float = 1e6

    def __post_init__(self):
        if self.f_tol <= 0 or self.x_tol <= 0 or self.bracket_expand_limit <= 0:
            raise ValueError("tolerances and bracket limit must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT = RootConfig()


def find_root(f: Callable[[float], float], lo: float, hi: float, config: RootConfig = DEFAULT,
              accelerate: bool = True) -> float:
    """Root of ``f`` inside ``[lo, hi]``; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoConvergence(f"root not bracketed: f({lo})={flo}, f({hi})={fhi}")
    side = 0
    force_bisect = False
    for _ in range(config.max_iter):
        x = 0.5 * (lo + hi)
        if accelerate and not force_bisect:
            xs = (lo * fhi - hi * flo) / (fhi - flo)
            if lo < xs < hi:
                x = xs
        width = hi - lo
        fx = f(x)
        if abs(fx) <= config.f_tol:
            return x
        if (fx > 0) == (flo > 0):
            lo, flo = x, fx
            if side == -1:
                fhi *= 0.5
            side = -1
        else:
            hi, fhi = x, fx
            if side == 1:
                flo *= 0.5
            side = 1
        if hi - lo <= config.x_tol * (1.0 + abs(x)):
            return 0.5 * (lo + hi)
        # a secant step that failed to halve the bracket is followed by a midpoint step
        force_bisect = not force_bisect and hi - lo > 0.5 * width
    raise NoConvergence(f"no convergence after {config.max_iter} iterations in [{lo}, {hi}]")


def bisect_many(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray,
                n_iter: int = 110) -> np.ndarray:
    """Vectorized plain bisection for a decreasing ``f``: one independent root per lane."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        pos = f(mid) > 0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
        if np.all(hi - lo <= 1e-15 * (1.0 + np.abs(mid))):
            break
    return 0.5 * (lo + hi)


def _expand_upward(f, start: float, config: RootConfig) -> float:
    """Double ``start`` until the decreasing ``f`` becomes negative there."""
    x = start
    while f(x) > 0:
        x *= 2.0
        if abs(x) > config.bracket_expand_limit:
            raise NoConvergence(f"bracket expansion exceeded {config.bracket_expand_limit}")
    return x


def _require_unambiguous(*dists: Dist) -> None:
    for d in dists:
        if not is_unambiguous(d):
            raise AmbiguousDistribution(f"distribution must be unambiguous: {d!r}")


# -- scalar functionals evaluated straight from log-weights ---------------------------------


def _tilt_entropy(log_nu: np.ndarray, alpha):
    lp = _log_tilt(0.0, log_nu, alpha)
    return -np.sum(np.exp(lp) * lp, axis=-1)


def _tilt_level(log_ref, log_nu: np.ndarray, beta):
    lp = _log_tilt(log_ref, log_nu, beta)
    return -np.sum(np.exp(lp) * log_nu, axis=-1)


def solve_alpha_for_entropy(nu: Dist, t: float, config: RootConfig = DEFAULT) -> float:
    """The unique ``alpha >= 0`` with ``H(T(nu, alpha)) = t``."""
    _require_unambiguous(nu)
    log_k = math.log(nu.size)
    if not 0.0 < t < log_k:
        raise DomainError(f"t={t} outside (0, log {nu.size}) = (0, {log_k})")
    lnu = nu.log_probs

    def f(a):
        return float(_tilt_entropy(lnu, a)) - t

    hi = _expand_upward(f, 1.0, config)
    return find_root(f, 0.0, hi, config)


def alpha_for_entropy_many(nu: Dist, t: np.ndarray) -> np.ndarray:
    """Vectorized :func:`solve_alpha_for_entropy` over a grid of ``t`` in ``(0, log|X|)``."""
    t = np.asarray(t, dtype=float)
    lnu = nu.log_probs
    cap = WIDE_BRACKET / log_spread(nu)
    return bisect_many(lambda a: _tilt_entropy(lnu, a) - t, np.zeros_like(t), np.full_like(t, cap))


def _signed_expand(f, config: RootConfig) -> tuple[float, float]:
    """Bracket the root of a decreasing ``f`` on the real line, expanding out from ``[-1, 1]``."""
    lo, hi = -1.0, 1.0
    while f(hi) > 0:
        lo, hi = hi, 2.0 * hi
        if hi > config.bracket_expand_limit:
            raise NoConvergence(f"bracket expansion exceeded {config.bracket_expand_limit}")
    while f(lo) < 0:
        lo, hi = 2.0 * lo, lo
        if -lo > config.bracket_expand_limit:
            raise NoConvergence(f"bracket expansion exceeded {config.bracket_expand_limit}")
    return lo, hi


class Projection(NamedTuple):
    alpha_star: float
    projection: Dist


def solve_projection(nu: Dist, mu: Dist, config: RootConfig = DEFAULT) -> Projection:
    """Projection of ``mu`` onto the tilted family of ``nu``: the member sharing ``mu``'s cross entropy with ``nu``."""
    _check_same_alphabet(nu, mu)
    _require_unambiguous(nu)
    target = cross_entropy(mu, nu)
    lnu = nu.log_probs

    def f(b):
        return float(_tilt_level(0.0, lnu, b)) - target

    lo, hi = _signed_expand(f, config)
    alpha = find_root(f, lo, hi, config)
    return Projection(alpha, tilt(nu, alpha))


def gamma_parameter(nu: Dist, mu: Dist, level: float, config: RootConfig = DEFAULT) -> float:
    """The ``beta`` with ``H(T(nu, mu, beta) || nu) = level``."""
    lnu, lmu = nu.log_probs, mu.log_probs
    if not -lnu.max() < level < -lnu.min():
        raise DomainError(f"level {level} outside the attainable range ({-lnu.max()}, {-lnu.min()})")

    def f(b):
        return float(_tilt_level(lmu, lnu, b)) - level

    lo, hi = _signed_expand(f, config)
    return find_root(f, lo, hi, config)


def gamma_parameter_many(nu: Dist, mu: Dist, level: np.ndarray) -> np.ndarray:
    lnu, lmu = nu.log_probs, mu.log_probs
    level = np.asarray(level, dtype=float)
    cap = WIDE_BRACKET / log_spread(nu)
    return bisect_many(lambda b: _tilt_level(lmu, lnu, b) - level,
                       np.full_like(level, -cap), np.full_like(level, cap))


def solve_gamma_intersection(nu: Dist, mu: Dist, alpha_t: float, config: RootConfig = DEFAULT) -> Dist:
    """Intersection of the tilted family of ``nu`` through ``mu`` with the linear family of order ``alpha_t``."""
    _check_same_alphabet(nu, mu)
    _require_unambiguous(nu)
    level = float(_tilt_level(0.0, nu.log_probs, alpha_t)) if math.isfinite(alpha_t) \
        else cross_entropy(tilt(nu, alpha_t), nu)
    beta = gamma_parameter(nu, mu, level, config)
    return tilt(nu, beta, mu)


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10,
                       max_iter: int = 200) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * (1.0 + abs(c)):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)
