import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from guesswork import (
    AmbiguousDistribution,
    DegenerateBase,
    Membership,
    TiltCurve,
    cross_entropy,
    entropy,
    family_membership,
    linear_family_level,
    tilt,
    typicality_membership,
    validate,
)

from conftest import MU, NU, dists, same_size_pair


def test_tilt_at_one_is_base(nu):
    assert tilt(nu, 1.0).allclose(nu, atol=1e-15)


def test_mismatched_tilt_by_hand():
    base, ref = validate([0.4, 0.6]), validate([0.2, 0.8])
    # unnormalized weights 0.2*0.4 = 0.08 and 0.8*0.6 = 0.48
    np.testing.assert_allclose(tilt(base, 1.0, ref).probs, [1 / 7, 6 / 7], atol=1e-15)


@pytest.mark.parametrize("ref", [None, MU])
def test_tilt_limits(nu, ref):
    r = None if ref is None else validate(ref)
    np.testing.assert_array_equal(tilt(nu, math.inf, r).probs, [0, 0, 1])
    np.testing.assert_array_equal(tilt(nu, -math.inf, r).probs, [0, 1, 0])
    # beyond the overflow guard the limit is returned
    np.testing.assert_array_equal(tilt(nu, 1e4, r).probs, [0, 0, 1])


def test_tilt_at_zero_is_reference(nu, mu):
    assert tilt(nu, 0.0, mu) is mu
    np.testing.assert_array_equal(TiltCurve(nu)(0.0).probs, np.full(3, 1 / 3))
    np.testing.assert_array_equal(TiltCurve(nu, mu)(0.0).probs, mu.probs)


def test_tilt_curve_requires_unambiguous_base():
    with pytest.raises(AmbiguousDistribution):
        TiltCurve(validate([1, 1, 2]))


def test_large_finite_tilt_stays_finite(nu):
    p = tilt(nu, 400.0)
    assert np.all(np.isfinite(p.probs))
    assert p.probs.sum() == pytest.approx(1.0, abs=1e-15)


def test_linear_family_level(nu):
    u = validate([1, 1, 1])
    assert linear_family_level(nu, 0.0) == pytest.approx(cross_entropy(u, nu), abs=1e-15)
    assert linear_family_level(nu, 1.0) == pytest.approx(entropy(nu), abs=1e-15)
    assert linear_family_level(nu, math.inf) == pytest.approx(-math.log(0.5), abs=1e-15)


def test_family_membership_examples(nu, mu):
    m = family_membership(nu, nu)
    assert m.kind is Membership.POSITIVE_TILT and m.alpha == pytest.approx(1.0, abs=1e-12)
    assert family_membership(validate([1, 1, 1]), nu).kind is Membership.UNIFORM
    # log mu is not affine in log nu: residual spread of the fit is far above tolerance
    lm, ln = np.log(MU), np.log(NU)
    slope = (lm[2] - lm[1]) / (ln[2] - ln[1])
    resid = lm - slope * ln
    assert resid.max() - resid.min() > 1e-3
    assert family_membership(mu, nu).kind is Membership.NOT_MEMBER
    neg = family_membership(tilt(nu, -1.5), nu)
    assert neg.kind is Membership.NEGATIVE_TILT and neg.alpha == pytest.approx(-1.5, abs=1e-9)


def test_family_membership_degenerate_base():
    with pytest.raises(DegenerateBase):
        family_membership(validate(MU), validate([1, 1, 1]))


def test_typicality_examples(nu):
    for a in (0.3, 1.0, 2.5):
        assert typicality_membership(tilt(nu, a), nu, a, 0.0) == (True, True, True)
    assert typicality_membership(nu, nu, 1.0, 0.0) == (True, True, True)
    # H(u||nu) ~ 1.1689 exceeds H(nu) ~ 1.0297 by far more than 0.01
    flags = typicality_membership(validate([1, 1, 1]), nu, 1.0, 0.01)
    assert flags == (False, True, False)


@given(same_size_pair(), st.floats(-3, 3), st.floats(0.05, 4))
def test_closure_under_tilt(pair, beta, alpha):
    nu, mu = pair
    lhs = tilt(tilt(nu, alpha), beta, mu)
    rhs = tilt(nu, alpha * beta, mu)
    assert lhs.allclose(rhs, atol=1e-12)


@given(dists())
def test_entropy_decreasing_along_positive_tilts(nu):
    grid = np.linspace(0, 8, 41)
    h = [entropy(tilt(nu, a)) for a in grid]
    assert all(b < a for a, b in zip(h, h[1:]))


@given(dists())
def test_level_strictly_decreasing(nu):
    grid = np.linspace(-8, 8, 81)
    levels = [cross_entropy(tilt(nu, b), nu) for b in grid]
    assert all(b < a for a, b in zip(levels, levels[1:]))


@given(dists(), st.floats(-5, 5))
def test_membership_recovers_alpha(nu, alpha):
    m = family_membership(tilt(nu, alpha), nu)
    assert m.is_member
    assert m.alpha == pytest.approx(alpha, abs=1e-6)
