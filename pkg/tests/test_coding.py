import json
import math

import numpy as np
import pytest

from guesswork import (
    BadRank,
    DomainError,
    HypothesisViolated,
    Membership,
    asymptotic_report,
    build_guess_table,
    code_length,
    cross_entropy,
    entropy,
    exact_tail,
    family_membership,
    finite_average_length,
    kl_divergence,
    matched_rate,
    reliability,
    solve_projection,
    tilt,
    validate,
)

from conftest import MU, NU, NU2, random_dist

D_MU_PI = 0.078521474365184210838
H_PI = 0.59670768741539700512
J_10 = 0.16218719021702502769


def test_code_length_examples():
    assert code_length(1) == 0
    assert code_length(5) == 2
    for k in range(21):
        assert code_length(2 ** k) == k
    assert [code_length(r) for r in range(1, 8)] == [0, 1, 1, 2, 2, 2, 2]


@pytest.mark.parametrize("bad", [0, -3, 1.5, True])
def test_code_length_bad_rank(bad):
    with pytest.raises(BadRank):
        code_length(bad)


def test_report_matched(mu):
    r = asymptotic_report(mu, mu)
    assert r.L_mismatched == pytest.approx(entropy(mu), abs=1e-9)
    assert r.penalty_one_to_one == pytest.approx(0, abs=1e-9)
    assert r.penalty_prefix_free == pytest.approx(0, abs=1e-15)


def test_report_tilted_model(mu):
    r = asymptotic_report(tilt(mu, 2.0), mu)
    assert r.penalty_one_to_one <= 1e-9
    assert r.penalty_prefix_free > 0.1
    assert r.projection_alpha == pytest.approx(0.5, abs=1e-9)


def test_report_reference_pair(mu, nu):
    r = asymptotic_report(nu, mu)
    assert r.penalty_one_to_one == pytest.approx(D_MU_PI, abs=1e-10)
    assert r.L_mismatched == pytest.approx(H_PI, abs=1e-10)
    assert r.penalty_prefix_free == pytest.approx(0.292133, abs=2e-6)
    assert r.penalty_one_to_one < r.penalty_prefix_free
    assert r.L_mismatched == pytest.approx(r.H_mu + r.penalty_one_to_one, abs=1e-9)
    assert json.loads(r.to_json()) == r.to_dict()
    assert set(r.to_dict()) == {"H_mu", "L_matched", "L_mismatched", "penalty_one_to_one",
                                "penalty_prefix_free", "projection_alpha"}


def test_report_hypothesis(mu):
    with pytest.raises(HypothesisViolated):
        asymptotic_report(validate([0.85, 0.1, 0.05]), mu)


def test_finite_average_length_single_symbol(mu):
    expected = 0.1 * math.log(2) + 0.05 * math.log(3)
    assert finite_average_length(build_guess_table(mu, mu, 1)) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.12424, abs=1e-5)


@pytest.mark.parametrize("nu_w", [NU, NU2])
def test_finite_average_length_approaches_projection_entropy(nu_w):
    mu, nu = validate(MU), validate(nu_w)
    target = asymptotic_report(nu, mu).L_mismatched
    gaps = [abs(finite_average_length(build_guess_table(nu, mu, n)) - target) for n in (50, 100, 200, 400)]
    assert all(b <= a for a, b in zip(gaps, gaps[1:]))


def test_matched_average_from_below(mu):
    h = entropy(mu)
    values = [finite_average_length(build_guess_table(mu, mu, n)) for n in (25, 50, 100, 200, 400)]
    assert all(v < h for v in values)
    assert all(b > a for a, b in zip(values, values[1:]))


def test_reliability_examples(mu, nu):
    assert reliability(nu, mu, 1.0) == pytest.approx(J_10, abs=1e-11)
    assert reliability(nu, mu, H_PI + 1e-7) < 1e-6
    assert reliability(mu, mu, 0.9) == pytest.approx(matched_rate(mu, 0.9).J, abs=1e-9)
    with pytest.raises(DomainError):
        reliability(nu, mu, 0.5)
    with pytest.raises(DomainError):
        reliability(nu, mu, math.log(3))


def test_reliability_against_type_table_tail(mu, nu):
    # exact -(1/n) log P(log G > n R) at n = 100, 200, 400 decreases toward J(R)
    tails = [exact_tail(build_guess_table(nu, mu, n), 1.0) for n in (100, 200, 400)]
    assert tails[0] > tails[1] > tails[2] > J_10
    assert tails[2] - J_10 < 0.03


def _valid_pairs(seed, count, k_choices=(3, 4, 5)):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        k = int(rng.choice(k_choices))
        nu, mu = random_dist(rng, k), random_dist(rng, k)
        if cross_entropy(mu, nu) < cross_entropy(validate(np.ones(k)), nu):
            out.append((nu, mu, float(rng.uniform(-2, 2))))
    return out


def test_pythagorean_identity():
    for nu, mu, alpha in _valid_pairs(20, 100):
        proj = solve_projection(nu, mu).projection
        g = tilt(nu, alpha)
        lhs = kl_divergence(mu, g)
        assert abs(lhs - kl_divergence(mu, proj) - kl_divergence(proj, g)) <= 1e-9


def test_projection_entropy_and_divergence():
    for nu, mu, _ in _valid_pairs(21, 100):
        proj = solve_projection(nu, mu).projection
        assert entropy(proj) >= entropy(mu) - 1e-9
        lhs = kl_divergence(proj, nu)
        assert lhs == pytest.approx(kl_divergence(mu, nu) + entropy(mu) - entropy(proj), abs=1e-9)
        assert lhs <= kl_divergence(mu, nu) + 1e-9
        r = asymptotic_report(nu, mu)
        assert -1e-9 <= r.penalty_one_to_one <= r.penalty_prefix_free + 1e-9
        assert r.L_mismatched <= r.H_mu + r.penalty_prefix_free + 1e-9


def test_entropy_equality_iff_member():
    rng = np.random.default_rng(22)
    for _ in range(30):
        mu = random_dist(rng, 4)
        nu = tilt(mu, float(rng.uniform(0.2, 3)))
        assert family_membership(mu, nu).kind is Membership.POSITIVE_TILT
        assert entropy(solve_projection(nu, mu).projection) == pytest.approx(entropy(mu), abs=1e-9)
    for nu, mu, _ in _valid_pairs(23, 30):
        if family_membership(mu, nu).is_member:
            continue
        assert entropy(solve_projection(nu, mu).projection) > entropy(mu) + 1e-9
