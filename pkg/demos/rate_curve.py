# Rate function of mismatched guesswork
# -------------------------------------
# A source mu is guessed in the order suggested by a model nu. The normalized
# log-guesswork concentrates at H(Pi), where Pi is the projection of mu onto
# the tilted family of nu, and J(t) measures how fast other levels become
# unlikely.

import math

import numpy as np

from guesswork import entropy, mismatched_rate, matched_rate, solve_projection, validate

mu = validate([0.05, 0.1, 0.85])
nu = validate([0.3, 0.2, 0.5])

alpha_star, proj = solve_projection(nu, mu)
print("projection parameter alpha* =", round(alpha_star, 6))
print("projection Pi =", np.round(proj.probs, 6))
print("H(mu) =", round(entropy(mu), 6), "  H(Pi) =", round(entropy(proj), 6))

# The matched curve vanishes at H(mu); the mismatched one at H(Pi) > H(mu).
grid = np.linspace(0.05, math.log(3) - 0.01, 12)
print("\n     t    J_matched  J_mismatched")
for t in grid:
    print(f"{t:6.3f}  {matched_rate(mu, t).J:9.5f}  {mismatched_rate(nu, mu, t).J:12.5f}")

# The minimizing distribution gamma(t) moves along the tilted family of nu
# through mu.
for t in (0.3, entropy(proj), 1.0):
    p = mismatched_rate(nu, mu, t)
    print(f"t={t:.4f}  alpha(t)={p.alpha_t:.4f}  gamma={np.round(p.gamma.probs, 4)}  J={p.J:.6f}")
