# Moment growth exponents for three guessing models
# ------------------------------------------------------------
# E_rho(nu || mu) is the exponential growth rate of E[G**rho] per symbol.
# With nu = mu it is a Renyi entropy; with mismatch it is a Legendre
# transform of the rate function and always sits above the matched curve.

import numpy as np

from guesswork import e_rho_matched, e_rho_mismatched, renyi_entropy, validate

mu = validate([0.05, 0.1, 0.85])
models = {"(0.32,0.3,0.37)": validate([0.32, 0.3, 0.37]), "(0.3,0.2,0.5)": validate([0.3, 0.2, 0.5])}

rhos = np.round(np.arange(0.1, 9.7, 0.5), 2)
print("  rho   matched  " + "  ".join(models))
for rho in rhos:
    row = [e_rho_matched(mu, rho).value] + [e_rho_mismatched(nu, mu, rho).value for nu in models.values()]
    print(f"{rho:5.1f}  " + "  ".join(f"{v:.6f}" for v in row))

# sanity: the matched exponent is the Renyi entropy of order 1/(1+rho)
print("\nE_1(mu) =", e_rho_matched(mu, 1.0).value, " H_1/2(mu) =", renyi_entropy(mu, 0.5))

# as rho grows every curve approaches log 3
print("rho=100:", [round(float(e_rho_mismatched(nu, mu, 100.0).value), 4) for nu in models.values()],
      "log 3 =", round(np.log(3), 4))
