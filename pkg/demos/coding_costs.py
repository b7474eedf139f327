# One-to-one coding with a wrong model
# ------------------------------------
# Sending the r-th most likely sequence (under nu) as the r-th binary string
# costs floor(log2 r) bits. Its per-symbol average tends to H(Pi), so the
# mismatch penalty is D(mu || Pi), smaller than the D(mu || nu) paid by a
# prefix-free code built from nu.

from guesswork import asymptotic_report, build_guess_table, code_length, finite_average_length, tilt, validate

print("code lengths of ranks 1..8:", [code_length(r) for r in range(1, 9)])

mu = validate([0.05, 0.1, 0.85])
for label, nu in [("nu = mu", mu), ("nu = tilt(mu, 2)", tilt(mu, 2.0)),
                  ("nu = (0.3,0.2,0.5)", validate([0.3, 0.2, 0.5]))]:
    r = asymptotic_report(nu, mu)
    print(f"\n{label}")
    print(f"  H(mu) = {r.H_mu:.5f}   L = H(Pi) = {r.L_mismatched:.5f}")
    print(f"  one-to-one penalty {r.penalty_one_to_one:.5f}  vs prefix-free penalty {r.penalty_prefix_free:.5f}")
    finite = [finite_average_length(build_guess_table(nu, mu, n)) for n in (50, 200, 800)]
    print("  exact (1/n) E[log G] at n = 50, 200, 800:", ", ".join(f"{v:.5f}" for v in finite))
