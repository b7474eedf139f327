"""Command-line front end.

Subcommands: ``rate``, ``moments``, ``project``, ``oracle``, ``coding``.
Exit codes: 0 success, 2 bad configuration, 3 hypothesis violated, 4 size guard hit.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from .coding import asymptotic_report
from .dist import Dist, cross_entropy, entropy, validate
from .errors import GuessworkError, HypothesisViolated, TooLarge
from .oracle import build_guess_table, exact_ldp_window, exact_mean, exact_moment, mc_log_guesswork
from .rate import ENDPOINT_DELTA, e_rho_matched, e_rho_mismatched, mismatched_rate, rate_curve, typical_rate
from .solver import solve_projection

EXIT_OK, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_RESOURCE = 0, 2, 3, 4

FIG3_MU = (0.05, 0.1, 0.85)
FIG3_CURVES = {
    "matched": (None, [round(0.1 + 0.5 * i, 10) for i in range(20)]),
    "nu_0.32_0.3_0.37": ((0.32, 0.3, 0.37), [round(0.1 + 1.0 * i, 10) for i in range(10)]),
    "nu_0.3_0.2_0.5": ((0.3, 0.2, 0.5), [round(0.1 + 0.5 * i, 10) for i in range(20)]),
}

CONFIG_KEYS = {"mu", "nu", "t_grid", "rho_grid", "n_list", "eps", "seed", "out", "rho", "t_values",
               "mc_samples", "paper_fig3"}


class ConfigError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".15g")


def parse_grid(text: str, lo: float | None = None, hi: float | None = None) -> np.ndarray:
    """``start:stop:count`` (endpoints included) or a comma list; clipped into ``[lo, hi]``."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            count = int(count)
            if count < 1:
                raise ConfigError(f"grid count must be positive: {text!r}")
            grid = np.linspace(float(start), float(stop), count)
        else:
            grid = np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from None
    if grid.size == 0:
        raise ConfigError(f"empty grid {text!r}")
    if lo is not None or hi is not None:
        grid = np.clip(grid, lo, hi)
    return grid


def parse_int_list(text) -> list[int]:
    if isinstance(text, list):
        values = text
    else:
        values = [v for v in str(text).split(",") if v.strip()]
    try:
        out = [int(v) for v in values]
    except ValueError as exc:
        raise ConfigError(f"bad integer list {text!r}: {exc}") from None
    if not out:
        raise ConfigError("n-list is empty")
    return out


def load_dist(spec) -> Dist:
    """A Dist from a JSON file path, an inline JSON object, or a dict."""
    try:
        if isinstance(spec, dict):
            return Dist.from_dict(spec)
        text = str(spec)
        if text.lstrip().startswith("{"):
            return Dist.from_json(text)
        return Dist.from_json(Path(text).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read distribution {spec!r}: {exc}") from None
    except GuessworkError as exc:
        raise ConfigError(f"invalid distribution {spec!r}: {exc}") from None


def apply_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    try:
        data = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {args.config!r}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key, value in data.items():
        if key in ("t_grid", "rho_grid", "t_values") and isinstance(value, list):
            value = ",".join(str(v) for v in value)
        if getattr(args, key, None) in (None, False):
            setattr(args, key, value)


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _pair(args) -> tuple[Dist, Dist]:
    if args.mu is None:
        raise ConfigError("--mu is required")
    mu = load_dist(args.mu)
    nu = load_dist(args.nu) if args.nu is not None else mu
    if nu.alphabet != mu.alphabet:
        raise ConfigError("mu and nu must share an alphabet")
    return nu, mu


def _same(nu: Dist, mu: Dist) -> bool:
    return np.array_equal(nu.probs, mu.probs)


def cmd_rate(args) -> int:
    nu, mu = _pair(args)
    log_k = math.log(mu.size)
    text = args.t_grid or f"{ENDPOINT_DELTA}:{log_k - ENDPOINT_DELTA}:101"
    grid = parse_grid(text, ENDPOINT_DELTA, log_k - ENDPOINT_DELTA)
    points = rate_curve(nu, mu, grid)
    with _output(args.out) as fh:
        fh.write("t,alpha,J\n")
        for p in points:
            fh.write(f"{fmt(p.t)},{fmt(p.alpha_t)},{fmt(p.J)}\n")
    return EXIT_OK


def _moment_rows(nu: Dist, mu: Dist, rhos) -> list[tuple[float, float]]:
    if _same(nu, mu):
        return [(r, e_rho_matched(mu, r).value) for r in rhos]
    return [(r, e_rho_mismatched(nu, mu, r).value) for r in rhos]


def _write_moments(fh, rows) -> None:
    fh.write("rho,E\n")
    for rho, value in rows:
        fh.write(f"{fmt(rho)},{fmt(value)}\n")


def cmd_moments(args) -> int:
    if args.paper_fig3:
        mu = validate(FIG3_MU)
        out_dir = Path(args.out) if args.out not in (None, "-") else None
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
        for name, (nu_w, rhos) in FIG3_CURVES.items():
            nu = mu if nu_w is None else validate(nu_w)
            rows = _moment_rows(nu, mu, rhos)
            if out_dir is None:
                sys.stdout.write(f"# {name}\n")
                _write_moments(sys.stdout, rows)
            else:
                with open(out_dir / f"fig3_{name}.csv", "w", newline="") as fh:
                    _write_moments(fh, rows)
        return EXIT_OK
    nu, mu = _pair(args)
    rhos = parse_grid(args.rho_grid or "0.1:9.6:20")
    if np.any(rhos <= 0):
        raise ConfigError("rho values must be positive")
    with _output(args.out) as fh:
        _write_moments(fh, _moment_rows(nu, mu, rhos))
    return EXIT_OK


def cmd_project(args) -> int:
    nu, mu = _pair(args)
    alpha, proj = solve_projection(nu, mu)
    report = {
        "alpha_star": alpha,
        "projection": proj.to_dict(),
        "entropy_projection": entropy(proj),
        "cross_entropy": cross_entropy(mu, nu),
        "positive_tilt": alpha > 0,
    }
    with _output(args.out) as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    nu, mu = _pair(args)
    ns = parse_int_list(args.n_list if args.n_list is not None else "")
    if args.mc_samples:
        if len(ns) != 1:
            raise ConfigError("Monte Carlo output needs exactly one n")
        values = mc_log_guesswork(nu, mu, ns[0], int(args.mc_samples), int(args.seed or 0))
        with _output(args.out) as fh:
            for v in values:
                fh.write(fmt(v) + "\n")
        return EXIT_OK

    rho = float(args.rho) if args.rho is not None else 1.0
    eps = float(args.eps) if args.eps is not None else 0.02
    ts = parse_grid(args.t_values) if args.t_values else np.array([])
    matched = _same(nu, mu)
    e_asym = e_rho_matched(mu, rho).value if matched else e_rho_mismatched(nu, mu, rho).value
    l_asym = entropy(mu) if matched else typical_rate(nu, mu)
    j_asym = [mismatched_rate(nu, mu, float(t)).J for t in ts]
    lines = []
    for n in ns:
        table = build_guess_table(nu, mu, n)
        rows = [(f"moment_rho={fmt(rho)}", exact_moment(table, rho), e_asym),
                ("average_length", exact_mean(table), l_asym)]
        for t, j in zip(ts, j_asym):
            rows.append((f"window_t={fmt(t)}_eps={fmt(eps)}", exact_ldp_window(table, float(t), eps), j))
        for name, value, asym in rows:
            lines.append(f"{n},{name},{fmt(value)},{fmt(asym)},{fmt(abs(value - asym))}\n")
    with _output(args.out) as fh:
        fh.write("n,quantity,value,asymptote,gap\n")
        fh.writelines(lines)
    return EXIT_OK


def cmd_coding(args) -> int:
    nu, mu = _pair(args)
    report = asymptotic_report(nu, mu).to_dict()
    if args.n_list is not None:
        ns = parse_int_list(args.n_list)
        report["finite_average_length"] = {
            str(n): exact_mean(build_guess_table(nu, mu, n)) for n in ns
        }
    report["units"] = "nats"
    report["L_mismatched_bits"] = report["L_mismatched"] / math.log(2.0)
    with _output(args.out) as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="guesswork", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mu", help="source distribution (JSON file or inline JSON)")
        p.add_argument("--nu", help="guessing model (defaults to --mu)")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--seed", type=int)
        p.add_argument("--config", help="JSON experiment config; explicit flags take precedence")

    p = sub.add_parser("rate", help="rate function J(t) as CSV t,alpha,J")
    common(p)
    p.add_argument("--t-grid", dest="t_grid", help="start:stop:count or comma list")
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("moments", help="moment growth exponents as CSV rho,E")
    common(p)
    p.add_argument("--rho-grid", dest="rho_grid")
    p.add_argument("--paper-fig3", dest="paper_fig3", action="store_true",
                   help="emit the three reference curves (--out is then a directory)")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("project", help="projection of mu onto the tilted family of nu (JSON)")
    common(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("oracle", help="exact finite-n quantities against their asymptotes")
    common(p)
    p.add_argument("--n-list", dest="n_list", help="comma-separated sequence lengths")
    p.add_argument("--rho", type=float)
    p.add_argument("--t", dest="t_values", help="window centres for the LDP study")
    p.add_argument("--eps", type=float)
    p.add_argument("--mc-samples", dest="mc_samples", type=int,
                   help="emit Monte Carlo normalized log-guesswork, one per line")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("coding", help="one-to-one coding report (JSON)")
    common(p)
    p.add_argument("--n-list", dest="n_list")
    p.set_defaults(func=cmd_coding)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        apply_config(args)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HypothesisViolated as exc:
        print(f"hypothesis check failed (projection must be a positive tilt): {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except TooLarge as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except GuessworkError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
