"""Exact finite-n guesswork by exhaustive enumeration and by the method of types.

Two independent routes to the same numbers:

* :func:`exact_guesswork_enum` lists all ``|X|**n`` sequences and sorts them.
* :func:`build_guess_table` works on the ``C(n+|X|-1, |X|-1)`` types only.
  All sequences of one type share a probability under any i.i.d. model, so
  the rank of a type class's first member is one plus the total size of the
  strictly more likely classes. Sizes are accumulated in log-space, which
  keeps ``n`` in the thousands feasible.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np
from scipy.special import gammaln, logsumexp

from .dist import Dist, _check_same_alphabet
from .errors import TooLarge

MAX_SEQUENCES = 2 ** 24
MAX_TYPES = 2 ** 22
#: Scores within ``TIE_TOL * n`` of each other count as tied.
TIE_TOL = 1e-9


def _tie_groups(sorted_scores: np.ndarray, tol: float) -> np.ndarray:
    """Group ids along a descending score array; a new group starts at every gap larger than ``tol``."""
    gaps = np.diff(sorted_scores, prepend=sorted_scores[0]) < -tol
    return np.cumsum(gaps)


def exact_guesswork_enum(nu: Dist, n: int, tie_tol: float = TIE_TOL) -> np.ndarray:
    """1-based guessing rank of every length-``n`` sequence under the i.i.d. model ``nu``.

    Returns an integer array of shape ``(|X|,) * n``; ``ranks[i1, ..., in]``
    is the rank of the sequence of symbols ``i1 ... in`` (alphabet indices).
    Ties in probability are broken by lexicographic order of the sequence.
    """
    k = nu.size
    if n < 1:
        raise ValueError("n must be at least 1")
    if k ** n > MAX_SEQUENCES:
        raise TooLarge(f"{k}**{n} sequences exceed the guard of {MAX_SEQUENCES}")
    lnu = nu.log_probs
    scores = lnu
    for _ in range(n - 1):
        scores = np.add.outer(scores, lnu)
    flat = np.ravel(scores)  # C order is lexicographic order
    order = np.argsort(-flat, kind="stable")
    groups = _tie_groups(flat[order], tie_tol * n)
    order = order[np.lexsort((order, groups))]
    ranks = np.empty(flat.size, dtype=np.int64)
    ranks[order] = np.arange(1, flat.size + 1)
    return ranks.reshape((k,) * n)


def is_tie_free(nu: Dist, n: int, tie_tol: float = TIE_TOL) -> bool:
    """True when no two length-``n`` sequences share a probability under ``nu``.

    Any two sequences of the same type tie, so this holds only for ``n = 1``
    with distinct probabilities.
    """
    if n > 1:
        return False
    s = np.sort(nu.log_probs)
    return bool(np.all(np.diff(s) > tie_tol))


def count_types(n: int, k: int) -> int:
    return math.comb(n + k - 1, k - 1)


def compositions(n: int, k: int) -> np.ndarray:
    """All non-negative integer vectors of length ``k`` summing to ``n``, lexicographically descending."""
    if k == 1:
        return np.array([[n]], dtype=np.int64)
    if k == 2:
        first = np.arange(n, -1, -1, dtype=np.int64)
        return np.column_stack([first, n - first])
    blocks = []
    for first in range(n, -1, -1):
        rest = compositions(n - first, k - 1)
        blocks.append(np.column_stack([np.full(len(rest), first, dtype=np.int64), rest]))
    return np.vstack(blocks)


class TypeRecord(NamedTuple):
    counts: tuple
    log_class_size: float
    nu_score: float
    log_guesswork: float
    log_mu_prob: float


@dataclass(frozen=True, eq=False)
class GuessTable:
    """Column store of every type at length ``n`` with its guessing statistics.

    ``log_guesswork`` is the log-rank of the first member of the class
    (tied classes do not count against each other). ``log_guesswork_mid``
    is the log of the mean of the first and last rank of the tie group.
    """

    n: int
    model: Dist
    source: Dist
    counts: np.ndarray
    log_class_size: np.ndarray
    nu_score: np.ndarray
    log_guesswork: np.ndarray
    log_guesswork_mid: np.ndarray
    log_mu_prob: np.ndarray

    def __len__(self) -> int:
        return len(self.counts)

    def records(self) -> Iterator[TypeRecord]:
        for i in range(len(self)):
            yield TypeRecord(
                tuple(int(c) for c in self.counts[i]),
                float(self.log_class_size[i]),
                float(self.nu_score[i]),
                float(self.log_guesswork[i]),
                float(self.log_mu_prob[i]),
            )

    __iter__ = records

    def type_index(self, counts: np.ndarray) -> np.ndarray:
        """Row index of each count vector (rows of ``counts``) in this table."""
        keys = self._keys(np.atleast_2d(counts))
        table_keys = self._keys(self.counts)
        order = np.argsort(table_keys)
        pos = np.searchsorted(table_keys, keys, sorter=order)
        idx = order[np.minimum(pos, len(order) - 1)]
        if np.any(table_keys[idx] != keys):
            raise ValueError("count vector is not a type of this table")
        return idx

    def _keys(self, counts: np.ndarray) -> np.ndarray:
        radix = self.n + 1
        weights = radix ** np.arange(counts.shape[1], dtype=np.int64)
        return counts.astype(np.int64) @ weights

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"count_{s}" for s in self.model.alphabet]
                        + ["log_class_size", "nu_score", "log_guesswork", "log_mu_prob"])
        for rec in self.records():
            writer.writerow(list(rec.counts) + [format(v, ".15g") for v in rec[1:]])
        return buf.getvalue()


def build_guess_table(nu: Dist, mu: Dist, n: int, tie_tol: float = TIE_TOL) -> GuessTable:
    _check_same_alphabet(nu, mu)
    if n < 1:
        raise ValueError("n must be at least 1")
    k = nu.size
    if count_types(n, k) > MAX_TYPES:
        raise TooLarge(f"{count_types(n, k)} types exceed the guard of {MAX_TYPES}")
    counts = compositions(n, k)
    log_size = gammaln(n + 1) - gammaln(counts + 1).sum(axis=1)
    score = counts @ nu.log_probs
    log_mu = log_size + counts @ mu.log_probs

    order = np.argsort(-score, kind="stable")
    groups = _tie_groups(score[order], tie_tol * n)
    starts = np.flatnonzero(np.diff(groups, prepend=-1))
    log_group = np.logaddexp.reduceat(log_size[order], starts)
    # log of the total size of all strictly earlier groups
    log_before = np.concatenate([[-np.inf], np.logaddexp.accumulate(log_group)[:-1]])
    lb = log_before[groups]
    lg_sorted = np.logaddexp(0.0, lb)
    mid_sorted = np.logaddexp(lb, np.logaddexp(0.0, log_group[groups]) - math.log(2.0))

    log_guess = np.empty_like(score)
    log_mid = np.empty_like(score)
    log_guess[order] = lg_sorted
    log_mid[order] = mid_sorted
    return GuessTable(n, nu, mu, counts, log_size, score, log_guess, log_mid, log_mu)


def exact_moment(table: GuessTable, rho: float) -> float:
    """``(1/(n rho)) log E[G**rho]`` with the mid-group rank of each type."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    return float(logsumexp(table.log_mu_prob + rho * table.log_guesswork_mid) / (table.n * rho))


def exact_ldp_window(table: GuessTable, t: float, eps: float) -> float:
    """``-(1/n) log P(|log G / n - t| <= eps)``; ``inf`` when no type falls in the window."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    inside = np.abs(table.log_guesswork / table.n - t) <= eps
    if not np.any(inside):
        return math.inf
    return float(-logsumexp(table.log_mu_prob[inside]) / table.n)


def exact_tail(table: GuessTable, R: float) -> float:
    """``-(1/n) log P(log G > n R)``; ``inf`` when the event is empty."""
    above = table.log_guesswork > table.n * R
    if not np.any(above):
        return math.inf
    return float(-logsumexp(table.log_mu_prob[above]) / table.n)


def exact_mean(table: GuessTable) -> float:
    """``(1/n) E[log G]`` under the source, with mid-group ranks."""
    return float(np.sum(np.exp(table.log_mu_prob) * table.log_guesswork_mid) / table.n)


def mc_log_guesswork(nu: Dist, mu: Dist, n: int, samples: int, seed: int,
                     table: GuessTable | None = None) -> np.ndarray:
    """Normalized log-guesswork of ``samples`` i.i.d. draws from ``mu**n``, ordered by ``nu``.

    The type of an i.i.d. sequence is multinomial, so counts are drawn
    directly. The result depends only on ``seed``.
    """
    if table is None:
        table = build_guess_table(nu, mu, n)
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(n, mu.probs, size=samples)
    return table.log_guesswork[table.type_index(draws)] / n
