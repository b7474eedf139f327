"""Finite-alphabet distributions and the entropy functionals built on them.

All logarithms are natural (nats). Distributions are immutable: the
probability vector is stored as a read-only numpy array.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.special import logsumexp, rel_entr, xlogy

from .errors import (
    AlphabetMismatch,
    NonPositiveWeight,
    OrderIsOne,
    TooSmallAlphabet,
)

#: Minimum gap between the extreme probability and its runner-up for a
#: distribution to count as unambiguous.
UNAMBIGUITY_GAP = 1e-12
SUM_TOL = 1e-12


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbol labels; the order doubles as the lexicographic order."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(s) for s in self.labels)
        if len(labels) < 2:
            raise TooSmallAlphabet(f"alphabet needs at least 2 symbols, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"alphabet labels must be distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, k: int) -> "Alphabet":
        if k < 2:
            raise TooSmallAlphabet(f"alphabet needs at least 2 symbols, got {k}")
        if k <= 26:
            return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:k]))
        return cls(tuple(f"s{i:0{len(str(k - 1))}d}" for i in range(k)))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True, eq=False)
class Dist:
    """A probability vector over an :class:`Alphabet`.

    Build user-facing distributions with :func:`validate` (or
    :meth:`Dist.from_weights`), which enforces strict positivity. Derived
    distributions such as the point-mass limits of a tilt are constructed
    directly and may contain zeros.
    """

    alphabet: Alphabet
    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim != 1 or p.shape[0] != len(self.alphabet):
            raise AlphabetMismatch(
                f"expected {len(self.alphabet)} probabilities, got shape {p.shape}"
            )
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_weights(cls, weights: Iterable[float], alphabet: Alphabet | Sequence[str] | None = None) -> "Dist":
        return validate(weights, alphabet)

    @classmethod
    def from_log_weights(cls, log_weights: np.ndarray, alphabet: Alphabet) -> "Dist":
        lw = np.asarray(log_weights, dtype=float)
        return cls(alphabet, np.exp(lw - logsumexp(lw)))

    @classmethod
    def uniform(cls, alphabet: Alphabet | int) -> "Dist":
        if isinstance(alphabet, int):
            alphabet = Alphabet.of_size(alphabet)
        k = len(alphabet)
        return cls(alphabet, np.full(k, 1.0 / k))

    @classmethod
    def point_mass(cls, alphabet: Alphabet, index: int) -> "Dist":
        p = np.zeros(len(alphabet))
        p[index] = 1.0
        return cls(alphabet, p)

    def __len__(self) -> int:
        return len(self.alphabet)

    def __repr__(self) -> str:
        body = ", ".join(f"{s}={p:.6g}" for s, p in zip(self.alphabet, self.probs))
        return f"Dist({body})"

    @property
    def size(self) -> int:
        return len(self.alphabet)

    @property
    def log_probs(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.probs)

    @property
    def unambiguous(self) -> bool:
        return is_unambiguous(self)

    def allclose(self, other: "Dist", atol: float = 1e-12) -> bool:
        _check_same_alphabet(self, other)
        return bool(np.max(np.abs(self.probs - other.probs)) <= atol)

    def to_dict(self) -> dict:
        return {"alphabet": list(self.alphabet.labels), "probs": [float(x) for x in self.probs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Dist":
        unknown = set(data) - {"alphabet", "probs"}
        if unknown:
            raise ValueError(f"unknown keys in distribution: {sorted(unknown)}")
        if "probs" not in data:
            raise ValueError("distribution needs a 'probs' entry")
        alphabet = data.get("alphabet")
        return validate(data["probs"], alphabet)

    @classmethod
    def from_json(cls, text: str) -> "Dist":
        return cls.from_dict(json.loads(text))


def validate(raw_weights: Iterable[float], alphabet: Alphabet | Sequence[str] | None = None) -> Dist:
    """Normalize strictly positive weights into a :class:`Dist`.

    ``alphabet`` defaults to ``a, b, c, ...`` of the right length.
    """
    w = np.asarray(list(raw_weights), dtype=float)
    if w.ndim != 1:
        raise ValueError("weights must be a flat vector")
    if alphabet is None:
        if w.size < 2:
            raise TooSmallAlphabet(f"alphabet needs at least 2 symbols, got {w.size}")
        alphabet = Alphabet.of_size(w.size)
    elif not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    if w.size != len(alphabet):
        raise AlphabetMismatch(f"{w.size} weights for {len(alphabet)} symbols")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    if np.any(w <= 0):
        bad = [alphabet.labels[i] for i in np.flatnonzero(w <= 0)]
        raise NonPositiveWeight(f"non-positive weight for symbol(s) {bad}")
    p = w / w.sum()
    if abs(p.sum() - 1.0) > SUM_TOL:
        # renormalize once more; float division can leave ~1 ulp per entry
        p = p / p.sum()
    return Dist(alphabet, p)


def is_unambiguous(p: Dist, gap: float = UNAMBIGUITY_GAP) -> bool:
    """True when the argmin and argmax are each unique (by more than ``gap``) and all mass is positive."""
    q = np.sort(p.probs)
    if q[0] <= 0:
        return False
    return bool(q[1] - q[0] > gap and q[-1] - q[-2] > gap)


def uniform_like(p: Dist) -> Dist:
    return Dist.uniform(p.alphabet)


def _check_same_alphabet(p: Dist, q: Dist) -> None:
    if p.alphabet != q.alphabet:
        raise AlphabetMismatch(f"{p.alphabet.labels} vs {q.alphabet.labels}")


def entropy(p: Dist) -> float:
    """Shannon entropy in nats."""
    return float(-np.sum(xlogy(p.probs, p.probs)))


def cross_entropy(p: Dist, q: Dist) -> float:
    """-sum p log q, which equals entropy(p) + kl_divergence(p, q)."""
    _check_same_alphabet(p, q)
    return float(-np.sum(xlogy(p.probs, q.probs)))


def kl_divergence(p: Dist, q: Dist) -> float:
    _check_same_alphabet(p, q)
    return float(np.sum(rel_entr(p.probs, q.probs)))


def renyi_entropy(p: Dist, order: float) -> float:
    """Rényi entropy of the given order; order 1 is rejected (use :func:`entropy`)."""
    if not math.isfinite(order):
        raise ValueError("Rényi order must be finite")
    if order == 1:
        raise OrderIsOne("Rényi entropy of order 1 is the Shannon entropy; call entropy()")
    support = p.probs[p.probs > 0]
    log_sum = logsumexp(order * np.log(support))
    return float(log_sum / (1.0 - order))
