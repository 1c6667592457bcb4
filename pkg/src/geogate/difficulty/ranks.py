"""Quantile ranks and their inverses (Hazen plotting positions)."""

from __future__ import annotations

import numpy as np
from scipy.stats import rankdata


def hazen_ranks(values) -> np.ndarray:
    """(rank - 0.5) / n with average ties; output strictly inside (0, 1)."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("no values to rank")
    return (rankdata(v, method="average") - 0.5) / v.size


def hazen_quantile(values, q: float) -> float:
    return float(np.quantile(np.asarray(values, dtype=float), q, method="hazen"))


class RankMap:
    """Monotone map value -> quantile rank fitted on a sample, invertible."""

    def __init__(self, values):
        v = np.asarray(values, dtype=float)
        if v.size == 0:
            raise ValueError("empty sample")
        order = np.argsort(v, kind="stable")
        self._values = v[order]
        self._ranks = hazen_ranks(v)[order]

    def rank(self, value: float) -> float:
        return float(np.interp(value, self._values, self._ranks))

    def inverse(self, q: float) -> float:
        return float(np.interp(q, self._ranks, self._values))

    def to_dict(self) -> dict:
        return {"values": self._values.tolist(), "ranks": self._ranks.tolist()}

    @staticmethod
    def from_dict(doc: dict) -> "RankMap":
        rm = RankMap.__new__(RankMap)
        rm._values = np.asarray(doc["values"], dtype=float)
        rm._ranks = np.asarray(doc["ranks"], dtype=float)
        return rm
