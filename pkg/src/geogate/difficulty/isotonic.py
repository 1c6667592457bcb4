"""Weighted isotonic regression (pool-adjacent-violators) and a 1-d curve."""

from __future__ import annotations

import numpy as np


def pava(y, weights=None, increasing: bool = True) -> np.ndarray:
    """Weighted least-squares fit of a monotone sequence to y."""
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        raise ValueError("empty sequence")
    w = np.ones_like(y) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != y.shape or (w <= 0).any():
        raise ValueError("weights must be positive and match y")
    if not increasing:
        return -pava(-y, w, increasing=True)

    # blocks of (mean, weight, count), merged while out of order
    means: list[float] = []
    sizes: list[int] = []
    wsum: list[float] = []
    for yi, wi in zip(y, w):
        means.append(float(yi))
        wsum.append(float(wi))
        sizes.append(1)
        while len(means) > 1 and means[-2] > means[-1]:
            m2, w2, n2 = means.pop(), wsum.pop(), sizes.pop()
            m1, w1, n1 = means.pop(), wsum.pop(), sizes.pop()
            means.append((m1 * w1 + m2 * w2) / (w1 + w2))
            wsum.append(w1 + w2)
            sizes.append(n1 + n2)
    out = np.empty_like(y)
    pos = 0
    for m, n in zip(means, sizes):
        out[pos:pos + n] = m
        pos += n
    return out


class IsotonicCurve:
    """Monotone curve y = g(x) fitted by PAVA on unique x, linear between."""

    def __init__(self, x, y, weights=None, increasing: bool = True,
                 smooth: bool = False):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.shape != y.shape or x.size == 0:
            raise ValueError("x and y must be equal-length, non-empty")
        w = np.ones_like(x) if weights is None else np.asarray(weights, dtype=float)
        order = np.argsort(x, kind="stable")
        x, y, w = x[order], y[order], w[order]
        # collapse ties to weighted means so the knots are strictly increasing
        ux, inverse = np.unique(x, return_inverse=True)
        uy = np.zeros_like(ux)
        uw = np.zeros_like(ux)
        for i, (yi, wi) in enumerate(zip(y, w)):
            uy[inverse[i]] += yi * wi
            uw[inverse[i]] += wi
        uy /= uw
        fitted = pava(uy, uw, increasing=increasing)
        if smooth and fitted.size >= 3:
            # light 3-point average, re-projected to stay monotone
            blurred = fitted.copy()
            blurred[1:-1] = (fitted[:-2] + fitted[1:-1] + fitted[2:]) / 3
            fitted = pava(blurred, uw, increasing=increasing)
        self._x = ux
        self._y = fitted
        self.increasing = increasing

    def predict(self, x) -> np.ndarray:
        return np.interp(np.asarray(x, dtype=float), self._x, self._y)

    def inverse(self, y: float) -> float:
        """Smallest x whose fitted value reaches y (clamped to the range)."""
        ys = self._y if self.increasing else self._y[::-1]
        xs = self._x if self.increasing else self._x[::-1]
        return float(np.interp(y, ys, xs))

    def to_dict(self) -> dict:
        return {"x": self._x.tolist(), "y": self._y.tolist(),
                "increasing": self.increasing}

    @staticmethod
    def from_dict(doc: dict) -> "IsotonicCurve":
        curve = IsotonicCurve.__new__(IsotonicCurve)
        curve._x = np.asarray(doc["x"], dtype=float)
        curve._y = np.asarray(doc["y"], dtype=float)
        curve.increasing = bool(doc["increasing"])
        return curve
