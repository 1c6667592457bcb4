"""Linear quantile regression by minimizing pinball loss with an LP."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csc_matrix, eye, hstack


def quantile_fit(X, y, tau: float) -> np.ndarray:
    """Coefficients [intercept, slopes...] minimizing the tau-pinball loss.

    Falls back to the intercept-only empirical quantile if the LP fails.
    """
    if not 0.0 < tau < 1.0:
        raise ValueError("tau must be in (0, 1)")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] != y.size or y.size == 0:
        raise ValueError("X must be (n, p) with n matching y")
    n, p = X.shape
    A = np.hstack([np.ones((n, 1)), X])
    k = p + 1
    # variables: beta+ (k), beta- (k), u (n), v (n);  y = A(b+ - b-) + u - v
    c = np.concatenate([np.zeros(2 * k), tau * np.ones(n), (1 - tau) * np.ones(n)])
    A_sp = csc_matrix(A)
    A_eq = hstack([A_sp, -A_sp, eye(n, format="csc"), -eye(n, format="csc")],
                  format="csc")
    res = linprog(c, A_eq=A_eq, b_eq=y, bounds=[(0, None)] * (2 * k + 2 * n),
                  method="highs")
    if not res.success:
        coef = np.zeros(k)
        coef[0] = float(np.quantile(y, tau))
        return coef
    beta = res.x[:k] - res.x[k:2 * k]
    return beta


class QuantileLine:
    """A fitted conditional quantile, clipped to a value range."""

    def __init__(self, coef, clip: tuple[float, float] | None = (0.0, 1.0)):
        self.coef = np.asarray(coef, dtype=float)
        self.clip = clip

    @staticmethod
    def fit(X, y, tau: float,
            clip: tuple[float, float] | None = (0.0, 1.0)) -> "QuantileLine":
        return QuantileLine(quantile_fit(X, y, tau), clip)

    def predict(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = self.coef[0] + X @ self.coef[1:]
        if self.clip is not None:
            out = np.clip(out, *self.clip)
        return out

    def to_dict(self) -> dict:
        return {"coef": self.coef.tolist(),
                "clip": list(self.clip) if self.clip else None}

    @staticmethod
    def from_dict(doc: dict) -> "QuantileLine":
        clip = tuple(doc["clip"]) if doc["clip"] else None
        return QuantileLine(doc["coef"], clip)
