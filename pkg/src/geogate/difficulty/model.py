"""The difficulty map: pilot outcomes -> calibrated score d in [0, 1].

Per family: an additive isotonic fit of mean log response time over the
monotone knobs, and linear quantile fits of the success rate. Per-family
quantile ranks of both signals are aligned to their pooled distributions by
isotonic calibration, then blended, d = alpha * T + (1 - alpha) * E. Bins cut
the blended score at its global 1/3 and 2/3 quantiles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

import numpy as np

from ..manifest import Manifest
from ..rng import Stream
from .isotonic import IsotonicCurve
from .quantile import QuantileLine
from .ranks import RankMap, hazen_quantile

FORMAT_VERSION = "1"
DEFAULT_ALPHA = 0.6
MIN_PER_FAMILY = 20
BIN_NAMES = ("easy", "medium", "hard")


@dataclass(frozen=True)
class CalibrationPoint:
    family: str
    values: dict[str, Any]
    mean_log_time: Optional[float]     # None if no correct trials
    success_rate: float


def feature_axes(manifest: Manifest) -> list[tuple[str, int]]:
    """(knob, sign) pairs; knobs without a declared direction count as harder
    when larger."""
    if manifest.monotone_features:
        return [(m.knob, m.sign) for m in manifest.monotone_features]
    return [(k, 1) for k in manifest.difficulty_features]


def signed_features(manifest: Manifest, values: Mapping[str, Any]) -> np.ndarray:
    """Each axis normalized to [0, 1] with 1 = harder."""
    out = []
    for knob, sign in feature_axes(manifest):
        z = manifest.params[knob].normalized(values[knob])
        out.append(z if sign == 1 else 1.0 - z)
    return np.asarray(out, dtype=float)


def _fit_additive_isotonic(Z: np.ndarray, y: np.ndarray,
                           sweeps: int = 8) -> tuple[float, list[IsotonicCurve]]:
    """Backfitting: y ~ mean + sum_j g_j(z_j), each g_j non-decreasing."""
    mean = float(y.mean())
    resid = y - mean
    n, p = Z.shape
    parts = np.zeros((p, n))
    for _ in range(sweeps):
        for j in range(p):
            target = resid - parts.sum(axis=0) + parts[j]
            curve = IsotonicCurve(Z[:, j], target, increasing=True, smooth=True)
            fitted = curve.predict(Z[:, j])
            parts[j] = fitted - fitted.mean()    # keep the offset in `mean`
    # refit each component on its final partial residual for storage
    final: list[IsotonicCurve] = []
    for j in range(p):
        target = resid - parts.sum(axis=0) + parts[j]
        final.append(IsotonicCurve(Z[:, j], target, increasing=True, smooth=True))
    return mean, final


@dataclass
class FamilyFit:
    features: list[tuple[str, int]]
    t_mean: float
    t_curves: list[IsotonicCurve]
    s_med: QuantileLine
    s_low: QuantileLine
    t_rank: RankMap                  # family CDF of predicted log time
    e_rank: RankMap                  # family CDF of predicted error rate
    t_cal: IsotonicCurve             # family rank -> pooled rank
    e_cal: IsotonicCurve

    def predict_log_time(self, z: np.ndarray) -> float:
        return self.t_mean + sum(float(c.predict(z[j]))
                                 for j, c in enumerate(self.t_curves))

    def predict_success(self, z: np.ndarray) -> float:
        return float(self.s_med.predict(z)[0])

    def to_dict(self) -> dict:
        return {
            "features": [[k, s] for k, s in self.features],
            "t_mean": self.t_mean,
            "t_curves": [c.to_dict() for c in self.t_curves],
            "s_med": self.s_med.to_dict(),
            "s_low": self.s_low.to_dict(),
            "t_rank": self.t_rank.to_dict(),
            "e_rank": self.e_rank.to_dict(),
            "t_cal": self.t_cal.to_dict(),
            "e_cal": self.e_cal.to_dict(),
        }

    @staticmethod
    def from_dict(doc: dict) -> "FamilyFit":
        return FamilyFit(
            features=[(k, int(s)) for k, s in doc["features"]],
            t_mean=float(doc["t_mean"]),
            t_curves=[IsotonicCurve.from_dict(c) for c in doc["t_curves"]],
            s_med=QuantileLine.from_dict(doc["s_med"]),
            s_low=QuantileLine.from_dict(doc["s_low"]),
            t_rank=RankMap.from_dict(doc["t_rank"]),
            e_rank=RankMap.from_dict(doc["e_rank"]),
            t_cal=IsotonicCurve.from_dict(doc["t_cal"]),
            e_cal=IsotonicCurve.from_dict(doc["e_cal"]),
        )


@dataclass
class DifficultyModel:
    alpha: float
    thresholds: tuple[float, float]       # easy|medium and medium|hard cuts
    fits: dict[str, FamilyFit]
    manifests: dict[str, Manifest] = field(repr=False)

    def supports_family(self, family: str) -> bool:
        return family in self.fits

    def _require(self, family: str) -> FamilyFit:
        if family not in self.fits:
            raise ValueError(f"model not fitted for family {family!r}")
        return self.fits[family]

    def blend(self, t_tilde: float, e_tilde: float) -> float:
        return self.alpha * t_tilde + (1 - self.alpha) * e_tilde

    def predict_from_params(self, family: str,
                            values: Mapping[str, Any]) -> float:
        fit = self._require(family)
        z = signed_features(self.manifests[family], values)
        t_hat = fit.predict_log_time(z)
        e_hat = 1.0 - fit.predict_success(z)
        t_tilde = float(np.clip(fit.t_cal.predict(fit.t_rank.rank(t_hat)), 0, 1))
        e_tilde = float(np.clip(fit.e_cal.predict(fit.e_rank.rank(e_hat)), 0, 1))
        return self.blend(t_tilde, e_tilde)

    def bin_of(self, d: float) -> str:
        lo, hi = self.thresholds
        if d <= lo:
            return "easy"
        return "medium" if d <= hi else "hard"

    def invert(self, family: str, d_star: float, *, stream: Stream,
               samples: int = 200, adjustments: int = 20,
               tolerance: float = 0.05) -> dict[str, Any]:
        """Knob values whose predicted difficulty approaches d_star.

        Walks the iso-difficulty line alpha*T + (1-alpha)*E = d_star: pick a
        feasible (T, E) target pair, pull it back through the calibrators and
        family CDFs to raw (t*, s*) targets, search the knob space for the
        closest fit, and re-verify; on a miss, slide along the line and retry.
        """
        fit = self._require(family)
        manifest = self.manifests[family]
        a = self.alpha
        lo = max(0.0, (d_star - (1 - a)) / a) if a > 0 else 0.0
        hi = min(1.0, d_star / a) if a > 0 else 1.0
        best_values, best_err = None, float("inf")
        for step in range(adjustments):
            frac = 0.5 if step == 0 else stream.uniform(0.0, 1.0)
            t_tilde = lo + (hi - lo) * frac
            e_tilde = ((d_star - a * t_tilde) / (1 - a)) if a < 1 else 0.5
            e_tilde = float(np.clip(e_tilde, 0.0, 1.0))
            # pull the pooled targets back to family scale, then to raw units
            t_target = fit.t_rank.inverse(fit.t_cal.inverse(t_tilde))
            e_target = fit.e_rank.inverse(fit.e_cal.inverse(e_tilde))
            for _ in range(samples):
                values = {k: dom.sample(stream)
                          for k, dom in sorted(manifest.params.items())}
                z = signed_features(manifest, values)
                guide = (abs(fit.predict_log_time(z) - t_target)
                         + abs((1.0 - fit.predict_success(z)) - e_target))
                gap = abs(self.predict_from_params(family, values) - d_star)
                if gap <= tolerance:
                    return values
                score = gap + 0.1 * guide
                if score < best_err:
                    best_err, best_values = score, values
        if best_values is None:
            raise ValueError("inversion failed: no admissible knob values")
        return best_values

    def to_json(self) -> str:
        return json.dumps({
            "version": FORMAT_VERSION,
            "alpha": self.alpha,
            "thresholds": list(self.thresholds),
            "fits": {f: fit.to_dict() for f, fit in self.fits.items()},
        }, sort_keys=True)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json())

    @staticmethod
    def from_json(text: str, manifests: dict[str, Manifest]) -> "DifficultyModel":
        doc = json.loads(text)
        if doc.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported model format {doc.get('version')!r}")
        return DifficultyModel(
            alpha=float(doc["alpha"]),
            thresholds=(float(doc["thresholds"][0]), float(doc["thresholds"][1])),
            fits={f: FamilyFit.from_dict(d) for f, d in doc["fits"].items()},
            manifests=manifests)

    @staticmethod
    def load(path: str | Path,
             manifests: dict[str, Manifest]) -> "DifficultyModel":
        return DifficultyModel.from_json(Path(path).read_text(), manifests)


def fit_difficulty_model(points: list[CalibrationPoint],
                         manifests: dict[str, Manifest],
                         alpha: float = DEFAULT_ALPHA,
                         min_per_family: int = MIN_PER_FAMILY) -> DifficultyModel:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    by_family: dict[str, list[CalibrationPoint]] = {}
    for p in points:
        if p.family not in manifests:
            raise ValueError(f"no manifest for family {p.family!r}")
        by_family.setdefault(p.family, []).append(p)
    for family, rows in by_family.items():
        if len(rows) < min_per_family:
            raise ValueError(
                f"family {family!r} has {len(rows)} pilot points; "
                f"need at least {min_per_family}")

    # per-family forward fits and in-family predictions
    staged: dict[str, dict] = {}
    for family, rows in sorted(by_family.items()):
        manifest = manifests[family]
        Z = np.vstack([signed_features(manifest, p.values) for p in rows])
        t_rows = [(z, p.mean_log_time) for z, p in zip(Z, rows)
                  if p.mean_log_time is not None]
        if len(t_rows) < max(2, min_per_family // 2):
            raise ValueError(
                f"family {family!r} has too few timed correct trials")
        Zt = np.vstack([z for z, _ in t_rows])
        yt = np.asarray([t for _, t in t_rows])
        t_mean, t_curves = _fit_additive_isotonic(Zt, yt)
        s_obs = np.asarray([p.success_rate for p in rows])
        s_med = QuantileLine.fit(Z, s_obs, 0.5)
        s_low = QuantileLine.fit(Z, s_obs, 0.25)

        t_pred = np.asarray([t_mean + sum(float(c.predict(z[j]))
                                          for j, c in enumerate(t_curves))
                             for z in Z])
        e_pred = 1.0 - np.clip(s_med.predict(Z), 0, 1)
        staged[family] = {
            "features": feature_axes(manifest), "t_mean": t_mean,
            "t_curves": t_curves, "s_med": s_med, "s_low": s_low,
            "t_pred": t_pred, "e_pred": e_pred,
        }

    # global alignment: family ranks -> pooled ranks of the same signal
    pooled_t = np.concatenate([s["t_pred"] for s in staged.values()])
    pooled_e = np.concatenate([s["e_pred"] for s in staged.values()])
    pool_t_map = RankMap(pooled_t)
    pool_e_map = RankMap(pooled_e)

    fits: dict[str, FamilyFit] = {}
    all_d: list[float] = []
    for family, s in staged.items():
        t_rank = RankMap(s["t_pred"])
        e_rank = RankMap(s["e_pred"])
        fam_t_ranks = np.asarray([t_rank.rank(v) for v in s["t_pred"]])
        fam_e_ranks = np.asarray([e_rank.rank(v) for v in s["e_pred"]])
        glob_t = np.asarray([pool_t_map.rank(v) for v in s["t_pred"]])
        glob_e = np.asarray([pool_e_map.rank(v) for v in s["e_pred"]])
        t_cal = IsotonicCurve(fam_t_ranks, glob_t, increasing=True)
        e_cal = IsotonicCurve(fam_e_ranks, glob_e, increasing=True)
        fits[family] = FamilyFit(
            features=s["features"], t_mean=s["t_mean"],
            t_curves=s["t_curves"], s_med=s["s_med"], s_low=s["s_low"],
            t_rank=t_rank, e_rank=e_rank, t_cal=t_cal, e_cal=e_cal)
        t_tilde = np.clip(t_cal.predict(fam_t_ranks), 0, 1)
        e_tilde = np.clip(e_cal.predict(fam_e_ranks), 0, 1)
        all_d.extend(alpha * t_tilde + (1 - alpha) * e_tilde)

    thresholds = (hazen_quantile(all_d, 1 / 3), hazen_quantile(all_d, 2 / 3))
    return DifficultyModel(alpha=alpha, thresholds=thresholds, fits=fits,
                           manifests=dict(manifests))


class SurrogateDifficulty:
    """Knob-only difficulty stand-in used before any pilot data exists: the
    mean of the signed normalized monotone axes, cut at 1/3 and 2/3."""

    thresholds = (1 / 3, 2 / 3)

    def __init__(self, manifests: dict[str, Manifest]):
        self.manifests = dict(manifests)

    def supports_family(self, family: str) -> bool:
        return family in self.manifests

    def predict_from_params(self, family: str,
                            values: Mapping[str, Any]) -> float:
        if family not in self.manifests:
            raise ValueError(f"no manifest for family {family!r}")
        z = signed_features(self.manifests[family], values)
        return float(z.mean())

    def bin_of(self, d: float) -> str:
        lo, hi = self.thresholds
        if d <= lo:
            return "easy"
        return "medium" if d <= hi else "hard"


def default_surrogate(manifests: Optional[dict[str, Manifest]] = None
                      ) -> SurrogateDifficulty:
    if manifests is None:
        from ..resources import load_all_shipped

        manifests = load_all_shipped()
    return SurrogateDifficulty(manifests)
