"""Difficulty calibration: human pilot outcomes -> latent difficulty score."""

from .isotonic import IsotonicCurve, pava
from .model import (DifficultyModel, SurrogateDifficulty, default_surrogate,
                    fit_difficulty_model)
from .pilot import PilotRecord, aggregate_pilot, read_pilot_csv, write_pilot_csv
from .quantile import QuantileLine, quantile_fit
from .ranks import RankMap, hazen_quantile, hazen_ranks

__all__ = [
    "DifficultyModel", "IsotonicCurve", "PilotRecord", "QuantileLine",
    "RankMap", "SurrogateDifficulty", "aggregate_pilot", "default_surrogate",
    "fit_difficulty_model", "hazen_quantile", "hazen_ranks", "pava",
    "quantile_fit", "read_pilot_csv", "write_pilot_csv",
]
