"""Procedural spatial-reasoning CAPTCHA toolkit.

Subpackages:
    geometry    exact-enough geometric substrate (motions, polyominoes, nets, voxels)
    families    the seven concrete task formulations
    difficulty  isotonic / quantile calibration and the difficulty map
    rendering   deterministic SVG + PNG panel output
    service     FastAPI challenge-response server

Top-level modules:
    manifest    task manifest parsing and parameter sampling
    pipeline    instance synthesis and dataset assembly
    evalkit     offline metrics over response logs
"""

__version__ = "0.1.0"
