"""Group fairness audit of binary prediction models.

Thin Python layer over the C++ engine. Every function takes plain
sequences and returns dicts mirroring the metrics.json document.
"""

from ._core import (
    ConfigError,
    DegenerateLabelsError,
    EmptyGroupError,
    EmptyInputError,
    FairauditError,
    RankDeficiencyError,
    ShapeError,
    ValidationError,
    __version__,
    auc,
    evaluate,
    fit_compas,
    logistic_recalibration,
    performance_metrics,
    platt_scale,
    report,
    run_cli,
    wilson_ci,
    youden_threshold,
)

__all__ = [
    "ConfigError",
    "DegenerateLabelsError",
    "EmptyGroupError",
    "EmptyInputError",
    "FairauditError",
    "RankDeficiencyError",
    "ShapeError",
    "ValidationError",
    "__version__",
    "auc",
    "evaluate",
    "fit_compas",
    "logistic_recalibration",
    "performance_metrics",
    "platt_scale",
    "report",
    "run_cli",
    "wilson_ci",
    "youden_threshold",
]
