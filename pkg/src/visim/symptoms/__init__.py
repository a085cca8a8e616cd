"""Symptom filters: configs, operations and the registry."""

from .configs import (
    Cataract,
    CentralLoss,
    ContrastSens,
    Cvd,
    DetailLoss,
    Distortion,
    DoubleVision,
    FlickeringStars,
    FovealDarkness,
    Glare,
    Hyperopia,
    InFilling,
    MetamorphOverlay,
    MetamorphPoint,
    Nystagmus,
    ParamSpec,
    PeripheralLoss,
    Retinopathy,
    SymptomConfig,
    Teichopsia,
    Violation,
    config_violations,
)
from .context import RenderContext
from .registry import REGISTRY, SymptomInfo, get, schema, symptom_names
from . import ops

__all__ = [
    "RenderContext",
    "REGISTRY",
    "SymptomInfo",
    "get",
    "schema",
    "symptom_names",
    "ops",
    "ParamSpec",
    "SymptomConfig",
    "Violation",
    "config_violations",
    "CentralLoss",
    "Hyperopia",
    "Cvd",
    "ContrastSens",
    "MetamorphPoint",
    "Nystagmus",
    "Retinopathy",
    "Teichopsia",
    "MetamorphOverlay",
    "Glare",
    "PeripheralLoss",
    "Cataract",
    "InFilling",
    "DoubleVision",
    "Distortion",
    "FovealDarkness",
    "FlickeringStars",
    "DetailLoss",
]
