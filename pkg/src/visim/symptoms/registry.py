"""Registry of the 18 symptom filters: config class, render function, gaze
and animation flags. The service's /symptoms schema and the UI sliders are
generated from here, so ranges live in exactly one place."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import ops
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
    PeripheralLoss,
    Retinopathy,
    SymptomConfig,
    Teichopsia,
)

__all__ = ["SymptomInfo", "REGISTRY", "symptom_names", "get", "schema"]


@dataclass(frozen=True)
class SymptomInfo:
    name: str
    label: str
    config_cls: type[SymptomConfig]
    fn: Callable
    eye_tracking: bool
    temporal: bool = False
    disclaimer: str = ""


_DISCLAIMER = (
    "Study participants with this symptom found the visualization "
    "unrepresentative; treat it as an approximation."
)

REGISTRY: dict[str, SymptomInfo] = {
    info.name: info
    for info in [
        SymptomInfo("central_vision_loss", "Vision loss, central", CentralLoss, ops.central_vision_loss, eye_tracking=True),
        SymptomInfo("hyperopia", "Hyperopia", Hyperopia, ops.hyperopia, eye_tracking=False),
        SymptomInfo("color_vision_deficiency", "Color vision deficiency", Cvd, ops.cvd, eye_tracking=False),
        SymptomInfo("contrast_sensitivity", "Contrast sensitivity", ContrastSens, ops.contrast_sensitivity, eye_tracking=False),
        SymptomInfo("metamorphopsia_pointwise", "Metamorphopsia, pointwise", MetamorphPoint, ops.metamorph_pointwise, eye_tracking=True, disclaimer=_DISCLAIMER),
        SymptomInfo("nystagmus", "Nystagmus", Nystagmus, ops.nystagmus, eye_tracking=False, temporal=True, disclaimer=_DISCLAIMER),
        SymptomInfo("retinopathy", "Retinopathy / floaters", Retinopathy, ops.retinopathy, eye_tracking=True, temporal=True),
        SymptomInfo("teichopsia", "Teichopsia", Teichopsia, ops.teichopsia, eye_tracking=True, temporal=True),
        SymptomInfo("metamorphopsia_overlay", "Metamorphopsia, overlay", MetamorphOverlay, ops.metamorph_overlay, eye_tracking=False, temporal=True, disclaimer=_DISCLAIMER),
        SymptomInfo("glare", "Glare / photophobia", Glare, ops.glare, eye_tracking=False),
        SymptomInfo("peripheral_vision_loss", "Vision loss, peripheral", PeripheralLoss, ops.peripheral_vision_loss, eye_tracking=True),
        SymptomInfo("cataracts", "Cataracts", Cataract, ops.cataracts, eye_tracking=False),
        SymptomInfo("in_filling", "In-filling", InFilling, ops.in_filling, eye_tracking=True),
        SymptomInfo("double_vision", "Double vision", DoubleVision, ops.double_vision, eye_tracking=False),
        SymptomInfo("distortion", "Distortion", Distortion, ops.distortion, eye_tracking=True),
        SymptomInfo("foveal_darkness", "Foveal darkness", FovealDarkness, ops.foveal_darkness, eye_tracking=True),
        SymptomInfo("flickering_stars", "Flickering stars", FlickeringStars, ops.flickering_stars, eye_tracking=False, temporal=True),
        SymptomInfo("detail_loss", "Detail loss", DetailLoss, ops.detail_loss, eye_tracking=False),
    ]
}


def symptom_names() -> list[str]:
    return list(REGISTRY.keys())


def get(name: str) -> SymptomInfo:
    if name not in REGISTRY:
        raise KeyError(f"unknown symptom {name!r}; known: {', '.join(REGISTRY)}")
    return REGISTRY[name]


def schema() -> dict:
    """Machine-readable description of every symptom and parameter range."""
    out = []
    for info in REGISTRY.values():
        params = []
        for p in info.config_cls.PARAMS:
            entry: dict = {"name": p.name, "kind": p.kind, "default": list(p.default) if isinstance(p.default, tuple) else p.default}
            if p.kind in ("float", "int", "vec2"):
                entry["min"] = p.min
                entry["max"] = p.max
            if p.unit:
                entry["unit"] = p.unit
            if p.choices:
                entry["choices"] = list(p.choices)
            params.append(entry)
        item = {
            "name": info.name,
            "label": info.label,
            "eye_tracking": info.eye_tracking,
            "temporal": info.temporal,
            "params": params,
            "neutral": dict(info.config_cls.NEUTRAL),
        }
        if info.disclaimer:
            item["disclaimer"] = info.disclaimer
        out.append(item)
    return {"symptoms": out}
