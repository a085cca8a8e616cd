"""Symptom parameter records and their allowed ranges.

One frozen dataclass per symptom. Size-like parameters are normalized:
1.0 means "full-screen size", which resolves to max(width, height) pixels
at render time. Severity is in percent (0..100), nystagmus amplitude in
percent of screen width (0..20). Everything else matches the slider units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Any, ClassVar

from ..errors import ParameterError

__all__ = ["ParamSpec", "Violation", "SymptomConfig", "config_violations"]


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str  # float | int | enum | bool | vec2
    min: float | None = None
    max: float | None = None
    default: Any = None
    unit: str = ""
    choices: tuple[str, ...] = ()


@dataclass(frozen=True)
class Violation:
    symptom: str
    field: str
    value: Any
    allowed: str

    def message(self) -> str:
        return f"{self.symptom}.{self.field} must be in {self.allowed}; got {self.value!r}"


class SymptomConfig:
    """Base for all symptom configs; subclasses define PARAMS and NEUTRAL."""

    PARAMS: ClassVar[tuple[ParamSpec, ...]] = ()
    NEUTRAL: ClassVar[dict[str, Any]] = {}

    def params_dict(self) -> dict[str, Any]:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def neutral(cls) -> "SymptomConfig":
        return cls(**cls.NEUTRAL)

    @classmethod
    def from_params(cls, params: dict[str, Any]) -> "SymptomConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(params) - known
        if unknown:
            import warnings

            warnings.warn(f"{cls.__name__}: ignoring unknown fields {sorted(unknown)}")
        kwargs = {}
        for f in fields(cls):
            if f.name not in params:
                continue
            v = params[f.name]
            kwargs[f.name] = tuple(v) if isinstance(v, list) else v
        return cls(**kwargs)


def _check_number(name: str, spec: ParamSpec, value: Any, out: list[Violation]) -> None:
    interval = f"[{spec.min:g}, {spec.max:g}]"
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(float(value)):
        out.append(Violation(name, spec.name, value, interval))
        return
    if spec.kind == "int" and float(value) != int(value):
        out.append(Violation(name, spec.name, value, f"integers in {interval}"))
        return
    if not (spec.min <= float(value) <= spec.max):
        out.append(Violation(name, spec.name, value, interval))


def config_violations(name: str, cfg: SymptomConfig) -> list[Violation]:
    """Range-check every field against its spec; never raises."""
    out: list[Violation] = []
    for spec in cfg.PARAMS:
        value = getattr(cfg, spec.name)
        if spec.kind in ("float", "int"):
            _check_number(name, spec, value, out)
        elif spec.kind == "enum":
            if value not in spec.choices:
                out.append(Violation(name, spec.name, value, f"one of {list(spec.choices)}"))
        elif spec.kind == "bool":
            if not isinstance(value, bool):
                out.append(Violation(name, spec.name, value, "true or false"))
        elif spec.kind == "vec2":
            ok = (
                isinstance(value, tuple)
                and len(value) == 2
                and all(isinstance(c, (int, float)) and math.isfinite(float(c)) for c in value)
                and all(spec.min <= float(c) <= spec.max for c in value)
            )
            if not ok:
                out.append(Violation(name, spec.name, value, f"pair in [{spec.min:g}, {spec.max:g}]"))
    extra = getattr(cfg, "extra_violations", None)
    if extra is not None:
        out.extend(extra(name))
    return out


def require_valid(name: str, cfg: SymptomConfig) -> None:
    bad = config_violations(name, cfg)
    if bad:
        raise ParameterError("; ".join(v.message() for v in bad))


# ---------------------------------------------------------------------------
# The symptom table.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralLoss(SymptomConfig):
    size: float = 0.35
    PARAMS = (ParamSpec("size", "float", 0.0, 1.0, 0.35, unit="full-screen"),)
    NEUTRAL = {"size": 0.0}


@dataclass(frozen=True)
class Hyperopia(SymptomConfig):
    cpd: float = 5.0
    PARAMS = (ParamSpec("cpd", "float", 0.01, 30.0, 5.0, unit="cycles/degree"),)
    NEUTRAL = {"cpd": 30.0}


@dataclass(frozen=True)
class Cvd(SymptomConfig):
    type: str = "deutan"
    severity: float = 100.0
    PARAMS = (
        ParamSpec("type", "enum", default="deutan", choices=("protan", "deutan", "tritan", "mono")),
        ParamSpec("severity", "float", 0.0, 100.0, 100.0, unit="percent"),
    )
    NEUTRAL = {"severity": 0.0}


@dataclass(frozen=True)
class ContrastSens(SymptomConfig):
    brightness: float = 0.0
    contrast: float = 0.0
    gamma: float = 1.0
    PARAMS = (
        ParamSpec("brightness", "float", -1.0, 1.0, 0.0),
        ParamSpec("contrast", "float", -1.0, 1.0, 0.0),
        ParamSpec("gamma", "float", 0.0, 1.0, 1.0),
    )
    NEUTRAL = {"brightness": 0.0, "contrast": 0.0, "gamma": 1.0}


@dataclass(frozen=True)
class MetamorphPoint(SymptomConfig):
    # strength gives this otherwise knob-less effect a well-defined neutral
    # (0 = no displacement)
    strength: float = 1.0
    PARAMS = (ParamSpec("strength", "float", 0.0, 1.0, 1.0),)
    NEUTRAL = {"strength": 0.0}


@dataclass(frozen=True)
class Nystagmus(SymptomConfig):
    speed: float = 0.35
    amplitude: float = 5.0
    PARAMS = (
        ParamSpec("speed", "float", 0.0, 1.0, 0.35, unit="seconds"),
        ParamSpec("amplitude", "float", 0.0, 20.0, 5.0, unit="percent of width"),
    )
    NEUTRAL = {"amplitude": 0.0}


@dataclass(frozen=True)
class Retinopathy(SymptomConfig):
    color: str = "black"
    opacity: float = 0.75
    density: int = 120
    speed: float = 0.2
    centering: bool = False
    circle_radius: float = 0.3
    floater_size: float = 1.0
    PARAMS = (
        ParamSpec("color", "enum", default="black", choices=("black", "white")),
        ParamSpec("opacity", "float", 0.0, 1.0, 0.75),
        ParamSpec("density", "int", 0, 2500, 120, unit="dots"),
        ParamSpec("speed", "float", 0.0, 1.0, 0.2),
        ParamSpec("centering", "bool", default=False),
        ParamSpec("circle_radius", "float", 0.0, 1.0, 0.3, unit="full-screen"),
        ParamSpec("floater_size", "float", 0.1, 4.0, 1.0, unit="scale"),
    )
    NEUTRAL = {"density": 0, "opacity": 0.0}


@dataclass(frozen=True)
class Teichopsia(SymptomConfig):
    strength: float = 0.8
    PARAMS = (ParamSpec("strength", "float", 0.0, 1.0, 0.8),)
    NEUTRAL = {"strength": 0.0}


@dataclass(frozen=True)
class MetamorphOverlay(SymptomConfig):
    speed: float = 0.3
    frequency: float = 0.4
    amplitude: float = 0.35
    PARAMS = (
        ParamSpec("speed", "float", 0.0, 1.0, 0.3),
        ParamSpec("frequency", "float", 0.0, 1.0, 0.4),
        ParamSpec("amplitude", "float", 0.0, 1.0, 0.35),
    )
    NEUTRAL = {"amplitude": 0.0}


@dataclass(frozen=True)
class Glare(SymptomConfig):
    intensity: float = 0.7
    blur: float = 0.5
    threshold: float = 0.6
    PARAMS = (
        ParamSpec("intensity", "float", 0.0, 1.0, 0.7),
        ParamSpec("blur", "float", 0.0, 1.0, 0.5),
        ParamSpec("threshold", "float", 0.0, 1.0, 0.6),
    )
    NEUTRAL = {"intensity": 0.0}


@dataclass(frozen=True)
class PeripheralLoss(SymptomConfig):
    size: float = 0.5
    PARAMS = (ParamSpec("size", "float", 0.0, 1.0, 0.5, unit="full-screen"),)
    NEUTRAL = {"size": 1.0}


@dataclass(frozen=True)
class Cataract(SymptomConfig):
    severity: float = 0.6
    frosting: float = 0.4
    PARAMS = (
        ParamSpec("severity", "float", 0.0, 1.0, 0.6),
        ParamSpec("frosting", "float", 0.0, 1.0, 0.4),
    )
    NEUTRAL = {"severity": 0.0, "frosting": 0.0}


@dataclass(frozen=True)
class InFilling(SymptomConfig):
    size: float = 0.08
    position: tuple[float, float] = (0.0, 0.0)
    PARAMS = (
        ParamSpec("size", "float", 0.0, 0.25, 0.08, unit="full-screen"),
        ParamSpec("position", "vec2", -1.0, 1.0, (0.0, 0.0), unit="offset from gaze"),
    )
    NEUTRAL = {"size": 0.0}


@dataclass(frozen=True)
class DoubleVision(SymptomConfig):
    displacement: float = 0.05
    PARAMS = (ParamSpec("displacement", "float", 0.0, 0.25, 0.05, unit="full-screen"),)
    NEUTRAL = {"displacement": 0.0}


@dataclass(frozen=True)
class Distortion(SymptomConfig):
    radius: float = 0.4
    suction: float = 0.5
    inner_radius: float = 0.05
    noise: float = 0.2
    PARAMS = (
        ParamSpec("radius", "float", 0.0, 1.0, 0.4, unit="full-screen"),
        ParamSpec("suction", "float", 0.0, 1.0, 0.5),
        ParamSpec("inner_radius", "float", 0.0, 1.0, 0.05, unit="full-screen"),
        ParamSpec("noise", "float", 0.0, 1.0, 0.2),
    )
    NEUTRAL = {"suction": 0.0, "inner_radius": 0.0, "noise": 0.0}

    def extra_violations(self, name: str) -> list[Violation]:
        if (
            isinstance(self.inner_radius, (int, float))
            and isinstance(self.radius, (int, float))
            and self.inner_radius > self.radius
        ):
            return [Violation(name, "inner_radius", self.inner_radius, f"[0, radius={self.radius:g}]")]
        return []


@dataclass(frozen=True)
class FovealDarkness(SymptomConfig):
    size: float = 0.3
    fade: float = 0.5
    opacity: float = 0.9
    PARAMS = (
        ParamSpec("size", "float", 0.0, 1.0, 0.3, unit="full-screen"),
        ParamSpec("fade", "float", 0.0, 1.0, 0.5),
        ParamSpec("opacity", "float", 0.0, 1.0, 0.9),
    )
    NEUTRAL = {"opacity": 0.0}


@dataclass(frozen=True)
class FlickeringStars(SymptomConfig):
    radius: float = 0.08
    fade: float = 0.5
    PARAMS = (
        ParamSpec("radius", "float", 0.0, 1.0, 0.08, unit="full-screen"),
        ParamSpec("fade", "float", 0.0, 1.0, 0.5),
    )
    NEUTRAL = {"radius": 0.0}


@dataclass(frozen=True)
class DetailLoss(SymptomConfig):
    clusters: int = 80
    PARAMS = (ParamSpec("clusters", "int", 10, 1000, 80, unit="clusters"),)
    # A grid at least as fine as the pixels changes nothing.
    NEUTRAL = {"clusters": 1000}
