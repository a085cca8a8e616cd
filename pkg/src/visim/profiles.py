"""Impairment profiles: named, persistable symptom stacks, linear
interpolation between profiles, and a seeded cycling schedule that walks a
set of profiles in random order without back-to-back repeats.

Profile documents are JSON with canonical formatting (sorted keys, floats at
up to 6 significant digits) so that golden files diff cleanly.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, replace

from .errors import ParameterError
from .pipeline import StackEntry, SymptomStack, validate
from .symptoms.registry import REGISTRY, symptom_names

__all__ = [
    "Profile",
    "ProfileError",
    "CyclePlan",
    "PhaseDescriptor",
    "FORMAT_VERSION",
    "interpolate",
    "next_phase",
    "loads",
    "dumps",
    "load",
    "save",
    "shipped_presets",
]

FORMAT_VERSION = 1


class ProfileError(ValueError):
    """A profile document cannot be parsed or validated."""


@dataclass(frozen=True)
class Profile:
    name: str
    stack: SymptomStack
    seed: int = 0
    notes: str = ""


# ---------------------------------------------------------------------------
# Canonical JSON
# ---------------------------------------------------------------------------

def _canon_value(v):
    if isinstance(v, bool) or isinstance(v, int) or isinstance(v, str) or v is None:
        return v
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ProfileError(f"non-finite value {v!r} cannot be serialized")
        rounded = float(f"{v:.6g}")
        return int(rounded) if rounded == int(rounded) and abs(rounded) < 1e15 else rounded
    if isinstance(v, (list, tuple)):
        return [_canon_value(x) for x in v]
    if isinstance(v, dict):
        return {k: _canon_value(x) for k, x in v.items()}
    raise ProfileError(f"unsupported value in profile: {v!r}")


def to_document(profile: Profile) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "name": profile.name,
        "seed": profile.seed,
        "notes": profile.notes,
        "global_enabled": profile.stack.global_enabled,
        "symptoms": [
            {"type": e.symptom, "enabled": e.enabled, "params": e.config.params_dict()}
            for e in profile.stack.entries
        ],
    }


def dumps(profile: Profile) -> str:
    return json.dumps(_canon_value(to_document(profile)), sort_keys=True, indent=2) + "\n"


def from_document(doc: dict) -> Profile:
    if not isinstance(doc, dict):
        raise ProfileError("profile document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ProfileError(
            f"unsupported format_version {version!r}; this build reads version {FORMAT_VERSION}"
        )
    entries = []
    for item in doc.get("symptoms", []):
        kind = item.get("type")
        if kind not in REGISTRY:
            raise ProfileError(
                f"unknown symptom {kind!r} (format_version {FORMAT_VERSION}); "
                f"known symptoms: {', '.join(symptom_names())}"
            )
        cfg = REGISTRY[kind].config_cls.from_params(item.get("params", {}))
        entries.append(StackEntry(kind, bool(item.get("enabled", True)), cfg))
    stack = SymptomStack(tuple(entries), bool(doc.get("global_enabled", True)))
    profile = Profile(
        name=str(doc.get("name", "")),
        stack=stack,
        seed=int(doc.get("seed", 0)),
        notes=str(doc.get("notes", "")),
    )
    report = validate(stack)
    if not report.ok:
        raise ProfileError("invalid profile: " + "; ".join(report.messages()))
    return profile


def loads(text: str) -> Profile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProfileError(f"malformed profile document: {e}") from e
    return from_document(doc)


def load(path: str | os.PathLike) -> Profile:
    with open(path, "r", encoding="utf-8") as f:
        return loads(f.read())


def save(profile: Profile, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(profile))


# ---------------------------------------------------------------------------
# Interpolation
# ---------------------------------------------------------------------------

def _lerp_configs(cls, cfg_a, cfg_b, alpha: float):
    kwargs = {}
    for spec in cls.PARAMS:
        va = getattr(cfg_a, spec.name)
        vb = getattr(cfg_b, spec.name)
        if spec.kind == "float":
            kwargs[spec.name] = va + alpha * (vb - va)
        elif spec.kind == "int":
            kwargs[spec.name] = round(va + alpha * (vb - va))
        elif spec.kind == "vec2":
            kwargs[spec.name] = tuple(a + alpha * (b - a) for a, b in zip(va, vb))
        else:  # enum / bool switch at the midpoint
            kwargs[spec.name] = va if alpha < 0.5 else vb
    return cls(**kwargs)


def interpolate(a: Profile, b: Profile, alpha: float) -> SymptomStack:
    """Blend two profiles: the union of their symptoms with numeric
    parameters lerped. A symptom present on only one side fades toward its
    neutral (identity) parameters on the other; discrete fields switch at
    alpha 0.5."""
    if not (0.0 <= alpha <= 1.0) or not math.isfinite(alpha):
        raise ParameterError(f"alpha must be in [0, 1], got {alpha!r}")

    by_type_b = {}
    for e in b.stack.entries:
        by_type_b.setdefault(e.symptom, e)
    seen = set()
    out = []
    for ea in a.stack.entries:
        cls = REGISTRY[ea.symptom].config_cls
        eb = by_type_b.get(ea.symptom)
        seen.add(ea.symptom)
        cfg_b = eb.config if eb is not None else cls.neutral()
        enabled_b = eb.enabled if eb is not None else ea.enabled
        cfg = _lerp_configs(cls, ea.config, cfg_b, alpha)
        enabled = ea.enabled if alpha < 0.5 else enabled_b
        out.append(StackEntry(ea.symptom, enabled, cfg))
    for eb in b.stack.entries:
        if eb.symptom in seen:
            continue
        cls = REGISTRY[eb.symptom].config_cls
        cfg = _lerp_configs(cls, cls.neutral(), eb.config, alpha)
        out.append(StackEntry(eb.symptom, eb.enabled, cfg))
    global_enabled = a.stack.global_enabled if alpha < 0.5 else b.stack.global_enabled
    stack = SymptomStack(tuple(out), global_enabled)
    report = validate(stack)
    if not report.ok:
        raise ParameterError("interpolated stack invalid: " + "; ".join(report.messages()))
    return stack


# ---------------------------------------------------------------------------
# Cycling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclePlan:
    profiles: tuple[Profile, ...]
    dwell: float = 20.0
    transition: float = 5.0
    rng_seed: int = 0

    def __post_init__(self):
        if len(self.profiles) < 2:
            raise ParameterError("a cycle plan needs at least 2 profiles")
        if self.dwell <= 0 or self.transition < 0:
            raise ParameterError("dwell must be positive and transition non-negative")


@dataclass(frozen=True)
class PhaseDescriptor:
    index: int
    current: str
    next: str
    alpha: float


def _cycle_sequence(plan: CyclePlan, upto: int) -> list[int]:
    """Indices sigma(0..upto): uniform draws, never repeating back-to-back;
    depends only on rng_seed."""
    import numpy as np

    rng = np.random.default_rng(plan.rng_seed)
    n = len(plan.profiles)
    seq = [int(rng.integers(0, n))]
    while len(seq) <= upto:
        step = int(rng.integers(1, n))  # skip distance avoids repeats
        seq.append((seq[-1] + step) % n)
    return seq


def next_phase(plan: CyclePlan, t: float) -> tuple[SymptomStack, PhaseDescriptor]:
    """Stack active at time t: dwell on a profile, then blend into the next
    over the transition window. Deterministic in (plan, t)."""
    if t < 0 or not math.isfinite(t):
        raise ParameterError(f"t must be >= 0, got {t!r}")
    period = plan.dwell + plan.transition
    k = int(t // period)
    tau = t - k * period
    seq = _cycle_sequence(plan, k + 1)
    cur = plan.profiles[seq[k]]
    nxt = plan.profiles[seq[k + 1]]
    if tau < plan.dwell or plan.transition == 0:
        alpha = 0.0
        stack = interpolate(cur, cur, 0.0)
    else:
        alpha = (tau - plan.dwell) / plan.transition
        stack = interpolate(cur, nxt, alpha)
    return stack, PhaseDescriptor(k, cur.name, nxt.name, alpha)


# ---------------------------------------------------------------------------
# Shipped presets: qualitative reconstructions of the assessment sketches.
# ---------------------------------------------------------------------------

def _preset(name: str, notes: str, *entries, seed: int = 0) -> Profile:
    stack = SymptomStack.of(*entries)
    return Profile(name=name, stack=stack, seed=seed, notes=notes)


def shipped_presets() -> dict[str, Profile]:
    from .symptoms import (
        Cataract,
        CentralLoss,
        ContrastSens,
        DetailLoss,
        Distortion,
        FovealDarkness,
        Glare,
        Hyperopia,
        PeripheralLoss,
        Retinopathy,
    )

    note = "Qualitative reconstruction of one assessment sketch; not a calibrated prescription."
    presets = [
        _preset(
            "p1_vortex_pull",
            note + " Center of the image pulls inward.",
            ("distortion", Distortion(radius=0.45, suction=0.55, inner_radius=0.04, noise=0.15)),
            seed=101,
        ),
        _preset(
            "p2_bright_blur_gray_spot",
            note + " Brighter, blurry, with a gray spot near the center.",
            ("hyperopia", Hyperopia(cpd=7.0)),
            ("glare", Glare(intensity=0.6, blur=0.5, threshold=0.55)),
            ("contrast_sensitivity", ContrastSens(brightness=0.15, contrast=-0.2, gamma=1.0)),
            ("foveal_darkness", FovealDarkness(size=0.18, fade=0.6, opacity=0.5)),
            seed=102,
        ),
        _preset(
            "p3_inner_outer_blur",
            note + " Inner and outer blur with a gray veil.",
            ("central_vision_loss", CentralLoss(size=0.3)),
            ("peripheral_vision_loss", PeripheralLoss(size=0.45)),
            ("contrast_sensitivity", ContrastSens(brightness=0.1, contrast=-0.35, gamma=1.0)),
            seed=103,
        ),
        _preset(
            "p4_blur_dark_center",
            note + " Blurry overall with a dark, blurry central spot.",
            ("hyperopia", Hyperopia(cpd=6.0)),
            ("foveal_darkness", FovealDarkness(size=0.28, fade=0.7, opacity=0.85)),
            seed=104,
        ),
        _preset(
            "p5_pixelated",
            note + " Heavy pixelation; detail emerges only up close.",
            ("detail_loss", DetailLoss(clusters=45)),
            seed=105,
        ),
        _preset(
            "p6_overexposed_dark_spot",
            note + " Extremely bright, washed out, with a dark spot.",
            ("contrast_sensitivity", ContrastSens(brightness=0.55, contrast=-0.5, gamma=1.0)),
            ("glare", Glare(intensity=0.9, blur=0.6, threshold=0.4)),
            ("foveal_darkness", FovealDarkness(size=0.22, fade=0.4, opacity=0.9)),
            seed=106,
        ),
        _preset(
            "p7_white_dot_cluster",
            note + " White dots clustered around the point of gaze.",
            ("retinopathy", Retinopathy(color="white", opacity=0.9, density=600, speed=0.1, centering=True, circle_radius=0.3)),
            seed=107,
        ),
    ]
    return {p.name: p for p in presets}
