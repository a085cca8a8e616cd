"""Composition of symptom filters over a frame.

A SymptomStack is an ordered list of (symptom name, enabled, config); render
applies the enabled entries in list order, each consuming the previous
output. All entropy comes from the session seed and the caller-supplied
time, so offline renders are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ParameterError
from .frame import Frame
from .symptoms import RenderContext, SymptomConfig, Violation, config_violations
from .symptoms.registry import REGISTRY, get

__all__ = ["StackEntry", "SymptomStack", "SessionState", "ValidationReport", "validate", "render"]


@dataclass(frozen=True)
class StackEntry:
    symptom: str
    enabled: bool
    config: SymptomConfig


@dataclass(frozen=True)
class SymptomStack:
    entries: tuple[StackEntry, ...] = ()
    global_enabled: bool = True

    @staticmethod
    def of(*pairs, global_enabled: bool = True) -> "SymptomStack":
        """Build from (name, config) or (name, enabled, config) tuples."""
        entries = []
        for p in pairs:
            if len(p) == 2:
                name, cfg = p
                entries.append(StackEntry(name, True, cfg))
            else:
                name, enabled, cfg = p
                entries.append(StackEntry(name, enabled, cfg))
        return SymptomStack(tuple(entries), global_enabled)

    def with_enabled(self, index: int, enabled: bool) -> "SymptomStack":
        entries = list(self.entries)
        entries[index] = replace(entries[index], enabled=enabled)
        return SymptomStack(tuple(entries), self.global_enabled)


@dataclass
class SessionState:
    """Identity of one rendering session: the seed that feeds every seeded
    filter, and the session's time origin. Rebuilding from the same pair
    reproduces identical schedules; noise tables and spot schedules are
    memoized by seed internally."""

    seed: int = 0
    start_time: float = 0.0


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def messages(self) -> list[str]:
        return [v.message() for v in self.violations]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"symptom": v.symptom, "field": v.field, "value": v.value, "allowed": v.allowed}
                for v in self.violations
            ],
            "messages": self.messages(),
        }


def validate(stack: SymptomStack) -> ValidationReport:
    """Range-check every entry; lists each offending field with its allowed
    interval. Never raises; an empty report means the stack is renderable."""
    out: list[Violation] = []
    for i, entry in enumerate(stack.entries):
        if entry.symptom not in REGISTRY:
            out.append(Violation(entry.symptom, "symptom", entry.symptom, f"one of {list(REGISTRY)}"))
            continue
        info = REGISTRY[entry.symptom]
        if not isinstance(entry.config, info.config_cls):
            out.append(
                Violation(entry.symptom, "config", type(entry.config).__name__, info.config_cls.__name__)
            )
            continue
        out.extend(config_violations(entry.symptom, entry.config))
    return ValidationReport(tuple(out))


def render(
    frame: Frame,
    stack: SymptomStack,
    ctx: RenderContext,
    state: SessionState | None = None,
) -> Frame:
    """Apply the enabled stack entries in order. Disabled entries are
    skipped; a globally disabled stack returns the input bit-exactly."""
    report = validate(stack)
    if not report.ok:
        raise ParameterError("; ".join(report.messages()))
    if not stack.global_enabled:
        return frame
    if state is not None and ctx.seed != state.seed:
        ctx = replace(ctx, seed=state.seed)
    for entry in stack.entries:
        if not entry.enabled:
            continue
        frame = REGISTRY[entry.symptom].fn(frame, ctx, entry.config)
    return frame
