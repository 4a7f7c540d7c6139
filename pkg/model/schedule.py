"""
OPTOTTO DETUNING SCHEDULE

Responsibilities:
- Piecewise-linear δ(t) with validated, contiguous segments
- Exact slope dδ/dt for work integrals
- The four-stroke Otto schedule

Times are in units of 1/omega_m.
"""

from bisect import bisect_left
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from utils.errors import ScheduleDomainError

CONTIGUITY_TOLERANCE = 1e-12
LINEAR = "linear"


@dataclass(frozen=True)
class ScheduleSegment:
    duration: float
    delta_start: float
    delta_end: float
    interpolation: str = LINEAR

    @property
    def slope(self) -> float:
        return (self.delta_end - self.delta_start) / self.duration


@dataclass(frozen=True)
class DetuningSchedule:
    """Ordered, contiguous, red-detuned segments."""

    segments: Tuple[ScheduleSegment, ...]
    ends: Tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self):
        segments = tuple(self.segments)
        if not segments:
            raise ScheduleDomainError("Schedule needs at least one segment")
        errors = []
        for index, seg in enumerate(segments):
            if not seg.duration > 0:
                errors.append(f"segment {index}: duration must be positive (got {seg.duration})")
            if seg.interpolation != LINEAR:
                errors.append(f"segment {index}: unsupported interpolation '{seg.interpolation}'")
            if not (seg.delta_start < 0 and seg.delta_end < 0):
                errors.append(f"segment {index}: detuning must stay negative")
        for index in range(len(segments) - 1):
            gap = abs(segments[index].delta_end - segments[index + 1].delta_start)
            if gap > CONTIGUITY_TOLERANCE:
                errors.append(f"segments {index}/{index + 1} are not contiguous (jump {gap:.3e})")
        if errors:
            raise ScheduleDomainError("; ".join(errors))

        ends: List[float] = []
        elapsed = 0.0
        for seg in segments:
            elapsed += seg.duration
            ends.append(elapsed)
        object.__setattr__(self, "segments", segments)
        object.__setattr__(self, "ends", tuple(ends))

    @property
    def total_duration(self) -> float:
        return self.ends[-1]

    def starts(self) -> Tuple[float, ...]:
        return (0.0,) + self.ends[:-1]

    def segment_index(self, t: float) -> int:
        if t < 0.0 or t > self.total_duration * (1.0 + CONTIGUITY_TOLERANCE):
            raise ScheduleDomainError(f"t={t} outside schedule [0, {self.total_duration}]")
        return min(bisect_left(self.ends, t), len(self.segments) - 1)

    def derivative(self, t: float) -> float:
        return self.segments[self.segment_index(t)].slope


def schedule_eval(sched: DetuningSchedule, t: float) -> float:
    """Piecewise-linear δ(t)."""
    index = sched.segment_index(t)
    seg = sched.segments[index]
    start = sched.starts()[index]
    fraction = min(max((t - start) / seg.duration, 0.0), 1.0)
    return seg.delta_start + (seg.delta_end - seg.delta_start) * fraction


def cycle_schedule(delta_i: float, delta_f: float, tau: Sequence[float]) -> DetuningSchedule:
    """Ramp δ_i→δ_f, hold, ramp back, hold."""
    if len(tau) != 4:
        raise ScheduleDomainError(f"An Otto cycle needs four stroke durations, got {len(tau)}")
    tau_1, tau_2, tau_3, tau_4 = tau
    return DetuningSchedule((
        ScheduleSegment(tau_1, delta_i, delta_f),
        ScheduleSegment(tau_2, delta_f, delta_f),
        ScheduleSegment(tau_3, delta_f, delta_i),
        ScheduleSegment(tau_4, delta_i, delta_i),
    ))
