"""Single-track kinematics, physical limits, and the discrete motion primitives
that generate search successors."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from .geometry import Pose, normalize_angle


class Gear(IntEnum):
    """Driving direction; the integer value is the sign of the velocity."""

    FORWARD = 1
    REVERSE = -1

    @property
    def label(self) -> str:
        return "F" if self is Gear.FORWARD else "R"

    @classmethod
    def from_label(cls, label: str) -> "Gear":
        if label == "F":
            return cls.FORWARD
        if label == "R":
            return cls.REVERSE
        raise ValueError(f"unknown gear label {label!r}")


@dataclass(frozen=True)
class VehicleLimits:
    """State/control bounds. Only phi_max (steering angle) constrains the
    geometric search; the rest are carried for completeness."""

    a_min: float = -2.0
    a_max: float = 2.0
    v_min: float = -2.0
    v_max: float = 2.0
    omega_max: float = 1.0
    phi_max: float = 0.6

    def __post_init__(self) -> None:
        if not self.a_min < 0.0 < self.a_max:
            raise ValueError("acceleration bounds must straddle zero")
        if not self.v_min <= 0.0 <= self.v_max:
            raise ValueError("velocity bounds must straddle zero")
        if self.omega_max <= 0.0:
            raise ValueError("omega_max must be positive")
        if not 0.0 < self.phi_max < math.pi / 2.0:
            raise ValueError("phi_max must lie in (0, pi/2)")

    def turning_radius(self, wheelbase: float) -> float:
        """Minimum turning radius at full steering lock."""
        return wheelbase / math.tan(self.phi_max)


@dataclass(frozen=True)
class MotionPrimitiveSet:
    """One expansion step per (direction, steering) combination."""

    arc_length: float = 0.5
    steering_angles: tuple[float, ...] = (-0.6, 0.0, 0.6)
    directions: tuple[Gear, ...] = (Gear.FORWARD, Gear.REVERSE)

    def __post_init__(self) -> None:
        if self.arc_length <= 0.0:
            raise ValueError("arc_length must be positive")


@dataclass(frozen=True)
class MotionStep:
    """A single applied primitive: where it ends and how it was driven."""

    direction: Gear
    steering: float
    end_pose: Pose
    length: float


@dataclass(frozen=True)
class PenaltyConfig:
    """Surcharges on top of arc length: reverse driving, direction changes,
    and steering discontinuities between consecutive primitives."""

    reverse_mult: float = 2.0
    switchback: float = 10.0
    steer_change: float = 1.5
    steer_hold: float = 0.0


def _sinc(x: float) -> float:
    # sin(x)/x, stable through zero
    if abs(x) < 1e-8:
        return 1.0 - x * x / 6.0
    return math.sin(x) / x


def advance_arc(start: Pose, gear: Gear, curvature: float, ds: float) -> Pose:
    """Move `ds` meters along a constant-curvature arc (straight at zero).

    Half-angle chord form: the displacement has length ds*sinc(a/2) along
    heading theta + a/2, where a is the signed heading change. Unlike the
    difference-of-sines form it does not cancel for tiny curvatures.
    """
    sigma = float(gear)
    alpha = sigma * curvature * ds
    half = 0.5 * alpha
    chord = ds * _sinc(half)
    mid = start.theta + half
    return Pose(
        start.x + sigma * chord * math.cos(mid),
        start.y + sigma * chord * math.sin(mid),
        normalize_angle(start.theta + alpha),
    )


def integrate_arc(
    start: Pose,
    direction: Gear,
    steering: float,
    ds: float,
    wheelbase: float,
    phi_max: float | None = None,
) -> Pose:
    """Closed-form endpoint of driving `ds` meters at a fixed steering angle.

    The turn rate is tan(steering)/wheelbase; reverse driving traverses the
    same circle backwards.
    """
    if ds <= 0.0:
        raise ValueError("ds must be positive")
    if phi_max is not None and abs(steering) > phi_max:
        raise ValueError(f"steering {steering} exceeds limit {phi_max}")
    return advance_arc(start, direction, math.tan(steering) / wheelbase, ds)


def successors(state, primitives: MotionPrimitiveSet, wheelbase: float) -> list[MotionStep]:
    """All motion steps from `state.pose`, forward gears before reverse,
    steering angles in listed order."""
    pose = state.pose
    steps = []
    for gear in primitives.directions:
        for steer in primitives.steering_angles:
            end = integrate_arc(pose, gear, steer, primitives.arc_length, wheelbase)
            steps.append(MotionStep(gear, steer, end, primitives.arc_length))
    return steps


def step_cost(step: MotionStep, previous, penalties: PenaltyConfig) -> float:
    """Arc length plus penalties; `previous` needs .direction and .steering
    (a MotionStep or a search node), or None at the path start."""
    cost = step.length * (penalties.reverse_mult if step.direction is Gear.REVERSE else 1.0)
    if previous is not None:
        if step.direction != previous.direction:
            cost += penalties.switchback
        cost += penalties.steer_change * abs(step.steering - previous.steering)
    cost += penalties.steer_hold * abs(step.steering)
    return cost
