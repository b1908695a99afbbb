"""Shortest bounded-curvature paths for a car that drives forward and reverse.

Candidates are enumerated from the twelve classic closed-form word families
and their timeflip/reflect variants (48 words), computed in a normalized frame
where the turning radius is 1. Every candidate is endpoint-verified before it
can be returned, so a formula that does not apply simply drops out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from .geometry import Pose, normalize_angle
from .vehicle import Gear, advance_arc


class Turn(IntEnum):
    """Segment curvature sign in the normalized frame."""

    LEFT = 1
    STRAIGHT = 0
    RIGHT = -1


@dataclass(frozen=True)
class RSSegment:
    """One arc or straight; length is nonnegative, in turning-radius units."""

    kind: Turn
    gear: Gear
    length: float


@dataclass(frozen=True)
class RSPath:
    """A curve as an ordered segment word; total_length is in meters."""

    segments: tuple[RSSegment, ...]
    total_length: float


# Internal candidate element: (param, turn, gear); param may be negative,
# which means the same circle driven in the opposite gear.
_Element = tuple[float, Turn, Gear]

# Enum negation via lookup; constructing enums by value in the hot path is slow.
_GEAR_NEG = {Gear.FORWARD: Gear.REVERSE, Gear.REVERSE: Gear.FORWARD}
_TURN_NEG = {Turn.LEFT: Turn.RIGHT, Turn.RIGHT: Turn.LEFT, Turn.STRAIGHT: Turn.STRAIGHT}


def _seg(param: float, turn: Turn, gear: Gear) -> _Element:
    if param < 0.0:
        return (-param, turn, _GEAR_NEG[gear])
    return (param, turn, gear)


def _polar(x: float, y: float) -> tuple[float, float]:
    return math.hypot(x, y), math.atan2(y, x)


def _asin(value: float) -> float:
    # Inputs are mathematically within [-1, 1]; clamp rounding overshoot.
    return math.asin(max(-1.0, min(1.0, value)))


_F = Gear.FORWARD
_B = Gear.REVERSE
_L = Turn.LEFT
_S = Turn.STRAIGHT
_R = Turn.RIGHT


def _lsl(x, y, phi):
    u, t = _polar(x - math.sin(phi), y - 1.0 + math.cos(phi))
    v = normalize_angle(phi - t)
    return [_seg(t, _L, _F), _seg(u, _S, _F), _seg(v, _L, _F)]


def _lsr(x, y, phi):
    rho, t1 = _polar(x + math.sin(phi), y - 1.0 - math.cos(phi))
    if rho * rho < 4.0:
        return None
    u = math.sqrt(rho * rho - 4.0)
    t = normalize_angle(t1 + math.atan2(2.0, u))
    v = normalize_angle(t - phi)
    return [_seg(t, _L, _F), _seg(u, _S, _F), _seg(v, _R, _F)]


def _lrl(x, y, phi):
    rho, theta = _polar(x - math.sin(phi), y - 1.0 + math.cos(phi))
    if rho > 4.0:
        return None
    a = math.acos(rho / 4.0)
    t = normalize_angle(theta + math.pi / 2.0 + a)
    u = normalize_angle(math.pi - 2.0 * a)
    v = normalize_angle(phi - t - u)
    return [_seg(t, _L, _F), _seg(u, _R, _B), _seg(v, _L, _F)]


def _lrl_rr(x, y, phi):
    rho, theta = _polar(x - math.sin(phi), y - 1.0 + math.cos(phi))
    if rho > 4.0:
        return None
    a = math.acos(rho / 4.0)
    t = normalize_angle(theta + math.pi / 2.0 + a)
    u = normalize_angle(math.pi - 2.0 * a)
    v = normalize_angle(t + u - phi)
    return [_seg(t, _L, _F), _seg(u, _R, _B), _seg(v, _L, _B)]


def _lrl_lr(x, y, phi):
    rho, theta = _polar(x - math.sin(phi), y - 1.0 + math.cos(phi))
    if rho > 4.0 or rho == 0.0:
        return None
    u = math.acos(1.0 - rho * rho / 8.0)
    a = _asin(2.0 * math.sin(u) / rho)
    t = normalize_angle(theta + math.pi / 2.0 - a)
    v = normalize_angle(t - u - phi)
    return [_seg(t, _L, _F), _seg(u, _R, _F), _seg(v, _L, _B)]


def _lrlr_u(x, y, phi):
    rho, theta = _polar(x + math.sin(phi), y - 1.0 - math.cos(phi))
    if rho > 4.0:
        return None
    if rho <= 2.0:
        a = math.acos((rho + 2.0) / 4.0)
        t = normalize_angle(theta + math.pi / 2.0 + a)
        u = normalize_angle(a)
    else:
        a = math.acos((rho - 2.0) / 4.0)
        t = normalize_angle(theta + math.pi / 2.0 - a)
        u = normalize_angle(math.pi - a)
    v = normalize_angle(phi - t + 2.0 * u)
    return [_seg(t, _L, _F), _seg(u, _R, _F), _seg(u, _L, _B), _seg(v, _R, _B)]


def _lrlr_neg(x, y, phi):
    rho, theta = _polar(x + math.sin(phi), y - 1.0 - math.cos(phi))
    u1 = (20.0 - rho * rho) / 16.0
    if rho > 6.0 or not 0.0 <= u1 <= 1.0:
        return None
    u = math.acos(u1)
    if u == 0.0:
        return None
    a = _asin(2.0 * math.sin(u) / rho)
    t = normalize_angle(theta + math.pi / 2.0 + a)
    v = normalize_angle(t - phi)
    return [_seg(t, _L, _F), _seg(u, _R, _B), _seg(u, _L, _B), _seg(v, _R, _F)]


def _lrsl(x, y, phi):
    rho, theta = _polar(x - math.sin(phi), y - 1.0 + math.cos(phi))
    if rho < 2.0:
        return None
    u = math.sqrt(rho * rho - 4.0) - 2.0
    a = math.atan2(2.0, u + 2.0)
    t = normalize_angle(theta + math.pi / 2.0 + a)
    v = normalize_angle(t - phi + math.pi / 2.0)
    return [
        _seg(t, _L, _F),
        _seg(math.pi / 2.0, _R, _B),
        _seg(u, _S, _B),
        _seg(v, _L, _B),
    ]


def _lsrl(x, y, phi):
    rho, theta = _polar(x - math.sin(phi), y - 1.0 + math.cos(phi))
    if rho < 2.0:
        return None
    u = math.sqrt(rho * rho - 4.0) - 2.0
    a = math.atan2(u + 2.0, 2.0)
    t = normalize_angle(theta + math.pi / 2.0 - a)
    v = normalize_angle(t - phi - math.pi / 2.0)
    return [
        _seg(t, _L, _F),
        _seg(u, _S, _F),
        _seg(math.pi / 2.0, _R, _F),
        _seg(v, _L, _B),
    ]


def _lrsr(x, y, phi):
    rho, theta = _polar(x + math.sin(phi), y - 1.0 - math.cos(phi))
    if rho < 2.0:
        return None
    t = normalize_angle(theta + math.pi / 2.0)
    u = rho - 2.0
    v = normalize_angle(phi - t - math.pi / 2.0)
    return [
        _seg(t, _L, _F),
        _seg(math.pi / 2.0, _R, _B),
        _seg(u, _S, _B),
        _seg(v, _R, _B),
    ]


def _lslr(x, y, phi):
    rho, theta = _polar(x + math.sin(phi), y - 1.0 - math.cos(phi))
    if rho < 2.0:
        return None
    t = normalize_angle(theta)
    u = rho - 2.0
    v = normalize_angle(phi - t - math.pi / 2.0)
    return [
        _seg(t, _L, _F),
        _seg(u, _S, _F),
        _seg(math.pi / 2.0, _L, _F),
        _seg(v, _R, _B),
    ]


def _lrslr(x, y, phi):
    rho, theta = _polar(x + math.sin(phi), y - 1.0 - math.cos(phi))
    if rho < 4.0:
        return None
    u = math.sqrt(rho * rho - 4.0) - 4.0
    if u < 0.0:
        return None
    a = math.atan2(2.0, u + 4.0)
    t = normalize_angle(theta + math.pi / 2.0 + a)
    v = normalize_angle(t - phi)
    return [
        _seg(t, _L, _F),
        _seg(math.pi / 2.0, _R, _B),
        _seg(u, _S, _B),
        _seg(math.pi / 2.0, _L, _B),
        _seg(v, _R, _F),
    ]


_WORD_FAMILIES = (
    _lsl,
    _lsr,
    _lrl,
    _lrl_rr,
    _lrl_lr,
    _lrlr_u,
    _lrlr_neg,
    _lrsl,
    _lsrl,
    _lrsr,
    _lslr,
    _lrslr,
)

def _timeflip(elements: list[_Element]) -> list[_Element]:
    return [(p, turn, _GEAR_NEG[g]) for p, turn, g in elements]


def _reflect(elements: list[_Element]) -> list[_Element]:
    return [(p, _TURN_NEG[turn], g) for p, turn, g in elements]


def _advance_unit(x, y, theta, element: _Element):
    """Apply one element in the normalized (radius 1) frame."""
    p, turn, gear = element
    sigma = float(gear)
    if turn is _S:
        return x + sigma * p * math.cos(theta), y + sigma * p * math.sin(theta), theta
    kappa = float(turn)
    theta_end = theta + sigma * kappa * p
    x_end = x + (math.sin(theta_end) - math.sin(theta)) / kappa
    y_end = y + (math.cos(theta) - math.cos(theta_end)) / kappa
    return x_end, y_end, theta_end


def _endpoint_matches(elements: list[_Element], x, y, phi) -> bool:
    cx, cy, ct = 0.0, 0.0, 0.0
    for element in elements:
        cx, cy, ct = _advance_unit(cx, cy, ct, element)
    return (
        abs(cx - x) < 1e-8
        and abs(cy - y) < 1e-8
        and abs(normalize_angle(ct - phi)) < 1e-8
    )


def _normalized_goal(start: Pose, goal: Pose, turning_radius: float):
    dx = goal.x - start.x
    dy = goal.y - start.y
    c = math.cos(start.theta)
    s = math.sin(start.theta)
    x = (c * dx + s * dy) / turning_radius
    y = (-s * dx + c * dy) / turning_radius
    return x, y, normalize_angle(goal.theta - start.theta)


def _coincident(x: float, y: float, phi: float) -> bool:
    # Exactly-coincident poses degenerate every word to zero segments; the
    # correct answer is the empty word, not the shortest loop.
    return abs(x) < 1e-12 and abs(y) < 1e-12 and abs(phi) < 1e-12


def _raw_words(x: float, y: float, phi: float) -> list[list[_Element]]:
    """Unverified candidate words from every family/variant, zero segments
    dropped, in deterministic enumeration order."""
    words = []
    for family in _WORD_FAMILIES:
        base = family(x, y, phi)
        flip = family(-x, y, -phi)
        mirror = family(x, -y, -phi)
        both = family(-x, -y, phi)
        for raw in (
            base,
            _timeflip(flip) if flip else None,
            _reflect(mirror) if mirror else None,
            _reflect(_timeflip(both)) if both else None,
        ):
            if not raw:
                continue
            elements = [e for e in raw if e[0] > 1e-12]
            if elements:
                words.append(elements)
    return words


def _enumerate_words(x: float, y: float, phi: float) -> list[list[_Element]]:
    return [w for w in _raw_words(x, y, phi) if _endpoint_matches(w, x, y, phi)]


def _to_path(elements: list[_Element], turning_radius: float) -> RSPath:
    segments = tuple(RSSegment(turn, gear, p) for p, turn, gear in elements)
    total = sum(s.length for s in segments) * turning_radius
    return RSPath(segments, total)


def rs_candidates(start: Pose, goal: Pose, turning_radius: float) -> list[RSPath]:
    """Every endpoint-valid word, in family enumeration order."""
    if turning_radius <= 0.0:
        raise ValueError("turning_radius must be positive")
    x, y, phi = _normalized_goal(start, goal, turning_radius)
    if _coincident(x, y, phi):
        return [RSPath((), 0.0)]
    return [_to_path(w, turning_radius) for w in _enumerate_words(x, y, phi)]


def rs_shortest(start: Pose, goal: Pose, turning_radius: float) -> RSPath:
    """Minimum-length candidate; ties keep the earliest-enumerated word."""
    if turning_radius <= 0.0:
        raise ValueError("turning_radius must be positive")
    x, y, phi = _normalized_goal(start, goal, turning_radius)
    if _coincident(x, y, phi):
        return RSPath((), 0.0)
    # Verify lazily, shortest first; the stable sort preserves enumeration
    # order among equal lengths.
    ranked = sorted(_raw_words(x, y, phi), key=lambda w: sum(e[0] for e in w))
    for word in ranked:
        if _endpoint_matches(word, x, y, phi):
            return _to_path(word, turning_radius)
    # Coincident poses: the empty word.
    return RSPath((), 0.0)


def rs_length(start: Pose, goal: Pose, turning_radius: float) -> float:
    return rs_shortest(start, goal, turning_radius).total_length


def rs_sample(
    path: RSPath,
    start: Pose,
    turning_radius: float,
    spacing: float,
) -> list[tuple[Pose, Gear]]:
    """Poses along the path at arc-length steps of exactly `spacing` within
    each segment (last step shorter), including both endpoints."""
    if spacing <= 0.0:
        raise ValueError("spacing must be positive")
    samples: list[tuple[Pose, Gear]] = []
    pose = start
    if not path.segments:
        return [(pose, Gear.FORWARD)]
    for seg in path.segments:
        seg_len = seg.length * turning_radius
        kappa = float(seg.kind) / turning_radius
        if not samples:
            samples.append((pose, seg.gear))
        n_full = int(seg_len / spacing + 1e-9)
        for k in range(1, n_full + 1):
            samples.append((advance_arc(pose, seg.gear, kappa, k * spacing), seg.gear))
        if n_full * spacing < seg_len - 1e-9:
            samples.append((advance_arc(pose, seg.gear, kappa, seg_len), seg.gear))
        pose = samples[-1][0]
    return samples


def rs_collision_free(
    path: RSPath,
    start: Pose,
    turning_radius: float,
    geometry,
    cover,
    obstacles,
    spacing: float = 0.1,
) -> bool:
    """True iff the vehicle clears the obstacles at every path sample."""
    from .geometry import vehicle_collides

    if spacing > 0.1:
        raise ValueError("collision sampling spacing must be <= 0.1 m")
    for pose, _ in rs_sample(path, start, turning_radius, spacing):
        if vehicle_collides(pose, geometry, cover, obstacles):
            return False
    return True
