"""Parking scenario construction, JSON scenario files, and validation.

A scenario bundles the workspace grid, the point-cloud obstacles, the vehicle
description, start/goal poses, and the search configuration. The bundled
benchmark is a parallel-parking spot cut into the lower boundary wall.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .geometry import ObstacleSet, Pose, VehicleGeometry, disk_cover, vehicle_collides
from .grid import GridSpec
from .search import SearchConfig
from .vehicle import MotionPrimitiveSet, PenaltyConfig, VehicleLimits


class ScenarioError(ValueError):
    """Malformed scenario file or dictionary."""


@dataclass(frozen=True)
class SpotSpec:
    """Parking spot: a notch of `depth` by `length` whose opening is centered
    at x = center_x in the lower boundary wall."""

    depth: float
    length: float
    center_x: float

    def __post_init__(self) -> None:
        if self.depth <= 0.0 or self.length <= 0.0:
            raise ValueError("spot dimensions must be positive")


@dataclass
class Scenario:
    workspace: GridSpec
    obstacles: ObstacleSet
    spot: SpotSpec | None
    start: Pose
    goal: Pose
    vehicle: VehicleGeometry
    limits: VehicleLimits
    search: SearchConfig = field(default_factory=SearchConfig)
    extra_points: tuple[tuple[float, float], ...] = ()


def _segment_points(p0, p1, spacing: float) -> list[tuple[float, float]]:
    """Evenly spaced points along a segment, both endpoints included, at
    intervals <= spacing."""
    x0, y0 = p0
    x1, y1 = p1
    seg_len = math.hypot(x1 - x0, y1 - y0)
    n = max(1, math.ceil(seg_len / spacing - 1e-12))
    return [
        (x0 + (x1 - x0) * k / n, y0 + (y1 - y0) * k / n) for k in range(n + 1)
    ]


def _parking_walls(
    workspace: GridSpec, spot: SpotSpec, goal: Pose, spacing: float
) -> list[tuple[float, float]]:
    """Wall point cloud: the lower boundary outside the spot opening, the
    spot's two sides and back, and the upper workspace boundary.

    The spot's vertical placement is not part of the written scenario
    geometry; the notch is centered on the goal's depth so the parked
    vehicle sits symmetrically inside it.
    """
    open_y = goal.y + spot.depth / 2.0
    floor_y = goal.y - spot.depth / 2.0
    left = spot.center_x - spot.length / 2.0
    right = spot.center_x + spot.length / 2.0
    pts: list[tuple[float, float]] = []
    pts += _segment_points((workspace.x_min, open_y), (left, open_y), spacing)
    pts += _segment_points((right, open_y), (workspace.x_max, open_y), spacing)
    pts += _segment_points((left, floor_y), (left, open_y), spacing)
    pts += _segment_points((right, floor_y), (right, open_y), spacing)
    pts += _segment_points((left, floor_y), (right, floor_y), spacing)
    pts += _segment_points((workspace.x_min, workspace.y_max), (workspace.x_max, workspace.y_max), spacing)
    return pts


def build_parallel_parking(
    *,
    workspace: GridSpec,
    vehicle: VehicleGeometry,
    limits: VehicleLimits,
    spot: SpotSpec,
    start: Pose,
    goal: Pose,
    search: SearchConfig | None = None,
    point_spacing: float = 0.1,
    extra_points: Sequence[tuple[float, float]] = (),
) -> Scenario:
    """Deterministically assemble the parallel-parking scenario."""
    left = spot.center_x - spot.length / 2.0
    right = spot.center_x + spot.length / 2.0
    if left < workspace.x_min or right > workspace.x_max:
        raise ValueError("spot extends outside the workspace")
    points = _parking_walls(workspace, spot, goal, point_spacing)
    points += [(float(x), float(y)) for x, y in extra_points]
    return Scenario(
        workspace=workspace,
        obstacles=ObstacleSet(points),
        spot=spot,
        start=start,
        goal=goal,
        vehicle=vehicle,
        limits=limits,
        search=search if search is not None else SearchConfig(),
        extra_points=tuple((float(x), float(y)) for x, y in extra_points),
    )


def forward_parking_scenario() -> Scenario:
    """Bundled benchmark: approach the spot driving toward it from the left."""
    return _benchmark_scenario(start=Pose(-9.0, 8.0, 0.0))


def backward_parking_scenario() -> Scenario:
    """Bundled benchmark: the spot lies behind the initial heading."""
    return _benchmark_scenario(start=Pose(12.0, 8.0, 0.0))


def _benchmark_scenario(start: Pose) -> Scenario:
    vehicle = VehicleGeometry(length=4.7, width=2.0, wheelbase=2.7, rear_overhang=1.0)
    goal = Pose(-1.35, 1.5, 0.0)
    # Center the spot on the parked body, not the rear axle: the goal's x is
    # exactly -(length/2 - rear_overhang), which puts the body center at 0.
    spot_center = goal.x + vehicle.body_center_x
    return build_parallel_parking(
        workspace=GridSpec(-21.0, 21.0, -1.0, 11.0, cell_size=0.3, heading_bins=72),
        vehicle=vehicle,
        limits=VehicleLimits(phi_max=0.6),
        spot=SpotSpec(depth=3.0, length=7.2, center_x=spot_center),
        start=start,
        goal=goal,
    )


# -- validation ----------------------------------------------------------------


def validate(scenario: Scenario) -> list[str]:
    """All invariant violations, empty when the scenario is usable."""
    out: list[str] = []
    ws = scenario.workspace
    cfg = scenario.search
    if not ws.contains(scenario.start.x, scenario.start.y):
        out.append("start outside workspace")
    if not ws.contains(scenario.goal.x, scenario.goal.y):
        out.append("goal outside workspace")
    cover = disk_cover(scenario.vehicle, 1)
    if ws.contains(scenario.start.x, scenario.start.y) and vehicle_collides(
        scenario.start, scenario.vehicle, cover, scenario.obstacles
    ):
        out.append("start in collision")
    if ws.contains(scenario.goal.x, scenario.goal.y) and vehicle_collides(
        scenario.goal, scenario.vehicle, cover, scenario.obstacles
    ):
        out.append("goal in collision")
    for x, y in scenario.obstacles.points:
        if not ws.contains(x, y):
            out.append(f"obstacle point ({x:.3f}, {y:.3f}) outside workspace")
    if cfg.omega_factor < 1.0:
        out.append("omega_factor < 1")
    if cfg.setvalue < 1:
        out.append("setvalue < 1")
    if cfg.max_iterations < 1:
        out.append("max_iterations < 1")
    for i, f in enumerate(cfg.inflation_factors, start=1):
        if f < 1.0:
            out.append(f"inflation factor #{i} < 1")
    pen = cfg.penalties
    if pen.reverse_mult < 1.0:
        out.append("penalties.reverse_mult < 1 (breaks heuristic admissibility)")
    for name in ("switchback", "steer_change", "steer_hold"):
        if getattr(pen, name) < 0.0:
            out.append(f"penalties.{name} < 0")
    prim = cfg.primitives
    diag = ws.cell_size * math.sqrt(2.0)
    if prim.arc_length <= diag:
        out.append(
            f"arc_length {prim.arc_length} does not exceed the cell diagonal {diag:.4f}"
        )
    for steer in prim.steering_angles:
        if abs(steer) > scenario.limits.phi_max:
            out.append(f"steering angle {steer} exceeds phi_max {scenario.limits.phi_max}")
    if cfg.rs_spacing > 0.1:
        out.append("rs_spacing > 0.1")
    if cfg.occupancy_inflation < 0.0:
        out.append("occupancy_inflation < 0")
    elif cfg.occupancy_inflation > 0.0:
        # legal, but the field heuristic may then overestimate
        warnings.warn(
            "occupancy_inflation > 0 can break heuristic admissibility",
            stacklevel=2,
        )
    return out


# -- scenario files --------------------------------------------------------------

_SCHEMA_TOP = {"workspace", "vehicle", "spot", "start", "goal", "search", "obstacles"}
_SCHEMA_WORKSPACE = {"x_min", "x_max", "y_min", "y_max", "cell_size", "heading_bins"}
_SCHEMA_VEHICLE = {"length", "width", "wheelbase", "rear_overhang", "phi_max"}
_SCHEMA_SPOT = {"depth", "length", "center_x"}
_SCHEMA_POSE = {"x", "y", "theta"}
_SCHEMA_SEARCH = {
    "omega_factor",
    "setvalue",
    "inflation_factors",
    "penalties",
    "arc_length",
    "steering_angles",
}
_SCHEMA_PENALTIES = {"reverse_mult", "switchback", "steer_change"}
_SCHEMA_OBSTACLES = {"extra_points"}


def _expect_mapping(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise ScenarioError(f"{where}: expected an object")
    return value


def _reject_unknown(mapping: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise ScenarioError(f"{where}: unknown key(s) {', '.join(unknown)}")


def _number(mapping: dict, key: str, where: str, default=None) -> float:
    if key not in mapping:
        if default is None:
            raise ScenarioError(f"{where}.{key}: missing required value")
        return default
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where}.{key}: expected a number")
    return float(value)


def _pose(mapping: dict, where: str) -> Pose:
    _reject_unknown(_expect_mapping(mapping, where), _SCHEMA_POSE, where)
    return Pose(
        _number(mapping, "x", where),
        _number(mapping, "y", where),
        _number(mapping, "theta", where),
    )


def scenario_from_dict(data: dict) -> Scenario:
    """Build a Scenario from the documented JSON structure; unknown keys are
    rejected with a dotted-path diagnostic."""
    _reject_unknown(_expect_mapping(data, "scenario"), _SCHEMA_TOP, "scenario")
    for required in ("workspace", "vehicle", "start", "goal"):
        if required not in data:
            raise ScenarioError(f"scenario.{required}: missing required section")

    w = _expect_mapping(data["workspace"], "workspace")
    _reject_unknown(w, _SCHEMA_WORKSPACE, "workspace")
    try:
        workspace = GridSpec(
            _number(w, "x_min", "workspace"),
            _number(w, "x_max", "workspace"),
            _number(w, "y_min", "workspace"),
            _number(w, "y_max", "workspace"),
            _number(w, "cell_size", "workspace", 0.3),
            int(_number(w, "heading_bins", "workspace", 72)),
        )
    except ValueError as e:
        raise ScenarioError(f"workspace: {e}") from e

    v = _expect_mapping(data["vehicle"], "vehicle")
    _reject_unknown(v, _SCHEMA_VEHICLE, "vehicle")
    try:
        vehicle = VehicleGeometry(
            length=_number(v, "length", "vehicle"),
            width=_number(v, "width", "vehicle"),
            wheelbase=_number(v, "wheelbase", "vehicle"),
            rear_overhang=_number(v, "rear_overhang", "vehicle"),
        )
        limits = VehicleLimits(phi_max=_number(v, "phi_max", "vehicle", 0.6))
    except ValueError as e:
        raise ScenarioError(f"vehicle: {e}") from e

    spot = None
    if "spot" in data:
        sp = _expect_mapping(data["spot"], "spot")
        _reject_unknown(sp, _SCHEMA_SPOT, "spot")
        try:
            spot = SpotSpec(
                depth=_number(sp, "depth", "spot"),
                length=_number(sp, "length", "spot"),
                center_x=_number(sp, "center_x", "spot"),
            )
        except ValueError as e:
            raise ScenarioError(f"spot: {e}") from e

    start = _pose(data["start"], "start")
    goal = _pose(data["goal"], "goal")

    s = _expect_mapping(data.get("search", {}), "search")
    _reject_unknown(s, _SCHEMA_SEARCH, "search")
    p = _expect_mapping(s.get("penalties", {}), "search.penalties")
    _reject_unknown(p, _SCHEMA_PENALTIES, "search.penalties")
    defaults = SearchConfig()
    penalties = PenaltyConfig(
        reverse_mult=_number(p, "reverse_mult", "search.penalties", defaults.penalties.reverse_mult),
        switchback=_number(p, "switchback", "search.penalties", defaults.penalties.switchback),
        steer_change=_number(p, "steer_change", "search.penalties", defaults.penalties.steer_change),
    )
    factors = s.get("inflation_factors", list(defaults.inflation_factors))
    if not isinstance(factors, list) or any(
        isinstance(f, bool) or not isinstance(f, (int, float)) for f in factors
    ):
        raise ScenarioError("search.inflation_factors: expected a list of numbers")
    steering = s.get("steering_angles", list(defaults.primitives.steering_angles))
    if not isinstance(steering, list) or any(
        isinstance(a, bool) or not isinstance(a, (int, float)) for a in steering
    ):
        raise ScenarioError("search.steering_angles: expected a list of numbers")
    try:
        primitives = MotionPrimitiveSet(
            arc_length=_number(s, "arc_length", "search", defaults.primitives.arc_length),
            steering_angles=tuple(float(a) for a in steering),
        )
    except ValueError as e:
        raise ScenarioError(f"search: {e}") from e
    search = SearchConfig(
        omega_factor=_number(s, "omega_factor", "search", defaults.omega_factor),
        setvalue=int(_number(s, "setvalue", "search", defaults.setvalue)),
        penalties=penalties,
        primitives=primitives,
        inflation_factors=tuple(float(f) for f in factors),
    )

    extra: list[tuple[float, float]] = []
    if "obstacles" in data:
        o = _expect_mapping(data["obstacles"], "obstacles")
        _reject_unknown(o, _SCHEMA_OBSTACLES, "obstacles")
        raw = o.get("extra_points", [])
        if not isinstance(raw, list):
            raise ScenarioError("obstacles.extra_points: expected a list of [x, y] pairs")
        for idx, item in enumerate(raw):
            if (
                not isinstance(item, (list, tuple))
                or len(item) != 2
                or any(isinstance(c, bool) or not isinstance(c, (int, float)) for c in item)
            ):
                raise ScenarioError(
                    f"obstacles.extra_points[{idx}]: expected an [x, y] pair"
                )
            extra.append((float(item[0]), float(item[1])))

    points: list[tuple[float, float]] = []
    if spot is not None:
        points += _parking_walls(workspace, spot, goal, 0.1)
    points += extra
    return Scenario(
        workspace=workspace,
        obstacles=ObstacleSet(points),
        spot=spot,
        start=start,
        goal=goal,
        vehicle=vehicle,
        limits=limits,
        search=search,
        extra_points=tuple(extra),
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    ws = scenario.workspace
    cfg = scenario.search
    data: dict = {
        "workspace": {
            "x_min": ws.x_min,
            "x_max": ws.x_max,
            "y_min": ws.y_min,
            "y_max": ws.y_max,
            "cell_size": ws.cell_size,
            "heading_bins": ws.heading_bins,
        },
        "vehicle": {
            "length": scenario.vehicle.length,
            "width": scenario.vehicle.width,
            "wheelbase": scenario.vehicle.wheelbase,
            "rear_overhang": scenario.vehicle.rear_overhang,
            "phi_max": scenario.limits.phi_max,
        },
        "start": {"x": scenario.start.x, "y": scenario.start.y, "theta": scenario.start.theta},
        "goal": {"x": scenario.goal.x, "y": scenario.goal.y, "theta": scenario.goal.theta},
        "search": {
            "omega_factor": cfg.omega_factor,
            "setvalue": cfg.setvalue,
            "inflation_factors": list(cfg.inflation_factors),
            "penalties": {
                "reverse_mult": cfg.penalties.reverse_mult,
                "switchback": cfg.penalties.switchback,
                "steer_change": cfg.penalties.steer_change,
            },
            "arc_length": cfg.primitives.arc_length,
            "steering_angles": list(cfg.primitives.steering_angles),
        },
        "obstacles": {"extra_points": [list(p) for p in scenario.extra_points]},
    }
    if scenario.spot is not None:
        data["spot"] = {
            "depth": scenario.spot.depth,
            "length": scenario.spot.length,
            "center_x": scenario.spot.center_x,
        }
    return data


def load_scenario(path) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ScenarioError(
            f"{path}: parse error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e
    except OSError as e:
        raise ScenarioError(f"{path}: {e}") from e
    return scenario_from_dict(data)


def save_scenario(scenario: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(scenario), fh, indent=2)
        fh.write("\n")
