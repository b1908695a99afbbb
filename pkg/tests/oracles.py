"""Independent reference implementations used to pin expected values.

Everything here deliberately avoids the library's own code paths for the
quantity it checks: containment uses half-plane tests instead of the frame
transform, kinematics uses a Runge-Kutta integrator instead of the closed
form, grid distances use Bellman-Ford relaxation instead of the heap sweep,
and search costs come from a plain uniform-cost loop without heuristics.
"""

from __future__ import annotations

import heapq
import math

from mhhastar.grid import CellKey
from mhhastar.vehicle import Gear, step_cost, successors


def rectangle_corners(pose, geometry):
    """Vehicle rectangle corners via direct trigonometry (no frame helper)."""
    c, s = math.cos(pose.theta), math.sin(pose.theta)
    xr, xf = -geometry.rear_overhang, geometry.length - geometry.rear_overhang
    h = geometry.width / 2.0
    return [
        (pose.x + c * bx - s * by, pose.y + s * bx + c * by)
        for bx, by in ((xr, -h), (xf, -h), (xf, h), (xr, h))
    ]


def polygon_contains(corners, point, tol=0.0):
    """Half-plane containment for a convex CCW polygon; boundary (within tol)
    counts as inside."""
    x, y = point
    n = len(corners)
    for i in range(n):
        x0, y0 = corners[i]
        x1, y1 = corners[(i + 1) % n]
        cross = (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0)
        if cross < -tol:
            return False
    return True


def rk4_arc(pose, gear, steering, ds, wheelbase, steps=256):
    """Fourth-order integration of the unit-speed single-track model."""
    sigma = float(gear)
    kappa = math.tan(steering) / wheelbase

    def deriv(theta):
        return sigma * math.cos(theta), sigma * math.sin(theta), sigma * kappa

    x, y, theta = pose.x, pose.y, pose.theta
    h = ds / steps
    for _ in range(steps):
        k1 = deriv(theta)
        k2 = deriv(theta + 0.5 * h * k1[2])
        k3 = deriv(theta + 0.5 * h * k2[2])
        k4 = deriv(theta + h * k3[2])
        x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        theta += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
    return x, y, theta


def octile(di: int, dj: int, cell_size: float) -> float:
    """Closed-form 8-connected grid distance on an empty map."""
    a, b = abs(di), abs(dj)
    lo, hi = min(a, b), max(a, b)
    return cell_size * (hi - lo) + cell_size * math.sqrt(2.0) * lo


def bellman_ford_field(nx, ny, blocked, goal_cell, cell_size):
    """Fixpoint relaxation over the same 8-connected edges and weights."""
    axis = cell_size
    diag = cell_size * math.sqrt(2.0)
    moves = (
        (1, 0, axis), (-1, 0, axis), (0, 1, axis), (0, -1, axis),
        (1, 1, diag), (1, -1, diag), (-1, 1, diag), (-1, -1, diag),
    )
    dist = [[math.inf] * ny for _ in range(nx)]
    gx, gy = goal_cell
    dist[gx][gy] = 0.0
    changed = True
    while changed:
        changed = False
        for ix in range(nx):
            for iy in range(ny):
                if blocked[ix][iy] or math.isinf(dist[ix][iy]):
                    continue
                base = dist[ix][iy]
                for dx, dy, w in moves:
                    jx, jy = ix + dx, iy + dy
                    if 0 <= jx < nx and 0 <= jy < ny and not blocked[jx][jy]:
                        nd = base + w
                        if nd < dist[jx][jy]:
                            dist[jx][jy] = nd
                            changed = True
    return dist


def uniform_cost_over_primitives(
    scenario, start_pose, start_gear=Gear.FORWARD, collide=None
):
    """Plain Dijkstra over the primitive graph with cell deduplication and no
    heuristics; returns {CellKey: (g, pose)} for every settled state."""
    spec = scenario.workspace
    primitives = scenario.search.primitives
    penalties = scenario.search.penalties
    wheelbase = scenario.vehicle.wheelbase

    class _State:
        __slots__ = ("pose", "gear", "steering")

        def __init__(self, pose, gear, steering):
            self.pose = pose
            self.gear = gear
            self.steering = steering

        @property
        def direction(self):
            return self.gear

    start_cell = CellKey(
        *spec.cell_of(start_pose.x, start_pose.y),
        spec.heading_bin(start_pose.theta),
        start_gear,
    )
    best = {start_cell: (0.0, start_pose)}
    counter = 0
    heap = [(0.0, counter, _State(start_pose, start_gear, 0.0), start_cell, True)]
    settled: dict[CellKey, tuple[float, object]] = {}
    while heap:
        g, _, state, cell, is_start = heapq.heappop(heap)
        if cell in settled or g > best[cell][0]:
            continue
        settled[cell] = (g, state.pose)
        for step in successors(state, primitives, wheelbase):
            end = step.end_pose
            if not spec.contains(end.x, end.y):
                continue
            if collide is not None and collide(end, state.pose, step):
                continue
            child_cell = CellKey(
                *spec.cell_of(end.x, end.y),
                spec.heading_bin(end.theta),
                step.direction,
            )
            if child_cell in settled:
                continue
            g_new = g + step_cost(step, None if is_start else state, penalties)
            if child_cell not in best or g_new < best[child_cell][0]:
                best[child_cell] = (g_new, end)
                counter += 1
                heapq.heappush(
                    heap,
                    (g_new, counter, _State(end, step.direction, step.steering), child_cell, False),
                )
    return settled
