"""Trunk geometry: the disk, sector, and half-strip components of the plane.

The integer N >= 3 fixes everything. The plane splits into 4N+1 pieces:

* one central disk D(0, r_N) with r_N = 1/(2 sin(pi/(2N))) + N - 1,
* 2N truncated sectors ("L components") with vertices
  z_k = (r_N - N + 1) exp(i(theta/2 + k theta)), theta = pi/N, opening angle
  theta and inner radius N,
* 2N congruent half-strip-like regions ("R components"), R_0 symmetric about
  the positive real axis and R_k its rotation by exp(i k theta).

Each R_k has five finite boundary sides (one arc on |z| = r_N, two radial
segments on [r_N, r_N+1], two arcs of radius N around the adjacent sector
vertices) and two infinite parallel rays exactly one unit apart.
"""

from dataclasses import dataclass

import numpy as np

from ._geom import (
    angle_between,
    dist_arc,
    dist_circle,
    dist_ray,
    dist_segment,
)

__all__ = [
    "TrunkParams",
    "ComponentId",
    "build_trunk",
    "classify_point",
    "classify_points",
    "r_component_outline",
    "BoundaryPolyline",
]


@dataclass(frozen=True)
class TrunkParams:
    """Immutable geometry derived from N."""

    N: int
    theta: float
    r_N: float
    z: np.ndarray            # the 2N sector vertices z_k
    axis_directions: np.ndarray  # e^{i k theta}, strip axes of the R components

    @property
    def x_base(self) -> float:
        """Axis coordinate of the ray base of R_0 (= Re z_0 + N)."""
        return float(self.z[0].real + self.N)

    def sector_vertex_radius(self) -> float:
        return self.r_N - self.N + 1


@dataclass(frozen=True)
class ComponentId:
    """Classification tag: 'D', 'L', 'R' with sector/wedge index, or 'OnGraph'."""

    tag: str
    k: int | None = None
    tol: float = 0.0

    def __str__(self):
        if self.tag in ("L", "R"):
            return f"{self.tag}({self.k})"
        return self.tag


def build_trunk(N: int) -> TrunkParams:
    """Construct the trunk for a given integer N >= 3."""
    if N < 3:
        raise ValueError(f"N must be >= 3, got {N}")
    N = int(N)
    theta = np.pi / N
    r_N = 1.0 / (2.0 * np.sin(np.pi / (2 * N))) + N - 1
    k = np.arange(2 * N)
    z = (r_N - N + 1) * np.exp(1j * (theta / 2 + k * theta))
    axis = np.exp(1j * k * theta)
    # r_N >= N with equality only at N = 3; the sector-vertex circle
    # |z| = r_N - N + 1 is strictly inside the disk for every N >= 3
    assert r_N >= N - 1e-12
    return TrunkParams(N=N, theta=theta, r_N=r_N, z=z, axis_directions=axis)


def _sector_relative(p, trunk: TrunkParams, k: int):
    """Polar coordinates of p around sector vertex z_k, angles relative to
    the sector's opening [k theta, (k+1) theta]."""
    v = np.asarray(p, dtype=complex) - trunk.z[k]
    r = np.abs(v)
    phi = np.angle(v) - k * trunk.theta
    phi = np.mod(phi, 2 * np.pi)
    return r, phi


def _sector_boundary_clearance(p, trunk: TrunkParams, k: int):
    """Distance from p to the boundary of sector L_k, positive inside."""
    r, phi = _sector_relative(p, trunk, k)
    th = trunk.theta
    inside = (r > trunk.N) & (phi > 0) & (phi < th)
    # distance to the two rays and the inner arc, measured from inside
    d_arc = r - trunk.N
    d_low = r * np.sin(np.minimum(phi, np.pi / 2))
    d_high = r * np.sin(np.minimum(th - phi, np.pi / 2))
    d = np.minimum(np.minimum(d_low, d_high), d_arc)
    return np.where(inside, d, -1.0)


def dist_to_trunk_boundary(p, trunk: TrunkParams):
    """Distance from p to the union of all trunk sides (no slits)."""
    p = np.asarray(p, dtype=complex)
    N, th = trunk.N, trunk.theta
    d = dist_circle(p, 0.0, trunk.r_N)
    for k in range(2 * N):
        ang = th / 2 + k * th
        e = np.exp(1j * ang)
        d = np.minimum(d, dist_segment(p, trunk.r_N * e, (trunk.r_N + 1) * e))
        zk = trunk.z[k]
        # the two rays of sector L_k and its inner arc
        d = np.minimum(d, dist_ray(p, zk + trunk.N * np.exp(1j * k * th), np.exp(1j * k * th)))
        d = np.minimum(d, dist_ray(p, zk + trunk.N * np.exp(1j * (k + 1) * th), np.exp(1j * (k + 1) * th)))
        d = np.minimum(d, dist_arc(p, zk, trunk.N, k * th, (k + 1) * th))
    return d


def classify_points(p, trunk: TrunkParams, tol: float = 0.0, slit_clearance=None):
    """Vectorized classification. Returns (tags, ks) integer arrays where
    tags: 0=D, 1=L, 2=R, 3=OnGraph; ks holds the sector/wedge index.

    `slit_clearance`, if given, is a callable p -> distance to the slits;
    points within tol of a slit are classified OnGraph (the graph module
    supplies it; the bare trunk has no slits).
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    p = np.atleast_1d(np.asarray(p, dtype=complex))
    N, th = trunk.N, trunk.theta
    tags = np.full(p.shape, 2, dtype=int)      # default: R
    ks = np.zeros(p.shape, dtype=int)

    on = dist_to_trunk_boundary(p, trunk) <= tol
    if slit_clearance is not None and tol > 0:
        on = on | (slit_clearance(p) <= tol)

    in_d = np.abs(p) < trunk.r_N - tol

    in_l = np.zeros(p.shape, dtype=bool)
    l_idx = np.zeros(p.shape, dtype=int)
    # a point can lie in at most one sector; find it from its angle
    for k in range(2 * N):
        clear = _sector_boundary_clearance(p, trunk, k)
        hit = clear > tol
        in_l |= hit
        l_idx = np.where(hit, k, l_idx)

    # wedge index of the nearest strip axis
    r_idx = np.mod(np.rint(np.angle(p) / th).astype(int), 2 * N)

    tags = np.where(in_l, 1, tags)
    ks = np.where(in_l, l_idx, r_idx)
    tags = np.where(in_d, 0, tags)
    ks = np.where(in_d, 0, ks)
    tags = np.where(on, 3, tags)
    return tags, ks


def classify_point(p, trunk: TrunkParams, tol: float = 0.0, slit_clearance=None) -> ComponentId:
    """Classify a single point into D, L(k), R(k) or OnGraph."""
    tags, ks = classify_points(np.array([p]), trunk, tol, slit_clearance)
    tag, k = int(tags[0]), int(ks[0])
    if tag == 0:
        return ComponentId("D", None, tol)
    if tag == 3:
        return ComponentId("OnGraph", None, tol)
    if tag == 1:
        return ComponentId("L", k, tol)
    return ComponentId("R", k, tol)


@dataclass
class BoundaryPolyline:
    """Ordered boundary of a truncated R component.

    `sides` is a list of (name, payload) in positive orientation; payload is
    ('seg', a, b) or ('arc', center, radius, ang0, ang1). `points` is a dense
    polyline sampling.
    """

    k: int
    sides: list
    points: np.ndarray

    def side_lengths(self) -> dict:
        out = {}
        for name, kind, *geo in self.sides:
            if kind == "seg":
                a, b = geo
                out[name] = abs(b - a)
            else:
                _c, radius, a0, a1 = geo
                out[name] = radius * (a1 - a0)
        return out


def _sample_side(kind, geo, pts_per_unit=24):
    if kind == "seg":
        a, b = geo
        n = max(2, int(abs(b - a) * pts_per_unit) + 1)
        t = np.linspace(0, 1, n)
        return a + t * (b - a)
    c, radius, a0, a1 = geo
    n = max(2, int(radius * (a1 - a0) * pts_per_unit) + 1)
    ang = np.linspace(a0, a1, n)
    return c + radius * np.exp(1j * ang)


def r_component_outline(trunk: TrunkParams, k: int, x_max: float) -> BoundaryPolyline:
    """Positively oriented boundary of R_k truncated at distance x_max from 0.

    Sides, in order along the walk (for k = 0, starting on the circle below
    the axis and ending at the cross-cut): circle arc on |z| = r_N, radial
    segment, sector arc (radius N around z_{k-1}), lower ray, cross-cut,
    upper ray, sector arc around z_k, radial segment. Slits are not included.
    """
    N, th, r_N = trunk.N, trunk.theta, trunk.r_N
    if x_max <= r_N + 2:
        raise ValueError("x_max too small to contain the finite sides of R_k")
    rot = np.exp(1j * k * th)
    z0 = trunk.z[0]
    # everything for k = 0, then rotate
    e_lo = np.exp(-1j * th / 2)
    e_hi = np.exp(1j * th / 2)
    zm1 = trunk.z[0] * np.exp(-1j * th)   # z_{2N-1} = z_0 rotated by -theta

    ray_base_hi = z0 + N           # on the upper ray, Im = +1/2 exactly
    ray_base_lo = np.conj(ray_base_hi)
    x_cut = np.sqrt(x_max**2 - 0.25)
    cut_hi = x_cut + 0.5j
    cut_lo = x_cut - 0.5j
    if cut_hi.real <= ray_base_hi.real:
        raise ValueError("x_max truncates inside the finite sides")

    # walk order, positively oriented around R_0: circle arc upward, radial
    # out, sector arc to the ray base, out the upper ray, cross-cut down,
    # back along the lower ray, sector arc, radial in.
    order = [
        ("circle_arc", "arc", (0.0, r_N, -th / 2, th / 2), False),
        ("radial_hi", "seg", (r_N * e_hi, (r_N + 1) * e_hi), False),
        ("sector_arc_hi", "arc", (z0, float(N), 0.0, th / 2), True),
        ("ray_hi", "seg", (ray_base_hi, cut_hi), False),
        ("cross_cut", "seg", (cut_hi, cut_lo), False),
        ("ray_lo", "seg", (cut_lo, ray_base_lo), False),
        ("sector_arc_lo", "arc", (zm1, float(N), th / 2, th), False),
        ("radial_lo", "seg", ((r_N + 1) * e_lo, r_N * e_lo), False),
    ]
    walk = []
    sides = []
    for name, kind, geo, reverse in order:
        pts = _sample_side(kind, geo)
        if reverse:
            pts = pts[::-1]
        walk.append(pts if not walk else pts[1:])
        if kind == "seg":
            a, b = geo
            sides.append((name, "seg", a * rot, b * rot))
        else:
            c, radius, a0, a1 = geo
            sides.append((name, "arc", c * rot, radius, a0 + k * th, a1 + k * th))
    points = np.concatenate(walk) * rot
    return BoundaryPolyline(k=k, sides=sides, points=points)


def finite_side_lengths(trunk: TrunkParams) -> dict:
    """Lengths of the five finite sides of any R component (N-asymptotically
    they stay within a fixed bracket; the circle arc tends to pi+1)."""
    N, th, r_N = trunk.N, trunk.theta, trunk.r_N
    return {
        "circle_arc": r_N * th,
        "radial_hi": 1.0,
        "radial_lo": 1.0,
        "sector_arc_hi": N * th / 2,
        "sector_arc_lo": N * th / 2,
    }


def corner_angles(trunk: TrunkParams) -> dict:
    """Interior angles between consecutive finite sides of R_0, exact values
    by construction: all pi/2 up to rounding."""
    th, r_N, N = trunk.theta, trunk.r_N, trunk.N
    e_hi = np.exp(1j * th / 2)
    z0 = trunk.z[0]
    out = {}
    # circle arc meets radial at r_N e^{i theta/2}: tangent vs radial direction
    tangent = 1j * e_hi
    out["circle_radial"] = angle_between(tangent, e_hi)
    # radial meets sector arc at (r_N+1) e^{i theta/2}
    p = (r_N + 1) * e_hi
    tangent2 = 1j * (p - z0) / abs(p - z0)
    out["radial_sector"] = angle_between(e_hi, tangent2)
    # sector arc meets the upper ray at z_0 + N
    p2 = z0 + N
    tangent3 = 1j * (p2 - z0) / abs(p2 - z0)
    out["sector_ray"] = angle_between(tangent3, 1.0 + 0j)
    return out
