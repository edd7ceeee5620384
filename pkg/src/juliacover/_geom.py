"""Shared planar geometry helpers: distances to segments/arcs/rays, angles.

All functions are vectorized over numpy arrays of complex points where it
matters; scalars pass through unchanged.
"""

import numpy as np

TWOPI = 2.0 * np.pi


def as_complex(p):
    return np.asarray(p, dtype=complex)


def dist_segment(p, a, b):
    """Euclidean distance from point(s) p to the closed segment [a, b]."""
    p = as_complex(p)
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return np.abs(p - a)
    t = ((p - a) * np.conj(ab)).real / denom
    t = np.clip(t, 0.0, 1.0)
    return np.abs(p - (a + t * ab))


def dist_ray(p, a, direction):
    """Distance from p to the ray {a + t*direction : t >= 0}, |direction| = 1."""
    p = as_complex(p)
    t = ((p - a) * np.conj(direction)).real
    t = np.maximum(t, 0.0)
    return np.abs(p - (a + t * direction))


def _wrap_angle(phi):
    """Wrap to (-pi, pi]."""
    return np.mod(phi + np.pi, TWOPI) - np.pi


def dist_arc(p, center, radius, ang0, ang1):
    """Distance from p to the circular arc of given center/radius spanning
    angles [ang0, ang1] (counterclockwise, ang1 - ang0 in (0, 2*pi])."""
    p = as_complex(p)
    v = p - center
    r = np.abs(v)
    phi = np.angle(v)
    span = ang1 - ang0
    rel = np.mod(phi - ang0, TWOPI)
    on_arc = rel <= span
    d_radial = np.abs(r - radius)
    e0 = center + radius * np.exp(1j * ang0)
    e1 = center + radius * np.exp(1j * ang1)
    d_ends = np.minimum(np.abs(p - e0), np.abs(p - e1))
    return np.where(on_arc, d_radial, d_ends)


def dist_circle(p, center, radius):
    return np.abs(np.abs(as_complex(p) - center) - radius)


def seg_seg_distance(a0, a1, b0, b1, samples=64):
    """Distance between two segments, exact for the common cases.

    Uses the standard reduction: if the segments intersect the distance is 0,
    otherwise the minimum is attained endpoint-to-segment.
    """
    if _segments_intersect(a0, a1, b0, b1):
        return 0.0
    return min(
        float(dist_segment(a0, b0, b1)),
        float(dist_segment(a1, b0, b1)),
        float(dist_segment(b0, a0, a1)),
        float(dist_segment(b1, a0, a1)),
    )


def _orient(a, b, c):
    return np.sign((b - a).real * (c - a).imag - (b - a).imag * (c - a).real)


def _segments_intersect(a0, a1, b0, b1):
    d1 = _orient(b0, b1, a0)
    d2 = _orient(b0, b1, a1)
    d3 = _orient(a0, a1, b0)
    d4 = _orient(a0, a1, b1)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return False


def angle_between(u, v):
    """Unsigned angle in [0, pi] between direction vectors u, v (complex)."""
    du = u / abs(u)
    dv = v / abs(v)
    c = (du * np.conj(dv)).real
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def polyline_length(points):
    pts = as_complex(points)
    return float(np.sum(np.abs(np.diff(pts))))
