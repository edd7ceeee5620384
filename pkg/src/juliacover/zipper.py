"""Geodesic (zipper) algorithm for numerical conformal mapping, with exact
handling of zero-width boundary slits.

Maps the interior of a Jordan curve, given as an ordered point list, onto the
upper half-plane H.  The curve is approximated by a chain of hyperbolic
geodesic arcs through the data points; each step opens one arc with the
elementary map

    z -> sqrt(z^2 + c^2)     (after the Mobius normalization z -> z/(1-z/b))

which is exact for geodesic slits, so accuracy is governed by how closely
the chain follows the true boundary.  Forward map, inverse map and the
derivative are closed-form compositions of the per-step parameters.

Slits (boundary arcs traversed twice, of zero width) are walked once, down
one face to the tip.  Opening that face opens both faces simultaneously; the
walk then continues from the far-side prime end of the slit base, which is
already on the real axis, via a pure translation ("slide").  The two faces'
boundary images come from the two-sided prevertex tracking: every processed
vertex carries the images of its left and right faces relative to the walk
direction (for a counterclockwise walk the interior is on the left, so the
left faces are the prevertices of the chart; on a slit, the right faces give
the far side).

Branch conventions: square roots are flipped into the closed upper
half-plane; processed boundary points are real and transform by the
sign-preserving rule x -> sign(x) sqrt(x^2 + c^2).
"""

import numpy as np

__all__ = ["GeodesicMap"]

_INF = np.inf

STEP_OPEN = 0
STEP_SLIDE = 1


def _fix_sqrt(w):
    w = np.asarray(w, dtype=complex)
    return np.where(w.imag < 0, -w, w)


def _sqrt_up(v):
    return _fix_sqrt(np.sqrt(np.asarray(v, dtype=complex)))


def _mobius_b(z, b):
    if np.isinf(b):
        return z
    return z / (1.0 - z / b)


def _mobius_b_real(x, b):
    if np.isinf(b):
        return x
    with np.errstate(divide="ignore", invalid="ignore"):
        out = x / (1.0 - x / b)
    out = np.where(np.isinf(x), -b, out)
    out = np.where(np.isnan(out), _INF, out)
    return out


def _open_real(x, c):
    return np.sign(x) * np.sqrt(x * x + c * c)


class GeodesicMap:
    """Conformal map (interior of Jordan curve) -> upper half-plane H.

    Parameters
    ----------
    points : complex array, counterclockwise boundary samples (interior on
        the left); consecutive points must be distinct.
    interior_point : a point well inside the domain (resolves the closing
        orientation).
    slit_spans : optional list of (base_idx, tip_idx) pairs: points
        base_idx+1 .. tip_idx lie on a zero-width slit attached at the
        vertex base_idx, with the free end at tip_idx.  After the tip is
        processed the walk slides to the far side of the base and continues;
        the points of the slit are visited exactly once.
    cut_reals : optional points strictly inside the segment (p0, p1); their
        interior-side boundary images are tracked exactly and returned by
        cut_real_prevertices().  Useful when the first walk edge is a long
        straight boundary side (the opening map is exact on it).
    """

    def __init__(self, points, interior_point, slit_spans=None, cut_reals=None):
        pts = np.asarray(points, dtype=complex).copy()
        n = pts.size
        if n < 4:
            raise ValueError("need at least 4 boundary points")
        if np.any(np.abs(np.diff(pts)) == 0.0):
            raise ValueError("consecutive boundary points must be distinct")
        self.n = n
        self.points = pts.copy()
        self.p0 = pts[0]
        self.p1 = pts[1]
        spans = sorted(slit_spans or [])
        slide_after = {tip: base for base, tip in spans}
        if any(b < 1 or t <= b or t >= n - 1 for b, t in spans):
            raise ValueError("slit spans must be interior to the walk")

        left = np.empty(n)
        right = np.empty(n)
        probe = np.atleast_1d(np.asarray(interior_point, dtype=complex))

        work = pts.copy()
        work[2:] = self._phi1(work[2:])
        probe = self._phi1(probe)
        left[0] = right[0] = _INF
        left[1] = right[1] = 0.0

        # interior-side images of points on the initial cut: q is real
        # negative there and the interior side of sqrt gives -sqrt(|q|)
        if cut_reals is not None:
            cr = np.asarray(cut_reals, dtype=complex)
            q = ((cr - self.p1) / (cr - self.p0)).real
            if np.any(q >= 0):
                raise ValueError("cut_reals must lie strictly between the first two points")
            cut_track = -np.sqrt(-q)
        else:
            cut_track = np.empty(0)

        # step tables; slides interleave with openings in walk order
        step_type = []
        step_b = []
        step_c = []
        n_slits = len(spans)
        ph_left = np.empty(n_slits)
        ph_right = np.empty(n_slits)
        ph_index = {tip: i for i, (base, tip) in enumerate(spans)}
        n_ph = 0  # phantoms created so far

        cur = ("v", 1)  # descriptor of the vertex currently at 0

        for j in range(2, n):
            if (j - 1) in slide_after:
                base = slide_after[j - 1]
                s_idx = ph_index[j - 1]
                delta = right[base]
                if not np.isfinite(delta):
                    raise RuntimeError(f"slide target for slit at walk {base} is not finite")
                work[j:] -= delta
                probe = probe - delta
                left[:j] -= delta
                right[:j] -= delta
                if cut_track.size:
                    cut_track -= delta
                if n_ph:
                    ph_left[:n_ph] -= delta
                    ph_right[:n_ph] -= delta
                ph_left[s_idx] = ph_right[s_idx] = 0.0
                n_ph += 1
                step_type.append(STEP_SLIDE)
                step_b.append(delta)
                step_c.append(0.0)
                cur = ("ph", s_idx)

            a = work[j]
            if not (a.imag > 0) or not np.isfinite(a):
                raise RuntimeError(
                    f"boundary point {j} left the upper half-plane during "
                    f"construction (image {a}); check walk order/slit spans"
                )
            re, im = a.real, a.imag
            b = _INF if abs(re) < 1e-14 * abs(a) else (re * re + im * im) / re
            c = (re * re + im * im) / im
            step_type.append(STEP_OPEN)
            step_b.append(b)
            step_c.append(c)

            if j + 1 < n:
                work[j + 1:] = _sqrt_up(_mobius_b(work[j + 1:], b) ** 2 + c * c)
            probe = _sqrt_up(_mobius_b(probe, b) ** 2 + c * c)
            left[:j] = _open_real(_mobius_b_real(left[:j], b), c)
            right[:j] = _open_real(_mobius_b_real(right[:j], b), c)
            if cut_track.size:
                cut_track = _open_real(_mobius_b_real(cut_track, b), c)
            if n_ph:
                ph_left[:n_ph] = _open_real(_mobius_b_real(ph_left[:n_ph], b), c)
                ph_right[:n_ph] = _open_real(_mobius_b_real(ph_right[:n_ph], b), c)
            # the prime end previously at 0 splits into the two faces
            if cur[0] == "v":
                left[cur[1]] = -c
                right[cur[1]] = c
            else:
                ph_left[cur[1]] = -c
                ph_right[cur[1]] = c
            left[j] = right[j] = 0.0
            cur = ("v", j)

        self.step_type = np.array(step_type, dtype=int)
        self.step_b = np.array(step_b, dtype=float)
        self.step_c = np.array(step_c, dtype=float)

        # closing: the gap (p_{n-1} -> p_0) is treated as the geodesic from 0
        # to the image of p_0; send it to a vertical ray and square.
        zeta = left[0]
        if not np.isfinite(zeta) or zeta == 0.0:
            raise RuntimeError("degenerate closing configuration")
        self.zeta = zeta
        probe = probe / (1.0 - probe / zeta)
        self.sigma = 1.0 if probe[0].real > 0 else -1.0

        def _finalize(x):
            with np.errstate(divide="ignore", invalid="ignore"):
                v = x / (1.0 - x / zeta)
            v = np.where(np.isinf(x), -zeta, v)       # Mobius sends inf -> -zeta
            return self.sigma * v * v

        self._left_h = _finalize(left)
        self._right_h = _finalize(right)
        self._left_h[0] = _INF                         # p0 is the closing gap end
        self._ph_left_h = _finalize(ph_left)
        self._ph_right_h = _finalize(ph_right)
        self._cut_h = _finalize(cut_track)
        self.slit_spans = spans

    # -- elementary pieces --------------------------------------------------

    def _phi1(self, z):
        q = (z - self.p1) / (z - self.p0)
        return 1j * np.sqrt(q)

    def _phi1_inv(self, w):
        q = -(np.asarray(w, dtype=complex) ** 2)
        return (self.p1 - q * self.p0) / (1.0 - q)

    # -- maps ----------------------------------------------------------------

    def forward(self, z):
        """Map interior points into H."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        w = self._phi1(z)
        for t, b, c in zip(self.step_type, self.step_b, self.step_c):
            if t == STEP_SLIDE:
                w = w - b
            else:
                w = _sqrt_up(_mobius_b(w, b) ** 2 + c * c)
        w = w / (1.0 - w / self.zeta)
        return self.sigma * w * w

    def forward_with_deriv(self, z):
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        q = (z - self.p1) / (z - self.p0)
        dq = (self.p1 - self.p0) / (z - self.p0) ** 2
        sq = np.sqrt(q)
        w = 1j * sq
        d = 1j * dq / (2.0 * sq)
        for t, b, c in zip(self.step_type, self.step_b, self.step_c):
            if t == STEP_SLIDE:
                w = w - b
                continue
            if np.isinf(b):
                mu = w
            else:
                d = d / (1.0 - w / b) ** 2
                mu = w / (1.0 - w / b)
            w = _sqrt_up(mu * mu + c * c)
            with np.errstate(divide="ignore", invalid="ignore"):
                d = d * mu / w
        d = d / (1.0 - w / self.zeta) ** 2
        w = w / (1.0 - w / self.zeta)
        d = self.sigma * 2.0 * w * d
        w = self.sigma * w * w
        return w, d

    def inverse(self, w):
        """Map points of H back into the domain interior."""
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        if self.sigma > 0:
            v = np.sqrt(w)
        else:
            v = -np.sqrt(-w)
        v = v / (1.0 + v / self.zeta)
        for t, b, c in zip(self.step_type[::-1], self.step_b[::-1], self.step_c[::-1]):
            if t == STEP_SLIDE:
                v = v + b
            else:
                v = _sqrt_up(v * v - c * c)
                if not np.isinf(b):
                    v = v / (1.0 + v / b)
        return self._phi1_inv(v)

    # -- boundary correspondence ---------------------------------------------

    def left_prevertices(self):
        """Upper-half-plane boundary coordinates of the left (interior-side)
        faces of the walk vertices.  Entry 0 (the closing-gap end) is inf."""
        return self._left_h

    def right_prevertices(self):
        return self._right_h

    def phantom_prevertices(self):
        """(left, right) prevertex pairs of the slide phantoms, one per slit
        span in sorted order: left = wall side beyond the base, right = far
        face of the slit at the base."""
        return self._ph_left_h, self._ph_right_h

    def cut_real_prevertices(self):
        """Interior-side boundary images of the cut_reals points."""
        return self._cut_h
