"""Conformal partition of the sector boundaries and the slit data it drives.

The sector L_0 maps to the upper half-plane by u -> u^N + u^{-N} with
u = (z - z_0)/N; the boundary points over the integers n >= 2 sit on the
ray at distances

    t_n = N * (((n + sqrt(n^2 - 4)) / 2)^(1/N) - 1),     t_2 = 0,

with gaps Delta_n = t_{n+1} - t_n.  A vertical slit of length

    y_n = clamp( min(1/4, Delta_n * (t_n + log(Delta_n)/pi)), 0, . )

hangs from each partition point into the half-strip region, subdivided into
m_n = floor(y_n / Delta_n) pieces: m_n - 1 full segments of length Delta_n
(the k-th, counted from the attach point, carries floor(e^{pi k}) interior
vertices) and a tip segment of length L in [Delta_n, 2 Delta_n) carrying
M = round(e^{pi m_n}) intervals placed quadratically from the free end
(even spacing in the unfolded sqrt coordinate, so the target-map images of
all tip edges are comparable).  Reports carry the alternative sqrt-of-index
reading of the tip rule; see the tip_rule note emitted with every table.

Everything here is a closed-form function of (N, n); nothing materializes
large tables unless a window is explicitly requested.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "partition_point",
    "t_of",
    "delta_of",
    "asymptotic_residuals",
    "slit_profile",
    "slit_vertices",
    "SlitLayout",
    "PartitionTable",
    "build_table",
    "gap_power_sum",
    "tower_edge_power_sum",
    "envelope_constant",
    "TIP_RULE_NOTE",
]

TIP_RULE_NOTE = {
    "implemented": "quadratic-from-free-end: positions L*(j/M)^2, M = round(exp(pi*max(m,1)))",
    "alternative_reading": "sqrt-from-free-end: positions L*sqrt(j/M), longest interval L/sqrt(M)",
    "why": "even spacing in the unfolded sqrt coordinate keeps all tip-edge image lengths comparable",
}


def _g(n):
    """(n + sqrt(n^2-4))/2, the half-plane preimage coordinate, n >= 2."""
    n = np.asarray(n, dtype=float)
    return 0.5 * (n + np.sqrt(n * n - 4.0))


def t_of(N, n):
    """Distance t_n of the n-th partition point from the ray base."""
    n = np.asarray(n, dtype=float)
    if np.any(n < 2):
        raise ValueError("partition index n must be >= 2")
    return N * np.expm1(np.log(_g(n)) / N)


def delta_of(N, n):
    """Gap Delta_n = t_{n+1} - t_n, computed cancellation-free."""
    n = np.asarray(n, dtype=float)
    g0, g1 = _g(n), _g(n + 1)
    # t_{n+1}-t_n = N g0^{1/N} (exp((log g1 - log g0)/N) - 1), stable at any n
    return N * np.exp(np.log(g0) / N) * np.expm1(np.log1p((g1 - g0) / g0) / N)


def partition_point(N: int, n, trunk=None):
    """Return (t_n, w_n). w_n = z_0 + N + t_n needs the trunk for z_0; when
    trunk is None only t_n is meaningful and w_n is reported along the axis
    coordinate (x_base + t_n is the caller's job)."""
    t = t_of(N, n)
    if trunk is None:
        return t, None
    return t, trunk.z[0] + trunk.N + t


def forward_halfplane(N, t):
    """Joukowsky composite evaluated on the ray: the value n recovering the
    partition index from a ray distance t (real, exact round trip)."""
    u = 1.0 + np.asarray(t, dtype=float) / N
    return u**N + u ** (-N)


def asymptotic_residuals(N: int, n):
    """Normalized residuals of the partition asymptotics.

    Returns a dict with:
      res_t:      |t_n - N(n^a - 1)| / n^(a-2)         (a = 1/N)
      res_delta:  |Delta_n - n^(a-1) - (a-1)/2 n^(a-2)| / n^(a-3)
      res_ddiff:  |(Delta_n - Delta_{n+1}) - (1-a) n^(a-2)| / n^(a-3)
      t_le_first: t_n <= N(n^a - 1) holds (sign-exact)
      t_le_phi:   t_n <= n^(2 sqrt a) + 2 log n holds
    """
    n = np.asarray(n, dtype=float)
    a = 1.0 / N
    # t_n - N(n^a-1) = N n^a (exp(a log(1-d)) - 1), d = (1 - sqrt(1-4/n^2))/2,
    # computed without cancellation; the sign is exactly negative.
    d = 2.0 / (n * n * (1.0 + np.sqrt(1.0 - 4.0 / (n * n))))
    diff_t = N * np.power(n, a) * np.expm1(a * np.log1p(-d))
    res_t = np.abs(diff_t) / np.power(n, a - 2)

    dn = delta_of(N, n)
    dn1 = delta_of(N, n + 1)
    main = np.power(n, a - 1) + 0.5 * (a - 1) * np.power(n, a - 2)
    res_delta = np.abs(dn - main) / np.power(n, a - 3)
    res_ddiff = np.abs((dn - dn1) - (1 - a) * np.power(n, a - 2)) / np.power(n, a - 3)

    phi = np.power(n, 2 * math.sqrt(a)) + 2 * np.log(n)
    t = t_of(N, n)
    return {
        "res_t": res_t,
        "res_delta": res_delta,
        "res_ddiff": res_ddiff,
        "t_le_first": diff_t <= 0,
        "t_le_phi": t <= phi,
    }


def envelope_constant(N: int, n_probe: int = 10**7) -> float:
    """C_1 with y_n <= C_1/sqrt(n) for all n: max(sqrt(2)/4, sup sqrt(n) y_n)
    over n <= n_probe, computed in windows."""
    best = math.sqrt(2.0) / 4.0
    lo = 2
    argmax = 2
    while lo <= n_probe:
        hi = min(lo + 10**6 - 1, n_probe)
        n = np.arange(lo, hi + 1, dtype=float)
        y = _y_raw_clamped(N, n)
        v = np.sqrt(n) * y
        i = int(np.argmax(v))
        if v[i] > best:
            best = float(v[i])
            argmax = int(n[i])
        lo = hi + 1
    _envelope_cache[N] = (best, argmax)
    return best


_envelope_cache: dict = {}


def _y_raw_clamped(N, n):
    dn = delta_of(N, n)
    raw = dn * (t_of(N, n) + np.log(dn) / np.pi)
    return np.clip(np.minimum(0.25, raw), 0.0, None)


def slit_profile(N: int, n):
    """Per-index slit data (y_n, s_n, m_n, eps_n).

    y_n is clamped below at 0 (indices with a negative raw value get no
    slit); s_n = (y_n - y_{n+1})/Delta_n; m_n = floor(y_n/Delta_n);
    eps_n = min(1/4, C_1/sqrt(n)).
    """
    n = np.asarray(n, dtype=float)
    dn = delta_of(N, n)
    y = _y_raw_clamped(N, n)
    y_next = _y_raw_clamped(N, n + 1)
    s = (y - y_next) / dn
    m = np.floor(y / dn).astype(int)
    if N not in _envelope_cache:
        envelope_constant(N, n_probe=10**6)
    c1 = _envelope_cache[N][0]
    eps = np.minimum(0.25, c1 / np.sqrt(n))
    return y, s, m, eps


@dataclass
class SlitLayout:
    """Vertex layout of one slit, stored as per-segment counts + generators.

    Distances are measured from the attach point along the slit; the free
    end (tip) is at distance y_n.  Full segment k (k = 1..m-1) spans
    [(k-1) Delta, k Delta] and is split into floor(e^{pi k}) + 1 equal
    edges.  The tip spans [y - L, y], L in [Delta, 2 Delta), and carries M
    intervals at tip-relative positions L (j/M)^2.
    """

    N: int
    n: int
    y: float
    delta: float
    m: int
    tip_length: float
    tip_count: int
    full_counts: list = field(default_factory=list)  # edges per full segment

    @property
    def edge_count(self) -> int:
        return sum(self.full_counts) + self.tip_count

    def full_segment_offsets(self, k: int) -> np.ndarray:
        """Vertex offsets (from the attach point) of full segment k >= 1."""
        c = self.full_counts[k - 1]
        return (k - 1) * self.delta + self.delta * np.arange(c + 1) / c

    def tip_offsets(self) -> np.ndarray:
        """Vertex offsets of the tip segment, attach-relative, increasing.

        j runs from M (junction) down to 0 (free end); position from the
        free end is L (j/M)^2.
        """
        j = np.arange(self.tip_count, -1, -1)
        return self.y - self.tip_length * (j / self.tip_count) ** 2

    def all_offsets(self) -> np.ndarray:
        parts = [self.full_segment_offsets(k) for k in range(1, self.m)]
        tip = self.tip_offsets()
        if parts:
            tip = tip[1:]  # junction vertex shared with the last full segment
        parts.append(tip)
        out = np.concatenate(parts) if len(parts) > 1 else parts[0]
        return out

    def edge_lengths(self) -> np.ndarray:
        return np.diff(self.all_offsets())

    def tip_interval_lengths(self) -> np.ndarray:
        """Tip interval lengths from the free end inward: (2j-1) L / M^2."""
        j = np.arange(1, self.tip_count + 1, dtype=float)
        return (2 * j - 1) * self.tip_length / self.tip_count**2


def slit_vertices(N: int, n: int) -> SlitLayout:
    """Build the vertex layout of slit n; requires y_n > 0."""
    y, _s, m, _eps = slit_profile(N, np.array([float(n)]))
    y, m = float(y[0]), int(m[0])
    dn = float(delta_of(N, np.array([float(n)]))[0])
    if y <= 0:
        raise ValueError(f"slit n={n} has no positive length (y_n = {y})")
    m_eff = max(m, 1)
    tip_len = y - (m_eff - 1) * dn
    tip_count = int(round(math.exp(math.pi * m_eff)))
    full_counts = [int(math.floor(math.exp(math.pi * k))) + 1 for k in range(1, m_eff)]
    return SlitLayout(
        N=N, n=n, y=y, delta=dn, m=m_eff,
        tip_length=tip_len, tip_count=tip_count, full_counts=full_counts,
    )


@dataclass
class PartitionTable:
    """Windowed per-index table; column arrays share the index range."""

    N: int
    n: np.ndarray
    t: np.ndarray
    delta: np.ndarray
    y: np.ndarray
    s: np.ndarray
    m: np.ndarray
    eps: np.ndarray
    tip_rule: dict = field(default_factory=lambda: dict(TIP_RULE_NOTE))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "t", "delta", "y", "s", "m", "eps"])
            for row in zip(self.n, self.t, self.delta, self.y, self.s, self.m, self.eps):
                w.writerow([int(row[0])] + [repr(float(v)) for v in row[1:6]] + [repr(float(row[6]))])


def build_table(N: int, n_lo: int, n_hi: int) -> PartitionTable:
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    t = t_of(N, n)
    d = delta_of(N, n)
    y, s, m, eps = slit_profile(N, n)
    return PartitionTable(N=N, n=n.astype(int), t=t, delta=d, y=y, s=s, m=m, eps=eps)


# ---------------------------------------------------------------------------
# certified power sums
# ---------------------------------------------------------------------------

def _fprime_majorant_exponent(N, delta):
    return (1.0 / N - 1.0) * (1.0 + delta)


def gap_power_sum(N: int, delta: float, n_max: int):
    """Partial sum of Delta_n^(1+delta) for n = 2..n_max plus a certified
    bracket for the tail over n > n_max.

    Requires N > 2 (1 + 1/delta) so the full series converges like with
    exponent below -1 - delta/2.  The tail bracket uses the integral test on
    the decreasing majorant f'(x) <= x^(a-1) (1 + 7 x^-2) and the minorant
    f'(x+1), where f is the ray coordinate of the half-plane chart.
    """
    if not (0 < delta <= 1):
        raise ValueError("delta must be in (0, 1]")
    if not (N > 2 * (1 + 1 / delta)):
        raise ValueError(f"hypothesis N > 2(1+1/delta) fails: N={N}, delta={delta}")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    partial = 0.0
    lo = 2
    while lo <= n_max:
        hi = min(lo + 10**6 - 1, n_max)
        n = np.arange(lo, hi + 1, dtype=float)
        partial += float(np.sum(delta_of(N, n) ** (1.0 + delta)))
        lo = hi + 1

    a = 1.0 / N
    p = _fprime_majorant_exponent(N, delta)  # < -1 by hypothesis
    x0 = float(n_max)
    hi_tail = (1 + 7.0 / x0**2) ** (1 + delta) * (x0 ** (p + 1)) / (-(p + 1))
    # lower bound: sum_{n>n_max} Delta_n^{1+d} >= int_{n_max+2}^inf (x^{a-1}(1-2/x^2))^{1+d}
    x1 = x0 + 2.0
    lo_tail = max(0.0, (1 - 2.0 / x1**2) ** (1 + delta) * (x1 ** (p + 1)) / (-(p + 1)))
    return partial, (lo_tail, hi_tail)


def _power_sum_odd(M: int, p: float):
    """sum_{j=1..M} (2j-1)^p, exact below 10^6 terms, Euler-Maclaurin bracket
    above (relative width < 1e-9 for M >= 10^6)."""
    if M <= 10**6:
        j = np.arange(1, M + 1, dtype=float)
        v = float(np.sum((2 * j - 1) ** p))
        return v, v
    # integral of (2x-1)^p dx from 1/2 to M+1/2 equals (2M)^{p+1}/(2(p+1));
    # midpoint rule on the monotone convex integrand gives a bracket with
    # second-order correction p(p-1) (2x-1)^{p-2} summed.
    main = (2.0 * M) ** (p + 1) / (2 * (p + 1))
    corr = abs(p * (p - 1)) / 3.0 * (2.0 ** (p - 1)) * max(1.0, M ** (p - 1))
    return main - corr, main + corr


def tower_edge_power_sum(N: int, n: int, delta: float):
    """Sum of (edge length)^(1+delta) over all edges of slit n, via the
    closed-form layout.  Returns (lo, hi); lo == hi when exact."""
    lay = slit_vertices(N, n)
    dn, L, M = lay.delta, lay.tip_length, lay.tip_count
    p = 1.0 + delta
    full = 0.0
    for c in lay.full_counts:
        full += c * (dn / c) ** p
    s_lo, s_hi = _power_sum_odd(M, p)
    tip_lo = (L / M**2) ** p * s_lo
    tip_hi = (L / M**2) ** p * s_hi
    return full + tip_lo, full + tip_hi
