"""Operators -d^2/dx^2 + q(x) on the unit circle via the discriminant.

The discriminant is the trace of the period monodromy matrix, integrated
by fixed-step RK4 (fixed stepping keeps it smooth in the spectral
parameter, which the root-finding relies on).  Band edges are the
crossings of the discriminant with +-2 (periodic / antiperiodic); the
eigenvalue at twist angle alpha solves ``discriminant = 2 cos(alpha)``
inside a band, where the discriminant is strictly monotone.

Gap detection is limited by the discriminant's numerical noise: a gap
whose excursion past +-2 stays below roughly 1e-9 * (1 + |lambda|) is
reported as one double edge (``simple=False``) at the tangency point
instead of two separate edges.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import backend
from .errors import BandNotFound, DegenerateEdge, NonMonotone, ScanTooCoarse

DEFAULT_STEPS = 4096
SCAN_STEP = 0.05
BISECT_TOL = 1e-10
# an extremum counts as touching the spectral line when its excursion past
# the line stays below this; calibrated against the fixed-step RK4 noise
# floor (~1e-14 for |lambda| up to a few hundred at the default step count)
TANGENCY_ABS = 2e-13
TANGENCY_GROWTH = 1e-15
DELTA_PRIME_FACTOR = 1e-5
LADDER_TOP = 0.2
LADDER_SIZE = 12


class HillOperator:
    """1-periodic potential sampled for the RK4 stages.

    ``potential`` is any callable of x (array-friendly); periodicity is
    enforced by evaluating at x mod 1.  ``n_steps`` RK4 steps per period.
    """

    def __init__(self, potential: Callable, n_steps: int = DEFAULT_STEPS,
                 description: str = ""):
        self.potential = potential
        self.n_steps = int(n_steps)
        self.description = description
        xs = np.arange(2 * self.n_steps + 1) / (2.0 * self.n_steps)
        self.samples = np.asarray(potential(np.mod(xs, 1.0)), dtype=float)
        self.step = 1.0 / self.n_steps

    @classmethod
    def from_samples(cls, values, n_steps: int = DEFAULT_STEPS) -> "HillOperator":
        """Trigonometric interpolation of uniform samples over one period."""
        values = np.asarray(values, dtype=float)
        m = len(values)
        coeffs = np.fft.rfft(values) / m

        def q(x):
            x = np.asarray(x, dtype=float)
            total = np.full(x.shape, coeffs[0].real)
            for k in range(1, len(coeffs)):
                weight = 1.0 if (m % 2 == 0 and k == m // 2) else 2.0
                angle = 2.0 * np.pi * k * x
                total += weight * (
                    coeffs[k].real * np.cos(angle) - coeffs[k].imag * np.sin(angle)
                )
            return total

        return cls(q, n_steps=n_steps, description=f"samples[{m}]")

    @property
    def min_sample(self) -> float:
        return float(np.min(self.samples))

    @property
    def max_sample(self) -> float:
        return float(np.max(self.samples))


def parse_potential(spec: str) -> Callable:
    """Potential mini-language: ``zero``, ``const:c``, ``cos:a`` for
    a*cos(2 pi x), and ``fourier:a1,b1,a2,b2,...`` for
    sum of a_k cos(2 pi k x) + b_k sin(2 pi k x)."""
    spec = spec.strip()
    if spec == "zero":
        return lambda x: np.zeros_like(np.asarray(x, dtype=float))
    if spec.startswith("const:"):
        c = float(spec[len("const:"):])
        return lambda x: np.full_like(np.asarray(x, dtype=float), c)
    if spec.startswith("cos:"):
        a = float(spec[len("cos:"):])
        return lambda x: a * np.cos(2.0 * np.pi * np.asarray(x, dtype=float))
    if spec.startswith("fourier:"):
        parts = [float(p) for p in spec[len("fourier:"):].split(",") if p.strip()]
        if not parts or len(parts) % 2:
            raise ValueError(
                f"fourier spec needs an even number of coefficients, got {len(parts)}"
            )
        pairs = [(parts[2 * k], parts[2 * k + 1]) for k in range(len(parts) // 2)]

        def q(x):
            x = np.asarray(x, dtype=float)
            total = np.zeros_like(x)
            for k, (a_k, b_k) in enumerate(pairs, start=1):
                angle = 2.0 * np.pi * k * x
                total += a_k * np.cos(angle) + b_k * np.sin(angle)
            return total

        return q
    raise ValueError(f"unknown potential spec {spec!r}")


def monodromy(h: HillOperator, lam: float) -> np.ndarray:
    """Period matrix [[y1, y2], [y1', y2']] of the normalized solutions."""
    return backend.monodromy_rk4(h.samples, np.array([float(lam)]), h.step)[0]


def discriminant_many(h: HillOperator, lams) -> np.ndarray:
    m = backend.monodromy_rk4(h.samples, np.asarray(lams, dtype=float), h.step)
    return m[:, 0, 0] + m[:, 1, 1]


def discriminant(h: HillOperator, lam: float) -> float:
    return float(discriminant_many(h, [lam])[0])


def delta_prime(h: HillOperator, lam: float) -> float:
    return float(_delta_prime_many(h, np.array([float(lam)]))[0])


def _delta_prime_many(h: HillOperator, lams: np.ndarray) -> np.ndarray:
    """Derivative of the discriminant: step-halved central differences."""
    s = DELTA_PRIME_FACTOR * (1.0 + np.abs(lams))
    stencil = np.concatenate([lams + s, lams - s, lams + 0.5 * s, lams - 0.5 * s])
    vals = discriminant_many(h, stencil)
    k = len(lams)
    coarse = (vals[0:k] - vals[k:2 * k]) / (2.0 * s)
    fine = (vals[2 * k:3 * k] - vals[3 * k:4 * k]) / s
    return (4.0 * fine - coarse) / 3.0


@dataclass
class BandEdge:
    n: int  # 1-based index within its own kind
    kind: str  # "periodic" or "antiperiodic"
    value: float
    delta_prime: float
    simple: bool


def _bisect_roots(h, lo, hi, target, iterations=48):
    """Lockstep bisection of discriminant = target on bracketing intervals."""
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    f_lo = discriminant_many(h, lo) - target
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        f_mid = discriminant_many(h, mid) - target
        left = f_lo * f_mid <= 0.0
        hi = np.where(left, mid, hi)
        lo_new = np.where(left, lo, mid)
        f_lo = np.where(left, f_lo, f_mid)
        lo = lo_new
        if np.all(hi - lo <= BISECT_TOL * (1.0 + np.abs(mid))):
            break
    return 0.5 * (lo + hi)


def _refine_extrema(h, lo, hi, sign, iterations=40):
    """Lockstep ternary search for extrema of sign * discriminant."""
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    for _ in range(iterations):
        third = (hi - lo) / 3.0
        m1 = lo + third
        m2 = hi - third
        both = np.concatenate([m1, m2])
        vals = sign * discriminant_many(h, both)
        keep_left = vals[: len(m1)] >= vals[len(m1):]
        hi = np.where(keep_left, m2, hi)
        lo = np.where(keep_left, lo, m1)
    mid = 0.5 * (lo + hi)
    return mid, discriminant_many(h, mid)


def _edges_for_target(h, grid, delta, target):
    """Values of the edges on one spectral line (+2 or -2), with flags."""
    g = delta - target
    sign_flip = np.flatnonzero(g[:-1] * g[1:] < 0.0)
    roots = []
    if len(sign_flip):
        found = _bisect_roots(h, grid[sign_flip], grid[sign_flip + 1], target)
        roots.extend((float(r), True) for r in found)

    # grid points landing exactly on the line are roots the product test skips
    for i in np.flatnonzero(g == 0.0):
        left = g[i - 1] if i > 0 else np.inf
        right = g[i + 1] if i + 1 < len(g) else np.inf
        if left * right < 0.0:
            roots.append((float(grid[i]), True))
        else:
            roots.append((float(grid[i]), False))
            roots.append((float(grid[i]), False))

    # tangencies and gaps narrower than the scan step live at local extrema
    toward = 1.0 if target > 0 else -1.0
    interior = toward * delta[1:-1]
    is_ext = (interior >= toward * delta[:-2]) & (interior >= toward * delta[2:])
    near_line = interior >= abs(target) - 1e-3
    candidates = np.flatnonzero(is_ext & near_line) + 1
    if len(candidates):
        ext_x, ext_val = _refine_extrema(
            h, grid[candidates - 1], grid[candidates + 1], toward
        )
        for idx, x_star, v_star in zip(candidates, ext_x, ext_val):
            tangency_tol = TANGENCY_ABS + TANGENCY_GROWTH * abs(x_star)
            excursion = toward * (v_star - target)
            if excursion < -tangency_tol:
                continue  # extremum never reaches the line
            left, right = grid[idx - 1], grid[idx + 1]
            covered = [r for r, _ in roots if left <= r <= right]
            if covered:
                continue  # the grid scan already caught the crossings
            if excursion <= tangency_tol:
                # numerically closed gap: one double edge at the tangency
                roots.append((float(x_star), False))
                roots.append((float(x_star), False))
                continue
            g_left = float(discriminant_many(h, [left])[0] - target)
            g_right = float(discriminant_many(h, [right])[0] - target)
            if toward * g_left < 0.0 and toward * g_right < 0.0:
                pair = _bisect_roots(h, [left, x_star], [x_star, right], target)
                if pair[1] - pair[0] <= 1e-8 * (1.0 + abs(x_star)):
                    # split below bisection resolution: keep it a double edge
                    roots.append((float(x_star), False))
                    roots.append((float(x_star), False))
                else:
                    roots.extend((float(r), True) for r in pair)
    roots.sort()
    return roots


def band_edges(
    h: HillOperator,
    lambda_max: float,
    n_max: int | None = None,
    scan_step: float = SCAN_STEP,
) -> list:
    """Locate and label the band edges up to ``lambda_max``.

    Scans the discriminant on a uniform grid from just below the potential
    minimum, bisects the crossings with +-2, recovers sub-grid gaps from
    the discriminant's extrema, and checks the interlacing pattern
    periodic, (anti, anti), (periodic, periodic), ...  Gaps closed below
    the noise floor come back as double edges flagged not simple.
    """
    lam_lo = h.min_sample - 1.0
    if lambda_max <= lam_lo:
        raise ValueError(f"lambda_max {lambda_max} is below the scan start {lam_lo}")
    grid = np.arange(lam_lo, lambda_max + scan_step, scan_step)
    delta = discriminant_many(h, grid)

    labeled = []
    for target, kind in ((2.0, "periodic"), (-2.0, "antiperiodic")):
        values = _edges_for_target(h, grid, delta, target)
        for n, (value, simple) in enumerate(values, start=1):
            if n_max is not None and n > n_max:
                break
            labeled.append((value, kind, n, simple))

    labeled.sort(key=lambda item: (item[0], item[2]))
    kinds = [item[1] for item in labeled]
    expected_first = "periodic"
    if kinds and kinds[0] != expected_first:
        raise ScanTooCoarse("lowest edge is not periodic")
    # after the bottom edge, kinds arrive in pairs: anti anti, per per, ...
    pair_kind = "antiperiodic"
    i = 1
    while i < len(kinds):
        group = kinds[i : i + 2]
        if any(k != pair_kind for k in group):
            raise ScanTooCoarse(
                f"interlacing violated near position {i}: {kinds[max(0, i - 2) : i + 2]}"
            )
        pair_kind = "periodic" if pair_kind == "antiperiodic" else "antiperiodic"
        i += 2

    if not labeled:
        return []
    _validate_band_interiors(h, labeled)
    primes = _delta_prime_many(h, np.array([item[0] for item in labeled]))
    return [
        BandEdge(n=n, kind=kind, value=value, delta_prime=float(dp), simple=simple)
        for (value, kind, n, simple), dp in zip(labeled, primes)
    ]


def _validate_band_interiors(h, labeled, samples_per_band=17):
    """The discriminant must run monotonically from +2 to -2 (or back)
    across each labeled band; a jump over skipped bands shows up as an
    oscillation and means the scan grid was too coarse."""
    periodic = sorted(item[0] for item in labeled if item[1] == "periodic")
    anti = sorted(item[0] for item in labeled if item[1] == "antiperiodic")
    bands = []
    for p_val, a_val in zip(periodic, anti):
        lo, hi = sorted((p_val, a_val))
        if hi - lo > 1e-9:
            bands.append((lo, hi, p_val < a_val))
    if not bands:
        return
    points = np.concatenate(
        [np.linspace(lo, hi, samples_per_band + 2)[1:-1] for lo, hi, _ in bands]
    )
    values = discriminant_many(h, points)
    for i, (lo, hi, decreasing) in enumerate(bands):
        chunk = values[i * samples_per_band : (i + 1) * samples_per_band]
        steps = np.diff(chunk)
        ok = np.all(steps <= 1e-9) if decreasing else np.all(steps >= -1e-9)
        if not ok:
            raise ScanTooCoarse(
                f"discriminant oscillates inside the claimed band ({lo:.6g}, "
                f"{hi:.6g}); refine the scan step"
            )


def _band_interval(edges: list, n: int) -> tuple:
    periodic = [e for e in edges if e.kind == "periodic" and e.n == n]
    antiperiodic = [e for e in edges if e.kind == "antiperiodic" and e.n == n]
    if not periodic or not antiperiodic:
        raise BandNotFound(f"band {n} is not inside the scanned window")
    p, a = periodic[0], antiperiodic[0]
    return (p, a) if p.value <= a.value else (a, p)


def _auto_edges(h: HillOperator, n: int) -> list:
    lambda_max = (n * np.pi) ** 2 + h.max_sample + 5.0
    return band_edges(h, lambda_max=lambda_max, n_max=n + 1)


def floquet_eigenvalue(h: HillOperator, n: int, alpha, edges: list | None = None):
    """n-th eigenvalue under the twisted boundary condition with angle alpha.

    Solves discriminant = 2 cos(alpha) inside band n by lockstep bisection;
    at alpha = 0 or +-pi the corresponding edge is returned directly.
    Accepts a scalar or an array of angles in (-pi, pi].
    """
    if edges is None:
        edges = _auto_edges(h, n)
    low, high = _band_interval(edges, n)
    scalar = np.isscalar(alpha)
    alphas = np.atleast_1d(np.asarray(alpha, dtype=float))
    if np.any(np.abs(alphas) > np.pi + 1e-12):
        raise ValueError("twist angles must lie in (-pi, pi]")
    targets = 2.0 * np.cos(alphas)
    out = np.empty_like(alphas)

    periodic_edge = low if low.kind == "periodic" else high
    anti_edge = high if low.kind == "periodic" else low
    at_zero = np.abs(alphas) <= 1e-12
    at_pi = np.abs(np.abs(alphas) - np.pi) <= 1e-12
    out[at_zero] = periodic_edge.value
    out[at_pi] = anti_edge.value

    inner = ~(at_zero | at_pi)
    if np.any(inner):
        t = targets[inner]
        f_lo = discriminant_many(h, np.full(t.shape, low.value)) - t
        f_hi = discriminant_many(h, np.full(t.shape, high.value)) - t
        if np.any(f_lo * f_hi >= 0.0):
            raise NonMonotone(
                f"discriminant does not bracket the target inside band {n}"
            )
        lo = np.full(t.shape, low.value)
        hi = np.full(t.shape, high.value)
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            f_mid = discriminant_many(h, mid) - t
            left = f_lo * f_mid <= 0.0
            hi = np.where(left, mid, hi)
            lo_new = np.where(left, lo, mid)
            f_lo = np.where(left, f_lo, f_mid)
            lo = lo_new
            if np.all(hi - lo <= BISECT_TOL * (1.0 + np.abs(mid))):
                break
        out[inner] = 0.5 * (lo + hi)
    return float(out[0]) if scalar else out


@dataclass
class CurvatureReport:
    """Two routes to the second derivative of the band function at zero twist."""

    n: int
    edge_value: float
    fd_value: float  # Richardson-extrapolated finite difference
    analytic_value: float  # -2 / delta'(periodic edge)
    rel_discrepancy: float
    ladder_spread: float  # residual of the chosen Richardson pair
    morse_index: int  # 0 for a minimum, 1 for a maximum

    @property
    def index_matches_parity(self) -> bool:
        return self.morse_index == (0 if self.n % 2 == 1 else 1)


def curvature_identity_check(
    h: HillOperator, n: int, edges: list | None = None
) -> CurvatureReport:
    """Compare the finite-difference curvature of the band function at zero
    twist against -2 over the discriminant slope at the periodic edge."""
    if edges is None:
        edges = _auto_edges(h, n)
    low, high = _band_interval(edges, n)
    periodic_edge = low if low.kind == "periodic" else high
    if not periodic_edge.simple:
        raise DegenerateEdge(
            f"periodic edge of band {n} at {periodic_edge.value:.6g} is a "
            "double root; the slope there is below numerical resolution"
        )
    analytic = -2.0 / periodic_edge.delta_prime

    steps = LADDER_TOP / 2.0 ** np.arange(LADDER_SIZE)
    lams = floquet_eigenvalue(h, n, steps, edges=edges)
    quotients = 2.0 * (lams - periodic_edge.value) / steps**2
    # Romberg tableau over the step-halving ladder; the twist-evenness of
    # the band function makes the error expansion even in the step, so
    # each column removes another power of step^2
    tableau = [list(quotients)]
    for j in range(1, 4):
        factor = 4.0**j
        prev = tableau[j - 1]
        tableau.append(
            [
                (factor * prev[k + 1] - prev[k]) / (factor - 1.0)
                for k in range(len(prev) - 1)
            ]
        )
    best_val = quotients[-1]
    best_err = np.inf
    for j in range(1, 4):
        for k, value in enumerate(tableau[j]):
            err = abs(value - tableau[j - 1][k + 1]) / (1.0 + abs(value))
            if err < best_err:
                best_err = err
                best_val = value
    rel = abs(best_val - analytic) / max(abs(analytic), 1e-300)
    return CurvatureReport(
        n=n,
        edge_value=periodic_edge.value,
        fd_value=float(best_val),
        analytic_value=float(analytic),
        rel_discrepancy=float(rel),
        ladder_spread=float(best_err),
        morse_index=0 if best_val > 0 else 1,
    )
