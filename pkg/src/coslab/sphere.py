"""Full harmonic analysis and geometric transforms on the 2-sphere.

The grid is Gauss-Legendre in cos(theta) times equiangular longitudes, so
analysis/synthesis of band-limited functions is exact.  The harmonic basis
is real and orthonormal with respect to the probability measure; storage
is j-major with k ascending from -j to j.

Subspace-valued functions (lines through the origin, planes through the
origin) are carried as even functions on the sphere: a line is keyed by
its direction vector, a plane by its unit normal.  Swapping a line for its
orthogonal plane is then a pure re-labelling of the same data, which is
how the perpendicular-subspace maps below are implemented.

Direct (kernel-quadrature) engines never use the gamma closed forms of
:mod:`coslab.multipliers` for the operator action.  For kernels of the
form K(theta . u), rotation invariance reduces the integral at each output
direction to a weighted 1-D integral of the latitudinal averages around u;
the weight (|s|^(alpha-1) or (1-s^2)^((alpha-2)/2)) is absorbed into a
Gauss-Jacobi rule, making the quadrature exact for band-limited input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

from . import multipliers as mult
from .zonal import gauss_jacobi_rule
from .errors import (
    GridTooCoarseError,
    OddInputError,
    QuadratureWindowError,
    RepresentationError,
)
from .reports import IdentityReport, make_report

__all__ = [
    "S2Grid",
    "GridFunction",
    "HarmonicCoeffs",
    "GrassmannFunctionS2",
    "analyze",
    "synthesize",
    "synthesize_at",
    "apply_spectral",
    "cosine_direct",
    "sine_direct",
    "funk_direct",
    "radon_r1",
    "radon_transform",
    "dual_radon",
    "ri_alpha_direct",
    "random_even_function",
    "verify_s2_suite",
]

ALPHA_WINDOW = (0.0, 3.0)


# --- grid and data types -----------------------------------------------------


class S2Grid:
    """Gauss-Legendre (colatitude) x equiangular (longitude) sphere grid.

    Quadrature weights are probability-normalized.  n_phi must be even (the
    antipodal map must be grid-exact) and at least 2*n_theta.
    """

    def __init__(self, n_theta: int, n_phi: int | None = None):
        if n_phi is None:
            n_phi = 2 * n_theta
        if n_theta < 1 or n_phi < 2 * n_theta or n_phi % 2:
            raise ValueError(
                f"need n_phi even and >= 2*n_theta, got {n_theta}x{n_phi}")
        self.n_theta = n_theta
        self.n_phi = n_phi
        rule = gauss_jacobi_rule(3, n_theta)    # refined Gauss-Legendre
        self.t = rule.nodes                     # ascending cos(theta)
        self.wt = rule.weights                  # latitude weights, sum 1
        self.phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
        st = np.sqrt(1.0 - self.t * self.t)
        # build cos/sin by mirroring the first half so the antipodal map
        # (theta, phi) -> (pi - theta, phi + pi) is exact on the grid
        half = n_phi // 2
        cphi = np.empty(n_phi)
        sphi = np.empty(n_phi)
        cphi[:half] = np.cos(self.phi[:half])
        sphi[:half] = np.sin(self.phi[:half])
        cphi[half:] = -cphi[:half]
        sphi[half:] = -sphi[:half]
        self.points = np.empty((n_theta, n_phi, 3))
        self.points[..., 0] = st[:, None] * cphi[None, :]
        self.points[..., 1] = st[:, None] * sphi[None, :]
        self.points[..., 2] = self.t[:, None]
        self.weights = np.repeat(self.wt[:, None], n_phi, axis=1) / n_phi
        self._legendre_cache: dict[int, np.ndarray] = {}
        self._trig_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    @property
    def band_limit(self) -> int:
        """Largest degree this grid analyzes exactly."""
        return min(self.n_theta - 1, (self.n_phi - 1) // 2)

    def __eq__(self, other) -> bool:
        return (isinstance(other, S2Grid)
                and other.n_theta == self.n_theta and other.n_phi == self.n_phi)

    def __hash__(self):
        return hash((self.n_theta, self.n_phi))

    def legendre_table(self, L: int) -> np.ndarray:
        """Normalized associated Legendre values at the latitude nodes.

        Shape (n_pairs, n_theta) with rows indexed by r = j(j+1)/2 + m.
        Computed once per band limit in extended precision: analysis noise
        in these table values is amplified by strongly order-negative
        multipliers downstream.
        """
        if L not in self._legendre_cache:
            table = _legendre_norm(L, self.t, dtype=np.longdouble)
            self._legendre_cache[L] = table.astype(float)
        return self._legendre_cache[L]

    def trig_table(self, L: int) -> tuple[np.ndarray, np.ndarray]:
        """cos(m phi), sin(m phi) tables of shape (L+1, n_phi)."""
        if L not in self._trig_cache:
            m = np.arange(L + 1)[:, None]
            self._trig_cache[L] = (np.cos(m * self.phi[None, :]),
                                   np.sin(m * self.phi[None, :]))
        return self._trig_cache[L]

    def antipodal_indices(self) -> tuple[np.ndarray, np.ndarray]:
        """Index maps sending each node to its antipode (exact on this grid)."""
        it = np.arange(self.n_theta)[::-1]
        ip = (np.arange(self.n_phi) + self.n_phi // 2) % self.n_phi
        return it, ip


def _pair_index(j: int, m: int) -> int:
    return j * (j + 1) // 2 + m


def _legendre_norm(L: int, t: np.ndarray, dtype=float) -> np.ndarray:
    """P-bar_{j,m}(t): (1/2) int P-bar^2 dt = 1, no Condon-Shortley phase."""
    t = np.asarray(t, dtype=dtype)
    s = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    out = np.empty((_pair_index(L, L) + 1, t.shape[0]), dtype=dtype)
    out[0] = 1.0
    for m in range(1, L + 1):
        out[_pair_index(m, m)] = (
            math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * out[_pair_index(m - 1, m - 1)])
    for m in range(0, L):
        out[_pair_index(m + 1, m)] = math.sqrt(2.0 * m + 3.0) * t * out[_pair_index(m, m)]
        a_prev = math.sqrt((4.0 * (m + 1) ** 2 - 1.0) / ((m + 1) ** 2 - m ** 2))
        for j in range(m + 2, L + 1):
            a = math.sqrt((4.0 * j * j - 1.0) / (j * j - m * m))
            out[_pair_index(j, m)] = a * (
                t * out[_pair_index(j - 1, m)] - out[_pair_index(j - 2, m)] / a_prev)
            a_prev = a
    return out


@dataclass
class GridFunction:
    """Real function sampled on an S2Grid."""

    grid: S2Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n_theta, self.grid.n_phi):
            raise RepresentationError(
                f"values shape {self.values.shape} does not match grid "
                f"{self.grid.n_theta}x{self.grid.n_phi}")

    def integral(self) -> float:
        """Mean against the probability measure."""
        return float(np.sum(self.grid.weights * self.values))

    def antipodal(self) -> "GridFunction":
        it, ip = self.grid.antipodal_indices()
        return GridFunction(self.grid, self.values[np.ix_(it, ip)])

    def even_part(self) -> "GridFunction":
        return GridFunction(self.grid, 0.5 * (self.values + self.antipodal().values))

    def odd_energy_fraction(self) -> float:
        odd = 0.5 * (self.values - self.antipodal().values)
        total = float(np.sum(self.grid.weights * self.values ** 2))
        if total == 0.0:
            return 0.0
        return float(np.sum(self.grid.weights * odd ** 2)) / total

    def to_dict(self) -> dict:
        return {
            "grid": {"n_theta": self.grid.n_theta, "n_phi": self.grid.n_phi},
            "values": [float(v) for v in self.values.ravel()],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GridFunction":
        g = S2Grid(int(d["grid"]["n_theta"]), int(d["grid"]["n_phi"]))
        vals = np.asarray(d["values"], dtype=float).reshape(g.n_theta, g.n_phi)
        return cls(g, vals)


@dataclass
class HarmonicCoeffs:
    """Real orthonormal harmonic coefficients, j-major, k from -j to j."""

    L: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.shape != ((self.L + 1) ** 2,):
            raise RepresentationError(
                f"need {(self.L + 1) ** 2} coefficients for L={self.L}, "
                f"got shape {self.coeffs.shape}")

    def index(self, j: int, k: int) -> int:
        if not (0 <= j <= self.L and -j <= k <= j):
            raise IndexError(f"(j,k)=({j},{k}) outside band limit {self.L}")
        return j * j + (k + j)

    def get(self, j: int, k: int) -> float:
        return float(self.coeffs[self.index(j, k)])

    def degree_slice(self, j: int) -> np.ndarray:
        return self.coeffs[j * j:(j + 1) * (j + 1)]

    def scale_degrees(self, factors) -> "HarmonicCoeffs":
        """Multiply each degree block by a scalar; factors has length L+1."""
        out = self.coeffs.copy()
        for j in range(self.L + 1):
            out[j * j:(j + 1) * (j + 1)] *= factors[j]
        return HarmonicCoeffs(self.L, out)

    def energy(self) -> float:
        return float(np.sum(self.coeffs ** 2))

    def odd_energy_fraction(self) -> float:
        total = self.energy()
        if total == 0.0:
            return 0.0
        odd = sum(float(np.sum(self.degree_slice(j) ** 2))
                  for j in range(1, self.L + 1, 2))
        return odd / total

    def to_dict(self) -> dict:
        return {
            "L": self.L,
            "ordering": "j-major,k-ascending",
            "coeffs": [float(c) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HarmonicCoeffs":
        if d.get("ordering") != "j-major,k-ascending":
            raise RepresentationError(f"unknown ordering {d.get('ordering')!r}")
        return cls(int(d["L"]), np.asarray(d["coeffs"], dtype=float))


@dataclass
class GrassmannFunctionS2:
    """Even function on S^2 keyed as lines (directions) or planes (normals)."""

    kind: str
    repr_: GridFunction

    def __post_init__(self):
        if self.kind not in ("lines", "planes"):
            raise ValueError(f"kind must be 'lines' or 'planes', got {self.kind!r}")
        if self.repr_.odd_energy_fraction() > 1e-12:
            raise OddInputError("subspace functions must be even on the sphere")

    def perp(self) -> "GrassmannFunctionS2":
        """Orthogonal-complement map: swap kinds, keep the data."""
        other = "planes" if self.kind == "lines" else "lines"
        return GrassmannFunctionS2(other, self.repr_)

    def to_dict(self) -> dict:
        d = self.repr_.to_dict()
        d["kind"] = self.kind
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GrassmannFunctionS2":
        return cls(d["kind"], GridFunction.from_dict(d))


# --- analysis / synthesis ----------------------------------------------------


def _check_resolution(grid: S2Grid, L: int) -> None:
    if grid.n_theta < L + 1 or grid.n_phi < 2 * L + 1:
        raise GridTooCoarseError(
            f"grid {grid.n_theta}x{grid.n_phi} cannot resolve band limit {L}")


def analyze(f: GridFunction, L: int) -> HarmonicCoeffs:
    """Project onto the orthonormal harmonic basis (exact for band-limited f)."""
    grid = f.grid
    _check_resolution(grid, L)
    P = grid.legendre_table(L)
    cos_t, sin_t = grid.trig_table(L)
    # longitude transform: means of f * cos(m phi), f * sin(m phi)
    Ac = (f.values @ cos_t.T) / grid.n_phi      # (n_theta, L+1)
    As = (f.values @ sin_t.T) / grid.n_phi
    out = np.empty((L + 1) ** 2)
    for j in range(L + 1):
        base = j * j + j
        row = P[_pair_index(j, 0)]
        out[base] = np.sum(grid.wt * row * Ac[:, 0])
        for m in range(1, j + 1):
            row = P[_pair_index(j, m)] * math.sqrt(2.0)
            out[base + m] = np.sum(grid.wt * row * Ac[:, m])
            out[base - m] = np.sum(grid.wt * row * As[:, m])
    return HarmonicCoeffs(L, out)


def synthesize(c: HarmonicCoeffs, grid: S2Grid) -> GridFunction:
    """Pointwise sum of the basis series on the grid."""
    _check_resolution(grid, c.L)
    L = c.L
    P = grid.legendre_table(L)
    cos_t, sin_t = grid.trig_table(L)
    Gc = np.zeros((grid.n_theta, L + 1))
    Gs = np.zeros((grid.n_theta, L + 1))
    for j in range(L + 1):
        base = j * j + j
        Gc[:, 0] += c.coeffs[base] * P[_pair_index(j, 0)]
        for m in range(1, j + 1):
            row = P[_pair_index(j, m)] * math.sqrt(2.0)
            Gc[:, m] += c.coeffs[base + m] * row
            Gs[:, m] += c.coeffs[base - m] * row
    values = Gc @ cos_t + Gs @ sin_t
    return GridFunction(grid, values)


def synthesize_at(c: HarmonicCoeffs, points: np.ndarray,
                  chunk: int = 1 << 17) -> np.ndarray:
    """Evaluate the series at arbitrary unit vectors (shape (..., 3)).

    Uses a rolling three-term recurrence per longitudinal order, so memory
    stays O(points) regardless of the band limit; large point sets are
    processed in chunks.
    """
    pts = np.asarray(points, dtype=float)
    shape = pts.shape[:-1]
    pts = pts.reshape(-1, 3)
    out = np.empty(pts.shape[0])
    for lo in range(0, pts.shape[0], chunk):
        out[lo:lo + chunk] = _synthesize_at_block(c, pts[lo:lo + chunk])
    return out.reshape(shape)


def _synthesize_at_block(c: HarmonicCoeffs, pts: np.ndarray) -> np.ndarray:
    t = np.clip(pts[:, 2], -1.0, 1.0)
    s = np.hypot(pts[:, 0], pts[:, 1])
    safe = s > 1e-300
    cos1 = np.where(safe, np.divide(pts[:, 0], s, where=safe, out=np.ones_like(s)), 1.0)
    sin1 = np.where(safe, np.divide(pts[:, 1], s, where=safe, out=np.zeros_like(s)), 0.0)
    L = c.L
    total = np.zeros(pts.shape[0])
    cos_m = np.ones_like(t)
    sin_m = np.zeros_like(t)
    pmm = np.ones_like(t)   # normalized sectoral value, updated across m
    sq2 = math.sqrt(2.0)
    for m in range(L + 1):
        if m > 0:
            pmm = math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * pmm
            cos_m, sin_m = cos_m * cos1 - sin_m * sin1, sin_m * cos1 + cos_m * sin1
        acc_c = np.zeros_like(t)
        acc_s = np.zeros_like(t)
        p_prev2 = np.zeros_like(t)
        p_prev = pmm
        a_prev = 0.0
        for j in range(m, L + 1):
            if j == m:
                p = pmm
            elif j == m + 1:
                p = math.sqrt(2.0 * m + 3.0) * t * pmm
                a_prev = math.sqrt(2.0 * m + 3.0)
            else:
                a = math.sqrt((4.0 * j * j - 1.0) / (j * j - m * m))
                p = a * (t * p_prev - p_prev2 / a_prev)
                a_prev = a
            base = j * j + j
            if m == 0:
                acc_c += c.coeffs[base] * p
            else:
                acc_c += c.coeffs[base + m] * p
                acc_s += c.coeffs[base - m] * p
            p_prev2, p_prev = p_prev, p
        if m == 0:
            total += acc_c
        else:
            total += sq2 * (acc_c * cos_m + acc_s * sin_m)
    return total


# --- spectral application ----------------------------------------------------


def _family_factors(L: int, family: str, params: dict) -> np.ndarray:
    n = 3
    js = range(L + 1)
    if family == "M":
        return np.array([mult.m_mult(n, j, params["alpha"]) for j in js])
    if family == "Q":
        return np.array([mult.q_mult(n, j, params["alpha"]) for j in js])
    if family == "Qplus":
        return np.array([mult.qpm_mult(n, j, params["mu"], params["nu"], "plus")
                         for j in js])
    if family == "Qminus":
        return np.array([mult.qpm_mult(n, j, params["mu"], params["nu"], "minus")
                         for j in js])
    if family == "A":
        return np.array([mult.a_mult(n, j, params["alpha"], params["beta"]) for j in js])
    if family == "Funk":
        return np.array([mult.funk_mult(n, j) for j in js])
    if family == "Poisson":
        return np.array([mult.poisson_mult(j, params["t"]) for j in js])
    raise ValueError(f"unknown family {family!r}")


def apply_spectral(c: HarmonicCoeffs, family: str, **params) -> HarmonicCoeffs:
    """Diagonal action: multiply each degree block by the family multiplier."""
    return c.scale_degrees(_family_factors(c.L, family, params))


# --- direct kernel-quadrature engines ---------------------------------------


def _check_window(alpha: float) -> None:
    lo, hi = ALPHA_WINDOW
    if not (lo < alpha <= hi):
        raise QuadratureWindowError(
            f"direct quadrature validated for {lo} < alpha <= {hi}, got {alpha}")


def _legendre_plain(L: int, x: np.ndarray) -> np.ndarray:
    """Unnormalized Legendre P_0..P_L at x, shape (L+1, len(x))."""
    out = np.empty((L + 1, x.shape[0]))
    out[0] = 1.0
    if L >= 1:
        out[1] = x
    for j in range(2, L + 1):
        out[j] = ((2 * j - 1) * x * out[j - 1] - (j - 1) * out[j - 2]) / j
    return out


def _cosine_kernel_weights(L: int, alpha: float) -> np.ndarray:
    """Latitudinal moments of the cosine kernel against Legendre polynomials.

    w_j = gamma_3(alpha) * (1/2) * int_{-1}^{1} |s|^(alpha-1) P_j(s) ds,
    computed exactly per degree by a Gauss-Jacobi rule in v = s^2 with
    weight v^(alpha/2 - 1).  Odd degrees vanish by parity.
    """
    nv = L // 2 + 2
    x, w = roots_jacobi(nv, 0.0, alpha / 2.0 - 1.0)
    v = (1.0 + x) / 2.0
    s = np.sqrt(v)
    P = _legendre_plain(L, s)
    # (1/2) from the substitution ds -> dv, (1/2)^(alpha/2) from mapping the
    # Jacobi rule's [-1,1] onto v in [0,1]
    scale = 0.5 ** (alpha / 2.0 + 1.0)
    moments = scale * (P @ w)
    moments[1::2] = 0.0
    return mult.constant("gamma_alpha", 3, alpha=alpha) * moments


def _sine_kernel_weights(L: int, alpha: float, gamma_const: float) -> np.ndarray:
    """Latitudinal moments of the kernel (1-s^2)^((alpha-2)/2) (n = 3).

    w_j = gamma_const * (1/2) * int (1-s^2)^((alpha-2)/2) P_j(s) ds via the
    matching Gauss-Jacobi rule; exact per degree, odd degrees vanish.
    """
    a = (alpha - 2.0) / 2.0
    nq = L // 2 + 2
    x, w = roots_jacobi(nq, a, a)
    P = _legendre_plain(L, x)
    moments = 0.5 * (P @ w)
    moments[1::2] = 0.0
    return gamma_const * moments


def cosine_direct(f: GridFunction, alpha: float, L: int | None = None) -> GridFunction:
    """Generalized cosine transform by direct quadrature of its kernel.

    At each output direction u the integral reduces to latitude averages
    around u weighted by |s|^(alpha-1); the singular weight is integrated
    exactly by a Jacobi rule (see module docstring), so the result is exact
    for band-limited input.  The multiplier closed forms are not used.
    """
    _check_window(alpha)
    if mult.excluded(3, alpha, mult.Family.M):
        raise mult.ExcludedParameterError(
            f"alpha={alpha} is on the cosine-family pole lattice")
    if L is None:
        L = f.grid.band_limit
    weights = _cosine_kernel_weights(L, alpha)
    return synthesize(analyze(f, L).scale_degrees(weights), f.grid)


def sine_direct(f: GridFunction, alpha: float, L: int | None = None) -> GridFunction:
    """Generalized sine transform by direct quadrature of its kernel."""
    _check_window(alpha)
    if mult.excluded(3, alpha, mult.Family.Q):
        raise mult.ExcludedParameterError(
            f"alpha={alpha} is on the sine-family pole lattice")
    if L is None:
        L = f.grid.band_limit
    gamma_const = mult.constant("gamma_sine", 3, alpha=alpha)
    weights = _sine_kernel_weights(L, alpha, gamma_const)
    return synthesize(analyze(f, L).scale_degrees(weights), f.grid)


def _circle_frames(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal tangent pairs (a, b) for each unit vector in points."""
    pts = points.reshape(-1, 3)
    helper = np.where(np.abs(pts[:, 2:3]) < 0.9,
                      np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))
    a = np.cross(helper, pts)
    a /= np.linalg.norm(a, axis=1, keepdims=True)
    b = np.cross(pts, a)
    return a, b


def _synth_m_components(c: HarmonicCoeffs, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Longitude-order components of the series at unit vectors.

    Returns (P, Q), each (L+1, npts), such that the series value at the
    point x rotated by angle phi about the z-axis is
    sum_m P[m] cos(m phi) + Q[m] sin(m phi).
    """
    t = np.clip(pts[:, 2], -1.0, 1.0)
    s = np.hypot(pts[:, 0], pts[:, 1])
    safe = s > 1e-300
    cos1 = np.where(safe, np.divide(pts[:, 0], s, where=safe, out=np.ones_like(s)), 1.0)
    sin1 = np.where(safe, np.divide(pts[:, 1], s, where=safe, out=np.zeros_like(s)), 0.0)
    L = c.L
    P = np.zeros((L + 1, pts.shape[0]))
    Q = np.zeros((L + 1, pts.shape[0]))
    cos_m = np.ones_like(t)
    sin_m = np.zeros_like(t)
    pmm = np.ones_like(t)
    sq2 = math.sqrt(2.0)
    for m in range(L + 1):
        if m > 0:
            pmm = math.sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * pmm
            cos_m, sin_m = cos_m * cos1 - sin_m * sin1, sin_m * cos1 + cos_m * sin1
        acc_c = np.zeros_like(t)
        acc_s = np.zeros_like(t)
        p_prev2 = np.zeros_like(t)
        p_prev = pmm
        a_prev = 0.0
        for j in range(m, L + 1):
            if j == m:
                p = pmm
            elif j == m + 1:
                p = math.sqrt(2.0 * m + 3.0) * t * pmm
                a_prev = math.sqrt(2.0 * m + 3.0)
            else:
                a = math.sqrt((4.0 * j * j - 1.0) / (j * j - m * m))
                p = a * (t * p_prev - p_prev2 / a_prev)
                a_prev = a
            base = j * j + j
            if m == 0:
                acc_c += c.coeffs[base] * p
            else:
                acc_c += c.coeffs[base + m] * p
                acc_s += c.coeffs[base - m] * p
            p_prev2, p_prev = p_prev, p
        if m == 0:
            P[0] = acc_c
        else:
            P[m] = sq2 * (acc_c * cos_m + acc_s * sin_m)
            Q[m] = sq2 * (acc_s * cos_m - acc_c * sin_m)
    return P, Q


def funk_direct(f: GridFunction, L: int | None = None,
                n_circle: int | None = None) -> GridFunction:
    """Great-circle averages (Funk-Radon transform) of f.

    Values on each great circle come from coefficient synthesis, so the
    periodic trapezoid average is exact for band-limited input.  Within one
    latitude ring the output nodes are z-rotations of each other, so the
    circle quadrature runs once per ring and the ring values follow from
    the longitude-order components.
    """
    grid = f.grid
    if L is None:
        L = grid.band_limit
    if n_circle is None:
        n_circle = 4 * L + 8
    c = analyze(f, L)
    ring_nodes = grid.points[:, 0, :]                      # phi = 0 node per ring
    a, b = _circle_frames(ring_nodes)
    psi = 2.0 * np.pi * np.arange(n_circle) / n_circle
    pts = (a[:, None, :] * np.cos(psi)[None, :, None]
           + b[:, None, :] * np.sin(psi)[None, :, None])   # (n_theta, M, 3)
    P, Q = _synth_m_components(c, pts.reshape(-1, 3))
    P = P.reshape(L + 1, grid.n_theta, n_circle).mean(axis=2)
    Q = Q.reshape(L + 1, grid.n_theta, n_circle).mean(axis=2)
    cos_t, sin_t = grid.trig_table(L)
    vals = P.T @ cos_t + Q.T @ sin_t
    return GridFunction(grid, vals)


def radon_r1(f: GridFunction, line: np.ndarray, L: int | None = None) -> float | np.ndarray:
    """Radon transform over 1-dimensional subspaces: the symmetrized value.

    The unit 0-sphere along the line carries the two antipodal points with
    equal mass 1/2, so the transform is (f(u) + f(-u)) / 2 evaluated by
    synthesis at the line's direction u (or an array of directions).
    """
    if L is None:
        L = f.grid.band_limit
    c = analyze(f, L)
    u = np.asarray(line, dtype=float)
    vals = 0.5 * (synthesize_at(c, u) + synthesize_at(c, -u))
    return vals


def radon_transform(f: GridFunction, i: int, L: int | None = None) -> GrassmannFunctionS2:
    """Totally geodesic Radon transform, keyed on the input grid.

    i = 1: averages over the 0-sphere in each line (even part of f, exact
    on the grid via the antipodal index map).  i = 2: great-circle averages
    keyed by plane normals.
    """
    if i == 1:
        return GrassmannFunctionS2("lines", f.even_part())
    if i == 2:
        return GrassmannFunctionS2("planes", funk_direct(f, L=L))
    raise ValueError(f"i must be 1 or 2 on S^2, got {i}")


def dual_radon(phi: GrassmannFunctionS2, L: int | None = None) -> GridFunction:
    """Dual Radon transform: average over the subspaces through each point.

    For plane-keyed input this is the Funk transform of the normal
    representation (the planes through u have normals on the great circle
    perpendicular to u); for line-keyed input the only line through u is
    the one with direction u, so the transform is pointwise evaluation.
    """
    if phi.kind == "planes":
        return funk_direct(phi.repr_, L=L)
    return GridFunction(phi.repr_.grid, phi.repr_.values.copy())


def ri_alpha_direct(f: GridFunction, i: int, alpha: float,
                    L: int | None = None) -> GrassmannFunctionS2:
    """Analytic Radon family by direct kernel quadrature (n = 3).

    i = 2: the projection onto the plane's normal line gives the cosine
    kernel |theta . n|^(alpha-1), so the output is the cosine transform
    keyed by normals.  i = 1: the projection onto the plane perpendicular
    to the line gives (1 - (theta . u)^2)^((alpha-2)/2).
    """
    _check_window(alpha)
    if mult.excluded(3, alpha, mult.Family.R_I, i=i):
        raise mult.ExcludedParameterError(
            f"alpha={alpha} is on the order lattice of the i={i} Radon family")
    if i == 2:
        return GrassmannFunctionS2("planes", cosine_direct(f, alpha, L=L))
    if i == 1:
        if L is None:
            L = f.grid.band_limit
        gamma_const = mult.constant("gamma_alpha_i", 3, i=1, alpha=alpha)
        weights = _sine_kernel_weights(L, alpha, gamma_const)
        out = synthesize(analyze(f, L).scale_degrees(weights), f.grid)
        return GrassmannFunctionS2("lines", out)
    raise ValueError(f"i must be 1 or 2 on S^2, got {i}")


# --- verification suite -------------------------------------------------------


def random_even_function(grid: S2Grid, L: int, rng: np.random.Generator,
                         decay: float = 2.0) -> GridFunction:
    """Seeded band-limited even test function with decaying coefficients."""
    coeffs = rng.uniform(-1.0, 1.0, (L + 1) ** 2)
    for j in range(L + 1):
        block = coeffs[j * j:(j + 1) * (j + 1)]
        block *= 0.0 if j % 2 else (1.0 + j) ** -decay
    return synthesize(HarmonicCoeffs(L, coeffs), grid)


def _sup_err(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    """(abs, rel) sup-norm deviation between two fields."""
    abs_err = float(np.max(np.abs(a - b)))
    scale = float(np.max(np.abs(b)))
    rel = abs_err / scale if scale > 1.0 else abs_err
    return abs_err, rel


def _spectral_inverse_q(c: HarmonicCoeffs, alpha: float) -> HarmonicCoeffs:
    """Inverse of the sine transform on even coefficients (odd blocks zero)."""
    factors = []
    for j in range(c.L + 1):
        q = mult.q_mult(3, j, alpha)
        factors.append(0.0 if q == 0.0 else 1.0 / q)
    return c.scale_degrees(factors)


def verify_s2_suite(L: int = 12, tol: float = 1e-6, seed: int = 7,
                    n_theta: int | None = None, n_phi: int | None = None,
                    n_functions: int = 5) -> list[IdentityReport]:
    """Numerically verify the operator identities on S^2.

    Quadrature-limited identities pass at ``tol``; purely spectral chains
    at ``tol * 1e-2``.  Random even band-limited test functions are fixed
    by ``seed``.
    """
    if n_theta is None:
        n_theta = max(4 * L, 48)
    if n_phi is None:
        n_phi = 2 * n_theta
    grid = S2Grid(n_theta, n_phi)
    rng = np.random.default_rng(seed)
    fs = [random_even_function(grid, L, rng) for _ in range(n_functions)]
    tol_spec = tol * 1e-2
    sqrt_pi = math.sqrt(math.pi)
    reports: list[IdentityReport] = []

    def report(name, params, pairs, tolerance):
        abs_errs = [p[0] for p in pairs]
        rel_errs = [p[1] for p in pairs]
        reports.append(make_report(name, params, abs_errs, rel_errs, tolerance,
                                   use_relative=False))

    # duality: (R_i f, phi) = (f, R_i* phi), i = 1, 2
    pairs = []
    for f in fs[:3]:
        g = random_even_function(grid, L, rng)
        phi2 = GrassmannFunctionS2("planes", g)
        lhs = GridFunction(grid, radon_transform(f, 2, L=L).repr_.values * g.values).integral()
        rhs = GridFunction(grid, f.values * dual_radon(phi2, L=L).values).integral()
        pairs.append((abs(lhs - rhs), abs(lhs - rhs)))
        phi1 = GrassmannFunctionS2("lines", g)
        lhs = GridFunction(grid, radon_transform(f, 1).repr_.values * g.values).integral()
        rhs = GridFunction(grid, f.values * dual_radon(phi1, L=L).values).integral()
        pairs.append((abs(lhs - rhs), abs(lhs - rhs)))
    report("duality", {"L": L, "i": [1, 2]}, pairs, tol_spec)

    # Funk factorization: M f = R_i^* R_(n-i),perp f, both i
    pairs = []
    for f in fs:
        mf = funk_direct(f, L=L)
        for i in (1, 2):
            swapped = radon_transform(f, 3 - i, L=L).perp()
            rhs = dual_radon(swapped, L=L)
            pairs.append(_sup_err(mf.values, rhs.values))
    report("funk_factorization", {"L": L, "i": [1, 2], "functions": len(fs)},
           pairs, tol_spec)

    # cosine/Radon chain: R_2 M^alpha f = c R^(alpha+1)_(1,perp) f, alpha in window
    # (alpha = 1 is itself a cosine-family pole, so the probes sit beside it)
    c_chain = mult.constant("c_cosine_radon", 3, i=2)
    pairs = []
    for alpha in (0.5, 1.5):
        for f in fs[:3]:
            lhs = radon_transform(cosine_direct(f, alpha, L=L), 2, L=L)
            rhs = ri_alpha_direct(f, 1, alpha + 1.0, L=L).perp()
            pairs.append(_sup_err(lhs.repr_.values, c_chain * rhs.repr_.values))
    report("cosine_radon_chain", {"L": L, "alphas": [0.5, 1.5], "c": c_chain},
           pairs, tol)

    # continued chain: R_2 M^(-1) f = c_perp_swap R_(1,perp) f
    c_swap = mult.constant("c_perp_swap", 3, i=2)
    pairs = []
    for f in fs[:3]:
        minus1 = synthesize(apply_spectral(analyze(f, L), "M", alpha=-1.0), grid)
        lhs = radon_transform(minus1, 2, L=L)
        rhs = radon_transform(f, 1).perp()
        pairs.append(_sup_err(lhs.repr_.values, c_swap * rhs.repr_.values))
    report("perp_swap_continued", {"L": L, "c": c_swap}, pairs, tol)

    # range identity: R_2^alpha f = R_2 f1, f1 = c M^(1-i) M^(alpha+i+1-n) f
    c_f1 = mult.constant("c_range_f1", 3, i=2)
    pairs = []
    for alpha in (0.5, 1.5):
        for f in fs[:3]:
            lhs = ri_alpha_direct(f, 2, alpha, L=L)
            cf = analyze(f, L)
            f1 = synthesize(apply_spectral(apply_spectral(cf, "M", alpha=alpha),
                                           "M", alpha=-1.0), grid)
            rhs = radon_transform(GridFunction(grid, c_f1 * f1.values), 2, L=L)
            pairs.append(_sup_err(lhs.repr_.values, rhs.repr_.values))
    report("range_swap", {"L": L, "alphas": [0.5, 1.5], "c": c_f1}, pairs, tol)

    # right-inverse forms of the dual Radon transform (i = 2)
    k1 = mult.constant("a_form1", 3)
    k2 = mult.constant("a_form2", 3, i=2)
    k3 = mult.constant("a_form3", 3, i=2)
    pairs_forms, pairs_recon = [], []
    for f in fs[:3]:
        cf = analyze(f, L)
        m2n = synthesize(apply_spectral(cf, "M", alpha=-1.0), grid)
        a1 = GridFunction(grid, k1 * radon_transform(m2n, 1).perp().repr_.values)
        minv = synthesize(apply_spectral(cf, "M", alpha=-1.0), grid)
        a2 = GridFunction(grid, k2 * minv.values)  # continued R_2^(-1) = spectral M^(-1)
        qinv = synthesize(_spectral_inverse_q(cf, 1.0), grid)
        a3 = GridFunction(grid, k3 * radon_transform(qinv, 2, L=L).repr_.values)
        pairs_forms.append(_sup_err(a1.values, a2.values))
        pairs_forms.append(_sup_err(a2.values, a3.values))
        pairs_forms.append(_sup_err(a1.values, a3.values))
        recon = dual_radon(GrassmannFunctionS2("planes", a3), L=L)
        pairs_recon.append(_sup_err(recon.values, f.values))
    report("right_inverse_forms", {"L": L, "constants": [k1, k2, k3]},
           pairs_forms, tol_spec)
    report("right_inverse_reconstruction", {"L": L}, pairs_recon, tol)

    # dual continued chain: M^(1-i) R_i^* phi = c_perp_swap R_(n-i)^* phi^perp
    pairs = []
    for f in fs[:3]:
        phi = GrassmannFunctionS2("planes", f)
        lhs = synthesize(apply_spectral(analyze(dual_radon(phi, L=L), L), "M", alpha=-1.0),
                         grid)
        rhs = dual_radon(phi.perp(), L=L)
        pairs.append(_sup_err(lhs.values, c_swap * rhs.values))
    report("dual_perp_swap", {"L": L, "c": c_swap}, pairs, tol)

    # inversion of the plane Radon transform by the continued dual family
    lam = mult.constant("lambda1", 3, i=2)
    pairs = []
    for f in fs:
        r2 = radon_transform(f, 2, L=L)
        inverted = synthesize(apply_spectral(analyze(r2.repr_, L), "M", alpha=-1.0),
                              grid)
        pairs.append(_sup_err(inverted.values, lam * f.values))
    report("radon_inversion", {"L": L, "lambda1": lam}, pairs, tol)

    # sine-transform composition identities, fully direct inside the window
    pairs = []
    alpha = 0.5
    lam12 = mult.constant("lambda1", 3, i=2)
    for f in fs[:2]:
        r2 = radon_transform(f, 2, L=L)
        lhs = cosine_direct(r2.repr_, alpha, L=L)       # continued dual family on normals
        rhs = sine_direct(f, alpha + 1.0, L=L)
        pairs.append(_sup_err(lhs.values, lam12 * rhs.values))
        lhs2 = dual_radon(ri_alpha_direct(f, 2, alpha, L=L), L=L)
        pairs.append(_sup_err(lhs2.values, lam12 * rhs.values))
    report("sine_composites", {"L": L, "alpha": alpha, "lambda": lam12}, pairs, tol)

    # Funk inversion: sqrt(pi) M^(-1) (M f) = f, spectral and great-circle paths
    pairs_spec, pairs_quad = [], []
    for f in fs:
        cf = analyze(f, L)
        spec_path = apply_spectral(apply_spectral(cf, "Funk"), "M", alpha=-1.0)
        pairs_spec.append(_sup_err(sqrt_pi * spec_path.coeffs, cf.coeffs))
        quad_path = apply_spectral(analyze(funk_direct(f, L=L), L), "M", alpha=-1.0)
        rec = synthesize(quad_path, grid)
        pairs_quad.append(_sup_err(sqrt_pi * rec.values, f.values))
    report("funk_inversion_spectral", {"L": L}, pairs_spec, tol_spec)
    report("funk_inversion_quadrature", {"L": L}, pairs_quad, tol)

    # cosine transform tends to sqrt(pi) * Funk as alpha -> 0+; the limit is
    # taken by polynomial extrapolation in alpha (five nodes: three-node
    # Richardson stalls near 4e-2 because the multipliers' third alpha-
    # derivative is large)
    limit_alphas = [0.4, 0.2, 0.1, 0.05, 0.025]
    lw = []
    for idx, a in enumerate(limit_alphas):
        w = 1.0
        for k, b in enumerate(limit_alphas):
            if k != idx:
                w *= (0.0 - b) / (a - b)
        lw.append(w)
    pairs = []
    for f in fs[:2]:
        target = sqrt_pi * funk_direct(f, L=L).values
        extrap = sum(w * cosine_direct(f, a, L=L).values
                     for w, a in zip(lw, limit_alphas))
        pairs.append(_sup_err(extrap, target))
    report("cosine_funk_limit", {"L": L, "alphas": limit_alphas}, pairs, 1e-3)

    # cross-engine: direct kernel quadrature vs gamma multipliers
    pairs = []
    for alpha in (0.5, 1.5, 2.0, 2.5):
        for f in fs[:2]:
            direct = cosine_direct(f, alpha, L=L)
            spec = synthesize(apply_spectral(analyze(f, L), "M", alpha=alpha), grid)
            pairs.append(_sup_err(direct.values, spec.values))
    report("cross_engine_cosine", {"L": L, "alphas": [0.5, 1.5, 2.0, 2.5]},
           pairs, tol)

    # evenness preservation by even-only families
    pairs = []
    for f in fs[:2]:
        for op in (lambda h: cosine_direct(h, 1.5, L=L),
                   lambda h: funk_direct(h, L=L),
                   lambda h: sine_direct(h, 1.5, L=L)):
            frac = op(f).odd_energy_fraction()
            pairs.append((frac, frac))
    report("evenness", {"L": L}, pairs, 1e-10)

    # chain linking planes-measure bodies to line sections (degree-2 probe + seeded)
    from .starbody import istar_chain_check  # local import; starbody builds on sphere
    zonal2 = np.zeros((L + 1) ** 2)
    zonal2[0] = 1.0
    zonal2[2 * 2 + 2] = 0.3
    g2 = synthesize(HarmonicCoeffs(L, zonal2), grid)
    for label, g in (("zonal2", g2), ("seeded", fs[0])):
        shifted = GridFunction(grid, g.values - min(0.0, float(g.values.min())) + 0.5)
        rep = istar_chain_check(shifted, tol=max(tol_spec, 1e-8))
        rep.params["probe"] = label
        reports.append(rep)

    return reports
