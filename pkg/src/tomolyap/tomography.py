"""Forward and inverse symplectic tomography for one degree of freedom.

A phase-space state rho(q, p) is represented by the family of its marginal
distributions

    w(X, mu, nu) = Int rho(q, p) delta(X - mu q - nu p) dq dp,

one nonnegative, X-normalized probability density per direction (mu, nu).
The same object exists for quantum states (where rho is replaced by the
Wigner function), which is what makes these marginals a common language for
classical and quantum dynamics.

Conventions
-----------
* Homogeneity  w(s X, s mu, s nu) = |s|^-1 w(X, mu, nu)  is enforced exactly:
  every direction is internally reduced to the unit circle before quadrature.
* Reconstructions (`inverse_tomogram`, `wigner_from_tomogram`) share one
  filtered back-projection pipeline and both use the normalization in which
  the reconstructed function integrates to 1 over (q, p).  For n = 1 the
  marginal-to-Wigner and marginal-to-density inversion formulas coincide up
  to this choice of prefactor; we pin the probability convention.
* Wave functions carry their own hbar; X = mu q + nu p throughout.

Default grids: 256 X points spanning 8 pooled standard deviations on either
side of the mean, and 64 projection angles; both overridable per call.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import RegularGridInterpolator

from .errors import (
    InsufficientDataError,
    InvalidDirectionError,
    UnsupportedDirectionError,
    ValidationError,
)

DEFAULT_X_POINTS = 256
DEFAULT_DIRECTIONS = 64
SUPPORT_SIGMAS = 8.0

#: Allowance for quadrature jitter when validating nonnegative data.
NEGATIVITY_JITTER = 1e-12


def _require_uniform(axis: np.ndarray, name: str) -> float:
    if axis.ndim != 1 or axis.size < 2:
        raise ValidationError(f"{name} must be a 1-d grid with at least 2 points")
    steps = np.diff(axis)
    d = steps[0]
    if d <= 0 or np.any(np.abs(steps - d) > 1e-9 * abs(d)):
        raise ValidationError(f"{name} must be uniformly increasing")
    return float(d)


def resolve_grid(spec, center: float, width: float, n_default: int = DEFAULT_X_POINTS) -> np.ndarray:
    """Turn a grid spec into an array of sample points.

    Accepts None (default window around `center`), an integer point count,
    an (lo, hi, n) tuple, or an explicit array.
    """
    if spec is None:
        return np.linspace(center - width, center + width, n_default)
    if isinstance(spec, int):
        return np.linspace(center - width, center + width, spec)
    if isinstance(spec, tuple) and len(spec) == 3:
        lo, hi, n = spec
        return np.linspace(float(lo), float(hi), int(n))
    arr = np.asarray(spec, dtype=float)
    _require_uniform(arr, "x grid")
    return arr


# ---------------------------------------------------------------------------
# state containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianDensity:
    """Analytic Gaussian phase-space density (always normalized)."""

    mean_q: float = 0.0
    mean_p: float = 0.0
    sigma_q: float = 1.0
    sigma_p: float = 1.0
    correlation: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma_q <= 0 or self.sigma_p <= 0:
            raise ValidationError("sigma_q and sigma_p must be positive")
        if not -1.0 < self.correlation < 1.0:
            raise ValidationError("correlation must lie in (-1, 1)")

    def covariance(self) -> np.ndarray:
        c = self.correlation * self.sigma_q * self.sigma_p
        return np.array([[self.sigma_q**2, c], [c, self.sigma_p**2]])

    def pdf(self, q: np.ndarray, p: np.ndarray) -> np.ndarray:
        """Density evaluated elementwise on broadcastable q, p arrays."""
        sq, sp, r = self.sigma_q, self.sigma_p, self.correlation
        dq = (np.asarray(q) - self.mean_q) / sq
        dp = (np.asarray(p) - self.mean_p) / sp
        quad = (dq * dq - 2.0 * r * dq * dp + dp * dp) / (1.0 - r * r)
        norm = 2.0 * np.pi * sq * sp * np.sqrt(1.0 - r * r)
        return np.exp(-0.5 * quad) / norm

    def projected_moments(self, mu: float, nu: float) -> tuple[float, float]:
        """Mean and variance of X = mu q + nu p."""
        mean = mu * self.mean_q + nu * self.mean_p
        var = float(np.array([mu, nu]) @ self.covariance() @ np.array([mu, nu]))
        return mean, var


@dataclass
class GridDensity:
    """Phase-space density sampled on a uniform (q, p) grid.

    values[i, j] is the density at (q[i], p[j]).  Nonnegativity and unit
    normalization are checked at construction; `norm_tol` exists because
    numerical reconstructions are only normalized to their documented
    quadrature tolerance.
    """

    q: np.ndarray
    p: np.ndarray
    values: np.ndarray
    norm_tol: float = 1e-6

    def __post_init__(self) -> None:
        self.q = np.asarray(self.q, dtype=float)
        self.p = np.asarray(self.p, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.dq = _require_uniform(self.q, "q grid")
        self.dp = _require_uniform(self.p, "p grid")
        if self.values.shape != (self.q.size, self.p.size):
            raise ValidationError("values must have shape (len(q), len(p))")
        if np.min(self.values) < -NEGATIVITY_JITTER:
            raise ValidationError(f"density has negative values (min {np.min(self.values):g})")
        mass = float(self.values.sum() * self.dq * self.dp)
        if abs(mass - 1.0) > self.norm_tol:
            raise ValidationError(f"density mass {mass:.8g} deviates from 1 beyond {self.norm_tol:g}")

    def mass(self) -> float:
        return float(self.values.sum() * self.dq * self.dp)

    def moments(self) -> tuple[float, float]:
        mq = float((self.values * self.q[:, None]).sum() * self.dq * self.dp)
        mp = float((self.values * self.p[None, :]).sum() * self.dq * self.dp)
        return mq / self.mass(), mp / self.mass()

    def projected_moments(self, mu: float, nu: float) -> tuple[float, float]:
        mq, mp = self.moments()
        mean = mu * mq + nu * mp
        x = mu * self.q[:, None] + nu * self.p[None, :]
        var = float((self.values * (x - mean) ** 2).sum() * self.dq * self.dp / self.mass())
        return mean, var


PhaseSpaceDensity = Union[GaussianDensity, GridDensity]


@dataclass
class WignerGrid:
    """Wigner function on a uniform (q, p) grid; values may be negative.

    Normalized so that the grid sum times the cell area is 1 (within
    `norm_tol`); this is the probability convention used by the shared
    reconstruction pipeline.
    """

    q: np.ndarray
    p: np.ndarray
    values: np.ndarray
    norm_tol: float = 1e-4

    def __post_init__(self) -> None:
        self.q = np.asarray(self.q, dtype=float)
        self.p = np.asarray(self.p, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.dq = _require_uniform(self.q, "q grid")
        self.dp = _require_uniform(self.p, "p grid")
        if self.values.shape != (self.q.size, self.p.size):
            raise ValidationError("values must have shape (len(q), len(p))")
        mass = float(self.values.sum() * self.dq * self.dp)
        if abs(mass - 1.0) > self.norm_tol:
            raise ValidationError(f"Wigner mass {mass:.8g} deviates from 1 beyond {self.norm_tol:g}")

    def mass(self) -> float:
        return float(self.values.sum() * self.dq * self.dp)


@dataclass
class WaveFunction:
    """Complex wave function samples on a uniform coordinate grid."""

    y: np.ndarray
    psi: np.ndarray
    hbar: float = 1.0

    def __post_init__(self) -> None:
        self.y = np.asarray(self.y, dtype=float)
        self.psi = np.asarray(self.psi, dtype=complex)
        self.dy = _require_uniform(self.y, "y grid")
        if self.psi.shape != self.y.shape:
            raise ValidationError("psi must match the y grid")
        if self.hbar <= 0:
            raise ValidationError("hbar must be positive")
        norm = float(np.sum(np.abs(self.psi) ** 2) * self.dy)
        if abs(norm - 1.0) > 1e-6:
            raise ValidationError(f"wave function norm {norm:.8g} deviates from 1 beyond 1e-06")

    def position_moments(self) -> tuple[float, float]:
        prob = np.abs(self.psi) ** 2
        mean = float(np.sum(prob * self.y) * self.dy)
        var = float(np.sum(prob * (self.y - mean) ** 2) * self.dy)
        return mean, var

    def momentum_moments(self) -> tuple[float, float]:
        """Mean and variance of p from the numerical derivative of psi."""
        dpsi = np.gradient(self.psi, self.dy)
        mean = float(self.hbar * np.imag(np.sum(np.conj(self.psi) * dpsi)) * self.dy)
        second = float(self.hbar**2 * np.sum(np.abs(dpsi) ** 2) * self.dy)
        return mean, second - mean**2


@dataclass
class Tomogram:
    """Marginal distribution of X = mu q + nu p sampled on a uniform X grid."""

    x: np.ndarray
    values: np.ndarray
    mu: float
    nu: float
    norm_tol: float = 1e-4

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.mu == 0.0 and self.nu == 0.0:
            raise InvalidDirectionError("direction (mu, nu) must not be the zero vector")
        self.dx = _require_uniform(self.x, "X grid")
        if self.values.shape != self.x.shape:
            raise ValidationError("values must match the X grid")
        if np.min(self.values) < -NEGATIVITY_JITTER:
            raise ValidationError(f"tomogram has negative values (min {np.min(self.values):g})")
        mass = self.mass()
        if abs(mass - 1.0) > self.norm_tol:
            raise ValidationError(f"tomogram mass {mass:.8g} deviates from 1 beyond {self.norm_tol:g}")

    def mass(self) -> float:
        return float(simpson(self.values, dx=self.dx))

    def mean(self) -> float:
        return float(simpson(self.values * self.x, dx=self.dx) / self.mass())

    def variance(self) -> float:
        m = self.mean()
        return float(simpson(self.values * (self.x - m) ** 2, dx=self.dx) / self.mass())

    def theta(self) -> float:
        return float(np.arctan2(self.nu, self.mu))

    # -- serialization ------------------------------------------------------

    def to_csv(self, path, float_fmt: str = "%.17g") -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["X", "w"])
            for xi, wi in zip(self.x, self.values):
                writer.writerow([float_fmt % xi, float_fmt % wi])

    @classmethod
    def from_csv(cls, path, mu: float, nu: float) -> "Tomogram":
        xs, ws = [], []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != ["X", "w"]:
                raise ValidationError(f"unexpected tomogram CSV header: {header}")
            for row in reader:
                xs.append(float(row[0]))
                ws.append(float(row[1]))
        return cls(np.array(xs), np.array(ws), mu, nu)

    def to_json_dict(self) -> dict:
        return {
            "mu": self.mu,
            "nu": self.nu,
            "x_min": float(self.x[0]),
            "x_max": float(self.x[-1]),
            "n_points": int(self.x.size),
            "values": [float(v) for v in self.values],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Tomogram":
        x = np.linspace(data["x_min"], data["x_max"], data["n_points"])
        return cls(x, np.asarray(data["values"], dtype=float), data["mu"], data["nu"])


# ---------------------------------------------------------------------------
# forward map
# ---------------------------------------------------------------------------


def _line_quadrature_gaussian(density: GaussianDensity, xhat: np.ndarray, mu_u: float, nu_u: float,
                              n_line: int) -> np.ndarray:
    # Arc-length parametrization of the line mu_u q + nu_u p = X for a unit
    # direction: base point X*(mu_u, nu_u), tangent (-nu_u, mu_u).
    tangent = np.array([-nu_u, mu_u])
    var_t = float(tangent @ density.covariance() @ tangent)
    s_center = float((np.array([density.mean_q, density.mean_p]) @ tangent))
    half = 10.0 * np.sqrt(var_t)
    s = np.linspace(s_center - half, s_center + half, n_line)
    q = xhat[:, None] * mu_u + s[None, :] * (-nu_u)
    p = xhat[:, None] * nu_u + s[None, :] * mu_u
    return simpson(density.pdf(q, p), dx=s[1] - s[0], axis=1)


def _line_quadrature_grid(density: GridDensity, xhat: np.ndarray, mu_u: float, nu_u: float) -> np.ndarray:
    interp = RegularGridInterpolator((density.q, density.p), density.values,
                                     bounds_error=False, fill_value=0.0)
    half = 0.5 * np.hypot(density.q[-1] - density.q[0], density.p[-1] - density.p[0])
    center = np.array([0.5 * (density.q[0] + density.q[-1]), 0.5 * (density.p[0] + density.p[-1])])
    tangent = np.array([-nu_u, mu_u])
    s_center = float(center @ tangent)
    ds = 0.5 * min(density.dq, density.dp)
    half += 2.0 * max(density.dq, density.dp)
    n_line = 2 * int(np.ceil(half / ds)) + 1
    s = np.linspace(s_center - half, s_center + half, n_line)
    q = xhat[:, None] * mu_u + s[None, :] * (-nu_u)
    p = xhat[:, None] * nu_u + s[None, :] * mu_u
    pts = np.stack([q.ravel(), p.ravel()], axis=-1)
    vals = interp(pts).reshape(q.shape)
    return simpson(vals, dx=s[1] - s[0], axis=1)


def forward_tomogram(density: PhaseSpaceDensity, mu: float, nu: float,
                     x_grid=None, n_line: int = 2001) -> Tomogram:
    """Marginal distribution of X = mu q + nu p by direct line integration.

    The delta constraint is integrated along the line itself (arc-length
    parametrization), which keeps the output nonnegative by construction and
    makes the homogeneity scaling exact: internally only the unit direction
    (mu, nu)/r is ever used and the result is scaled by 1/r.

    Densities are validated at construction, so any density accepted here is
    normalized; the output is normalized in X to quadrature accuracy.
    """
    r = float(np.hypot(mu, nu))
    if r == 0.0:
        raise InvalidDirectionError("direction (mu, nu) must not be the zero vector")
    mu_u, nu_u = mu / r, nu / r

    mean_x, var_x = density.projected_moments(mu, nu)
    x = resolve_grid(x_grid, mean_x, SUPPORT_SIGMAS * np.sqrt(var_x))
    xhat = x / r

    if isinstance(density, GaussianDensity):
        w_unit = _line_quadrature_gaussian(density, xhat, mu_u, nu_u, n_line)
    elif isinstance(density, GridDensity):
        w_unit = _line_quadrature_grid(density, xhat, mu_u, nu_u)
    else:
        raise ValidationError(f"unsupported density type: {type(density).__name__}")
    return Tomogram(x, w_unit / r, mu, nu)


def gaussian_tomogram_family(density: PhaseSpaceDensity, n_directions: int = DEFAULT_DIRECTIONS,
                             x_grid=None, n_line: int = 2001) -> list[Tomogram]:
    """Tomograms over theta_i = i pi / n on a common X grid (for inversion)."""
    if x_grid is None:
        # one grid wide enough for every direction
        widths = []
        for th in np.arange(n_directions) * np.pi / n_directions:
            m, v = density.projected_moments(np.cos(th), np.sin(th))
            widths.append((m - SUPPORT_SIGMAS * np.sqrt(v), m + SUPPORT_SIGMAS * np.sqrt(v)))
        lo = min(w[0] for w in widths)
        hi = max(w[1] for w in widths)
        x_grid = np.linspace(lo, hi, DEFAULT_X_POINTS)
    out = []
    for i in range(n_directions):
        th = i * np.pi / n_directions
        out.append(forward_tomogram(density, np.cos(th), np.sin(th), x_grid=x_grid, n_line=n_line))
    return out


# ---------------------------------------------------------------------------
# pure-state tomogram
# ---------------------------------------------------------------------------


def pure_state_tomogram(psi: WaveFunction, mu: float, nu: float, x_grid=None,
                        chunk: int = 64) -> Tomogram:
    """Quadrature marginal of a pure state for nu != 0.

    w(X, mu, nu) = |Int psi(y) exp[(i/hbar)(mu y^2 / (2 nu) - y X / nu)] dy|^2
                   / (2 pi hbar |nu|)

    evaluated by Simpson quadrature on the wave function's own grid.  The
    nu -> 0 limit collapses to the position marginal; use `forward_tomogram`
    on a density built from |psi|^2 for that case.
    """
    if nu == 0.0:
        raise UnsupportedDirectionError(
            "nu = 0 reduces to the position marginal of |psi|^2; use forward_tomogram")
    hbar = psi.hbar
    my, vy = psi.position_moments()
    mp, vp = psi.momentum_moments()
    mean_x = mu * my + nu * mp
    var_x = max(mu * mu * vy + nu * nu * vp, 1e-12)
    x = resolve_grid(x_grid, mean_x, SUPPORT_SIGMAS * np.sqrt(var_x))

    y = psi.y
    quad_phase = np.exp(1j * mu * y * y / (2.0 * nu * hbar)) * psi.psi
    amps = np.empty(x.size, dtype=complex)
    for start in range(0, x.size, chunk):
        xs = x[start : start + chunk]
        phases = np.exp(-1j * np.outer(xs, y) / (nu * hbar))
        amps[start : start + chunk] = simpson(phases * quad_phase[None, :], dx=psi.dy, axis=1)
    values = np.abs(amps) ** 2 / (2.0 * np.pi * hbar * abs(nu))
    return Tomogram(x, values, mu, nu)


def pure_state_tomogram_family(psi: WaveFunction, n_directions: int = DEFAULT_DIRECTIONS,
                               x_grid=None) -> list[Tomogram]:
    """Pure-state tomograms over theta_i = (i + 1/2) pi / n on a common grid.

    The half-step offset keeps every direction away from nu = 0 (which the
    pure-state quadrature cannot represent) while remaining an equally spaced
    family over [0, pi) as the reconstruction requires.
    """
    thetas = (np.arange(n_directions) + 0.5) * np.pi / n_directions
    if x_grid is None:
        my, vy = psi.position_moments()
        mp, vp = psi.momentum_moments()
        lo = min(np.cos(t) * my + np.sin(t) * mp
                 - SUPPORT_SIGMAS * np.sqrt(np.cos(t) ** 2 * vy + np.sin(t) ** 2 * vp)
                 for t in thetas)
        hi = max(np.cos(t) * my + np.sin(t) * mp
                 + SUPPORT_SIGMAS * np.sqrt(np.cos(t) ** 2 * vy + np.sin(t) ** 2 * vp)
                 for t in thetas)
        x_grid = np.linspace(lo, hi, DEFAULT_X_POINTS)
    return [pure_state_tomogram(psi, np.cos(t), np.sin(t), x_grid=x_grid) for t in thetas]


# ---------------------------------------------------------------------------
# inverse maps (shared filtered back-projection)
# ---------------------------------------------------------------------------

MIN_DIRECTIONS = 32


def _validate_family(tomograms: Sequence[Tomogram]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if len(tomograms) < MIN_DIRECTIONS:
        raise InsufficientDataError(
            f"reconstruction needs at least {MIN_DIRECTIONS} directions, got {len(tomograms)}")
    x0 = tomograms[0].x
    thetas = []
    for tom in tomograms:
        if tom.x.shape != x0.shape or np.max(np.abs(tom.x - x0)) > 1e-9 * (abs(x0[-1]) + abs(x0[0]) + 1):
            raise ValidationError("all tomograms must share a common X grid")
        r = np.hypot(tom.mu, tom.nu)
        if abs(r - 1.0) > 1e-9:
            raise ValidationError("reconstruction expects unit directions (cos t, sin t)")
        th = np.arctan2(tom.nu, tom.mu)
        if th < -1e-12 or th >= np.pi - 1e-12:
            raise ValidationError("directions must lie in the half circle theta in [0, pi)")
        thetas.append(max(th, 0.0))
    thetas = np.asarray(thetas)
    order = np.argsort(thetas)
    thetas = thetas[order]
    gaps = np.diff(thetas)
    target = np.pi / len(tomograms)
    if np.any(np.abs(gaps - target) > 1e-9):
        raise ValidationError("directions must be equally spaced over [0, pi)")
    ws = np.stack([tomograms[i].values for i in order])
    return x0, thetas, ws


def _ramp_kernel(n: int, dx: float) -> np.ndarray:
    # Band-limited ramp filter sampled in real space; lags -n .. n.
    m = np.arange(-n, n + 1)
    h = np.zeros(2 * n + 1)
    h[n] = 1.0 / (4.0 * dx * dx)
    odd = (m % 2) != 0
    h[odd] = -1.0 / (np.pi * m[odd] * dx) ** 2
    return h


def _filtered_backprojection(tomograms: Sequence[Tomogram], q: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Shared reconstruction core; returns values normalized to unit mass.

    Per direction: convolve the marginal with the band-limited ramp filter
    (computed as a linear convolution on a zero-extended grid so the filtered
    tails cover every back-projection point), then accumulate along
    X0 = q cos t + p sin t with linear interpolation.
    """
    x, thetas, ws = _validate_family(tomograms)
    n = x.size
    dx = x[1] - x[0]
    # extend so that |X0| <= max radius of the output grid is always covered
    x0max = float(np.hypot(np.max(np.abs(q)), np.max(np.abs(p))))
    n_ext = max(0, int(np.ceil((x0max - max(abs(x[0]), abs(x[-1]))) / dx)) + 2)
    xe = np.concatenate([x[0] + dx * np.arange(-n_ext, 0), x, x[-1] + dx * np.arange(1, n_ext + 1)])
    ne = xe.size
    kernel = _ramp_kernel(ne, dx)
    nfft = 1 << int(np.ceil(np.log2(kernel.size + ne)))
    kernel_f = np.fft.fft(kernel, nfft)

    out = np.zeros((q.size, p.size))
    qq = q[:, None]
    pp = p[None, :]
    dtheta = np.pi / len(tomograms)
    for th, w in zip(thetas, ws):
        we = np.zeros(ne)
        we[n_ext : n_ext + n] = w
        filtered = np.real(np.fft.ifft(np.fft.fft(we, nfft) * kernel_f))[ne : 2 * ne] * dx
        x0 = qq * np.cos(th) + pp * np.sin(th)
        out += np.interp(x0, xe, filtered, left=0.0, right=0.0)
    return out * dtheta


def inverse_tomogram(tomograms: Sequence[Tomogram], q_grid=None, p_grid=None) -> GridDensity:
    """Reconstruct the phase-space density from a half-circle of marginals.

    Small negative back-projection ripple (below 1 percent of the peak) is
    clamped to zero; anything larger indicates inadequate sampling and raises.
    The result is normalized within 1e-2 by quadrature accuracy.
    """
    x = tomograms[0].x
    q = resolve_grid(q_grid, 0.5 * float(x[0] + x[-1]), 0.5 * float(x[-1] - x[0]), x.size)
    p = resolve_grid(p_grid, 0.5 * float(x[0] + x[-1]), 0.5 * float(x[-1] - x[0]), x.size)
    values = _filtered_backprojection(tomograms, q, p)
    peak = float(values.max())
    if peak <= 0:
        raise ValidationError("reconstruction produced no positive values")
    if float(values.min()) < -0.01 * peak:
        raise ValidationError("reconstruction strongly negative; refine grids or add directions")
    values = np.where(values < 0.0, 0.0, values)
    return GridDensity(q, p, values, norm_tol=1e-2)


def wigner_from_tomogram(tomograms: Sequence[Tomogram], q_grid=None, p_grid=None) -> WignerGrid:
    """Reconstruct the Wigner function; numerically identical pipeline to
    `inverse_tomogram` but negative values are kept (Wigner functions may be
    negative) and the output is normalized to unit mass within 1e-2."""
    x = tomograms[0].x
    q = resolve_grid(q_grid, 0.5 * float(x[0] + x[-1]), 0.5 * float(x[-1] - x[0]), x.size)
    p = resolve_grid(p_grid, 0.5 * float(x[0] + x[-1]), 0.5 * float(x[-1] - x[0]), x.size)
    values = _filtered_backprojection(tomograms, q, p)
    return WignerGrid(q, p, values, norm_tol=1e-2)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------


def tomogram_mean_position(tomogram: Tomogram) -> float:
    """First moment of the (1, 0) tomogram, i.e. the mean position <q>."""
    if not (tomogram.mu == 1.0 and tomogram.nu == 0.0):
        raise InvalidDirectionError(
            f"mean position requires direction (1, 0), got ({tomogram.mu}, {tomogram.nu})")
    return float(simpson(tomogram.values * tomogram.x, dx=tomogram.dx))
