"""Kicked-rotor (standard map) evolution of the perturbation symbol G.

The dynamical object is the complex field G(mu, nu, t) on the integer shear
lattice mu = j, nu = k tau.  One kick period acts in two stages:

    free flight   G[j, k] <- G[j, k + j]                  (shear nu <- nu+mu tau)
    kick          G[j, k] <- G[j, k]
                          + (gamma/2) f(k tau) (G[j+1, k] - G[j-1, k])

with f(nu) = nu in the classical regime (hbar = 0) and
f(nu) = (2/hbar) sin(hbar nu / 2) in the quantum one.  The kick reads only
pre-kick values (double buffered).  Initial data is the dipole-perturbation
symbol (v1 mu + v2 nu) exp(i(q0 mu + p0 nu)).

Exactness and conditioning
--------------------------
The lattice is sized to contain the full backward dependency cone of the
probe cells over the whole run, so there is no truncation error; any access
outside the guaranteed cone raises instead of silently truncating.  Cost is
O(n^3) memory and O(n^4) time, with each sweep pruned to the cells that can
still influence a probe.

The evolution is linear, and phased-linear fields

    (c_mu mu + c_nu nu) exp(i(a mu + b nu)),   a, b multiples of pi

form an exactly invariant family under the classical kick (and under free
flight always).  The engine therefore carries that part in closed form and
evolves only the deviation field on the lattice ("split" mode).  For the
classical map with a base point at q0 in {0, pi} the deviation is identically
zero and the probe values are exact for any run length; the direct all-lattice
mode is kept as a cross-check and for generic base points.  Direct classical
runs amplify roundoff through the unbounded kick coefficient at the window
edge and are accurate only to moderate run lengths (about 40 periods at
gamma = 1); the split representation exists precisely to avoid that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConeError, ResourceError, ValidationError
from .estimator import ExponentEstimate, estimate_exponent
from .series import DerivativeSeries

DEFAULT_MAX_BYTES = 6 * 1024**3


@dataclass(frozen=True)
class StandardMapParams:
    """Kick strength, period, regime selector and perturbation base point."""

    gamma: float
    tau: float = 1.0
    hbar: float = 0.0
    q0: float = 0.0
    p0: float = 0.0
    v1: float = 1.0
    v2: float = 1.0

    def __post_init__(self) -> None:
        for name in ("gamma", "tau", "hbar", "q0", "p0", "v1", "v2"):
            if not np.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.tau <= 0:
            raise ValidationError("tau must be positive")
        if self.hbar < 0:
            raise ValidationError("hbar must be nonnegative")

    @property
    def classical(self) -> bool:
        return self.hbar == 0.0

    def f(self, nu):
        """Kick profile: nu classically, bounded sine in the quantum regime."""
        nu = np.asarray(nu, dtype=float)
        if self.classical:
            return nu
        return (2.0 / self.hbar) * np.sin(0.5 * self.hbar * nu)

    def to_dict(self) -> dict:
        return {name: float(getattr(self, name))
                for name in ("gamma", "tau", "hbar", "q0", "p0", "v1", "v2")}


def lattice_extents(n_max: int, keep: tuple[int, int] = (1, 1)) -> tuple[int, int]:
    """Half-extents (J, K) containing the backward cone of the probe window.

    A probe at (j0, k0) with |j0| <= keep_j, |k0| <= keep_k read after any
    s <= n_max periods depends on initial cells with |j| <= keep_j + s and
    |k| <= keep_k + s keep_j + s(s+1)/2; one extra row and two extra columns
    give the stencil sweeps room.
    """
    kj, kk = keep
    return kj + n_max + 1, kk + n_max * kj + n_max * (n_max + 1) // 2 + 2


def _pi_multiple(x: float) -> int | None:
    m = round(x / np.pi)
    return int(m) if abs(x - m * np.pi) <= 1e-12 * max(1.0, abs(x)) else None


class GField:
    """Perturbation symbol on the shear lattice, advanced period by period.

    Use `init_gfield` / `step_period` for the functional interface or
    `advance()` to step in place (long runs).  `value(j, k)` returns
    G(mu=j, nu=k tau) at the current time; after the first step only the
    declared probe window (|j| <= keep_j, |k| <= keep_k) is guaranteed by the
    cone bookkeeping and anything else raises `ConeError`.
    """

    def __init__(self, params: StandardMapParams, n_max: int,
                 keep: tuple[int, int] = (1, 1), mode: str = "auto",
                 max_bytes: int = DEFAULT_MAX_BYTES) -> None:
        if n_max < 1:
            raise ValidationError("n_max must be at least 1")
        if mode not in ("auto", "split", "direct"):
            raise ValidationError(f"unknown engine mode: {mode}")
        self.params = params
        self.n_max = int(n_max)
        self.keep = (int(keep[0]), int(keep[1]))
        if self.keep[0] < 1 or self.keep[1] < 1:
            raise ValidationError("probe window must include (1, 1)")
        self.t = 0
        self.J, self.K = lattice_extents(self.n_max, self.keep)

        m0 = _pi_multiple(params.q0)
        mb = _pi_multiple(params.p0 * params.tau)
        splittable = m0 is not None and mb is not None
        if mode == "split" and not splittable:
            raise ValidationError("split mode needs q0 and p0*tau to be multiples of pi")
        self.split = splittable if mode == "auto" else (mode == "split")

        rows, cols = 2 * self.J + 1, 2 * self.K + 1
        need = 2 * rows * cols * 16
        if need > max_bytes:
            raise ResourceError(
                f"lattice of {rows} x {cols} cells needs {need} bytes "
                f"(two complex buffers), exceeding the budget of {max_bytes}")

        self._k = np.arange(-self.K, self.K + 1)
        self._j = np.arange(-self.J, self.J + 1)
        self._fcol = params.f(params.tau * self._k)

        if self.split:
            self._m0, self._mb = m0, mb
            self.c_mu = complex(params.v1)
            self.c_nu = complex(params.v2)
            # deviation lattice: identically zero until a quantum kick sources it
            self._dev: np.ndarray | None = None
            self._buf: np.ndarray | None = None
        else:
            self._m0 = self._mb = 0
            self.c_mu = self.c_nu = 0.0 + 0.0j
            phase = np.exp(1j * (params.q0 * self._j[:, None] + params.p0 * params.tau * self._k[None, :]))
            self._dev = (params.v1 * self._j[:, None] + params.v2 * params.tau * self._k[None, :]) * phase
            self._buf = np.zeros_like(self._dev)

    # -- carried phased-linear part -----------------------------------------

    def _kick_parity(self, t: int) -> int:
        # phase slope a(t) = q0 + p0 tau t in units of pi, at the kick of period t
        return (self._m0 + self._mb * t) % 2

    def _carried_value(self, j: int, k: int) -> complex:
        if not self.split:
            return 0.0 + 0.0j
        sign = -1.0 if ((self._kick_parity(self.t) * j + self._mb * k) % 2) else 1.0
        return (self.c_mu * j + self.c_nu * k * self.params.tau) * sign

    # -- public access --------------------------------------------------------

    def _check_window(self, j: int, k: int) -> None:
        if abs(j) > self.J or abs(k) > self.K:
            raise ConeError(f"cell ({j}, {k}) outside the allocated lattice")
        if self.t > 0 and (abs(j) > self.keep[0] or abs(k) > self.keep[1]):
            raise ConeError(
                f"cell ({j}, {k}) outside the declared probe window {self.keep}; "
                "construct the field with a larger keep window")

    def value(self, j: int, k: int) -> complex:
        """G at lattice point (mu = j, nu = k tau), current time."""
        self._check_window(j, k)
        carried = self._carried_value(j, k)
        if self._dev is None:
            return carried
        return carried + complex(self._dev[self.J + j, self.K + k])

    def probe_pair(self) -> tuple[complex, complex]:
        """The two derivative-iteration probes G(1, tau) and G(-1, -tau)."""
        return self.value(1, 1), self.value(-1, -1)

    def dense_window(self, jmax: int, kmax: int) -> np.ndarray:
        """Assembled G values for |j| <= jmax, |k| <= kmax (window-checked)."""
        self._check_window(jmax, kmax)
        j = np.arange(-jmax, jmax + 1)
        k = np.arange(-kmax, kmax + 1)
        out = np.zeros((j.size, k.size), dtype=complex)
        if self.split:
            par_t = self._kick_parity(self.t)
            sign = np.where((par_t * j[:, None] + self._mb * k[None, :]) % 2, -1.0, 1.0)
            out = (self.c_mu * j[:, None] + self.c_nu * self.params.tau * k[None, :]) * sign
        if self._dev is not None:
            out = out + self._dev[self.J - jmax : self.J + jmax + 1,
                                  self.K - kmax : self.K + kmax + 1]
        return out

    # -- evolution -------------------------------------------------------------

    def _sweep_bounds(self, t: int) -> tuple[int, int]:
        u = self.n_max - t
        kj, kk = self.keep
        jt = min(kj + u + 1, self.J)
        kt = min(kk + u * kj + u * (u + 1) // 2 + 1, self.K)
        return jt, kt

    def advance(self) -> None:
        """Advance one full period in place (free flight, then kick)."""
        t = self.t + 1
        if t > self.n_max:
            raise ConeError(
                f"lattice window was sized for {self.n_max} periods; "
                "probe validity is not guaranteed beyond that")
        params = self.params
        gamma, tau = params.gamma, params.tau

        post_free_c_mu = self.c_mu + tau * self.c_nu if self.split else self.c_mu
        need_source = self.split and not params.classical and post_free_c_mu != 0.0
        if need_source and self._dev is None:
            rows, cols = 2 * self.J + 1, 2 * self.K + 1
            self._dev = np.zeros((rows, cols), dtype=complex)
            self._buf = np.zeros_like(self._dev)

        if self._dev is not None:
            dev, buf = self._dev, self._buf
            J, K = self.J, self.K
            jt, kt = self._sweep_bounds(t)
            lo, hi = K - kt, K + kt + 1
            for jj in range(-jt, jt + 1):
                r = J + jj
                buf[r, lo:hi] = dev[r, lo + jj : hi + jj]
            r0, r1 = J - jt + 1, J + jt
            dev[r0:r1, lo:hi] = buf[r0:r1, lo:hi] + (gamma / 2.0) * self._fcol[lo:hi] * (
                buf[r0 + 1 : r1 + 1, lo:hi] - buf[r0 - 1 : r1 - 1, lo:hi])

        if self.split:
            self.c_mu = post_free_c_mu
            parity = self._kick_parity(t)
            sign = -1.0 if parity else 1.0
            if params.classical:
                self.c_nu = self.c_nu + sign * gamma * post_free_c_mu
            elif need_source:
                jt, kt = self._sweep_bounds(t)
                lo, hi = self.K - kt, self.K + kt + 1
                r0, r1 = self.J - jt + 1, self.J + jt
                src_col = sign * gamma * post_free_c_mu * self._fcol[lo:hi]
                if self._mb % 2:
                    src_col = src_col * np.where(self._k[lo:hi] % 2, -1.0, 1.0)
                if parity:
                    row_sign = np.where(self._j[r0:r1] % 2, -1.0, 1.0)
                    self._dev[r0:r1, lo:hi] += row_sign[:, None] * src_col[None, :]
                else:
                    self._dev[r0:r1, lo:hi] += src_col[None, :]
        self.t = t

    def copy(self) -> "GField":
        clone = object.__new__(GField)
        clone.__dict__.update(self.__dict__)
        if self._dev is not None:
            clone._dev = self._dev.copy()
            clone._buf = self._buf.copy()
        return clone


def init_gfield(params: StandardMapParams, n_max: int, keep: tuple[int, int] = (1, 1),
                mode: str = "auto", max_bytes: int = DEFAULT_MAX_BYTES) -> GField:
    """Fresh field at t = 0 with data (v1 mu + v2 nu) exp(i(q0 mu + p0 nu)).

    The overall scale of G drops out of the exponent (a log-ratio), so the
    constant prefactor of the dipole perturbation is dropped.
    """
    return GField(params, n_max, keep=keep, mode=mode, max_bytes=max_bytes)


def step_period(field: GField) -> GField:
    """One full period, functionally: returns an advanced copy.

    Long runs should prefer `GField.advance` (in place); this copies the
    deviation lattice, which for large n_max doubles peak memory.
    """
    out = field.copy()
    out.advance()
    return out


# ---------------------------------------------------------------------------
# derivative iteration and the exponent pipeline
# ---------------------------------------------------------------------------


def derivative_iteration(probes: np.ndarray, params: StandardMapParams,
                         n_max: int | None = None) -> DerivativeSeries:
    """Evolve the origin derivatives from the lattice probe history.

    ``probes[t]`` holds (G(1, tau, t), G(1, -tau, t)) at post-kick times; the
    free flight adds tau g3 to g2, and the kick shifts g3 by gamma/2 times the
    probe difference (the kick leaves g2 alone because f(0) = 0, and
    contributes to g3 through f'(0) = 1 in both regimes):

        g2[t+1] = g2[t] + tau g3[t]
        g3[t+1] = g3[t] + (gamma/2) (G(1, tau, t) - G(1, -tau, t))

    starting from (g2, g3)(0) = (v1, v2).
    """
    probes = np.asarray(probes, dtype=complex)
    if probes.ndim != 2 or probes.shape[1] != 2:
        raise ValidationError("probes must be an (n+1, 2) array")
    if n_max is None:
        n_max = probes.shape[0] - 1
    if probes.shape[0] < n_max + 1:
        raise ConeError(f"need probes for t = 0..{n_max}, got {probes.shape[0]} rows")
    g2 = np.empty(n_max + 1, dtype=complex)
    g3 = np.empty(n_max + 1, dtype=complex)
    g2[0], g3[0] = params.v1, params.v2
    half_gamma = 0.5 * params.gamma
    for t in range(n_max):
        g2[t + 1] = g2[t] + params.tau * g3[t]
        g3[t + 1] = g3[t] + half_gamma * (probes[t, 0] - probes[t, 1])
    return DerivativeSeries(g2, g3, params=params, probe_values=probes[: n_max + 1, 0].copy())


def run_standard_map(params: StandardMapParams, n_max: int,
                     window: tuple[int, int] | None = None, mode: str = "auto",
                     max_bytes: int = DEFAULT_MAX_BYTES) -> tuple[DerivativeSeries, ExponentEstimate]:
    """Full pipeline: evolve the lattice, iterate derivatives, fit the rate."""
    field = init_gfield(params, n_max, mode=mode, max_bytes=max_bytes)
    probes = np.empty((n_max + 1, 2), dtype=complex)
    probes[0] = field.probe_pair()
    for t in range(1, n_max + 1):
        field.advance()
        probes[t] = field.probe_pair()
    series = derivative_iteration(probes, params, n_max)
    return series, estimate_exponent(series, window=window)


# ---------------------------------------------------------------------------
# classical closed form
# ---------------------------------------------------------------------------


def _chebyshev_u(half_z: float, n: int) -> float:
    """Second-kind Chebyshev value U_n(half_z) by the three-term recurrence.

    Valid for any real argument (hyperbolic included); U_{-1} = 0, U_{-2} = -1.
    """
    if n == -2:
        return -1.0
    if n == -1:
        return 0.0
    prev, cur = 0.0, 1.0  # U_{-1}, U_0
    for _ in range(n):
        prev, cur = cur, 2.0 * half_z * cur - prev
    return cur


def classical_closed_form(gamma: float, v1: float, v2: float, n: int) -> tuple[float, float]:
    """Exact classical (g2, g3) after n periods at the hyperbolic base point.

    With z = 2 + gamma the transfer coefficients are Chebyshev combinations

        A_n = U_{n-1} - U_{n-2}
        B_n = C_n / (z - 2)          (B_n -> n in the free limit gamma -> 0)
        C_n = U_n - 2 U_{n-1} + U_{n-2}
        D_n = U_n - U_{n-1}

    all evaluated at z/2, and (g2, g3)(n) = (A_n v1 + B_n v2, C_n v1 + D_n v2).
    Requires the tau = 1, q0 = p0 = 0 configuration the coefficients encode.
    """
    if n < 0:
        raise ValidationError("n must be nonnegative")
    z = 2.0 + gamma
    half_z = 0.5 * z
    u_n = _chebyshev_u(half_z, n)
    u_n1 = _chebyshev_u(half_z, n - 1)
    u_n2 = _chebyshev_u(half_z, n - 2)
    a_n = u_n1 - u_n2
    c_n = u_n - 2.0 * u_n1 + u_n2
    d_n = u_n - u_n1
    if abs(z - 2.0) < 1e-12:
        b_n = float(n)
    else:
        b_n = c_n / (z - 2.0)
    return a_n * v1 + b_n * v2, c_n * v1 + d_n * v2


def classical_closed_form_series(gamma: float, v1: float, v2: float, n_max: int) -> DerivativeSeries:
    g2 = np.empty(n_max + 1, dtype=complex)
    g3 = np.empty(n_max + 1, dtype=complex)
    for n in range(n_max + 1):
        g2[n], g3[n] = classical_closed_form(gamma, v1, v2, n)
    return DerivativeSeries(g2, g3, params={"kind": "classical_closed_form", "gamma": gamma})


def classical_lyapunov(gamma: float) -> float:
    """Classical exponent at the kick strength gamma (tau = 1).

    Positive gamma is the hyperbolic base point with
    lambda = ln(1 + gamma/2 + sqrt(gamma^2/4 + gamma)); negative gamma encodes
    the elliptic base point (q0 = pi), where the exponent vanishes for
    -4 < gamma < 0 and turns positive again below -4.
    """
    if not np.isfinite(gamma):
        raise ValidationError("gamma must be finite")
    disc = gamma * gamma / 4.0 + gamma
    if disc <= 0.0:
        return 0.0
    root = np.sqrt(disc)
    return float(np.log(max(abs(1.0 + gamma / 2.0 + root), abs(1.0 + gamma / 2.0 - root))))


def hbar_resonance(params: StandardMapParams, max_denominator: int = 64,
                   tol: float = 1e-9) -> tuple[int, int] | None:
    """Detect hbar tau / (4 pi) close to a small rational (resonant kicking).

    Returns the (p, q) pair when |hbar tau/(4 pi) - p/q| <= tol with
    q <= max_denominator, else None.  The generic (irrational) case is the
    one the quantum engine is meant for.
    """
    if params.classical:
        return None
    x = params.hbar * params.tau / (4.0 * np.pi)
    frac = Fraction(x).limit_denominator(max_denominator)
    if abs(x - float(frac)) <= tol:
        return frac.numerator, frac.denominator
    return None
