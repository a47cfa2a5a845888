"""Explicit finite-difference simulation on a 2D rectangle with no-flux walls.

Space is a uniform cell-centered grid: nx-by-ny cells of size dx-by-dy
covering [0, nx*dx] x [0, ny*dy].  Arrays are indexed ``field[j, i]``
with j the row (y) and i the column (x); memory is row-major with x
fastest.  The Laplacian is the 5-point stencil closed with mirror ghost
cells, which makes the discrete diffusion operator exactly
mass-conserving and second-order accurate for homogeneous Neumann
boundaries.  Time stepping is forward Euler.

The update of one time level depends only on the previous level, so a
step may be computed in any number of horizontal strips with bitwise
identical results; ``strips`` exists to make that property testable.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .model import Equilibrium, ModelParams, reaction_residual
from .rng import uniform_stream

__all__ = [
    "GridSpec",
    "FieldSet",
    "InitSpec",
    "DiagnosticsSeries",
    "MassBoundReport",
    "SimulationBlowup",
    "grid_integral",
    "init_fields",
    "cfl_limit",
    "step",
    "run",
    "radial_spectrum",
    "RadialSpectrum",
    "mass_bound_check",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform cell grid: nx*ny cells, spacings dx, dy; Lx = nx*dx, Ly = ny*dy."""

    nx: int
    ny: int
    dx: float = 1.0
    dy: float = 1.0

    def __post_init__(self):
        if self.nx < 8 or self.ny < 8:
            raise ValueError("need nx, ny >= 8")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError("need dx, dy > 0")

    @property
    def Lx(self) -> float:
        return self.nx * self.dx

    @property
    def Ly(self) -> float:
        return self.ny * self.dy

    @property
    def area(self) -> float:
        return self.Lx * self.Ly

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy


class FieldSet:
    """The four scalar fields at one time level, stored as one (4, ny, nx) array."""

    __slots__ = ("w", "time")

    def __init__(self, w: np.ndarray, time: float = 0.0):
        w = np.asarray(w, dtype=float)
        if w.ndim != 3 or w.shape[0] != 4:
            raise ValueError("expected an array of shape (4, ny, nx)")
        self.w = w
        self.time = float(time)

    @property
    def u1(self) -> np.ndarray:
        return self.w[0]

    @property
    def u2(self) -> np.ndarray:
        return self.w[1]

    @property
    def v1(self) -> np.ndarray:
        return self.w[2]

    @property
    def v2(self) -> np.ndarray:
        return self.w[3]

    def copy(self) -> "FieldSet":
        return FieldSet(self.w.copy(), self.time)


@dataclass(frozen=True)
class InitSpec:
    """Perturbed-equilibrium initial data.

    A single random matrix psi with entries uniform on [0, noise_scale)
    is drawn from the deterministic generator (:mod:`turing_lab.rng`,
    row-major, x fastest) and added to every field with per-field signs:
    by default u1 and v2 are lowered, u2 and v1 raised.  The same seed
    always reproduces the same fields bit for bit.
    """

    base: Equilibrium
    amplitude: float = 2e-4
    noise_scale: float = 200.0
    seed: int = 1
    signs: tuple[float, float, float, float] = (-1.0, 1.0, 1.0, -1.0)


class SimulationBlowup(RuntimeError):
    """NaN/Inf or a strongly negative entry appeared: the scheme lost stability."""

    def __init__(self, message: str, time: float, field_index: int, cell: tuple[int, int]):
        super().__init__(message)
        self.time = time
        self.field_index = field_index
        self.cell = cell


def grid_integral(values: np.ndarray, g: GridSpec) -> float:
    """Integral of a cell-centered field over the domain (midpoint rule).

    On this grid the midpoint rule is the second-order quadrature that
    matches the scheme: it weights every cell equally, so it reproduces
    the exactly conserved discrete mass.
    """
    return float(values.sum()) * g.cell_area


def init_fields(g: GridSpec, s: InitSpec) -> FieldSet:
    """Build the perturbed initial fields on grid ``g``."""
    if not np.all(np.isfinite(s.base.state)):
        raise ValueError("base equilibrium must be finite")
    if s.amplitude < 0 or s.noise_scale < 0:
        raise ValueError("amplitude and noise_scale must be nonnegative")
    positive = [c for c in s.base.state if c > 0]
    if positive and s.amplitude * s.noise_scale > 0.5 * min(positive):
        warnings.warn(
            "perturbation amplitude*noise_scale is not small against the "
            "smallest positive equilibrium component",
            stacklevel=2,
        )
    psi = (s.noise_scale * uniform_stream(s.seed, g.nx * g.ny)).reshape(g.ny, g.nx)
    w = np.empty((4, g.ny, g.nx))
    for k, (base_k, sign_k) in enumerate(zip(s.base.state, s.signs)):
        w[k] = base_k + sign_k * s.amplitude * psi
    if w.min() < 0:
        k, j, i = np.unravel_index(int(np.argmin(w)), w.shape)
        raise ValueError(
            f"initial field {k} is negative at cell ({j}, {i}); "
            "reduce amplitude or noise_scale"
        )
    return FieldSet(w, 0.0)


def _diffusion_row_sums(p: ModelParams) -> float:
    # max over the four equations of the summed |diffusion coefficients|
    return max(p.d11 + p.d12, p.d21 + p.d22, p.d3, p.d4)


def cfl_limit(p: ModelParams, g: GridSpec, safety: float = 0.9) -> float:
    """Largest dt accepted by the (conservative) explicit-stability guard.

    Requires dt * (2/dx^2 + 2/dy^2) * R <= safety with R the maximum over
    equations of the sum of absolute diffusion coefficients in that
    equation.  This is a heuristic envelope for the coupled scheme, not a
    sharp bound; ``step(..., unsafe=True)`` bypasses it.
    """
    rate = (2.0 / g.dx**2 + 2.0 / g.dy**2) * _diffusion_row_sums(p)
    return safety / rate


def _advance(p, w, P, out, dt, inv_dx2, inv_dy2, rows: slice) -> None:
    """Write the forward-Euler update of row block ``rows`` into ``out``.

    ``P`` is the previous level padded by one mirror ghost cell on every
    side; reads are confined to ``P``, writes to disjoint row blocks of
    ``out``, so any partition of the rows yields identical bytes.
    """
    j0, j1 = rows.start, rows.stop
    wb = w[:, j0:j1, :]
    center = P[:, j0 + 1 : j1 + 1, :]
    L = (center[:, :, :-2] - 2.0 * wb + center[:, :, 2:]) * inv_dx2 + (
        P[:, j0 : j1, 1:-1] - 2.0 * wb + P[:, j0 + 2 : j1 + 2, 1:-1]
    ) * inv_dy2
    u1, u2, v1, v2 = wb
    out[0, j0:j1] = u1 + dt * (
        p.d11 * L[0] + p.d12 * L[2] + u1 * (p.sigma1 - p.lambda1 * u1 + p.eta1 * u2)
    )
    out[1, j0:j1] = u2 + dt * (
        p.d21 * L[1] - p.d22 * L[3] + u2 * (p.sigma2 - p.lambda2 * u2 - p.eta2 * u1)
    )
    out[2, j0:j1] = v1 + dt * (p.d3 * L[2] + p.a1 * u2 - p.b1 * v1)
    out[3, j0:j1] = v2 + dt * (p.d4 * L[3] + p.a2 * u1 - p.b2 * v2)


# Largest undershoot the positivity floor will absorb; anything deeper is
# treated as a genuine loss of stability even when the floor is active.
# Physical undershoots at the reference resolutions measure 1e-5..1e-3
# per step; true instabilities blow through this within a step or two
# (and diverge on the positive side, which the NaN/Inf check catches).
FLOOR_LIMIT = 1e-2


def step(
    p: ModelParams,
    f: FieldSet,
    dt: float,
    g: GridSpec,
    strips: int = 1,
    unsafe: bool = False,
    positivity_floor: bool = False,
    floor_log: list | None = None,
) -> FieldSet:
    """One forward-Euler update of all four fields.

    u1 gains d11*Lap(u1) + d12*Lap(v1), u2 gains d21*Lap(u2) - d22*Lap(v2),
    the signals diffuse with d3, d4; reactions are pointwise.  Aborts with
    :class:`SimulationBlowup` on NaN/Inf or any entry below -1e-6.

    ``positivity_floor`` raises entries the update pushed into
    (-FLOOR_LIMIT, 0) back to 0 and appends (time, count, worst, raised
    mass) to ``floor_log``.  The scheme is not positivity-preserving, and
    in the pattern-forming regimes the prey field is provably driven
    through zero at any practical resolution (after which its logistic
    term diverges), so saturated-pattern experiments need the floor; it
    stays off by default, and entries at or below -FLOOR_LIMIT abort even
    when it is on.
    """
    if not unsafe and dt > cfl_limit(p, g) * (1 + 1e-12):
        raise ValueError(
            f"dt={dt} exceeds the stability guard {cfl_limit(p, g):.6g}; "
            "pass unsafe=True to override"
        )
    ny = g.ny
    strips = max(1, min(int(strips), ny))
    P = np.pad(f.w, ((0, 0), (1, 1), (1, 1)), mode="edge")
    out = np.empty_like(f.w)
    inv_dx2, inv_dy2 = 1.0 / g.dx**2, 1.0 / g.dy**2
    bounds = np.linspace(0, ny, strips + 1, dtype=int)
    for j0, j1 in zip(bounds[:-1], bounds[1:]):
        if j1 > j0:
            _advance(p, f.w, P, out, dt, inv_dx2, inv_dy2, slice(int(j0), int(j1)))

    t_new = f.time + dt
    if positivity_floor:
        lo = out.min()
        if -FLOOR_LIMIT < lo < 0.0:
            mask = out < 0.0
            if floor_log is not None:
                raised = -float(out[mask].sum()) * g.cell_area
                floor_log.append((t_new, int(mask.sum()), float(lo), raised))
            out[mask] = 0.0

    lo, hi = out.min(), out.max()
    if not (np.isfinite(lo) and np.isfinite(hi) and lo >= -1e-6):
        bad = ~np.isfinite(out) | (out < -1e-6)
        k, j, i = np.unravel_index(int(np.argmax(bad)), out.shape)
        raise SimulationBlowup(
            f"field {k} lost stability at t={t_new:.6g}, cell ({j}, {i}): "
            f"value {out[k, j, i]!r}",
            t_new,
            int(k),
            (int(j), int(i)),
        )
    return FieldSet(out, t_new)


_FIELD_NAMES = ("u1", "u2", "v1", "v2")


@dataclass
class DiagnosticsSeries:
    """Per-sample scalar diagnostics of a run.

    Columns: time; min/max/mean of each field; masses of u1 and u2;
    squared L2 distance of each field to the reference equilibrium;
    spatial standard deviation of u1; optional energy value and squared
    distance sum from the attached probe (NaN when tracking is off);
    cumulative count of floored cells and mass raised by the positivity
    floor (zero when the floor is off or never engaged).
    """

    reference: Equilibrium
    times: list = dataclass_field(default_factory=list)
    mins: list = dataclass_field(default_factory=list)
    maxes: list = dataclass_field(default_factory=list)
    means: list = dataclass_field(default_factory=list)
    mass_u1: list = dataclass_field(default_factory=list)
    mass_u2: list = dataclass_field(default_factory=list)
    l2sq: list = dataclass_field(default_factory=list)
    std_u1: list = dataclass_field(default_factory=list)
    energy: list = dataclass_field(default_factory=list)
    energy_f: list = dataclass_field(default_factory=list)
    floored_cells: list = dataclass_field(default_factory=list)
    floored_mass: list = dataclass_field(default_factory=list)

    def record(
        self, f: FieldSet, g: GridSpec, probe=None, floored=(0, 0.0)
    ) -> None:
        self.times.append(f.time)
        self.mins.append(f.w.min(axis=(1, 2)))
        self.maxes.append(f.w.max(axis=(1, 2)))
        self.means.append(f.w.mean(axis=(1, 2)))
        self.mass_u1.append(grid_integral(f.u1, g))
        self.mass_u2.append(grid_integral(f.u2, g))
        ref = self.reference.state
        self.l2sq.append(
            [grid_integral((f.w[k] - ref[k]) ** 2, g) for k in range(4)]
        )
        self.std_u1.append(float(f.u1.std()))
        if probe is not None:
            e_val, f_val = probe(f)
            self.energy.append(e_val)
            self.energy_f.append(f_val)
        else:
            self.energy.append(np.nan)
            self.energy_f.append(np.nan)
        self.floored_cells.append(int(floored[0]))
        self.floored_mass.append(float(floored[1]))

    def arrays(self) -> dict[str, np.ndarray]:
        """Column name -> 1D array, in the documented CSV order."""
        cols: dict[str, np.ndarray] = {"t": np.asarray(self.times)}
        mins, maxes, means = (np.asarray(x) for x in (self.mins, self.maxes, self.means))
        for k, name in enumerate(_FIELD_NAMES):
            cols[f"{name}_min"] = mins[:, k]
            cols[f"{name}_max"] = maxes[:, k]
            cols[f"{name}_mean"] = means[:, k]
        cols["mass_u1"] = np.asarray(self.mass_u1)
        cols["mass_u2"] = np.asarray(self.mass_u2)
        l2 = np.asarray(self.l2sq)
        for k, name in enumerate(_FIELD_NAMES):
            cols[f"l2sq_{name}"] = l2[:, k]
        cols["std_u1"] = np.asarray(self.std_u1)
        cols["lyapunov_E"] = np.asarray(self.energy)
        cols["lyapunov_f"] = np.asarray(self.energy_f)
        cols["floored_cells"] = np.asarray(self.floored_cells)
        cols["floored_mass"] = np.asarray(self.floored_mass)
        return cols


def run(
    p: ModelParams,
    g: GridSpec,
    s: InitSpec,
    dt: float,
    t_end: float,
    sample_every: int = 100,
    snapshot_times: tuple[float, ...] = (),
    reference: Equilibrium | None = None,
    energy_probe=None,
    strips: int = 1,
    unsafe: bool = False,
    positivity_floor: bool = False,
) -> tuple[FieldSet, DiagnosticsSeries, list[tuple[float, FieldSet]]]:
    """March the system to ``t_end`` collecting diagnostics and snapshots.

    Diagnostics are recorded at t = 0, every ``sample_every`` steps and at
    the final step.  Snapshots are taken at the step nearest each
    requested time.  ``energy_probe`` is an optional callable
    ``FieldSet -> (E, f)`` evaluated with each diagnostics record (see
    :mod:`turing_lab.lyapunov`).  ``positivity_floor`` is required for
    saturated-pattern experiments (see :func:`step`); its activity is
    accounted in the diagnostics.  ``t_end = 0`` returns the initial
    fields and a single record.
    """
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")
    if reaction_residual(p, s.base.state) >= 1e-12:
        raise ValueError("init base state is not an equilibrium of these parameters")
    n_steps = int(round(t_end / dt)) if t_end > 0 else 0
    snap_steps: dict[int, list[float]] = {}
    for t_req in snapshot_times:
        k = min(n_steps, max(0, int(round(t_req / dt))))
        snap_steps.setdefault(k, []).append(float(t_req))

    f = init_fields(g, s)
    series = DiagnosticsSeries(reference if reference is not None else s.base)
    series.record(f, g, energy_probe)
    snapshots = [(t_req, f.copy()) for t_req in snap_steps.get(0, [])]
    floor_log: list = []
    floored_cells, floored_mass = 0, 0.0
    for k in range(1, n_steps + 1):
        f = step(
            p, f, dt, g, strips=strips, unsafe=unsafe,
            positivity_floor=positivity_floor, floor_log=floor_log,
        )
        f.time = k * dt  # avoid accumulated time rounding
        if floor_log:
            for _, count, _, raised in floor_log:
                floored_cells += count
                floored_mass += raised
            floor_log.clear()
        if k % sample_every == 0 or k == n_steps:
            series.record(f, g, energy_probe, floored=(floored_cells, floored_mass))
        for t_req in snap_steps.get(k, []):
            snapshots.append((t_req, f.copy()))
    return f, series, snapshots


@dataclass(frozen=True)
class RadialSpectrum:
    """Binned cosine-mode power of one field.

    ``k2[i]`` is the squared wavenumber at the center of bin i and
    ``power[i]`` the summed mode power falling into it; ``dominant``
    indexes the strongest bin.
    """

    k2: np.ndarray
    power: np.ndarray
    dominant: int

    @property
    def dominant_k2(self) -> float:
        return float(self.k2[self.dominant])

    @property
    def bin_width_k(self) -> float:
        if len(self.k2) > 1:
            return float(np.sqrt(self.k2[1]) - np.sqrt(self.k2[0]))
        return 0.0


def radial_spectrum(values: np.ndarray, g: GridSpec) -> RadialSpectrum:
    """Neumann-consistent radial power spectrum of a cell-centered field.

    The mean is removed and the field expanded in the cosine modes
    cos(m pi x / Lx) cos(n pi y / Ly) (the even mirror extension that the
    no-flux walls imply; a periodic FFT would misassign half-wavelength
    modes).  Mode (m, n) carries squared wavenumber
    k^2 = pi^2 (m^2/Lx^2 + n^2/Ly^2); power is summed over rings of
    width pi/max(Lx, Ly) in k.
    """
    from scipy.fft import dctn

    if not np.all(np.isfinite(values)):
        raise ValueError("field must be finite")
    centered = values - values.mean()
    # DCT-II, orthonormalized so coefficient^2 is mode power
    coef = dctn(centered, type=2, norm="ortho")
    power2d = coef**2
    ny, nx = values.shape
    kx = np.pi * np.arange(nx) / g.Lx
    ky = np.pi * np.arange(ny) / g.Ly
    kmag = np.sqrt(kx[None, :] ** 2 + ky[:, None] ** 2)
    dk = np.pi / max(g.Lx, g.Ly)
    ring = np.rint(kmag / dk).astype(int)
    n_bins = int(ring.max()) + 1
    power = np.bincount(ring.ravel(), weights=power2d.ravel(), minlength=n_bins)
    k2 = (np.arange(n_bins) * dk) ** 2
    dominant = int(np.argmax(power))
    return RadialSpectrum(k2, power, dominant)


@dataclass(frozen=True)
class MassBoundReport:
    """Outcome of the integral-bound check on a diagnostics series.

    ``u2_bound`` caps the prey mass by max(initial mass, sigma2*|Omega|/lambda2);
    ``combined_bound`` caps mass(u1) + (eta1/eta2) * mass(u2) by the
    analogous max of its initial value and
    (|Omega|/4) ((sigma1+1)^2/lambda1 + eta1 (sigma2+1)^2 / (eta2 lambda2)).
    Ratios are worst observed value / bound; ok means ratio <= 1 + 1e-6.
    """

    u2_bound: float
    u2_worst_ratio: float
    u2_ok: bool
    combined_bound: float
    combined_worst_ratio: float
    combined_ok: bool

    @property
    def all_ok(self) -> bool:
        return self.u2_ok and self.combined_ok


def mass_bound_check(d: DiagnosticsSeries, p: ModelParams, g: GridSpec) -> MassBoundReport:
    """Verify the two a priori mass bounds over every recorded sample."""
    if not d.times:
        raise ValueError("diagnostics series is empty")
    m1 = np.asarray(d.mass_u1)
    m2 = np.asarray(d.mass_u2)
    area = g.area
    slack = 1.0 + 1e-6

    u2_bound = max(m2[0], p.sigma2 * area / p.lambda2)
    u2_ratio = float(np.max(m2) / u2_bound) if u2_bound > 0 else 0.0

    combined = m1 + (p.eta1 / p.eta2) * m2
    ceiling = 0.25 * area * (
        (p.sigma1 + 1.0) ** 2 / p.lambda1
        + p.eta1 * (p.sigma2 + 1.0) ** 2 / (p.eta2 * p.lambda2)
    )
    combined_bound = max(combined[0], ceiling)
    combined_ratio = float(np.max(combined) / combined_bound)

    return MassBoundReport(
        u2_bound,
        u2_ratio,
        u2_ratio <= slack,
        combined_bound,
        combined_ratio,
        combined_ratio <= slack,
    )
