"""Predator-prey dynamics with two chemical signals and cross-diffusion.

Subpackages:

* :mod:`turing_lab.model` — parameters, reaction terms, equilibria,
  stability-regime classification;
* :mod:`turing_lab.stability` — Jacobians, dispersion relations, the
  instability quartic and unstable wavenumber bands;
* :mod:`turing_lab.ode` — non-spatial RK4 integration and nullclines;
* :mod:`turing_lab.pde` — explicit finite-difference simulation on a 2D
  no-flux rectangle, diagnostics and spectra;
* :mod:`turing_lab.lyapunov` — energy functionals and decay-rate fits;
* :mod:`turing_lab.presets` — canonical parameter sets and regression
  reference bands;
* :mod:`turing_lab.cli` — configuration files and the ``turing-lab``
  command.
"""

from .model import (
    Equilibrium,
    EquilibriumKind,
    ModelParams,
    Regime,
    RegimeReport,
    classify_regime,
    coexistence_equilibrium,
    equilibria,
    reaction_rhs,
    validate_params,
)
from .ode import Trajectory, integrate, nullclines
from .pde import (
    DiagnosticsSeries,
    FieldSet,
    GridSpec,
    InitSpec,
    init_fields,
    mass_bound_check,
    radial_spectrum,
    run,
    step,
)
from .stability import (
    DispersionScan,
    QuarticCoeffs,
    dispersion_eigenvalues,
    dispersion_scan,
    h_of_k2,
    jacobian_at,
    quartic_coeffs,
    quartic_roots,
    quartic_roots_closed_form,
    self_diffusion_stable,
    unstable_band,
)
from .lyapunov import E1, E2, LyapunovConfig, decay_report, f1, f2

__version__ = "0.1.0"
