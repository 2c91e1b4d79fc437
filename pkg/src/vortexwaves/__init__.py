"""Deep-water gravity waves coupled to point vortices.

Boundary-integral evolution of a periodized free surface in flattened
coordinates, Taylor-sign stability analysis for vortex-generated
configurations, and long-time diagnostics for the sinking mirror pair.
"""

from .grid import GridError, GridFunction, PeriodicGrid, as_values
from .spectral import (apply_multiplier, dealiased_product, flat_hilbert,
                       fourier_derivative, half_derivative, l2_norm,
                       real_line_quadrature, sobolev_norm)
from .curve import (ChordArcError, CurveTrace, chord_arc_constants,
                    periodized_point_distance)
from .singular import (CurveOperators, NearBoundaryError, SolveError,
                       cauchy_interior, commutator, curve_hilbert,
                       double_layer, adjoint_double_layer,
                       solve_second_kind)
from .vortices import (SymmetricPair, VortexSet, VortexStateError,
                       separations, vortex_acceleration, vortex_kernel,
                       vortex_kernel_cube, vortex_kernel_sq,
                       vortex_velocity)
from .taylor import (TaylorInputError, TaylorReport, a1_flat_closed_form,
                     a1_flat_general, a1_flat_quadrature, a1_general,
                     a1_pair_closed, a1_single_vortex_closed,
                     strong_taylor_criterion, sweep_pair,
                     sweep_single_vortex)
from .evolution import (EvolutionConfig, EvolutionHalt, InitialDataError,
                        SurfaceState, build_initial_data, compute_A,
                        compute_b, compute_Dt_b, evolve, evaluate_stage,
                        load_checkpoint, make_scaled_state, save_checkpoint,
                        step, symmetrize, symmetry_residual)
from .diagnostics import (DiagnosticsRecord, MonitorReport, cubic_fields,
                          cubic_residuals, energy_Es, energy_lagrangian,
                          longtime_monitors, quasilinear_at, record_for)
from .presets import ConfigError, ScenarioConfig, preset
from .runner import run_simulation, run_taylor_sweep, verify_suite

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
