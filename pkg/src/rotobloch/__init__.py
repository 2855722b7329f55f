"""Rotational Bloch oscillations of laser-kicked linear molecules.

Periodic kick trains with a small timing offset from the rotational
revival make the angular-momentum ladder act like a tilted lattice:
population climbs, turns around, and oscillates instead of spreading.
This package propagates the full quantum dynamics, the reduced
nearest-neighbour lattice models, and the semi-classical trajectories,
and ships a CLI for the standard sweeps.
"""

__version__ = "0.1.0"

from .analysis import (
    ConfigError,
    ExperimentConfig,
    NoExtremumError,
    PeriodEstimate,
    Table,
    build_config,
    extract_period,
    parse_config_file,
    propagate_thermal_ensemble,
    run_alignment_series,
    run_period_sweep,
    run_populations,
    run_semiclassical_sweep,
    serialize_config,
    write_table,
)
from .kernels import BACKEND, backend_name
from .lattice import (
    K_TRAVERSAL,
    LatticeState,
    SemiClassicalTrajectory,
    dispersion,
    semiclassical_period,
    semiclassical_trajectory,
    tb_map_step,
    tb_ode_evolve,
)
from .observables import (
    AlignmentSeries,
    alignment_expectation,
    alignment_series,
    dense_trace,
    population_alignment,
)
from .propagator import (
    LeakageError,
    PulseTrainSpec,
    StroboscopicRecord,
    kick_operator,
    mean_j,
    population_history,
    propagate_train,
)
from .rotor import (
    BasisWindow,
    MoleculeSpec,
    RotationalState,
    ThermalMember,
    cos2_matrix_element,
    free_propagate,
    thermal_ensemble,
)

__all__ = [
    "AlignmentSeries",
    "BACKEND",
    "BasisWindow",
    "ConfigError",
    "ExperimentConfig",
    "K_TRAVERSAL",
    "LatticeState",
    "LeakageError",
    "MoleculeSpec",
    "NoExtremumError",
    "PeriodEstimate",
    "PulseTrainSpec",
    "RotationalState",
    "SemiClassicalTrajectory",
    "StroboscopicRecord",
    "Table",
    "ThermalMember",
    "__version__",
    "alignment_expectation",
    "alignment_series",
    "backend_name",
    "build_config",
    "cos2_matrix_element",
    "dense_trace",
    "dispersion",
    "extract_period",
    "free_propagate",
    "kick_operator",
    "mean_j",
    "parse_config_file",
    "population_alignment",
    "population_history",
    "propagate_thermal_ensemble",
    "propagate_train",
    "run_alignment_series",
    "run_period_sweep",
    "run_populations",
    "run_semiclassical_sweep",
    "semiclassical_period",
    "semiclassical_trajectory",
    "serialize_config",
    "tb_map_step",
    "tb_ode_evolve",
    "thermal_ensemble",
    "write_table",
]
