"""Pulse synthesis and certification for driven two-level and two-qubit systems."""

from .errors import (DimensionError, HermiticityError, IntervalError, NotStabilizable,
                     ParameterError, QstabError, SubspaceError, TimeBudgetInfeasible)
from .propagation import Trajectory, oracle_propagate, propagate
from .pulses import (ControlPulse, Envelope, Resonant, Silence, StaticHold,
                     eval_pulse, pulse_energy)
from .stability import (RegionGrid, check_point_stabilizable, hold_controls,
                        region_grid, single_axis_stabilizable_phases)
from .states import (BlochPoint, SystemParams, bloch_to_state, effective_hamiltonian,
                     fidelity, is_equilibrium, state_to_bloch)
from .synthesis import (ControlClass, SynthesisResult, feasible_k_time_energy,
                        synth_circle_continuous, synth_circle_time_energy,
                        synth_circle_within_budget, synth_point_hold,
                        transition_time_bound)
from .twoqubit import (LiftedPulse, LogicalFrame, build_logical_frame, concurrence,
                       em_membership, lift_logical_controls, logical_bloch_state,
                       synth_entangler)
from .verification import (CheckRecord, VerificationReport, check_bounds,
                           check_circle_residence, check_continuity, verify_synthesis)

__version__ = "0.1.0"

__all__ = [
    "BlochPoint", "SystemParams", "bloch_to_state", "state_to_bloch", "fidelity",
    "effective_hamiltonian", "is_equilibrium",
    "ControlPulse", "Resonant", "StaticHold", "Envelope", "Silence",
    "eval_pulse", "pulse_energy",
    "Trajectory", "propagate", "oracle_propagate",
    "ControlClass", "SynthesisResult", "synth_point_hold", "synth_circle_continuous",
    "synth_circle_within_budget", "synth_circle_time_energy",
    "transition_time_bound", "feasible_k_time_energy",
    "RegionGrid", "check_point_stabilizable", "hold_controls",
    "single_axis_stabilizable_phases", "region_grid",
    "LogicalFrame", "LiftedPulse", "build_logical_frame", "lift_logical_controls",
    "logical_bloch_state", "concurrence", "em_membership", "synth_entangler",
    "CheckRecord", "VerificationReport", "check_bounds", "check_continuity",
    "check_circle_residence", "verify_synthesis",
    "QstabError", "DimensionError", "HermiticityError", "ParameterError",
    "IntervalError", "NotStabilizable", "TimeBudgetInfeasible", "SubspaceError",
]
