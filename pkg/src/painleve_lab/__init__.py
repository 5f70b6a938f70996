"""Special monodromy-solvable Painleve solutions: series, symmetries, Lax pairs, monodromy."""

from .backlund import apply_to_series, apply_word, generators, verify_relations
from .catalog import (build_solution, classical_solution, existence_check, identify,
                      list_solutions, pair_error, solution_id)
from .errors import (ConvergenceError, ExistenceError, PainleveLabError, ParameterError, PoleError,
                     ResonanceError, StepSizeError, UnsupportedRetag)
from .lax import (RationalMatrix, build_pair, fuchs_transform_check, integrability_residual,
                  reduce_at_limit)
from .monodromy import (closed_form_monodromy, integrate_loop, loop_around, loop_at_infinity,
                        numerical_monodromy_p6, trace_invariants, verify_cyclic)
from .series import TruncatedSeries
from .systems import K, PainleveKind, ParamSet, PhaseState, convert_params, hamiltonian_rhs

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "ExistenceError", "K", "PainleveKind", "PainleveLabError", "ParamSet",
    "ParameterError", "PhaseState", "PoleError", "RationalMatrix", "ResonanceError",
    "StepSizeError", "TruncatedSeries", "UnsupportedRetag", "apply_to_series", "apply_word",
    "build_pair", "build_solution", "classical_solution", "closed_form_monodromy",
    "convert_params", "existence_check", "fuchs_transform_check", "generators",
    "hamiltonian_rhs", "identify", "integrability_residual", "integrate_loop", "list_solutions",
    "loop_around", "loop_at_infinity", "numerical_monodromy_p6", "pair_error", "reduce_at_limit",
    "solution_id", "trace_invariants", "verify_cyclic", "verify_relations",
]
