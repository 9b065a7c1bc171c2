"""Supersymmetry of a 2D Pauli electron in time-dependent axially symmetric fields."""

from .aux_ode import AuxSolution, TimeContext, analytic_constant, context_at, normalize_wronskian, solve
from .fields import FieldProfile, PhysicalConfig, sample, vector_potential
from .grid import GridSpec, SpinorField, inner
from .operators import OperatorKind, apply
from .propagator import PropagationRun, propagate, run
from .solutions import EigenState, QuantumNumbers, eigenstate, pauli_residual, recommended_grid

__version__ = "0.1.0"
