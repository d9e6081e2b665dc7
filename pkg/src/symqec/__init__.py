"""Exact symbolic simulation of small quantum error-correcting circuits."""

from .algebra import (I, INV_SQRT2, ONE, SQRT2, ZERO, CoeffExpr, Scalar, UnboundSymbolError,
                      as_coeff, coeff_eval, sym, symbols)
from .ecc import (CODES, ErrorSpec, apply_error, bitflip_decode, bitflip_encode, data_state,
                  enlarge, global_factor, measure_first, run_pipeline, shor_decode,
                  shor_encode, trace_pipeline)
from .gates import (CNot, Circuit, Gate, GateRule, Toffoli, apply_circuit, apply_cnot,
                    apply_op, apply_single, apply_toffoli, builtin_gate)
from .parser import CircuitSyntaxError, parse_circuit
from .state import State, e, ket_state, phase_equivalent, states_equal, superpose, tensor

__version__ = "0.1.0"
