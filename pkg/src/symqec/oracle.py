"""Dense numeric state-vector simulator used as ground truth.

Independence: gate semantics here are plain complex matrices and index
permutations written directly against numpy.  Nothing in this module calls
the symbolic rewrite engine (``symqec.gates.apply_*``) or reads a
``GateRule``'s images for a built-in gate.  Keep it that way; the
differential tests are only meaningful while the two paths stay separate.

Index convention: amplitude index is the ket read as a big-endian binary
number, so qubit 1 is the most significant bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

# apply_circuit is only the path under test in cross_check.
from .gates import CNot, Gate, Toffoli, apply_circuit
from .state import State

__all__ = [
    "DenseState",
    "GATE_MATRICES",
    "ket_index",
    "index_ket",
    "to_dense",
    "dense_apply",
    "dense_run",
    "dense_measure_first",
    "dense_error",
    "dense_pipeline",
    "CrossCheckReport",
    "cross_check",
]

_S = 1.0 / np.sqrt(2.0)

GATE_MATRICES = {
    "H": np.array([[_S, _S], [_S, -_S]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Ypaper": np.array([[-1j, 0], [0, 1j]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "Id": np.eye(2, dtype=complex),
}


@dataclass
class DenseState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (2 ** self.n,):
            raise ValueError(f"expected {2 ** self.n} amplitudes, got {self.amplitudes.shape}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> DenseState:
        return DenseState(self.n, self.amplitudes.copy())


def ket_index(bits: Sequence[int]) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def index_ket(index: int, n: int) -> tuple[int, ...]:
    if not 0 <= index < 2 ** n:
        raise ValueError(f"index {index} out of range for {n} qubits")
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


def to_dense(psi: State, env: Mapping[str, complex]) -> DenseState:
    amps = np.zeros(2 ** psi.n, dtype=complex)
    for ket, c in psi.terms.items():
        amps[ket_index(ket)] = c.evaluate(env)
    return DenseState(psi.n, amps)


def _gate_matrix(op: Gate) -> np.ndarray:
    if op.rule is None:
        return GATE_MATRICES[op.name]
    # Custom rules have no independent definition; evaluate their images.
    m = op.rule.scalar_matrix()
    if m is None:
        raise ValueError("cannot densify a gate with symbolic entries")
    return np.array([[complex(x) for x in row] for row in m], dtype=complex)


def _check(n: int, positions: Iterable[int]) -> None:
    for p in positions:
        if not 1 <= p <= n:
            raise IndexError(f"qubit position {p} outside 1..{n}")


def dense_apply(state: DenseState, op) -> DenseState:
    n = state.n
    _check(n, op.positions)
    if isinstance(op, Gate):
        u = _gate_matrix(op)
        i = op.target
        # Stride view: (left qubits, qubit i, right qubits).
        view = state.amplitudes.reshape(2 ** (i - 1), 2, 2 ** (n - i))
        out = np.einsum("ab,xby->xay", u, view)
        return DenseState(n, out.reshape(-1))
    idx = np.arange(2 ** n)

    def bit(p):
        return (idx >> (n - p)) & 1

    if isinstance(op, CNot):
        fire = bit(op.control) == 1
        mask = 1 << (n - op.target)
    elif isinstance(op, Toffoli):
        fire = (bit(op.control1) & bit(op.control2)) == 1
        mask = 1 << (n - op.target)
    else:
        raise TypeError(f"not a gate operation: {op!r}")
    dest = np.where(fire, idx ^ mask, idx)
    out = np.empty_like(state.amplitudes)
    out[dest] = state.amplitudes
    return DenseState(n, out)


def dense_run(state: DenseState, circuit) -> DenseState:
    for op in circuit:
        state = dense_apply(state, op)
    return state


def dense_measure_first(state: DenseState) -> DenseState:
    """Sum amplitudes over qubits 2..n, keeping qubit 1."""
    return DenseState(1, state.amplitudes.reshape(2, -1).sum(axis=1))


def dense_error(state: DenseState, position: int, coefficients: Sequence[complex],
                y_gate: str = "Y") -> DenseState:
    """``cI·ψ + cX·Xψ + cZ·Zψ + cY·Yψ`` on qubit ``position``."""
    out = np.zeros_like(state.amplitudes)
    for c, name in zip(coefficients, ("Id", "X", "Z", y_gate)):
        if c:
            out += c * dense_apply(state, Gate(name, position)).amplitudes
    return DenseState(state.n, out)


@dataclass
class CrossCheckReport:
    max_diff: float
    tol: float
    passed: bool
    seed: int | None = None

    def to_dict(self) -> dict:
        return {"max_diff": self.max_diff, "tol": self.tol, "pass": self.passed, "seed": self.seed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def cross_check(psi: State, circuit, env: Mapping[str, complex], tol: float = 1e-12,
                seed: int | None = None) -> CrossCheckReport:
    """Symbolic-then-evaluate versus evaluate-then-dense-simulate."""
    symbolic = to_dense(apply_circuit(psi, circuit), env).amplitudes
    dense = dense_run(to_dense(psi, env), circuit).amplitudes
    diff = float(np.max(np.abs(symbolic - dense))) if symbolic.size else 0.0
    return CrossCheckReport(diff, tol, diff < tol, seed)


def dense_pipeline(alpha: complex, beta: complex, width: int, encode, decode,
                   position: int | None = None,
                   coefficients: Sequence[complex] = (1, 0, 0, 0),
                   y_gate: str = "Y") -> DenseState:
    """Numeric twin of the symbolic pipeline: pad, encode, error, decode, discard."""
    amps = np.zeros(2 ** width, dtype=complex)
    amps[0] = alpha
    amps[2 ** (width - 1)] = beta
    state = dense_run(DenseState(width, amps), encode)
    if position is not None:
        state = dense_error(state, position, coefficients, y_gate)
    state = dense_run(state, decode)
    return dense_measure_first(state)
