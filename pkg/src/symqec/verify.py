"""Verification suites: exhaustive Pauli correction, bit-flip behaviour,
randomized symbolic-vs-dense differential runs, and the unitary-error phase
report.  Every report is a plain dict so it serializes deterministically.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .algebra import I, ONE, CoeffExpr, Scalar, sym
from .ecc import (CODES, PAULI_ERRORS, CodePipeline, ErrorSpec, data_state,
                  global_factor, run_pipeline)
from .gates import GATE_NAMES, CNot, Circuit, Gate, Toffoli
from .oracle import (DenseState, cross_check, dense_error, dense_pipeline, dense_run,
                     to_dense)
from .state import State, phase_equivalent

# Generic numeric data qubit for oracle-side checks (|α|² + |β|² = 1).
_ALPHA = 0.6
_BETA = 0.8j
_UNITS = ((ONE, 1), (-ONE, -1), (I, 1j), (-I, -1j))


def _parallel(out: np.ndarray, ref: np.ndarray, tol: float = 1e-9) -> complex | None:
    """``φ`` with ``out ≈ φ·ref``, or ``None``."""
    phi = np.vdot(ref, out) / np.vdot(ref, ref)
    if np.max(np.abs(out - phi * ref)) > tol or abs(phi) < tol:
        return None
    return complex(phi)


def oracle_phase(code: str | CodePipeline, position: int, pauli: str) -> complex | None:
    """Numeric factor a pure Pauli error leaves on the decoded data qubit."""
    pipe = CODES[code] if isinstance(code, str) else code
    slot, conv = PAULI_ERRORS[pauli]
    coeffs = [0, 0, 0, 0]
    coeffs[slot] = 1
    y_gate = "Y" if conv == "standard" else "Ypaper"
    out = dense_pipeline(_ALPHA, _BETA, pipe.width, pipe.encode, pipe.decode,
                         position, coeffs, y_gate).amplitudes
    return _parallel(out, np.array([_ALPHA, _BETA]))


def _exact_unit(phi: complex) -> Scalar:
    for exact, approx in _UNITS:
        if abs(phi - approx) < 1e-9:
            return exact
    raise ValueError(f"phase {phi} is not one of ±1, ±i")


def expected_factor(position: int, y_convention: str = "standard",
                    code: str | CodePipeline = "shor9") -> CoeffExpr:
    """``λ = a·φI + b·φX + c·φZ + d·φY`` with each ``φ`` taken from the oracle.

    Only meaningful when every single Pauli is corrected; raises otherwise.
    """
    y_name = "Y" if y_convention == "standard" else "Ypaper"
    names = ("I", "X", "Z", y_name)
    letters = "abcd"
    lam = CoeffExpr()
    for letter, name in zip(letters, names):
        phi = oracle_phase(code, position, name)
        if phi is None:
            raise ValueError(f"{name} at qubit {position} is not corrected")
        lam = lam + sym(f"{letter}{position}") * _exact_unit(phi)
    return lam


def pauli_suite(code: str | CodePipeline = "shor9",
                names: Sequence[str] = tuple(PAULI_ERRORS)) -> dict:
    """Every position × Pauli; symbolic phase equivalence plus oracle agreement."""
    pipe = CODES[code] if isinstance(code, str) else code
    psi = data_state()
    cases = []
    for i in range(1, pipe.width + 1):
        for name in names:
            out = run_pipeline(code=pipe, error=ErrorSpec.pauli(i, name))
            symbolic = phase_equivalent(out, psi)
            oracle = oracle_phase(pipe, i, name) is not None
            cases.append({"position": i, "pauli": name, "symbolic": symbolic,
                          "oracle": oracle, "pass": symbolic and oracle})
    return _summarize(cases)


def bitflip_suite() -> dict:
    """X errors are corrected exactly; a Z error on qubit 1 is not."""
    psi = data_state()
    cases = []
    for i in (1, 2, 3):
        out = run_pipeline(code="bitflip3", error=ErrorSpec.pauli(i, "X"))
        cases.append({"case": f"X{i}", "expect": "corrected",
                      "pass": out == psi and oracle_phase("bitflip3", i, "X") == 1})
    out = run_pipeline(code="bitflip3", error=ErrorSpec.pauli(1, "Z"))
    cases.append({"case": "Z1", "expect": "not corrected",
                  "pass": not phase_equivalent(out, psi)
                  and oracle_phase("bitflip3", 1, "Z") is None})
    return _summarize(cases)


def _summarize(cases: list[dict]) -> dict:
    failed = [c for c in cases if not c["pass"]]
    return {"cases": len(cases), "failed": len(failed),
            "first_failure": failed[0] if failed else None, "pass": not failed}


# --- randomized differential testing ---------------------------------------

_RANDOM_FACTORS = (
    Scalar(1), Scalar(-1), Scalar(0, 1), Scalar(0, 0, "1/2"),
    Scalar("1/2", "1/2"), Scalar("-1/3", 0, 0, 1),
)


def random_circuit(rng: np.random.Generator, n: int, max_gates: int = 40) -> Circuit:
    """Random circuit over the built-in gates, CNOT and (for n ≥ 3) Toffoli."""
    kinds = ["single", "cnot"] if n >= 2 else ["single"]
    if n >= 3:
        kinds.append("toffoli")
    ops = []
    for _ in range(int(rng.integers(0, max_gates + 1))):
        kind = kinds[int(rng.integers(len(kinds)))]
        pos = [int(p) + 1 for p in rng.permutation(n)[:3]]
        if kind == "single":
            ops.append(Gate(GATE_NAMES[int(rng.integers(len(GATE_NAMES)))], pos[0]))
        elif kind == "cnot":
            ops.append(CNot(pos[0], pos[1]))
        else:
            ops.append(Toffoli(pos[0], pos[1], pos[2]))
    return Circuit(ops)


def random_symbolic_state(rng: np.random.Generator, n: int, max_terms: int = 4) -> State:
    """A few kets, each weighted by its own symbol times an exact factor."""
    k = int(rng.integers(1, min(max_terms, 2 ** n) + 1))
    indices = rng.choice(2 ** n, size=k, replace=False)
    terms = []
    for j, idx in enumerate(sorted(int(x) for x in indices)):
        ket = tuple((idx >> (n - 1 - b)) & 1 for b in range(n))
        factor = _RANDOM_FACTORS[int(rng.integers(len(_RANDOM_FACTORS)))]
        terms.append((ket, sym(f"s{j}") * factor))
    return State(n, terms)


def random_env(rng: np.random.Generator, names) -> dict[str, complex]:
    """Uniform draws from the unit disk."""
    env = {}
    for name in sorted(names):
        r = math.sqrt(rng.random())
        theta = 2 * math.pi * rng.random()
        env[name] = complex(r * math.cos(theta), r * math.sin(theta))
    return env


def normalized_env(psi: State, env: dict[str, complex]) -> dict[str, complex]:
    """Rescale a binding so ``psi`` (linear in its symbols) has unit norm."""
    norm = to_dense(psi, env).norm()
    return {k: v / norm for k, v in env.items()} if norm else env


def differential_suite(seed: int = 0, cases: int = 100, max_qubits: int = 6,
                       max_gates: int = 40, tol: float = 1e-12) -> dict:
    rng = np.random.default_rng(seed)
    reports = []
    for k in range(cases):
        case_seed = int(rng.integers(2 ** 31))
        crng = np.random.default_rng(case_seed)
        n = int(crng.integers(1, max_qubits + 1))
        psi = random_symbolic_state(crng, n)
        circuit = random_circuit(crng, n, max_gates)
        env = normalized_env(psi, random_env(crng, psi.symbols()))
        rep = cross_check(psi, circuit, env, tol, seed=case_seed).to_dict()
        rep.update(case=k, n=n, gates=len(circuit))
        reports.append(rep)
    failed = [r for r in reports if not r["pass"]]
    return {"cases": cases, "failed": len(failed),
            "max_diff": max((r["max_diff"] for r in reports), default=0.0),
            "first_failure": failed[0] if failed else None, "pass": not failed}


# --- unitary error phase ----------------------------------------------------

_PAULI_BASIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
)


def haar_unitary(rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def pauli_coefficients(u: np.ndarray) -> tuple[complex, complex, complex, complex]:
    """``(a, b, c, d)`` with ``u = a·I + b·X + c·Z + d·Y``."""
    return tuple(complex(np.trace(p.conj().T @ u) / 2) for p in _PAULI_BASIS)


def unitary_phase_report(seed: int = 0, samples: int = 100, tol: float = 1e-10,
                         code: str = "shor9") -> dict:
    """Check ``||λ| - 1| < tol`` for random unitary errors ``aI + bX + cZ + dY``.

    ``λ`` is the factor the pipeline leaves on the data qubit, extracted
    symbolically once per position and then evaluated.  ``ancilla_norm`` is
    the norm of the full decoded register, reported alongside.
    """
    pipe = CODES[code]
    rng = np.random.default_rng(seed)
    psi = data_state()
    factors: dict[int, CoeffExpr] = {}
    rows = []
    for k in range(samples):
        u = haar_unitary(rng)
        i = int(rng.integers(1, pipe.width + 1))
        if i not in factors:
            out = run_pipeline(code=pipe, error=ErrorSpec.symbolic(i))
            lam = global_factor(out, psi)
            if lam is None:
                raise ValueError(f"pipeline output at qubit {i} is not a multiple of ψ")
            factors[i] = lam
        a, b, c, d = pauli_coefficients(u)
        env = {f"a{i}": a, f"b{i}": b, f"c{i}": c, f"d{i}": d}
        lam_abs = abs(factors[i].evaluate(env))
        amps = np.zeros(2 ** pipe.width, dtype=complex)
        amps[0], amps[2 ** (pipe.width - 1)] = _ALPHA, _BETA
        st = dense_run(DenseState(pipe.width, amps), pipe.encode)
        st = dense_run(dense_error(st, i, (a, b, c, d)), pipe.decode)
        rows.append({"sample": k, "position": i, "lambda_abs": lam_abs,
                     "deviation": abs(lam_abs - 1.0), "ancilla_norm": st.norm(),
                     "pass": abs(lam_abs - 1.0) < tol})
    failed = [r for r in rows if not r["pass"]]
    return {"samples": samples, "tol": tol, "failed": len(failed),
            "max_deviation": max(r["deviation"] for r in rows),
            "max_ancilla_norm_deviation": max(abs(r["ancilla_norm"] - 1.0) for r in rows),
            "first_failure": failed[0] if failed else None, "pass": not failed}


def verify_all(seed: int = 0, cases: int = 100,
               shor: CodePipeline | None = None) -> dict:
    """Aggregate report for the command-line ``verify`` command."""
    suites = {
        "shor9_pauli": pauli_suite(shor or CODES["shor9"]),
        "bitflip3": bitflip_suite(),
        "differential": differential_suite(seed, cases),
    }
    return {"seed": seed, "suites": suites,
            "pass": all(s["pass"] for s in suites.values())}
