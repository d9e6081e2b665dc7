"""Shor nine-qubit and three-qubit bit-flip code pipelines.

The pipeline is: basis/superposed data qubit -> pad with zero ancillas ->
encode -> one-qubit error ``cI·I + cX·X + cZ·Z + cY·Y`` -> decode -> discard
ancillas by summing coefficients over them.  Decoding is coherent; there is
no syndrome measurement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import CoeffExpr, as_coeff, sym
from .gates import CNot, Circuit, Gate, Toffoli, apply_circuit, apply_single
from .state import State, ket_state, superpose

__all__ = [
    "CN",
    "H",
    "T",
    "SHOR_ENCODE",
    "SHOR_DECODE",
    "BITFLIP_ENCODE",
    "BITFLIP_DECODE",
    "CodePipeline",
    "CODES",
    "ErrorSpec",
    "PAULI_ERRORS",
    "enlarge",
    "shor_encode",
    "shor_decode",
    "bitflip_encode",
    "bitflip_decode",
    "apply_error",
    "measure_first",
    "NotFactorizableError",
    "data_state",
    "trace_pipeline",
    "run_pipeline",
    "global_factor",
]


# Compact constructors: target first, then control(s).
def CN(i: int, j: int) -> CNot:
    """``CN[i, j]``: bit ``i`` is XORed with bit ``j``."""
    return CNot(target=i, control=j)


def T(i: int, j: int, k: int) -> Toffoli:
    """``T[i, j, k]``: bit ``k`` is XORed with ``x_i·x_j``."""
    return Toffoli(target=k, control1=i, control2=j)


def H(i: int) -> Gate:
    return Gate("H", i)


SHOR_ENCODE = Circuit([
    CN(4, 1), CN(7, 1),
    H(1), H(4), H(7),
    CN(2, 1), CN(3, 1),
    CN(5, 4), CN(6, 4),
    CN(8, 7), CN(9, 7),
])

SHOR_DECODE = Circuit([
    CN(2, 1), CN(3, 1), T(3, 2, 1),
    CN(5, 4), CN(6, 4), T(6, 5, 4),
    CN(8, 7), CN(9, 7), T(9, 8, 7),
    H(1), H(4), H(7),
    CN(4, 1), CN(7, 1), T(7, 4, 1),
])

BITFLIP_ENCODE = Circuit([CN(2, 1), CN(3, 1)])
BITFLIP_DECODE = Circuit([CN(2, 1), CN(3, 1), T(3, 2, 1)])


@dataclass(frozen=True)
class CodePipeline:
    name: str
    width: int
    encode: Circuit
    decode: Circuit


CODES = {
    "shor9": CodePipeline("shor9", 9, SHOR_ENCODE, SHOR_DECODE),
    "bitflip3": CodePipeline("bitflip3", 3, BITFLIP_ENCODE, BITFLIP_DECODE),
}


def _code(code: str | CodePipeline) -> CodePipeline:
    if isinstance(code, CodePipeline):
        return code
    try:
        return CODES[code]
    except KeyError:
        raise ValueError(f"unknown code {code!r}; expected one of {sorted(CODES)}") from None


def enlarge(psi: State, n_total: int) -> State:
    """Pad every ket with zeros on the right up to ``n_total`` qubits."""
    if n_total < psi.n:
        raise ValueError(f"cannot enlarge a {psi.n}-qubit state to {n_total} qubits")
    pad = (0,) * (n_total - psi.n)
    return State._raw(n_total, {ket + pad: c for ket, c in psi.terms.items()})


def _require_width(psi: State, n: int, what: str) -> None:
    if psi.n != n:
        raise ValueError(f"{what} expects a {n}-qubit state, got {psi.n}")


def shor_encode(psi9: State) -> State:
    _require_width(psi9, 9, "shor_encode")
    return apply_circuit(psi9, SHOR_ENCODE)


def shor_decode(psi9: State) -> State:
    _require_width(psi9, 9, "shor_decode")
    return apply_circuit(psi9, SHOR_DECODE)


def bitflip_encode(psi3: State) -> State:
    _require_width(psi3, 3, "bitflip_encode")
    return apply_circuit(psi3, BITFLIP_ENCODE)


def bitflip_decode(psi3: State) -> State:
    _require_width(psi3, 3, "bitflip_decode")
    return apply_circuit(psi3, BITFLIP_DECODE)


Y_CONVENTIONS = ("standard", "paper")

# Pure single-Pauli errors: name -> (coefficient slot, y convention).
PAULI_ERRORS = {
    "I": (0, "standard"),
    "X": (1, "standard"),
    "Z": (2, "standard"),
    "Y": (3, "standard"),
    "Ypaper": (3, "paper"),
}


@dataclass(frozen=True)
class ErrorSpec:
    """Error ``cI·I + cX·X + cZ·Z + cY·Y`` on qubit ``position``.

    With ``coefficients=None`` the fresh symbols ``a<i>, b<i>, c<i>, d<i>``
    are used.  ``y_convention`` picks Pauli Y (``"standard"``) or the
    alternate ``-i·Z`` rule (``"paper"``).
    """

    position: int
    coefficients: tuple | None = None
    y_convention: str = "standard"

    def __post_init__(self):
        if self.y_convention not in Y_CONVENTIONS:
            raise ValueError(f"y_convention must be one of {Y_CONVENTIONS}")
        if self.coefficients is not None:
            coeffs = tuple(as_coeff(c) for c in self.coefficients)
            if len(coeffs) != 4:
                raise ValueError("an error needs exactly four coefficients (I, X, Z, Y)")
            object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def symbolic(cls, position: int, y_convention: str = "standard") -> ErrorSpec:
        return cls(position, None, y_convention)

    @classmethod
    def pauli(cls, position: int, name: str) -> ErrorSpec:
        slot, conv = PAULI_ERRORS[name]
        coeffs = [0, 0, 0, 0]
        coeffs[slot] = 1
        return cls(position, tuple(coeffs), conv)

    def resolved(self) -> tuple[CoeffExpr, CoeffExpr, CoeffExpr, CoeffExpr]:
        if self.coefficients is not None:
            return self.coefficients
        i = self.position
        return (sym(f"a{i}"), sym(f"b{i}"), sym(f"c{i}"), sym(f"d{i}"))

    @property
    def y_gate(self) -> str:
        return "Y" if self.y_convention == "standard" else "Ypaper"


def apply_error(psi: State, spec: ErrorSpec) -> State:
    i = spec.position
    if not 1 <= i <= psi.n:
        raise IndexError(f"error position {i} outside 1..{psi.n}")
    c_i, c_x, c_z, c_y = spec.resolved()
    pairs = [(c_i, psi)]
    for c, gate in ((c_x, "X"), (c_z, "Z"), (c_y, spec.y_gate)):
        if not c.is_zero():
            pairs.append((c, apply_single(psi, gate, i)))
    return superpose(pairs)


class NotFactorizableError(ValueError):
    """Strict measurement found data entangled with the ancillas."""


def measure_first(psi: State, strict: bool = False) -> State:
    """Keep qubit 1 and drop the rest, summing coefficients that collide.

    This is a syntactic projection ``e[y, x...] -> e[y]``, not a Born-rule
    measurement.  With ``strict=True`` every term must share one ancilla
    pattern, so that nothing is silently summed away.
    """
    if psi.n < 2:
        raise ValueError("measure_first needs at least two qubits")
    if strict:
        tails = {ket[1:] for ket in psi.terms}
        if len(tails) > 1:
            raise NotFactorizableError(
                f"state has {len(tails)} distinct ancilla patterns; "
                "it is not (qubit) ⊗ (single ancilla ket)"
            )
    return State(1, [(ket[:1], c) for ket, c in psi.terms.items()])


def data_state(alpha=None, beta=None) -> State:
    """``alpha·e[0] + beta·e[1]``; defaults to the symbols α and β."""
    alpha = sym("α") if alpha is None else as_coeff(alpha)
    beta = sym("β") if beta is None else as_coeff(beta)
    return superpose([(alpha, ket_state([0])), (beta, ket_state([1]))])


def trace_pipeline(alpha=None, beta=None, code: str | CodePipeline = "shor9",
                   error: ErrorSpec | None = None, strict: bool = False) -> dict[str, State]:
    """All intermediate states ``ψ0`` .. ``ψ5`` of one pipeline run."""
    pipe = _code(code)
    if error is not None and not 1 <= error.position <= pipe.width:
        raise IndexError(f"error position {error.position} outside 1..{pipe.width}")
    psi0 = data_state(alpha, beta)
    psi1 = enlarge(psi0, pipe.width)
    psi2 = apply_circuit(psi1, pipe.encode)
    psi3 = psi2 if error is None else apply_error(psi2, error)
    psi4 = apply_circuit(psi3, pipe.decode)
    psi5 = measure_first(psi4, strict=strict)
    return {"ψ0": psi0, "ψ1": psi1, "ψ2": psi2, "ψ3": psi3, "ψ4": psi4, "ψ5": psi5}


def run_pipeline(alpha=None, beta=None, code: str | CodePipeline = "shor9",
                 error: ErrorSpec | None = None, strict: bool = False) -> State:
    return trace_pipeline(alpha, beta, code, error, strict)["ψ5"]


def global_factor(state: State, reference: State) -> CoeffExpr | None:
    """``λ`` with ``state == λ·reference``, or ``None`` if there is none.

    Needs a ket whose reference coefficient is a single term, which holds
    for the data states used here (``α·e[0] + β·e[1]``).
    """
    if state.n != reference.n or reference.is_zero():
        return None
    for ket, r in reference.items():
        if r.single_term() is None:
            continue
        try:
            lam = state.coeff(ket).exact_quotient(r)
        except ValueError:
            return None
        return lam if reference * lam == state else None
    return None


def pauli_cases(width: int, names: Sequence[str] = tuple(PAULI_ERRORS)):
    """Every (position, Pauli name) pair for a register of ``width`` qubits."""
    return [(i, name) for i in range(1, width + 1) for name in names]
