"""Positioned gate application by basis-state rewriting.

A one-qubit gate is a pair of images ``e[0] -> image0`` and ``e[1] -> image1``.
Applying it at position ``i`` rewrites bit ``i`` of every term and spreads the
coefficient over the image, leaving the other qubits alone.

Argument order follows the rewrite definitions being transcribed:
``CNot(target, control)`` and ``Toffoli(target, control1, control2)``.
Note this is the reverse of the common (control, target) convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .algebra import I, INV_SQRT2, ONE, CoeffExpr, Scalar
from .state import State

__all__ = [
    "GateRule",
    "Gate",
    "CNot",
    "Toffoli",
    "GateOp",
    "Circuit",
    "GATE_NAMES",
    "builtin_gate",
    "canonical_gate_name",
    "apply_single",
    "apply_cnot",
    "apply_toffoli",
    "apply_op",
    "apply_circuit",
]


@dataclass(frozen=True)
class GateRule:
    """Images of ``e[0]`` and ``e[1]`` under a one-qubit gate."""

    image0: State
    image1: State

    def __post_init__(self):
        if self.image0.n != 1 or self.image1.n != 1:
            raise ValueError("gate images must be one-qubit states")

    def image(self, bit: int) -> State:
        return self.image1 if bit else self.image0

    def matrix(self) -> tuple[tuple[CoeffExpr, CoeffExpr], tuple[CoeffExpr, CoeffExpr]]:
        """Rows of the 2x2 matrix whose columns are the two images."""
        c0 = (self.image0.coeff((0,)), self.image0.coeff((1,)))
        c1 = (self.image1.coeff((0,)), self.image1.coeff((1,)))
        return ((c0[0], c1[0]), (c0[1], c1[1]))

    def scalar_matrix(self) -> tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]] | None:
        rows = []
        for row in self.matrix():
            vals = tuple(x.as_scalar() for x in row)
            if any(v is None for v in vals):
                return None
            rows.append(vals)
        return tuple(rows)

    def is_unitary(self) -> bool | None:
        """Exact ``U†U = I`` check; ``None`` when entries are symbolic."""
        m = self.scalar_matrix()
        if m is None:
            return None
        for a in range(2):
            for b in range(2):
                s = m[0][a].conjugate() * m[0][b] + m[1][a].conjugate() * m[1][b]
                if s != (ONE if a == b else Scalar()):
                    return False
        return True


def _rule(img0: list, img1: list) -> GateRule:
    return GateRule(
        State(1, [((b,), c) for b, c in img0]),
        State(1, [((b,), c) for b, c in img1]),
    )


_BUILTIN = {
    "H": _rule([(0, INV_SQRT2), (1, INV_SQRT2)], [(0, INV_SQRT2), (1, -INV_SQRT2)]),
    "X": _rule([(1, 1)], [(0, 1)]),
    "Y": _rule([(1, I)], [(0, -I)]),
    # Alternate Y convention (selected with y="paper"): -i·Z, not Pauli Y.
    "Ypaper": _rule([(0, -I)], [(1, I)]),
    "Z": _rule([(0, 1)], [(1, -1)]),
    "Id": _rule([(0, 1)], [(1, 1)]),
}

GATE_NAMES = tuple(_BUILTIN)
_BY_UPPER = {name.upper(): name for name in _BUILTIN}
_BY_UPPER["I"] = "Id"


def canonical_gate_name(name: str) -> str:
    try:
        return _BY_UPPER[name.upper()]
    except KeyError:
        raise ValueError(f"unknown gate {name!r}") from None


def builtin_gate(name: str) -> GateRule:
    return _BUILTIN[canonical_gate_name(name)]


@dataclass(frozen=True)
class Gate:
    """One-qubit gate ``name`` at ``target``; ``rule`` overrides the built-in."""

    name: str
    target: int
    rule: GateRule | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.rule is None:
            object.__setattr__(self, "name", canonical_gate_name(self.name))

    @property
    def positions(self) -> tuple[int, ...]:
        return (self.target,)

    def resolve(self) -> GateRule:
        return self.rule if self.rule is not None else builtin_gate(self.name)

    def __str__(self) -> str:
        return f"{self.name.upper()} {self.target}"


@dataclass(frozen=True)
class CNot:
    target: int
    control: int

    def __post_init__(self):
        if self.target == self.control:
            raise ValueError("CNOT target and control coincide")

    @property
    def positions(self) -> tuple[int, ...]:
        return (self.target, self.control)

    def __str__(self) -> str:
        return f"CN {self.target} {self.control}"


@dataclass(frozen=True)
class Toffoli:
    target: int
    control1: int
    control2: int

    def __post_init__(self):
        if len({self.target, self.control1, self.control2}) != 3:
            raise ValueError("Toffoli positions must be pairwise distinct")

    @property
    def positions(self) -> tuple[int, ...]:
        return (self.target, self.control1, self.control2)

    def __str__(self) -> str:
        return f"T {self.target} {self.control1} {self.control2}"


GateOp = Union[Gate, CNot, Toffoli]


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list, applied first to last."""

    ops: tuple = ()

    def __init__(self, ops: Iterable[GateOp] = ()):
        object.__setattr__(self, "ops", tuple(ops))

    def __iter__(self) -> Iterator[GateOp]:
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def __add__(self, other: Circuit) -> Circuit:
        return Circuit(self.ops + tuple(other))

    @property
    def width(self) -> int:
        """Smallest register width this circuit fits."""
        return max((max(op.positions) for op in self.ops), default=0)

    def to_text(self) -> str:
        return "".join(f"{op}\n" for op in self.ops)


def _check_positions(n: int, positions: Iterable[int]) -> None:
    for p in positions:
        if not 1 <= p <= n:
            raise IndexError(f"qubit position {p} outside 1..{n}")


def apply_single(state: State, rule: GateRule | str, i: int) -> State:
    """``O_i``: the gate on qubit ``i``, identity elsewhere."""
    _check_positions(state.n, (i,))
    if isinstance(rule, str):
        rule = builtin_gate(rule)
    images = (rule.image0.items(), rule.image1.items())
    acc: dict = {}
    k = i - 1
    for ket, c in state.terms.items():
        for (bit,), d in images[ket[k]]:
            new = ket[:k] + (bit,) + ket[k + 1:]
            p = c * d
            if new in acc:
                p = acc[new] + p
            if p.is_zero():
                acc.pop(new, None)
            else:
                acc[new] = p
    return State._raw(state.n, acc)


def _permute(state: State, fn) -> State:
    # Permutations of kets never merge terms, so coefficients carry over.
    return State._raw(state.n, {fn(ket): c for ket, c in state.terms.items()})


def apply_cnot(state: State, target: int, control: int) -> State:
    """Bit ``target`` becomes ``x_target XOR x_control``."""
    if target == control:
        raise ValueError("CNOT target and control coincide")
    _check_positions(state.n, (target, control))
    t, c = target - 1, control - 1

    def flip(ket):
        if ket[c]:
            return ket[:t] + (1 - ket[t],) + ket[t + 1:]
        return ket

    return _permute(state, flip)


def apply_toffoli(state: State, target: int, control1: int, control2: int) -> State:
    """Bit ``target`` becomes ``x_target XOR (x_control1 AND x_control2)``."""
    if len({target, control1, control2}) != 3:
        raise ValueError("Toffoli positions must be pairwise distinct")
    _check_positions(state.n, (target, control1, control2))
    t, c1, c2 = target - 1, control1 - 1, control2 - 1

    def flip(ket):
        if ket[c1] and ket[c2]:
            return ket[:t] + (1 - ket[t],) + ket[t + 1:]
        return ket

    return _permute(state, flip)


def apply_op(state: State, op: GateOp) -> State:
    if isinstance(op, Gate):
        return apply_single(state, op.resolve(), op.target)
    if isinstance(op, CNot):
        return apply_cnot(state, op.target, op.control)
    if isinstance(op, Toffoli):
        return apply_toffoli(state, op.target, op.control1, op.control2)
    raise TypeError(f"not a gate operation: {op!r}")


def apply_circuit(state: State, circuit: Iterable[GateOp]) -> State:
    for op in circuit:
        state = apply_op(state, op)
    return state

