"""Text format for circuits: one gate per line, 1-based qubit positions.

    # Shor encoder, first steps
    CN 4 1          # CN <target> <control>
    H 1
    T 1 3 2         # T <target> <control> <control>

One-qubit gate names are H, X, Y, YPAPER, Z and ID (case-insensitive).
Everything after ``#`` is ignored.
"""

from __future__ import annotations

import re

from .gates import GATE_NAMES, CNot, Circuit, Gate, Toffoli, canonical_gate_name

__all__ = ["CircuitSyntaxError", "parse_circuit"]

_TOKEN = re.compile(r"\S+")
_ARITY = {"CN": 2, "T": 3}
_ARITY.update({name.upper(): 1 for name in GATE_NAMES})
_ARITY["I"] = 1


class CircuitSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


def parse_circuit(text: str, n: int | None = None) -> Circuit:
    """Parse ``text`` into a ``Circuit``.

    If ``n`` is given, positions beyond ``n`` are rejected as well.
    """
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        (name, col), args = tokens[0], tokens[1:]
        key = name.upper()
        if key not in _ARITY:
            raise CircuitSyntaxError(f"unknown gate {name!r}", lineno, col)
        if len(args) != _ARITY[key]:
            where = args[_ARITY[key]][1] if len(args) > _ARITY[key] else col
            raise CircuitSyntaxError(
                f"{key} takes {_ARITY[key]} position(s), got {len(args)}", lineno, where)
        positions = []
        for tok, tcol in args:
            if not tok.isdigit() or int(tok) < 1:
                raise CircuitSyntaxError(f"bad qubit position {tok!r}", lineno, tcol)
            p = int(tok)
            if n is not None and p > n:
                raise CircuitSyntaxError(f"position {p} exceeds register width {n}", lineno, tcol)
            if p in positions:
                raise CircuitSyntaxError(f"position {p} used twice in one gate", lineno, tcol)
            positions.append(p)
        if key == "CN":
            ops.append(CNot(*positions))
        elif key == "T":
            ops.append(Toffoli(*positions))
        else:
            ops.append(Gate(canonical_gate_name(key), positions[0]))
    return Circuit(ops)
