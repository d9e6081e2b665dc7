"""Symbolic states: canonical sparse maps from basis kets to coefficients.

A ket is a tuple of bits, qubit 1 leftmost, so ``(0, 1, 1)`` is ``e[0,1,1]``.
States are always stored flat; nesting such as ``e(0, e(1), 1)`` is resolved
into a single ket by the tensor product at construction time.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from .algebra import CoeffExpr, as_coeff

__all__ = [
    "Ket",
    "State",
    "e",
    "ket_state",
    "superpose",
    "tensor",
    "states_equal",
    "phase_equivalent",
]

Ket = tuple  # tuple[int, ...] of 0/1


def _check_ket(bits, n: int | None = None) -> Ket:
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits]
    ket = tuple(bits)
    if not ket:
        raise ValueError("a ket needs at least one qubit")
    for b in ket:
        if b not in (0, 1) or isinstance(b, bool):
            raise ValueError(f"ket entries must be 0 or 1, got {b!r}")
    ket = tuple(int(b) for b in ket)
    if n is not None and len(ket) != n:
        raise ValueError(f"ket {ket} has width {len(ket)}, expected {n}")
    return ket


def ket_text(ket: Ket) -> str:
    return "e[" + ",".join(map(str, ket)) + "]"


class State:
    """Immutable linear combination of ``n``-qubit basis kets.

    The zero state (no terms) is valid and keeps its width.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        if n < 1:
            raise ValueError("state width must be at least 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for bits, c in items:
            ket = _check_ket(bits, n)
            c = as_coeff(c)
            if ket in acc:
                c = acc[ket] + c
            if c.is_zero():
                acc.pop(ket, None)
            else:
                acc[ket] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", acc)

    @classmethod
    def _raw(cls, n: int, terms: dict) -> State:
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "_terms", terms)
        return obj

    @classmethod
    def zero(cls, n: int) -> State:
        return cls._raw(n, {})

    @classmethod
    def basis(cls, bits: Sequence[int] | str) -> State:
        ket = _check_ket(bits)
        return cls._raw(len(ket), {ket: as_coeff(1)})

    def __setattr__(self, name, value):
        raise AttributeError("State is immutable")

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def items(self):
        """Terms sorted lexicographically by ket."""
        return sorted(self._terms.items())

    def coeff(self, bits) -> CoeffExpr:
        return self._terms.get(_check_ket(bits, self.n), as_coeff(0))

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def symbols(self) -> set[str]:
        out: set[str] = set()
        for c in self._terms.values():
            out |= c.symbols()
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __add__(self, other: State) -> State:
        if not isinstance(other, State):
            return NotImplemented
        return superpose([(1, self), (1, other)])

    def __sub__(self, other: State) -> State:
        if not isinstance(other, State):
            return NotImplemented
        return superpose([(1, self), (-1, other)])

    def __neg__(self) -> State:
        return State._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __mul__(self, factor) -> State:
        try:
            f = as_coeff(factor)
        except TypeError:
            return NotImplemented
        out = {}
        for k, c in self._terms.items():
            p = c * f
            if not p.is_zero():
                out[k] = p
        return State._raw(self.n, out)

    __rmul__ = __mul__

    def __matmul__(self, other: State) -> State:
        if not isinstance(other, State):
            return NotImplemented
        return tensor(self, other)

    def __repr__(self) -> str:
        return f"State({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (ket, c) in enumerate(self.items()):
            neg, body = _state_term(ket, c)
            if k == 0:
                parts.append(("−" if neg else "") + body)
            else:
                parts.append((" − " if neg else " + ") + body)
        return "".join(parts)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"ket": "".join(map(str, ket)), "coeff": c.to_json()}
                for ket, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> State:
        return cls(int(data["n"]),
                   [(t["ket"], CoeffExpr.from_json(t["coeff"])) for t in data["terms"]])


def _state_term(ket: Ket, c: CoeffExpr) -> tuple[bool, str]:
    kt = ket_text(ket)
    text = c.to_text()
    if len(c.terms) == 1 and "+" not in text and "−" not in text[1:]:
        neg = text.startswith("−")
        if neg:
            text = text[1:]
        if text == "1":
            return neg, kt
        return neg, f"{text}·{kt}"
    return False, f"({text})·{kt}"


def ket_state(bits: Sequence[int] | str) -> State:
    """Single basis state with coefficient 1."""
    return State.basis(bits)


def superpose(pairs: Iterable[tuple[object, State]]) -> State:
    """Coefficient-weighted sum of equal-width states."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("superpose needs at least one state")
    n = pairs[0][1].n
    acc: dict = {}
    for coef, st in pairs:
        if st.n != n:
            raise ValueError(f"cannot add states of widths {n} and {st.n}")
        f = as_coeff(coef)
        if f.is_zero():
            continue
        for ket, c in st._terms.items():
            p = c * f
            if ket in acc:
                p = acc[ket] + p
            if p.is_zero():
                acc.pop(ket, None)
            else:
                acc[ket] = p
    return State._raw(n, acc)


def tensor(a: State, b: State) -> State:
    """Bilinear product; kets concatenate, coefficients multiply."""
    out = {}
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            p = ca * cb
            if not p.is_zero():
                out[ka + kb] = p
    return State._raw(a.n + b.n, out)


Part = Union[int, State]


def e(*parts: Part) -> State:
    """Build a flat state from bits and nested states, as in ``e[0, e[1], 1]``.

    Each part is a bit or a (possibly weighted, possibly superposed) state;
    the result is their tensor product, so ``e(0, e(1), 1) == e(0, 1, 1)`` and
    ``e(a, xi * (alpha * e(x) + beta * e(y)))`` distributes over the sum.
    """
    if not parts:
        raise ValueError("e() needs at least one part")
    result = None
    for p in parts:
        piece = p if isinstance(p, State) else State.basis((p,))
        result = piece if result is None else tensor(result, piece)
    return result


def states_equal(a: State, b: State) -> bool:
    return a == b


def phase_equivalent(a: State, b: State) -> bool:
    """True iff ``a = λ·b`` for some nonzero coefficient ``λ``.

    Decided without division: equal supports and ``a[k]·b[p] = a[p]·b[k]``
    against a fixed pivot ket ``p``.  Coefficients live in an integral domain,
    so agreement with one pivot implies agreement for every pair.
    """
    if a.n != b.n or a.support() != b.support():
        return False
    if a.is_zero():
        return True
    pivot = min(a._terms)
    ap, bp = a._terms[pivot], b._terms[pivot]
    return all(a._terms[k] * bp == ap * b._terms[k] for k in a._terms)
