"""Exact amplitude arithmetic.

``Scalar`` is an element of Q(i)[√2], stored as ``r + s·√2`` with ``r`` and
``s`` Gaussian rationals.  ``CoeffExpr`` is a polynomial in named commuting
symbols with ``Scalar`` coefficients.  Both are immutable.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "Scalar",
    "CoeffExpr",
    "UnboundSymbolError",
    "Monomial",
    "sym",
    "symbols",
    "as_coeff",
    "coeff_eval",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "INV_SQRT2",
]

Rational = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...], sorted by symbol name

_SQRT2_FLOAT = math.sqrt(2.0)
_MINUS = "−"


class UnboundSymbolError(LookupError):
    """Raised when numeric evaluation meets a symbol missing from the environment."""

    def __init__(self, name: str):
        super().__init__(f"symbol {name!r} is not bound")
        self.name = name


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    """Exact number ``(re_r + i·im_r) + (re_s + i·im_s)·√2``."""

    __slots__ = ("re_r", "im_r", "re_s", "im_s")

    def __init__(self, re_r: Rational = 0, im_r: Rational = 0,
                 re_s: Rational = 0, im_s: Rational = 0):
        object.__setattr__(self, "re_r", _frac(re_r))
        object.__setattr__(self, "im_r", _frac(im_r))
        object.__setattr__(self, "re_s", _frac(re_s))
        object.__setattr__(self, "im_s", _frac(im_s))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    @property
    def parts(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.re_r, self.im_r, self.re_s, self.im_s)

    def is_zero(self) -> bool:
        return not (self.re_r or self.im_r or self.re_s or self.im_s)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(("Scalar",) + self.parts)

    def __repr__(self) -> str:
        return "Scalar({}, {}, {}, {})".format(*(str(p) for p in self.parts))

    def __str__(self) -> str:
        return _scalar_text(self)

    def __neg__(self) -> Scalar:
        return Scalar(-self.re_r, -self.im_r, -self.re_s, -self.im_s)

    def __add__(self, other) -> Scalar:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re_r + o.re_r, self.im_r + o.im_r,
                      self.re_s + o.re_s, self.im_s + o.im_s)

    __radd__ = __add__

    def __sub__(self, other) -> Scalar:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> Scalar:
        return (-self) + other

    def __mul__(self, other) -> Scalar:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        # (r1 + s1√2)(r2 + s2√2) = (r1 r2 + 2 s1 s2) + (r1 s2 + s1 r2)√2
        r1 = (self.re_r, self.im_r)
        s1 = (self.re_s, self.im_s)
        r2 = (o.re_r, o.im_r)
        s2 = (o.re_s, o.im_s)
        rr = _gmul(r1, r2)
        ss = _gmul(s1, s2)
        rs = _gmul(r1, s2)
        sr = _gmul(s1, r2)
        return Scalar(rr[0] + 2 * ss[0], rr[1] + 2 * ss[1],
                      rs[0] + sr[0], rs[1] + sr[1])

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        """Complex conjugate (√2 is real, so only imaginary parts flip)."""
        return Scalar(self.re_r, -self.im_r, self.re_s, -self.im_s)

    def sqrt2_conjugate(self) -> Scalar:
        return Scalar(self.re_r, self.im_r, -self.re_s, -self.im_s)

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("Scalar division by zero")
        # x · x̄₂ = r² − 2s² is a Gaussian rational g; 1/x = x̄₂ / g.
        g = self * self.sqrt2_conjugate()
        a, b = g.re_r, g.im_r
        den = a * a + b * b
        g_inv = Scalar(a / den, -b / den)
        return self.sqrt2_conjugate() * g_inv

    def __truediv__(self, other) -> Scalar:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> Scalar:
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    def __complex__(self) -> complex:
        return complex(float(self.re_r) + float(self.re_s) * _SQRT2_FLOAT,
                       float(self.im_r) + float(self.im_s) * _SQRT2_FLOAT)

    def to_json(self) -> dict:
        return {
            "re_r": _rat_json(self.re_r),
            "im_r": _rat_json(self.im_r),
            "re_s": _rat_json(self.re_s),
            "im_s": _rat_json(self.im_s),
        }

    @classmethod
    def from_json(cls, d: Mapping[str, str]) -> Scalar:
        return cls(Fraction(d["re_r"]), Fraction(d["im_r"]),
                   Fraction(d["re_s"]), Fraction(d["im_s"]))


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _rat_json(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)
SQRT2 = Scalar(0, 0, 1)
INV_SQRT2 = Scalar(0, 0, Fraction(1, 2))


def _monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    powers = dict(m1)
    for name, k in m2:
        powers[name] = powers.get(name, 0) + k
    return tuple(sorted(powers.items()))


class CoeffExpr:
    """Polynomial over ``Scalar`` in opaque commuting symbols.

    Terms map a monomial (sorted tuple of ``(name, exponent)``) to a nonzero
    ``Scalar``; the empty monomial holds the pure-number part.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Scalar.coerce(c)
            mono = _canon_monomial(mono)
            if mono in clean:
                c = clean[mono] + c
            if c.is_zero():
                clean.pop(mono, None)
            else:
                clean[mono] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, terms: dict) -> CoeffExpr:
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("CoeffExpr is immutable")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in the canonical (monomial-sorted) order."""
        return sorted(self._terms.items())

    def symbols(self) -> set[str]:
        return {name for mono in self._terms for name, _ in mono}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def as_scalar(self) -> Scalar | None:
        """The value as a ``Scalar`` if no symbols occur, else ``None``."""
        if not self._terms:
            return ZERO
        if len(self._terms) == 1 and () in self._terms:
            return self._terms[()]
        return None

    def canonical(self) -> CoeffExpr:
        return CoeffExpr(self._terms)

    def __eq__(self, other) -> bool:
        try:
            o = as_coeff(other)
        except TypeError:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"CoeffExpr({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def __neg__(self) -> CoeffExpr:
        return CoeffExpr._raw({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> CoeffExpr:
        try:
            o = as_coeff(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            s = out[m] + c if m in out else c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return CoeffExpr._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> CoeffExpr:
        try:
            o = as_coeff(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> CoeffExpr:
        return (-self) + other

    def __mul__(self, other) -> CoeffExpr:
        try:
            o = as_coeff(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = _monomial_mul(m1, m2)
                c = c1 * c2
                if m in out:
                    c = out[m] + c
                if c.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = c
        return CoeffExpr._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CoeffExpr:
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = ONE_EXPR
        for _ in range(k):
            result = result * self
        return result

    def single_term(self) -> tuple[Monomial, Scalar] | None:
        if len(self._terms) == 1:
            return next(iter(self._terms.items()))
        return None

    def exact_quotient(self, divisor: CoeffExpr) -> CoeffExpr:
        """Divide by a single-term ``divisor``; raises ``ValueError`` if inexact."""
        divisor = as_coeff(divisor)
        term = divisor.single_term()
        if term is None:
            raise ValueError("exact_quotient needs a single-term divisor")
        dmono, dcoef = term
        dpow = dict(dmono)
        inv = dcoef.inverse()
        out = {}
        for mono, c in self._terms.items():
            powers = dict(mono)
            for name, k in dpow.items():
                left = powers.get(name, 0) - k
                if left < 0:
                    raise ValueError(f"{self} is not divisible by {divisor}")
                if left:
                    powers[name] = left
                else:
                    del powers[name]
            out[tuple(sorted(powers.items()))] = c * inv
        return CoeffExpr._raw(out)

    def evaluate(self, env: Mapping[str, complex]) -> complex:
        total = 0j
        for mono, c in self._terms.items():
            v = complex(c)
            for name, k in mono:
                try:
                    v *= complex(env[name]) ** k
                except KeyError:
                    raise UnboundSymbolError(name) from None
            total += v
        return total

    def to_text(self) -> str:
        return _coeff_text(self)

    def to_json(self) -> list:
        return [
            {"monomial": {name: k for name, k in mono}, **c.to_json()}
            for mono, c in self.items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> CoeffExpr:
        terms = {}
        for t in data:
            mono = tuple(sorted((sys.intern(n), int(k)) for n, k in t["monomial"].items()))
            terms[mono] = Scalar.from_json(t)
        return cls(terms)


def _canon_monomial(mono) -> Monomial:
    powers: dict[str, int] = {}
    for name, k in mono:
        if k < 0:
            raise ValueError("negative exponents are not polynomial")
        if k:
            powers[sys.intern(name)] = powers.get(name, 0) + k
    return tuple(sorted(powers.items()))


ZERO_EXPR = CoeffExpr._raw({})
ONE_EXPR = CoeffExpr._raw({(): ONE})


def sym(name: str) -> CoeffExpr:
    """The polynomial consisting of the single symbol ``name``."""
    if not name:
        raise ValueError("symbol name must be nonempty")
    return CoeffExpr._raw({((sys.intern(name), 1),): ONE})


def symbols(names: str) -> tuple[CoeffExpr, ...]:
    return tuple(sym(n) for n in names.replace(",", " ").split())


def as_coeff(x) -> CoeffExpr:
    if isinstance(x, CoeffExpr):
        return x
    s = Scalar.coerce(x)
    return CoeffExpr._raw({(): s} if s else {})


def coeff_eval(x, env: Mapping[str, complex]) -> complex:
    return as_coeff(x).evaluate(env)


# --- text rendering -------------------------------------------------------

_UNITS = ("", "i", "√2", "i√2")


def _rat_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def _scalar_pieces(c: Scalar) -> list[tuple[bool, str]]:
    """Signed pieces ``(negative, magnitude_text)`` of a scalar."""
    pieces = []
    for q, unit in zip(c.parts, _UNITS):
        if not q:
            continue
        mag = abs(q)
        if mag == 1 and unit:
            text = unit
        else:
            text = _rat_text(mag) + unit
        pieces.append((q < 0, text))
    return pieces


def _join(pieces: list[tuple[bool, str]]) -> str:
    out = []
    for k, (neg, text) in enumerate(pieces):
        if k == 0:
            out.append((_MINUS if neg else "") + text)
        else:
            out.append((_MINUS if neg else "+") + text)
    return "".join(out)


def _scalar_text(c: Scalar) -> str:
    pieces = _scalar_pieces(c)
    return _join(pieces) if pieces else "0"


def _monomial_text(mono: Monomial) -> str:
    return "·".join(name if k == 1 else f"{name}^{k}" for name, k in mono)


def _term_pieces(mono: Monomial, c: Scalar) -> tuple[bool, str]:
    pieces = _scalar_pieces(c)
    if not mono:
        if len(pieces) == 1:
            return pieces[0]
        return False, "(" + _join(pieces) + ")"
    mtext = _monomial_text(mono)
    if len(pieces) == 1:
        neg, text = pieces[0]
        if text == "1":
            return neg, mtext
        return neg, f"{text}·{mtext}"
    return False, f"({_join(pieces)})·{mtext}"


def _coeff_text(x: CoeffExpr) -> str:
    if x.is_zero():
        return "0"
    scalar = x.as_scalar()
    if scalar is not None:
        return _scalar_text(scalar)
    return _join([_term_pieces(m, c) for m, c in x.items()])
