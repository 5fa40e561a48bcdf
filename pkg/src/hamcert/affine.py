"""Exact affine forms over named real parameters.

An :class:`Affine` is ``const + sum(coeff[name] * name)`` with
:class:`fractions.Fraction` coefficients.  Every quantity the engine tracks
(reduced symplectic classes, gluing constraints, intersection numbers of
parameter-dependent classes) is one of these.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]
Scalar = Union[int, Fraction, "Affine"]

#: Name of the running moment-map level inside one regular interval.
LEVEL = "t"

_GAP = re.compile(r"^t(\d+)$")


def param_key(name: str) -> tuple:
    """Canonical ordering: minimum size, gaps in order, maximum size, others, running level."""
    if name == "alpha0":
        return (0, 0, name)
    m = _GAP.match(name)
    if m:
        return (1, int(m.group(1)), name)
    if name == "alpha_max":
        return (2, 0, name)
    if name == LEVEL:
        return (4, 0, name)
    return (3, 0, name)


def sort_params(names: Iterable[str]) -> list[str]:
    return sorted(set(names), key=param_key)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class Affine:
    """Immutable affine form with exact rational coefficients."""

    __slots__ = ("const", "coeffs", "_hash")

    def __init__(self, const: Number = 0, coeffs: Mapping[str, Number] | None = None):
        self.const = as_fraction(const)
        items = {}
        for name, value in (coeffs or {}).items():
            value = as_fraction(value)
            if value:
                items[name] = value
        self.coeffs = items
        self._hash = None

    @classmethod
    def _raw(cls, const: Fraction, coeffs: dict) -> "Affine":
        # trusted constructor: Fraction constant, nonzero Fraction coefficients
        out = object.__new__(cls)
        out.const, out.coeffs, out._hash = const, coeffs, None
        return out

    @classmethod
    def var(cls, name: str, coeff: Number = 1) -> "Affine":
        return cls(0, {name: coeff})

    @classmethod
    def lift(cls, value: Scalar) -> "Affine":
        return value if isinstance(value, Affine) else cls(value)

    # -- inspection ---------------------------------------------------------

    @property
    def variables(self) -> frozenset:
        return frozenset(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def coeff(self, name: str) -> Fraction:
        return self.coeffs.get(name, Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Affine):
            if not other.coeffs:
                return Affine._raw(self.const + other.const, self.coeffs)
            coeffs = dict(self.coeffs)
            for name, value in other.coeffs.items():
                total = coeffs.get(name, 0) + value
                if total:
                    coeffs[name] = total
                else:
                    coeffs.pop(name, None)
            return Affine._raw(self.const + other.const, coeffs)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Affine._raw(self.const + other, self.coeffs)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Affine._raw(-self.const, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, Affine):
            return self + (-other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Affine._raw(self.const - other, self.coeffs)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Affine):
            if other.is_constant():
                other = other.const
            elif self.is_constant():
                return other * self.const
            else:
                raise ValueError("product of two non-constant affine forms is not affine")
        if isinstance(other, bool) or not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            return Affine._raw(Fraction(0), {})
        if other == 1:
            return self
        return Affine._raw(self.const * other, {k: v * other for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_fraction(other)
        if other == 0:
            raise ZeroDivisionError("division of affine form by zero")
        return self * (1 / other)

    # -- substitution -------------------------------------------------------

    def subs(self, mapping: Mapping[str, Scalar] | None = None, **kw) -> "Affine":
        """Replace variables by numbers or other affine forms."""
        mapping = dict(mapping or {}, **kw)
        if not mapping.keys() & self.coeffs.keys():
            return self
        out = Affine._raw(self.const, {k: v for k, v in self.coeffs.items() if k not in mapping})
        for name, value in self.coeffs.items():
            if name in mapping:
                out = out + Affine.lift(mapping[name]) * value
        return out

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        total = self.const
        for name, value in self.coeffs.items():
            total += value * as_fraction(point[name])
        return total

    def normalized(self) -> "Affine":
        """Positive rescaling with leading coefficient (canonical order) of absolute value 1."""
        if not self.coeffs:
            if self.const == 0:
                return self
            return Affine(1 if self.const > 0 else -1)
        lead = self.coeffs[min(self.coeffs, key=param_key)]
        return self / abs(lead)

    # -- comparison ---------------------------------------------------------

    def _key(self):
        return (self.const, tuple(sorted(self.coeffs.items())))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.const == other
        if not isinstance(other, Affine):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return f"Affine({str(self)!r})"

    def __str__(self):
        parts = []
        for name in sort_params(self.coeffs):
            value = self.coeffs[name]
            mag = abs(value)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append(("-" if value < 0 else "+", body))
        if self.const or not parts:
            parts.append(("-" if self.const < 0 else "+", str(abs(self.const))))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z_0-9]*)?\s*")


def parse_affine(text: str) -> Affine:
    """Inverse of ``str(Affine)`` for the simple ``3/2*t0 - alpha0 + 1`` syntax."""
    text = text.strip()
    if not text:
        raise ValueError("empty affine expression")
    pos, out, first = 0, Affine(0), True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse affine expression {text!r}")
        sign, num, name = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        if num is None and name is None:
            raise ValueError(f"dangling sign in {text!r}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        out = out + (Affine.var(name, value) if name else Affine(value))
        pos, first = m.end(), False
    return out
