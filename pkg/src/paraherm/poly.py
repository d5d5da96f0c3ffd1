"""Dense univariate polynomials with exact coefficients.

Coefficients are :class:`fractions.Fraction` or
:class:`~paraherm.gaussrat.GaussRational` values stored in ascending degree
order. Instances are immutable and kept in canonical form (no trailing zero
coefficients), so ``==`` is exact coefficient-wise equality.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Sequence

from .gaussrat import GaussRational

__all__ = ["Poly", "X"]


def _canon(c):
    if isinstance(c, GaussRational):
        return c.re if c.is_real else c
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        raise TypeError("floats are not exact; pass a Fraction")
    return Fraction(c)


class Poly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_canon(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> Poly:
        return cls([0] * n + [c])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, k: int):
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    @property
    def leading(self):
        return self._c[-1] if self._c else Fraction(0)

    @property
    def is_real(self) -> bool:
        return all(not isinstance(c, GaussRational) for c in self._c)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        z = Fraction(0)
        return Poly(a + b for a, b in zip_longest(self._c, other._c, fillvalue=z))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-a for a in self._c)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(a * other for a in self._c)
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if not a:
                continue
            for j, b in enumerate(other._c):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Poly(a / scalar for a in self._c)

    def __pow__(self, k: int) -> Poly:
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def mul_x(self, k: int = 1) -> Poly:
        """Multiply by ``x**k``."""
        return Poly([0] * k + list(self._c)) if self._c else Poly()

    # symmetry -------------------------------------------------------------
    def reflect(self) -> Poly:
        """Return ``f(-x)``."""
        return Poly(-c if k % 2 else c for k, c in enumerate(self._c))

    def even_part(self) -> Poly:
        return Poly(0 if k % 2 else c for k, c in enumerate(self._c))

    def odd_part(self) -> Poly:
        return Poly(c if k % 2 else 0 for k, c in enumerate(self._c))

    def is_even(self) -> bool:
        return all(not c for c in self._c[1::2])

    def is_odd(self) -> bool:
        return all(not c for c in self._c[0::2])

    def derivative(self) -> Poly:
        """Ordinary derivative."""
        return Poly(k * c for k, c in enumerate(self._c) if k)

    # evaluation / comparison ----------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self._c):
            if isinstance(c, GaussRational) and not isinstance(x, (int, Fraction, GaussRational)):
                c = complex(c)
            acc = acc * x + c
        return acc

    def to_floats(self, dtype=float) -> list:
        return [dtype(complex(c)) if isinstance(c, GaussRational) else dtype(c) for c in self._c]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"Poly({self.to_str()!r})"

    def to_str(self, var: str = "x") -> str:
        """Render as e.g. ``"4*x^2 - 6"`` (descending powers, exact coefficients)."""
        if not self._c:
            return "0"
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if not c:
                continue
            neg = not isinstance(c, GaussRational) and c < 0
            mag = -c if neg else c
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    __str__ = to_str


X = Poly.monomial(1)


def poly_from_strings(coeffs: Sequence[str]) -> Poly:
    return Poly(Fraction(s) for s in coeffs)
