"""Definite rational quaternion algebras and their exact element arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .numth import hilbert_symbol, prime_factors


@dataclass(frozen=True)
class QuaternionAlgebra:
    """The algebra over ℚ with basis 1, i, j, ij where i²=a, j²=b, ij=-ji."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise ValueError("algebra parameters must be nonzero")

    def __repr__(self) -> str:
        return f"QuaternionAlgebra({self.a}, {self.b})"

    @property
    def is_totally_definite(self) -> bool:
        return self.a < 0 and self.b < 0

    @cached_property
    def ramified_primes(self) -> tuple[int, ...]:
        """Finite primes where the algebra is locally a division algebra.

        Only primes dividing 2ab can appear; the symbol is +1 elsewhere.
        """
        return tuple(
            p
            for p in prime_factors(2 * self.a * self.b)
            if hilbert_symbol(self.a, self.b, p) == -1
        )

    @cached_property
    def reduced_discriminant(self) -> int:
        """Product of the finite ramified primes."""
        d = 1
        for p in self.ramified_primes:
            d *= p
        return d

    def element(self, x0, x1, x2, x3) -> QElem:
        return QElem(self, Fraction(x0), Fraction(x1), Fraction(x2), Fraction(x3))

    def scalar(self, c) -> QElem:
        return self.element(c, 0, 0, 0)

    @cached_property
    def one(self) -> QElem:
        return self.element(1, 0, 0, 0)

    @cached_property
    def i(self) -> QElem:
        return self.element(0, 1, 0, 0)

    @cached_property
    def j(self) -> QElem:
        return self.element(0, 0, 1, 0)

    @cached_property
    def ij(self) -> QElem:
        return self.element(0, 0, 0, 1)

    def basis_elements(self) -> tuple[QElem, QElem, QElem, QElem]:
        return (self.one, self.i, self.j, self.ij)


@dataclass(frozen=True)
class QElem:
    """A quaternion x0 + x1·i + x2·j + x3·ij with exact rational coordinates."""

    algebra: QuaternionAlgebra
    x0: Fraction
    x1: Fraction
    x2: Fraction
    x3: Fraction

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x0, self.x1, self.x2, self.x3)

    def __repr__(self) -> str:
        parts = []
        for c, name in zip(self.coords(), ("", "i", "j", "ij")):
            if c == 0:
                continue
            sign = ""
            if parts:
                sign = "+ " if c > 0 else "- "
                c = abs(c)
            if not name:
                body = str(c)
            elif c == 1:
                body = name
            elif c == -1:
                body = f"-{name}"
            else:
                body = f"{c}*{name}"
            parts.append(sign + body)
        return " ".join(parts) if parts else "0"

    def _coerce(self, other) -> "QElem | None":
        if isinstance(other, QElem):
            if other.algebra != self.algebra:
                raise ValueError("elements of different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QElem(
            self.algebra,
            self.x0 + o.x0,
            self.x1 + o.x1,
            self.x2 + o.x2,
            self.x3 + o.x3,
        )

    __radd__ = __add__

    def __neg__(self):
        return QElem(self.algebra, -self.x0, -self.x1, -self.x2, -self.x3)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coords()
        y0, y1, y2, y3 = o.coords()
        return QElem(
            self.algebra,
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.algebra.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def is_zero(self) -> bool:
        return not any(self.coords())

    def conj(self) -> QElem:
        """Canonical involution: negates the i, j and ij coordinates."""
        return QElem(self.algebra, self.x0, -self.x1, -self.x2, -self.x3)

    def trd(self) -> Fraction:
        """Reduced trace x + x̄ = 2·x0."""
        return 2 * self.x0

    def nrd(self) -> Fraction:
        """Reduced norm x·x̄ = x0² - a·x1² - b·x2² + ab·x3²."""
        a, b = self.algebra.a, self.algebra.b
        return (
            self.x0 * self.x0
            - a * self.x1 * self.x1
            - b * self.x2 * self.x2
            + a * b * self.x3 * self.x3
        )

    def inverse(self) -> QElem:
        n = self.nrd()
        if n == 0:
            raise ZeroDivisionError("element has reduced norm zero")
        c = self.conj()
        return QElem(self.algebra, c.x0 / n, c.x1 / n, c.x2 / n, c.x3 / n)
