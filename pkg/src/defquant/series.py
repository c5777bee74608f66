"""Truncated formal power series in h with exact rational coefficients.

Every deformed object in the package lives over the ring Q[h]/h^(N+1).
The truncation order N is carried by each series; combining series of
different orders is a usage error rather than a silent coercion.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

DEFAULT_TRUNC = 4

Scalar = Union[int, Fraction]


_ZERO = Fraction(0)


class TruncationMismatch(ValueError):
    """Raised when series of different truncation orders are combined."""


class HSeries:
    """An element c_0 + c_1 h + ... + c_N h^N of Q[h]/h^(N+1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar], trunc: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if trunc is not None:
            if trunc < 0:
                raise ValueError("truncation order must be non-negative")
            cs = (cs + [Fraction(0)] * (trunc + 1))[: trunc + 1]
        if not cs:
            raise ValueError("a series needs at least one coefficient")
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "HSeries":
        # coeffs already a tuple of Fractions of the right length
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: Scalar, trunc: int = DEFAULT_TRUNC) -> "HSeries":
        return cls([c], trunc)

    @classmethod
    def zero(cls, trunc: int = DEFAULT_TRUNC) -> "HSeries":
        return cls([], trunc)

    @classmethod
    def one(cls, trunc: int = DEFAULT_TRUNC) -> "HSeries":
        return cls([1], trunc)

    @classmethod
    def h(cls, power: int = 1, coeff: Scalar = 1, trunc: int = DEFAULT_TRUNC) -> "HSeries":
        """coeff * h**power (zero if power exceeds the truncation)."""
        cs = [Fraction(0)] * (trunc + 1)
        if power <= trunc:
            cs[power] = Fraction(coeff)
        return cls(cs)

    # -- basic properties ---------------------------------------------
    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def valuation(self) -> int | None:
        """Lowest power of h with a nonzero coefficient (None for zero)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c]

    def constant_term(self) -> Fraction:
        return self.coeffs[0]

    def is_constant(self) -> bool:
        return not any(self.coeffs[1:])

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "HSeries":
        if isinstance(other, HSeries):
            if other.trunc != self.trunc:
                raise TruncationMismatch(
                    f"cannot combine series truncated at h^{self.trunc + 1} and h^{other.trunc + 1}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return HSeries.const(other, self.trunc)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HSeries._raw(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "HSeries":
        return HSeries._raw(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HSeries._raw(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, HSeries):
            c = Fraction(other)
            return HSeries._raw(tuple(a * c for a in self.coeffs))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        n = len(a)
        if n == 1:
            return HSeries._raw((a[0] * b[0],))
        out = [_ZERO] * n
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return HSeries._raw(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, HSeries):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            c = Fraction(other)
            if c == 0:
                raise ZeroDivisionError("division of a series by zero")
            return HSeries(a / c for a in self.coeffs)
        return NotImplemented

    def __pow__(self, k: int) -> "HSeries":
        if k < 0:
            return self.inverse() ** (-k)
        out = HSeries.one(self.trunc)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "HSeries":
        """Multiplicative inverse; only units (nonzero constant term) qualify."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError(f"{self} is not a unit in Q[h]/h^{self.trunc + 1}")
        inv = [Fraction(1) / a[0]]
        for k in range(1, len(a)):
            s = sum(a[j] * inv[k - j] for j in range(1, k + 1))
            inv.append(-s / a[0])
        return HSeries(inv)

    def shift(self, k: int) -> "HSeries":
        """Multiply by h**k."""
        n = len(self.coeffs)
        return HSeries(([Fraction(0)] * k + list(self.coeffs))[:n])

    def retrunc(self, trunc: int) -> "HSeries":
        """Explicit change of truncation order (drops or zero-pads)."""
        return HSeries(self.coeffs, trunc)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, HSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"HSeries({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        from .expr import format_series

        return format_series(self)


def hseries_mul(a: HSeries, b: HSeries) -> HSeries:
    """Cauchy product truncated at the common order."""
    return a * b


def series_from(value: Union[HSeries, Scalar], trunc: int) -> HSeries:
    if isinstance(value, HSeries):
        if value.trunc != trunc:
            raise TruncationMismatch(f"expected truncation {trunc}, got {value.trunc}")
        return value
    return HSeries.const(value, trunc)


def fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def series_to_json(s: HSeries) -> list[str]:
    return [fraction_str(c) for c in s.coeffs]


def series_from_json(data: Sequence[str]) -> HSeries:
    return HSeries(Fraction(c) for c in data)
