"""Truncated Taylor-series ("jet") arithmetic.

A jet stores the normalized Taylor coefficients ``coeffs[n] = f^(n)(t0)/n!``
of a scalar function at an implicit expansion point, truncated at a fixed
order.  Arithmetic propagates coefficients by the usual Cauchy-product and
composition recurrences, which gives exact (round-off level) derivatives up
to the truncation order.  That is the differentiation substrate for all
curvature formulas: the second expansion coefficient of a fibered metric
consumes six derivatives of the radial profile, hence the default order 8
(two orders of safety margin for composed expressions).

All values are immutable; every operation returns a fresh jet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DivisionByZeroJet, LogDomain, OrderExceeded, OrderMismatch

DEFAULT_ORDER = 8

Scalar = Union[int, float]


@dataclass(frozen=True)
class TaylorJet:
    """Normalized Taylor coefficients of a scalar function.

    ``coeffs`` has length ``order + 1`` and ``coeffs[0]`` is the function
    value at the expansion point.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise OrderMismatch("a jet needs at least the constant term")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(value: Scalar, order: int = DEFAULT_ORDER) -> "TaylorJet":
        return TaylorJet((float(value),) + (0.0,) * order)

    @staticmethod
    def variable(value: Scalar, order: int = DEFAULT_ORDER) -> "TaylorJet":
        """Jet of the identity function t -> t around ``value``."""
        if order == 0:
            return TaylorJet((float(value),))
        return TaylorJet((float(value), 1.0) + (0.0,) * (order - 1))

    # -- basic queries -----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return self.coeffs[0]

    def derivative(self, n: int) -> float:
        """n-th derivative at the expansion point, i.e. ``n! * coeffs[n]``."""
        if not 0 <= n <= self.order:
            raise OrderExceeded(f"derivative order {n} exceeds jet order {self.order}")
        return math.factorial(n) * self.coeffs[n]

    def truncated(self, order: int) -> "TaylorJet":
        if order > self.order:
            raise OrderExceeded(f"cannot extend jet of order {self.order} to {order}")
        return TaylorJet(self.coeffs[: order + 1])

    def deriv(self) -> "TaylorJet":
        """Jet of the derivative function, one order lower."""
        if self.order == 0:
            raise OrderExceeded("cannot differentiate an order-0 jet")
        return TaylorJet(tuple((n + 1) * c for n, c in enumerate(self.coeffs[1:])))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "TaylorJet":
        if isinstance(other, TaylorJet):
            if other.order != self.order:
                raise OrderMismatch(
                    f"jet orders differ: {self.order} vs {other.order}"
                )
            return other
        return TaylorJet.constant(other, self.order)

    def __add__(self, other) -> "TaylorJet":
        b = self._coerce(other)
        return TaylorJet(tuple(x + y for x, y in zip(self.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "TaylorJet":
        return TaylorJet(tuple(-x for x in self.coeffs))

    def __sub__(self, other) -> "TaylorJet":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "TaylorJet":
        return (-self) + other

    def __mul__(self, other) -> "TaylorJet":
        b = self._coerce(other)
        n = self.order
        out = [0.0] * (n + 1)
        for i, ai in enumerate(self.coeffs):
            if ai == 0.0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += ai * b.coeffs[j]
        return TaylorJet(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TaylorJet":
        b = self._coerce(other)
        if b.coeffs[0] == 0.0:
            raise DivisionByZeroJet("jet division by a jet with zero constant term")
        n = self.order
        out = [0.0] * (n + 1)
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                acc -= b.coeffs[j] * out[k - j]
            out[k] = acc / b.coeffs[0]
        return TaylorJet(tuple(out))

    def __rtruediv__(self, other) -> "TaylorJet":
        return TaylorJet.constant(other, self.order) / self

    def __pow__(self, p) -> "TaylorJet":
        if isinstance(p, int):
            if p == 0:
                return TaylorJet.constant(1.0, self.order)
            if p < 0:
                return 1.0 / (self ** (-p))
            half = self ** (p // 2)
            sq = half * half
            return sq * self if p % 2 else sq
        return exp(float(p) * log(self))


def exp(a: TaylorJet) -> TaylorJet:
    """Jet of exp(f) via the convolution recurrence e' = f' e."""
    n = a.order
    out = [0.0] * (n + 1)
    out[0] = math.exp(a.coeffs[0])
    for k in range(1, n + 1):
        acc = 0.0
        for j in range(1, k + 1):
            acc += j * a.coeffs[j] * out[k - j]
        out[k] = acc / k
    return TaylorJet(tuple(out))


def log(a: TaylorJet) -> TaylorJet:
    """Jet of log(f); requires a positive constant term."""
    if a.coeffs[0] <= 0.0:
        raise LogDomain(f"jet log needs positive value, got {a.coeffs[0]}")
    n = a.order
    out = [0.0] * (n + 1)
    out[0] = math.log(a.coeffs[0])
    for k in range(1, n + 1):
        acc = k * a.coeffs[k]
        for j in range(1, k):
            acc -= j * out[j] * a.coeffs[k - j]
        out[k] = acc / (k * a.coeffs[0])
    return TaylorJet(tuple(out))


def compose(outer: TaylorJet, inner: TaylorJet) -> TaylorJet:
    """Jet of the composite outer(inner(.)), with outer expanded at ``inner.value``.

    Horner evaluation of the outer polynomial in the nilpotent part of
    ``inner``; the caller is responsible for the matching expansion point.
    """
    if outer.order != inner.order:
        raise OrderMismatch(
            f"jet orders differ: {outer.order} vs {inner.order}"
        )
    shift = inner - inner.value
    acc = TaylorJet.constant(outer.coeffs[outer.order], inner.order)
    for k in range(outer.order - 1, -1, -1):
        acc = acc * shift + outer.coeffs[k]
    return acc
