"""Gamma-family special functions and exact product/dimension formulas.

Everything is computed in log space (``scipy.special.gammaln``) so that
ratio-of-Gamma closed forms stay finite well past the overflow point of
``Gamma`` itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import gammaln

from .errors import NegativeInput, NonPositiveArgument


def log_gamma(x: float) -> float:
    if x <= 0.0:
        raise NonPositiveArgument(f"log_gamma needs x > 0, got {x}")
    return float(gammaln(x))


def gamma_ratio(a: float, b: float) -> float:
    """Gamma(a) / Gamma(b) for positive a, b, via exp(logGamma difference)."""
    if a <= 0.0 or b <= 0.0:
        raise NonPositiveArgument(f"gamma_ratio needs a, b > 0, got ({a}, {b})")
    return math.exp(float(gammaln(a) - gammaln(b)))


def beta(a: float, b: float) -> float:
    if a <= 0.0 or b <= 0.0:
        raise NonPositiveArgument(f"beta needs a, b > 0, got ({a}, {b})")
    return math.exp(float(gammaln(a) + gammaln(b) - gammaln(a + b)))


def product_shifted(level: float, shift: float, n: int) -> float:
    """prod_{j=1..n} (level - j*shift), as an exact finite product.

    Total for all real inputs; agrees with the Gamma-ratio form
    ``shift**n * Gamma(level/shift) / Gamma(level/shift - n)`` wherever the
    latter is defined.
    """
    if n < 1:
        raise NegativeInput(f"product needs n >= 1, got {n}")
    out = 1.0
    for j in range(1, n + 1):
        out *= level - j * shift
    return out


@dataclass(frozen=True)
class ShiftedProduct:
    """A product prod_{j=1..n}(level - j*shift) as a value object."""

    level: float
    shift: float
    n: int

    @property
    def value(self) -> float:
        return product_shifted(self.level, self.shift, self.n)


def dim_h0_cpd(d: int, m: int) -> int:
    """Dimension (1/d!) * prod_{j=1..d} (m + j) of degree-<=m polynomials in d variables."""
    if d < 1 or m < 0:
        raise NegativeInput(f"need d >= 1 and m >= 0, got d={d}, m={m}")
    num = 1
    for j in range(1, d + 1):
        num *= m + j
    return num // math.factorial(d)
