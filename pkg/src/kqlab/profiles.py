"""Radial profiles of fibered Kähler potentials.

The profile F enters the potential either through the logarithmic fiber
variable ``t`` (``potential = phi + F(t)``, ``t = twist*phi + log|w|^2``) or
through the multiplicative one ``rho = e^t``.  Both parameterizations are
exposed; they are related by ``F_t(t) = F_rho(e^t)``.

Three closed families cover every constant-coefficient case:

* ``log_ball(A)``:    F_t(t) = -(1/A) log(1 - e^t),   A > 0,  t < 0
* ``linear(c)``:      F_rho(rho) = c rho,             c > 0
* ``log_affine(A,c)``: F_t(t) = -(1/A) log(1 + c e^t), c > 0 (convex for A < 0)

All three share the quadratic momentum profile x -> x + A x^2 (A = 0 for the
linear family), where x = F_t'(t) and the momentum profile is F_t'' viewed as
a function of x.  ``custom`` profiles supply a jet-producing rule instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import jets
from .errors import DegenerateJet, EmptyGrid, KQLabError, OutOfDomain
from .jets import DEFAULT_ORDER, TaylorJet

JetRule = Callable[[float, int], TaylorJet]

_FAMILIES = ("logball", "linear", "logaffine", "custom")


@dataclass(frozen=True)
class RadialProfile:
    """A radial profile F with its family tag and parameters.

    ``A`` is the quadratic coefficient of the momentum profile x + A x^2
    (zero for the linear family); ``c`` the scale parameter of the linear
    and log-affine families.  Custom profiles carry a rule producing jets of
    F in ``rule_form`` ("t" or "rho"); the other form is obtained by
    composing with exp/log jets.
    """

    family: str
    A: float = 0.0
    c: float = 1.0
    rule: Optional[JetRule] = None
    rule_form: str = "t"

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown profile family {self.family!r}")
        if self.family == "logball" and self.A <= 0:
            raise ValueError("log_ball needs A > 0")
        if self.family in ("linear", "logaffine") and self.c <= 0:
            raise ValueError(f"{self.family} needs c > 0")
        if self.family == "logaffine" and self.A == 0:
            raise ValueError("log_affine needs A != 0")
        if self.family == "custom" and self.rule is None:
            raise ValueError("custom profile needs a jet rule")

    def scaled(self, factor: float) -> "RadialProfile":
        """The profile ``factor * F`` (same family, rescaled parameters)."""
        if factor <= 0:
            raise ValueError("scaling factor must be positive")
        if self.family == "logball":
            return log_ball(self.A / factor)
        if self.family == "linear":
            return linear(self.c * factor)
        if self.family == "logaffine":
            return log_affine(self.A / factor, self.c)
        rule, form = self.rule, self.rule_form
        return custom(lambda p, order: factor * rule(p, order), form)


def log_ball(A: float) -> RadialProfile:
    return RadialProfile("logball", A=A)


def linear(c: float) -> RadialProfile:
    return RadialProfile("linear", c=c)


def log_affine(A: float, c: float) -> RadialProfile:
    return RadialProfile("logaffine", A=A, c=c)


def custom(rule: JetRule, form: str = "t") -> RadialProfile:
    if form not in ("t", "rho"):
        raise ValueError("rule_form must be 't' or 'rho'")
    return RadialProfile("custom", rule=rule, rule_form=form)


def profile_jet(p: RadialProfile, point: float, order: int = DEFAULT_ORDER,
                form: str = "t") -> TaylorJet:
    """Jet of F at ``point`` in the requested parameterization."""
    if form not in ("t", "rho"):
        raise ValueError("form must be 't' or 'rho'")
    if form == "rho" and point < 0:
        raise OutOfDomain(f"rho must be non-negative, got {point}")

    if p.family == "logball":
        if form == "t":
            if point >= 0:
                raise OutOfDomain(f"log_ball needs t < 0, got {point}")
            e = jets.exp(TaylorJet.variable(point, order))
            return (-1.0 / p.A) * jets.log(1.0 - e)
        if point >= 1:
            raise OutOfDomain(f"log_ball needs rho < 1, got {point}")
        return (-1.0 / p.A) * jets.log(1.0 - TaylorJet.variable(point, order))

    if p.family == "linear":
        if form == "t":
            return p.c * jets.exp(TaylorJet.variable(point, order))
        return p.c * TaylorJet.variable(point, order)

    if p.family == "logaffine":
        if form == "t":
            e = jets.exp(TaylorJet.variable(point, order))
            return (-1.0 / p.A) * jets.log(1.0 + p.c * e)
        return (-1.0 / p.A) * jets.log(1.0 + p.c * TaylorJet.variable(point, order))

    # custom: produce in native form, convert by composition if needed
    if form == p.rule_form:
        return p.rule(point, order)
    if form == "t":
        inner = jets.exp(TaylorJet.variable(point, order))
        outer = p.rule(inner.value, order)
        return jets.compose(outer, inner)
    if point <= 0:
        raise OutOfDomain("converting a t-rule to rho-form needs rho > 0")
    inner = jets.log(TaylorJet.variable(point, order))
    outer = p.rule(inner.value, order)
    return jets.compose(outer, inner)


def t_from_x(p: RadialProfile, x: float) -> float:
    """Invert the moment map x = F_t'(t) (closed form for the built-ins)."""
    if x <= 0:
        raise OutOfDomain(f"fiber coordinate x must be positive, got {x}")
    if p.family == "logball":
        return math.log(p.A * x / (1.0 + p.A * x))
    if p.family == "linear":
        return math.log(x / p.c)
    if p.family == "logaffine":
        v = -p.A * x
        if not 0 < v < 1:
            raise OutOfDomain(f"x={x} outside the log_affine range (0, {-1/p.A})")
        return math.log(v / (p.c * (1.0 - v)))
    # custom: bisection on the increasing map t -> F'(t)
    lo, hi = -40.0, 40.0
    f = lambda t: profile_jet(p, t, 1, "t").derivative(1) - x
    flo, fhi = f(lo), f(hi)
    if flo > 0 or fhi < 0:
        raise OutOfDomain(f"x={x} not attained by the custom profile")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class FiberCoordinates:
    """Fiber moment coordinate x = F'(t) and x-derivatives of the momentum profile.

    ``mom`` lists the momentum profile value and its first four x-derivatives;
    the chain rule d/dx = (1/mom) d/dt is the defining relation.
    """

    x: float
    mom: tuple[float, float, float, float, float]


def _ddx(u: TaylorJet, phi: TaylorJet) -> TaylorJet:
    """x-derivative d/dx = (1/phi) d/dt on jets in t."""
    du = u.deriv()
    return du / phi.truncated(du.order)


def fiber_coordinates(p: RadialProfile, t: float, order: int = DEFAULT_ORDER) -> FiberCoordinates:
    f = profile_jet(p, t, order, "t")
    xj = f.deriv()
    phij = xj.deriv()
    if xj.value <= 0:
        raise OutOfDomain(f"F'(t) = {xj.value} is not positive at t={t}")
    if phij.value <= 0:
        raise DegenerateJet(f"F''(t) = {phij.value} is not positive at t={t}")
    mom = [phij.value]
    cur = phij
    for _ in range(4):
        cur = _ddx(cur, phij.truncated(cur.order))
        mom.append(cur.value)
    return FiberCoordinates(x=xj.value, mom=tuple(mom))


@dataclass(frozen=True)
class AdmissibilityPoint:
    t: float
    x: float
    mom: float
    convex: bool          # F'' > 0
    positive_shift: bool  # 1 + twist * x > 0


@dataclass(frozen=True)
class AdmissibilityReport:
    points: tuple[AdmissibilityPoint, ...]
    admissible: bool
    completeness: str            # "complete" | "incomplete" | "inconclusive"
    integral_estimate: float     # partial integral of sqrt(F'') toward the boundary

    def __bool__(self) -> bool:  # pragma: no cover - convenience
        return self.admissible


# 16-node Gauss-Legendre on [-1, 1] for the completeness segments
_GL16 = None


def _gl16():
    global _GL16
    if _GL16 is None:
        from scipy.special import roots_legendre

        _GL16 = roots_legendre(16)
    return _GL16


def _sqrt_fpp(p: RadialProfile, t: float) -> float:
    fpp = profile_jet(p, t, 2, "t").derivative(2)
    return math.sqrt(fpp) if fpp > 0 else 0.0


def _segment_integral(p: RadialProfile, a: float, b: float) -> float:
    xs, ws = _gl16()
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * sum(w * _sqrt_fpp(p, mid + half * x) for x, w in zip(xs, ws))


def _fiber_length_verdict(p: RadialProfile, domain: str, threshold: float,
                          tail_tol: float) -> tuple[str, float]:
    """Completeness of the fiber metric: does the length integral of
    sqrt(F'') diverge toward the domain boundary?

    Segment increments toward the boundary are extrapolated geometrically:
    non-decaying increments mean a divergent integral (complete); a
    geometric tail below ``tail_tol`` means convergence (incomplete).
    The running total is also compared against ``threshold`` directly.
    """
    t0 = -2.0 * math.log(2.0)
    total = 0.0
    segs: list[float] = []
    if domain == "ball":
        edges = [t0] + [-(2.0 ** -j) for j in range(1, 53)]
    else:
        edges = [t0] + [t0 + 4.0 * j for j in range(1, 81)]
    for a, b in zip(edges, edges[1:]):
        try:
            seg = _segment_integral(p, a, b)
        except (KQLabError, OverflowError, ValueError):
            break  # cannot evaluate closer to the boundary; judge what we have
        segs.append(seg)
        total += seg
        if total > threshold:
            return "complete", total
    if len(segs) < 4:
        return "inconclusive", total
    tail = [s for s in segs[-6:] if s > 0]
    if len(tail) < 2:
        return ("incomplete", total) if total < threshold else ("complete", total)
    ratios = [b / a for a, b in zip(tail, tail[1:])]
    r = sorted(ratios)[len(ratios) // 2]
    if r >= 0.95:
        # increments do not decay: extrapolated integral exceeds any threshold
        return "complete", math.inf
    tail_estimate = tail[-1] * r / (1.0 - r)
    if tail_estimate < tail_tol:
        return "incomplete", total
    return "inconclusive", total


def admissibility(p: RadialProfile, twist: float, domain: str,
                  grid: Sequence[float], threshold: float = 1e3,
                  tail_tol: float = 1e-6) -> AdmissibilityReport:
    """Pointwise positivity flags plus a completeness verdict for the fiber metric."""
    if domain not in ("ball", "fullspace"):
        raise ValueError("domain must be 'ball' or 'fullspace'")
    if len(grid) == 0:
        raise EmptyGrid("admissibility needs a non-empty grid")
    pts = []
    ok = True
    for t in grid:
        f = profile_jet(p, t, 2, "t")
        x, mom = f.derivative(1), f.derivative(2)
        point = AdmissibilityPoint(
            t=t, x=x, mom=mom,
            convex=mom > 0,
            positive_shift=1.0 + twist * x > 0,
        )
        ok = ok and point.convex and point.positive_shift and x > 0
        pts.append(point)
    verdict, estimate = _fiber_length_verdict(p, domain, threshold, tail_tol)
    return AdmissibilityReport(points=tuple(pts), admissible=ok,
                               completeness=verdict, integral_estimate=estimate)
