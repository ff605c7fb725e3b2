"""Brute-force Bergman oracles: section norms by direct quadrature.

These reconstruct Bergman functions from first principles -- monomial
section norms by numerical integration of |z^p w^q|^2 against the full
metric weight e^(-m*potential) * det(complex Hessian), then kernel assembly
-- without using the fiber-moment factorization the fast path relies on.
Rotational symmetry keeps the Gram matrix diagonal, which the off-diagonal
probe certifies numerically.

The base chart is the complex line with potential k*log(1+|z|^2): sections
of the degree-mk bundle over the sphere correspond to the finite-norm
monomials on the chart, so the oracle is finite-dimensional per fiber
degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.special import roots_genlaguerre, roots_legendre

from .bergman import QuantizationSetup
from .errors import (OutOfDomain, PreconditionFailed, QuadratureNonConvergent,
                     TruncationInsufficient)
from .profiles import RadialProfile, profile_jet


@dataclass(frozen=True)
class GramOracleConfig:
    """Basis caps and quadrature resolution for the Gram-matrix oracle.

    ``q_cap`` bounds the fiber degree; the z-exponent cap defaults to the
    largest integrable exponent k*(m + q_cap) plus a safety margin.  Sample
    points are (|z|^2, rho) pairs with rho the scaled fiber radius.
    """

    bundle_degree: int
    power: int
    q_cap: int = 40
    p_cap: Optional[int] = None
    s_nodes: int = 200
    fiber_nodes: int = 200
    sample_points: tuple[tuple[float, float], ...] = (
        (0.0, 0.0), (0.5, 0.3), (1.0, 0.5), (2.0, 0.7))
    tail_tol: float = 1e-3

    def __post_init__(self):
        if self.bundle_degree < 1 or self.power < 1:
            raise PreconditionFailed("bundle degree and power must be >= 1")
        if self.q_cap < 2:
            raise PreconditionFailed("q_cap must be >= 2 for tail estimation")

    @property
    def effective_p_cap(self) -> int:
        if self.p_cap is not None:
            return self.p_cap
        return self.bundle_degree * (self.power + self.q_cap) + 8


@dataclass(frozen=True)
class Cp1OracleReport:
    k: int
    m: int
    grid: tuple[float, ...]          # |z|^2 sample values
    values: tuple[float, ...]        # reconstructed Bergman function
    target: float                    # m + 1/k
    max_abs_error: float
    max_spread: float
    norms: tuple[float, ...]


def cp1_bergman_oracle(k: int, m: int, z_grid: Sequence[float],
                       nodes: int = 200) -> Cp1OracleReport:
    """Bergman function of the degree-mk sphere bundle by radial quadrature.

    Monomial norms come from one-dimensional quadrature of the chart weight
    (no Beta closed form on this path); the kernel is then assembled and
    tested for constancy against m + 1/k.
    """
    if k < 1 or m < 1:
        raise PreconditionFailed("k, m must be >= 1")
    if len(z_grid) == 0:
        raise OutOfDomain("z_grid must be non-empty")
    # |z^j|^2 = k * int_0^inf s^j (1+s)^(-mk-2) ds, mapped to (0,1) by s = v/(1-v)
    xs, ws = roots_legendre(nodes)
    v = 0.5 * (xs + 1.0)
    wv = 0.5 * ws
    jmax = m * k
    norms = []
    for j in range(jmax + 1):
        integrand = v ** j * (1.0 - v) ** (jmax - j)
        norms.append(k * float(np.dot(wv, integrand)))
    if any(not (x > 0 and math.isfinite(x)) for x in norms):
        raise QuadratureNonConvergent("cp1 monomial norms are not all positive")
    values = []
    for s in z_grid:
        kernel = sum(s ** j / norms[j] for j in range(jmax + 1))
        values.append((1.0 + s) ** (-jmax) * kernel)
    target = m + 1.0 / k
    err = max(abs(val - target) for val in values)
    spread = max(values) - min(values)
    return Cp1OracleReport(k=k, m=m, grid=tuple(float(s) for s in z_grid),
                           values=tuple(values), target=target,
                           max_abs_error=err, max_spread=spread,
                           norms=tuple(norms))


@dataclass(frozen=True)
class HartogsOracleReport:
    samples: tuple[tuple[float, float], ...]
    values: tuple[float, ...]
    target: Optional[float]
    max_abs_error: Optional[float]
    tail_fraction: float             # worst top-shell tail estimate / value
    basis_size: int
    q_cap: int
    p_cap: int


def _profile_rho_arrays(p: RadialProfile, xi: np.ndarray):
    """F, F', F'' of the profile in rho-form on an array of points."""
    if p.family == "logball":
        om = 1.0 - xi
        return (-np.log(om) / p.A, 1.0 / (p.A * om), 1.0 / (p.A * om ** 2))
    if p.family == "linear":
        return (p.c * xi, np.full_like(xi, p.c), np.zeros_like(xi))
    if p.family == "logaffine":
        op = 1.0 + p.c * xi
        return (-np.log(op) / p.A, -(p.c / p.A) / op, (p.c ** 2 / p.A) / op ** 2)
    F = np.empty_like(xi)
    Fp = np.empty_like(xi)
    Fpp = np.empty_like(xi)
    for i, u in enumerate(xi):
        j = profile_jet(p, float(u), 2, "rho")
        F[i], Fp[i], Fpp[i] = j.derivative(0), j.derivative(1), j.derivative(2)
    return F, Fp, Fpp


def _radial_weight(cfg: GramOracleConfig, setup: QuantizationSetup):
    """Log-weights of the tensor quadrature in (|z|^2, rho) coordinates.

    Returns (log s, base potential phi, fiber nodes xi, fiber values F,
    log of the full measure including the Hessian determinant and all
    quadrature weights).
    """
    k, m = cfg.bundle_degree, cfg.power
    xs, ws = roots_legendre(cfg.s_nodes)
    sig = 0.5 * (xs + 1.0)
    wsig = 0.5 * ws
    s = sig / (1.0 - sig)
    jac = 1.0 / (1.0 - sig) ** 2
    phi = k * np.log1p(s)
    phi_p = k / (1.0 + s)
    phi_pp = -k / (1.0 + s) ** 2

    if setup.domain == "ball":
        xf, wf = roots_legendre(cfg.fiber_nodes)
        xi = 0.5 * (xf + 1.0)
        wxi = 0.5 * wf
        log_comp = np.zeros_like(xi)
    else:
        # integrate the scaled fiber variable against its exponential envelope
        rate = m * setup.profile.c if setup.profile.family == "linear" else float(m)
        xf, wf = roots_genlaguerre(cfg.fiber_nodes, 0)
        xi = xf / rate
        wxi = wf / rate
        log_comp = xf  # compensates the e^(-x) folded into the Laguerre weight

    F, Fp, Fpp = _profile_rho_arrays(setup.profile, xi)
    radial = Fp + xi * Fpp
    one_shift = 1.0 + xi * Fp
    if np.any(Fp <= 0) or np.any(radial <= 0) or np.any(one_shift <= 0):
        raise OutOfDomain("profile not admissible on the fiber quadrature range")

    # complex Hessian determinant of phi(s) + F(e^phi v) in (z, w), v = e^-phi xi
    Z = (np.outer(phi_p, one_shift)
         + s[:, None] * (np.outer(phi_pp, one_shift)
                         + np.outer(phi_p ** 2, xi * radial)))
    W = np.outer(np.exp(phi), radial)
    X = np.outer(s * np.exp(phi) * phi_p ** 2, xi * radial ** 2)
    det = Z * W - X
    if np.any(det <= 0):
        raise QuadratureNonConvergent("Hessian determinant not positive on the grid")

    with np.errstate(divide="ignore"):  # underflowing far-tail weights -> -inf
        logk = (np.log(det)
                - m * (phi[:, None] + F[None, :])
                - phi[:, None]
                + np.log(jac * wsig)[:, None]
                + (np.log(wxi) + log_comp)[None, :])
    return s, phi, xi, F, logk


def _norm_matrix(cfg: GramOracleConfig, setup: QuantizationSetup):
    """Diagonal Gram entries N[p, q] for the monomial basis z^p w^q.

    Exponents failing the integrability test (decay exponent of the z-axis
    integrand not below -1) are excluded via an infinite norm.
    """
    k, m = cfg.bundle_degree, cfg.power
    s, phi, xi, F, logk = _radial_weight(cfg, setup)
    P, Q = cfg.effective_p_cap, cfg.q_cap
    ls = np.log(s)
    parr = np.arange(P + 1, dtype=float)

    kexp = np.exp(logk)
    N = np.full((P + 1, Q + 1), np.inf)
    with np.errstate(divide="ignore", over="ignore"):
        for q in range(Q + 1):
            mcol = kexp @ (xi ** q)
            logcol = np.where(mcol > 0, np.log(np.where(mcol > 0, mcol, 1.0)), -np.inf)
            body = np.exp(parr[:, None] * ls[None, :]
                          + (logcol - q * phi)[None, :])
            vals = body.sum(axis=1)
            pmax = k * (m + q)  # z-integrability cap
            cut = min(pmax, P)
            N[: cut + 1, q] = vals[: cut + 1]
    return N


def hartogs_gram_oracle(cfg: GramOracleConfig,
                        setup: QuantizationSetup) -> HartogsOracleReport:
    """Reconstruct the fibered Bergman function from raw monomial norms.

    Tensor quadrature over the curved region in the two radial variables,
    one norm per monomial, kernel assembly at the configured sample points,
    and a geometric tail estimate of the dropped fiber degrees.
    """
    if setup.d != 1 or setup.d0 != 1:
        raise PreconditionFailed("the Gram oracle covers d = d0 = 1 models")
    if abs(setup.twist - 1.0) > 1e-12:
        raise PreconditionFailed("the bundle model has unit twist")
    m = cfg.power
    if abs(setup.alpha - m) > 1e-12:
        raise PreconditionFailed("setup level and oracle power disagree")
    k = cfg.bundle_degree
    N = _norm_matrix(cfg, setup)
    P, Q = cfg.effective_p_cap, cfg.q_cap
    parr = np.arange(P + 1, dtype=float)
    qarr = np.arange(Q + 1, dtype=float)

    try:
        from .bergman import closed_target

        target = closed_target(setup)
    except Exception:
        target = None

    values = []
    worst_tail = 0.0
    for s0, rho0 in cfg.sample_points:
        if s0 < 0 or rho0 < 0 or (setup.domain == "ball" and rho0 >= 1):
            raise OutOfDomain(f"sample point ({s0}, {rho0}) outside the model")
        phi0 = k * math.log1p(s0)
        F0 = profile_jet(setup.profile, rho0, 2, "rho").value
        with np.errstate(divide="ignore"):
            lp = parr * math.log(s0) if s0 > 0 else np.where(parr == 0, 0.0, -np.inf)
            lq = (qarr * (math.log(rho0) - phi0) if rho0 > 0
                  else np.where(qarr == 0, 0.0, -np.inf))
        logterm = lp[:, None] + lq[None, :] - m * (phi0 + F0)
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(np.isfinite(N), np.exp(logterm) / N, 0.0)
        shells = terms.sum(axis=0)
        eps_val = float(shells.sum())
        values.append(eps_val)
        if rho0 > 0 and shells[-2] > 0:
            ratio = shells[-1] / shells[-2]
            tail = shells[-1] * ratio / (1.0 - ratio) if ratio < 1 else math.inf
            worst_tail = max(worst_tail, tail / max(eps_val, 1e-300))
    if worst_tail > cfg.tail_tol:
        raise TruncationInsufficient(
            f"fiber-degree tail estimate {worst_tail:.3e} above {cfg.tail_tol:.1e}; "
            "raise q_cap")
    err = max(abs(v - target) for v in values) if target is not None else None
    basis = int(np.isfinite(N).sum())
    return HartogsOracleReport(samples=tuple(cfg.sample_points),
                               values=tuple(values), target=target,
                               max_abs_error=err, tail_fraction=worst_tail,
                               basis_size=basis, q_cap=Q, p_cap=P)


@dataclass(frozen=True)
class OffDiagonalEntry:
    first: tuple[int, int]
    second: tuple[int, int]
    magnitude: float   # |<e1, e2>| / sqrt(<e1,e1><e2,e2>)


def gram_offdiagonal_probe(cfg: GramOracleConfig, setup: QuantizationSetup,
                           pairs: Sequence[tuple[tuple[int, int], tuple[int, int]]],
                           radial_nodes: int = 32,
                           angular_nodes: int = 24) -> tuple[OffDiagonalEntry, ...]:
    """Numerically integrate off-diagonal Gram entries on a full 4-d grid.

    The integrand keeps its angular factors; the uniform angular grids each
    annihilate non-matching exponents, certifying the diagonality that the
    fast path assumes from rotational symmetry.
    """
    small = GramOracleConfig(bundle_degree=cfg.bundle_degree, power=cfg.power,
                             q_cap=cfg.q_cap, p_cap=cfg.p_cap,
                             s_nodes=radial_nodes, fiber_nodes=radial_nodes,
                             sample_points=cfg.sample_points, tail_tol=cfg.tail_tol)
    s, phi, xi, F, logk = _radial_weight(small, setup)
    weight = np.exp(logk)                      # radial measure incl. quad weights
    theta = 2.0 * math.pi * np.arange(angular_nodes) / angular_nodes
    out = []
    for (p1, q1), (p2, q2) in pairs:
        zpow = np.sqrt(s) ** (p1 + p2)
        vhalf = np.exp(-0.5 * (q1 + q2) * phi)
        wpow = np.sqrt(xi) ** (q1 + q2)
        radial = weight * np.outer(zpow * vhalf, wpow)
        az = np.exp(1j * (p1 - p2) * theta) / angular_nodes
        aw = np.exp(1j * (q1 - q2) * theta) / angular_nodes
        full = (radial[:, :, None, None]
                * az[None, None, :, None] * aw[None, None, None, :])
        entry = complex(full.sum())
        n1 = float((weight * np.outer(s ** p1 * np.exp(-q1 * phi), xi ** q1)).sum())
        n2 = float((weight * np.outer(s ** p2 * np.exp(-q2 * phi), xi ** q2)).sum())
        out.append(OffDiagonalEntry(first=(p1, q1), second=(p2, q2),
                                    magnitude=abs(entry) / math.sqrt(n1 * n2)))
    return tuple(out)
