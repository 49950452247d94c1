"""Kinetic and Josephson nonlinear inductances and the Josephson relations."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import PHI0, Current, DivergenceError, DomainError, Inductance, require_positive

# Below this |cos(phi)| the Josephson inductance is reported as divergent.
EPS_COS = 1e-9


@dataclass(frozen=True)
class KineticInductanceParams:
    """Thin-film kinetic inductance to quadratic order in bias current.

    ``L(i) = l_k0 * (1 + (i / i_star)**2) = l_k0 * (1 + alpha * i**2)``.
    """

    l_k0: Inductance
    i_star: Current

    def __post_init__(self):
        require_positive("l_k0", self.l_k0)
        require_positive("i_star", self.i_star)

    @property
    def alpha(self) -> float:
        """Nonlinearity coefficient in 1/A**2."""
        return 1.0 / self.i_star**2

    @classmethod
    def from_alpha(cls, l_k0: Inductance, alpha: float) -> "KineticInductanceParams":
        require_positive("alpha", alpha)
        return cls(l_k0, 1.0 / math.sqrt(alpha))


@dataclass(frozen=True)
class JunctionParams:
    i_c: Current
    phi: float = 0.0

    def __post_init__(self):
        require_positive("i_c", self.i_c)


def kinetic_inductance(p: KineticInductanceParams, i: Current) -> Inductance:
    return p.l_k0 * (1.0 + (i / p.i_star) ** 2)


def josephson_current(p: JunctionParams) -> Current:
    """Supercurrent I_c sin(phi) through the junction."""
    return p.i_c * math.sin(p.phi)


def josephson_voltage(dphi_dt: float) -> float:
    """Voltage (V) across a junction whose phase winds at ``dphi_dt`` rad/s."""
    if not math.isfinite(dphi_dt):
        raise DomainError(f"phase rate must be finite, got {dphi_dt!r}")
    return PHI0 / (2 * math.pi) * dphi_dt


def josephson_inductance(p: JunctionParams) -> Inductance:
    """Phase-dependent Josephson inductance Phi0 / (2 pi I_c cos(phi)).

    Negative values are returned for ``|phi| > pi/2`` (the branch beyond
    the divergence), matching the sign of cos(phi).

    Raises:
        DivergenceError: if ``|cos(phi)| < 1e-9``.
    """
    cos_phi = math.cos(p.phi)
    if abs(cos_phi) < EPS_COS:
        raise DivergenceError(
            f"Josephson inductance diverges at phi={p.phi!r} rad (|cos phi| < {EPS_COS:g})"
        )
    return PHI0 / (2 * math.pi * p.i_c * cos_phi)
