"""Coplanar waveguide analysis, gap synthesis and resonator length relations.

Quasi-static conformal mapping for a CPW on a finite-thickness substrate with
zero metal thickness and no loss. Ratios of complete elliptic integrals
K(k)/K(k') are evaluated with the two-branch logarithmic approximation
(Hilberg form), which is accurate to a few ppm.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .core import (
    C,
    DesignError,
    DomainError,
    Frequency,
    Impedance,
    Length,
    require_positive,
)

# Branch switch of the logarithmic approximation.
K_RATIO_BRANCH = 0.71

SYNTH_S_MIN = 0.05e-6
SYNTH_S_MAX_PER_W = 50.0
SYNTH_Z_TOL = 1e-3
SYNTH_MAX_ITER = 200


class UnachievableImpedanceError(DesignError):
    """No gap inside the search bracket reaches the target impedance."""

    def __init__(self, z_target: float, z_min: float, z_max: float):
        self.z_target = z_target
        self.z_min = z_min
        self.z_max = z_max
        super().__init__(
            f"target {z_target:.6g} ohm is outside the achievable range "
            f"[{z_min:.6g}, {z_max:.6g}] ohm"
        )


class ResonatorMode(enum.Enum):
    HALF = "half"
    QUARTER = "quarter"

    @property
    def divisor(self) -> int:
        """Number of line lengths per guided wavelength at the fundamental."""
        return 2 if self is ResonatorMode.HALF else 4


@dataclass(frozen=True)
class CpwGeometry:
    """CPW cross-section.

    Attributes:
        w: Center conductor width (m).
        s: Gap between center conductor and ground planes (m).
        h: Substrate thickness (m).
        eps_r: Substrate relative permittivity.
    """

    w: Length
    s: Length
    h: Length
    eps_r: float

    def __post_init__(self):
        require_positive("w", self.w)
        require_positive("s", self.s)
        require_positive("h", self.h)
        if not self.eps_r >= 1.0:
            raise DomainError(f"relative permittivity must be >= 1, got {self.eps_r!r}")


@dataclass(frozen=True)
class CpwCharacteristics:
    k0: float
    k1: float
    eps_eff: float
    z0: Impedance
    v_p: float


def moduli(g: CpwGeometry) -> tuple[float, float]:
    """Geometric modulus k0 and substrate modulus k1."""
    k0 = g.w / (g.w + 2 * g.s)
    return k0, math.exp(_log_k1(g))


def _log_k1(g: CpwGeometry) -> float:
    a = math.pi * g.w / (4 * g.h)
    b = math.pi * (g.w + 2 * g.s) / (4 * g.h)
    if b > 20:
        # thin substrate: sinh would overflow
        return _log_sinh(a) - _log_sinh(b)
    return math.log(math.sinh(a) / math.sinh(b))


def _log_sinh(x: float) -> float:
    return x + math.log1p(-math.exp(-2 * x)) - math.log(2)


def k_ratio_approx(k: float) -> float:
    """K(k)/K(k') with k' = sqrt(1 - k**2), logarithmic approximation.

    For k <= 0.71 uses pi / ln(2 (1 + sqrt k') / (1 - sqrt k')), above it
    ln(2 (1 + sqrt k) / (1 - sqrt k)) / pi.
    """
    if not 0.0 < k < 1.0:
        raise DomainError(f"modulus must be in (0, 1), got {k!r}")
    if k <= K_RATIO_BRANCH:
        return _lower_branch(k, math.log(k))
    sqrt_k = math.sqrt(k)
    return math.log(2 * (1 + sqrt_k) / (1 - sqrt_k)) / math.pi


def _lower_branch(k: float, log_k: float) -> float:
    # 1 - sqrt(k') = k**2 / ((1 + k')(1 + sqrt(k'))), taken in log form so
    # tiny moduli neither cancel nor underflow
    kp = math.sqrt(1.0 - k * k)
    sqrt_kp = math.sqrt(kp)
    return math.pi / (math.log(2 * (1 + sqrt_kp) ** 2 * (1 + kp)) - 2 * log_k)


def analyze(g: CpwGeometry) -> CpwCharacteristics:
    """Effective permittivity, impedance and phase velocity of a CPW."""
    k0, k1 = moduli(g)
    r0 = k_ratio_approx(k0)
    # k1 < k0 always; evaluate from its logarithm in case it underflows
    r1 = k_ratio_approx(k1) if k1 > K_RATIO_BRANCH else _lower_branch(k1, _log_k1(g))
    eps_eff = 1 + (g.eps_r - 1) / 2 * r1 / r0
    z0 = 30 * math.pi / math.sqrt(eps_eff) / r0
    return CpwCharacteristics(k0=k0, k1=k1, eps_eff=eps_eff, z0=z0, v_p=C / math.sqrt(eps_eff))


def synth_bracket(w: Length) -> tuple[Length, Length]:
    return SYNTH_S_MIN, SYNTH_S_MAX_PER_W * w


def synthesize_gap(w: Length, h: Length, eps_r: float, z_target: Impedance) -> Length:
    """Gap ``s`` giving impedance ``z_target`` for fixed width and substrate.

    Z0 increases monotonically with the gap, so the root is bracketed between
    0.05 um and 50 w and found with Brent's method.

    Raises:
        UnachievableImpedanceError: target outside [Z0(s_min), Z0(s_max)].
    """
    require_positive("z_target", z_target)
    s_lo, s_hi = synth_bracket(w)

    def z0_of(s: float) -> float:
        return analyze(CpwGeometry(w, s, h, eps_r)).z0

    z_lo, z_hi = z0_of(s_lo), z0_of(s_hi)
    if not z_lo <= z_target <= z_hi:
        raise UnachievableImpedanceError(z_target, z_lo, z_hi)
    if z_target - z_lo <= SYNTH_Z_TOL:
        return s_lo
    if z_hi - z_target <= SYNTH_Z_TOL:
        return s_hi
    s = brentq(
        lambda s: z0_of(s) - z_target,
        s_lo,
        s_hi,
        xtol=1e-15,
        rtol=1e-15,
        maxiter=SYNTH_MAX_ITER,
    )
    return s


def guided_wavelength(f: Frequency, eps_eff: float) -> Length:
    require_positive("f", f)
    _check_eps_eff(eps_eff)
    return C / (f * math.sqrt(eps_eff))


def resonant_frequency(l: Length, eps_eff: float, mode: ResonatorMode) -> Frequency:
    """Fundamental of an open/open (HALF) or shorted/open (QUARTER) line."""
    require_positive("length", l)
    _check_eps_eff(eps_eff)
    return C / math.sqrt(eps_eff) / (mode.divisor * l)


def resonator_length(f_target: Frequency, eps_eff: float, mode: ResonatorMode) -> Length:
    require_positive("f_target", f_target)
    _check_eps_eff(eps_eff)
    return C / (mode.divisor * f_target * math.sqrt(eps_eff))


def lc_resonance(l: float, c_val: float) -> Frequency:
    """Resonance 1 / (2 pi sqrt(L C)) of a lumped LC tank."""
    require_positive("inductance", l)
    require_positive("capacitance", c_val)
    return 1.0 / (2 * math.pi * math.sqrt(l * c_val))


def _check_eps_eff(eps_eff: float) -> None:
    if not eps_eff >= 1.0:
        raise DomainError(f"effective permittivity must be >= 1, got {eps_eff!r}")
