"""Quality factors, feedline coupling phases and the notch (dip) response.

The dip model is the ideal side-coupled resonator seen in transmission,

    S(f) = 1 - (Q_L / Q_ext) / (1 + 2j Q_L (f - f_r) / f_r)

which has no impedance-mismatch background or Fano asymmetry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import C, DesignError, DomainError, Frequency, Length, require_positive


@dataclass(frozen=True)
class QualityFactors:
    """Internal and external Q. ``q_int`` may be ``math.inf`` (lossless)."""

    q_int: float
    q_ext: float
    q_loaded: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q_loaded", loaded_q(self.q_int, self.q_ext))


@dataclass(frozen=True)
class CouplingLayout:
    """Side-coupled quarter-wave resonator split into open, coupled and
    shorted sections.

    ``l_open`` may be zero (coupling section at the open end); the other
    two lengths must be positive.
    """

    l_open: Length
    l_couple: Length
    l_short: Length
    eps_eff: float
    kappa_c: float = 0.0

    def __post_init__(self):
        if not self.l_open >= 0:
            raise DomainError(f"l_open must be >= 0, got {self.l_open!r}")
        require_positive("l_couple", self.l_couple)
        require_positive("l_short", self.l_short)
        if not self.eps_eff >= 1:
            raise DomainError(f"effective permittivity must be >= 1, got {self.eps_eff!r}")
        if not 0 <= self.kappa_c < 1:
            raise DomainError(f"coupling coefficient must be in [0, 1), got {self.kappa_c!r}")

    @property
    def total_length(self) -> Length:
        return self.l_open + self.l_couple + self.l_short

    @property
    def phase_velocity(self) -> float:
        return C / math.sqrt(self.eps_eff)


@dataclass(frozen=True)
class ResonanceModel:
    f_r: Frequency
    q: QualityFactors

    def __post_init__(self):
        require_positive("f_r", self.f_r)


def loaded_q(q_int: float, q_ext: float) -> float:
    """Harmonic combination 1 / (1/Q_int + 1/Q_ext)."""
    require_positive("q_int", q_int)
    require_positive("q_ext", q_ext)
    return 1.0 / (1.0 / q_int + 1.0 / q_ext)


def q_from_bandwidth(f0: Frequency, delta_f: Frequency) -> float:
    require_positive("f0", f0)
    require_positive("delta_f", delta_f)
    return f0 / delta_f


def bandwidth_from_q(f0: Frequency, q: float) -> Frequency:
    require_positive("f0", f0)
    require_positive("q", q)
    return f0 / q


def bare_quarter_wave_frequency(layout: CouplingLayout) -> Frequency:
    """Quarter-wave frequency of the whole line, ignoring the feedline load."""
    return layout.phase_velocity / (4 * layout.total_length)


def coupling_phases(layout: CouplingLayout) -> tuple[float, float]:
    """Electrical phases (theta, psi) in rad at the bare resonance.

    theta spans the coupled section; psi spans the coupled section plus
    twice the open section.
    """
    f_r0 = bare_quarter_wave_frequency(layout)
    beta = 2 * math.pi * f_r0 / layout.phase_velocity
    theta = beta * layout.l_couple
    psi = beta * (layout.l_couple + 2 * layout.l_open)
    return theta, psi


def dip_response(model: ResonanceModel, f):
    """Complex notch transmission at ``f`` (scalar or array, Hz)."""
    q_l = model.q.q_loaded
    detuning = (np.asarray(f, dtype=float) - model.f_r) / model.f_r
    s = 1 - (q_l / model.q.q_ext) / (1 + 2j * q_l * detuning)
    return complex(s) if np.ndim(s) == 0 else s


@dataclass(frozen=True)
class Sweep:
    """Frequency-ordered response samples."""

    freq: np.ndarray
    s: np.ndarray

    def __len__(self) -> int:
        return len(self.freq)

    def __iter__(self):
        return iter(zip(self.freq.tolist(), self.s.tolist()))


def sweep_response(model: ResonanceModel, f_start: Frequency, f_stop: Frequency, points: int) -> Sweep:
    """Uniform sweep including both endpoints."""
    if not f_start < f_stop:
        raise DesignError(f"f_start must be below f_stop ({f_start!r} >= {f_stop!r})")
    if points < 2:
        raise DesignError(f"a sweep needs at least 2 points, got {points!r}")
    require_positive("f_start", f_start)
    freq = np.linspace(f_start, f_stop, points)
    return Sweep(freq=freq, s=dip_response(model, freq))


@dataclass(frozen=True)
class DipSummary:
    f_dip: Frequency
    depth_db: float
    fwhm: Frequency
    q_loaded: float


def measure_dip(sweep: Sweep, baseline: float = 1.0) -> DipSummary:
    """Locate the dip and its full width at half depth.

    Half depth is taken in power, halfway between the minimum |S|**2 and
    ``baseline`` (the off-resonance |S|**2, 1 for the ideal model).
    Crossings are linearly interpolated between grid points.

    Raises:
        DesignError: if the half-depth level is not crossed on both sides.
    """
    power = np.abs(sweep.s) ** 2
    i_min = int(np.argmin(power))
    level = 0.5 * (power[i_min] + baseline)
    f = sweep.freq

    left = np.nonzero(power[: i_min + 1] >= level)[0]
    right = np.nonzero(power[i_min:] >= level)[0]
    if len(left) == 0 or len(right) == 0:
        raise DesignError("sweep does not cover the full dip width")
    i_l = left[-1]
    i_r = i_min + right[0]
    f_l = _cross(f[i_l], f[i_l + 1], power[i_l], power[i_l + 1], level)
    f_r = _cross(f[i_r - 1], f[i_r], power[i_r - 1], power[i_r], level)
    fwhm = f_r - f_l
    f_dip = float(f[i_min])
    depth_db = 10 * math.log10(power[i_min]) if power[i_min] > 0 else -math.inf
    return DipSummary(f_dip=f_dip, depth_db=depth_db, fwhm=fwhm, q_loaded=q_from_bandwidth(f_dip, fwhm))


def _cross(f0, f1, p0, p1, level):
    return float(f0 + (level - p0) * (f1 - f0) / (p1 - p0))
