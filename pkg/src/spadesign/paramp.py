"""Parametric amplifier figures of merit and readout-chain noise budget."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .core import (
    H_PLANCK,
    HBAR,
    K_B,
    DesignError,
    DomainError,
    Frequency,
    Temperature,
    linear_from_db,
    require_positive,
)

DEGENERACY_RTOL = 1e-9


class InvalidConfigurationError(DesignError):
    pass


class MixingProcess(enum.Enum):
    THREE_WAVE = "3wm"
    FOUR_WAVE = "4wm"


@dataclass(frozen=True)
class MixingSpec:
    f_pump: Frequency
    f_signal: Frequency
    process: MixingProcess

    def __post_init__(self):
        require_positive("f_pump", self.f_pump)
        require_positive("f_signal", self.f_signal)


@dataclass(frozen=True)
class MixingResult:
    idlers: tuple[Frequency, ...]
    degenerate: bool


@dataclass(frozen=True)
class ChainStage:
    """One stage of a receiver chain; negative ``gain_db`` for attenuators."""

    gain_db: float
    noise_temp: Temperature

    def __post_init__(self):
        if not self.noise_temp >= 0:
            raise DomainError(f"noise temperature must be >= 0, got {self.noise_temp!r}")
        if not math.isfinite(self.gain_db):
            raise DomainError(f"stage gain must be finite, got {self.gain_db!r}")


def sql_noise_temperature(f: Frequency) -> Temperature:
    """Half-photon noise temperature h f / (2 k_B)."""
    require_positive("f", f)
    return HBAR * 2 * math.pi * f / (2 * K_B)


def haus_caves_min_added_noise(g_linear: float, f: Frequency) -> float:
    """Minimum input-referred added noise energy (J), hbar omega (G - 1) / 2."""
    require_positive("f", f)
    if not g_linear >= 1:
        raise DomainError(f"gain must be >= 1 for an amplifier, got {g_linear!r}")
    return 0.5 * HBAR * 2 * math.pi * f * (g_linear - 1)


def photons(energy: float, f: Frequency) -> float:
    """Express an energy as a number of quanta h f."""
    return energy / (H_PLANCK * f)


def gain_bandwidth(g_linear: float, kappa_linewidth: Frequency) -> Frequency:
    """Amplifier bandwidth kappa / sqrt(G) for a fixed resonator linewidth (Hz)."""
    if not g_linear >= 1:
        raise DomainError(f"gain must be >= 1, got {g_linear!r}")
    require_positive("kappa", kappa_linewidth)
    return kappa_linewidth / math.sqrt(g_linear)


def mixing_products(spec: MixingSpec) -> MixingResult:
    """Idler tones for three- or four-wave mixing.

    3WM: f_i = f_p - f_s, degenerate when f_s = f_p / 2 within 1e-9 f_p.
    4WM: f_i1 = 2 f_p - f_s and f_i2 = 2 f_s - f_p; never flagged degenerate.

    Raises:
        InvalidConfigurationError: if an idler would be at or below zero.
    """
    fp, fs = spec.f_pump, spec.f_signal
    if spec.process is MixingProcess.THREE_WAVE:
        idlers = {"idler": fp - fs}
        degenerate = abs(fs - fp / 2) <= DEGENERACY_RTOL * fp
    else:
        idlers = {"idler1 (2 f_p - f_s)": 2 * fp - fs, "idler2 (2 f_s - f_p)": 2 * fs - fp}
        degenerate = False
    for name, f_i in idlers.items():
        if not f_i > 0:
            raise InvalidConfigurationError(
                f"{name} = {f_i:.6g} Hz is not a positive frequency "
                f"(pump {fp:.6g} Hz, signal {fs:.6g} Hz)"
            )
    return MixingResult(idlers=tuple(idlers.values()), degenerate=degenerate)


def stage_contributions(stages: Sequence[ChainStage]) -> list[Temperature]:
    """Input-referred noise temperature of each stage, T_i / prod(G_j, j < i)."""
    if not stages:
        raise DesignError("noise cascade needs at least one stage")
    out = []
    gain = 1.0
    for stage in stages:
        out.append(stage.noise_temp / gain)
        gain *= linear_from_db(stage.gain_db)
    return out


def cascade_noise_temperature(stages: Sequence[ChainStage]) -> Temperature:
    """Friis system noise temperature referred to the chain input."""
    return math.fsum(stage_contributions(stages))
