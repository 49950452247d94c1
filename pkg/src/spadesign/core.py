"""Physical constants, error types and small numeric helpers.

Every quantity in the library is a plain ``float`` in SI base units
(Hz, m, H, F, A, K, ohm). Unit suffixes are only understood by
:func:`parse_quantity`, which the command line front end uses.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

# Aliases documenting the SI unit a float carries.
Frequency = float  # Hz
Length = float  # m
Inductance = float  # H
Capacitance = float  # F
Current = float  # A
Temperature = float  # K
Impedance = float  # ohm


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values (exact in the 2019 SI except the derived ones).

    Attributes:
        c: Speed of light, 299792458 m/s.
        h: Planck constant, 6.626070150e-34 J s.
        k_B: Boltzmann constant, 1.380649000e-23 J/K.
        e: Elementary charge, 1.602176634e-19 C.
    """

    c: float = 299792458.0
    h: float = 6.62607015e-34
    k_B: float = 1.380649e-23
    e: float = 1.602176634e-19

    @property
    def hbar(self) -> float:
        """Reduced Planck constant h/(2 pi), 1.054571817e-34 J s."""
        return self.h / (2 * math.pi)

    @property
    def Phi0(self) -> float:
        """Magnetic flux quantum h/(2e), 2.067833848e-15 Wb."""
        return self.h / (2 * self.e)


CONSTANTS = PhysicalConstants()

C = CONSTANTS.c
H_PLANCK = CONSTANTS.h
HBAR = CONSTANTS.hbar
K_B = CONSTANTS.k_B
E_CHARGE = CONSTANTS.e
PHI0 = CONSTANTS.Phi0


class DesignError(ValueError):
    """Base class for every error raised by the toolkit."""


class DomainError(DesignError):
    """An argument lies outside the domain of the operation."""


class DivergenceError(DesignError):
    """The requested quantity diverges at the given operating point."""


class ConvergenceError(DesignError):
    """An iteration that must converge did not (indicates a defect)."""


def require_positive(name: str, value: float) -> float:
    if not value > 0 or math.isnan(value):
        raise DomainError(f"{name} must be > 0, got {value!r}")
    return value


_AGM_MAX_ROUNDS = 64
_AGM_RTOL = 1e-14


def elliptic_k_agm(k: float) -> float:
    """Complete elliptic integral of the first kind K(k).

    Uses K(k) = pi / (2 AGM(1, sqrt(1 - k**2))) where AGM is the
    arithmetic-geometric mean. ``k`` is the modulus, not the parameter
    m = k**2.

    Raises:
        DomainError: if ``k`` is outside [0, 1).
    """
    if not 0.0 <= k < 1.0:
        raise DomainError(f"elliptic modulus must be in [0, 1), got {k!r}")
    a, b = 1.0, math.sqrt(1.0 - k * k)
    for _ in range(_AGM_MAX_ROUNDS):
        if abs(a - b) <= _AGM_RTOL * a:
            return math.pi / (a + b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    raise ConvergenceError(f"AGM did not converge for k={k!r}")


def db_from_linear(g: float) -> float:
    """Power ratio to decibels, 10 log10(g)."""
    if not g > 0:
        raise DomainError(f"power ratio must be > 0, got {g!r}")
    return 10.0 * math.log10(g)


def linear_from_db(g_db: float) -> float:
    """Decibels to power ratio."""
    return 10.0 ** (g_db / 10.0)


def power_gain(p_out: float, p_in: float) -> float:
    """Linear power gain P_out / P_in of an amplifier."""
    require_positive("p_in", p_in)
    require_positive("p_out", p_out)
    return p_out / p_in


# Unit suffix parsing -------------------------------------------------------

_PREFIXES = {
    "f": 1e-15,
    "p": 1e-12,
    "n": 1e-9,
    "u": 1e-6,
    "µ": 1e-6,
    "μ": 1e-6,
    "m": 1e-3,
    "": 1.0,
    "k": 1e3,
    "M": 1e6,
    "G": 1e9,
    "T": 1e12,
}

# Accepted spellings of each base unit.
_UNIT_ALIASES = {
    "m": ("m",),
    "Hz": ("Hz",),
    "K": ("K",),
    "ohm": ("ohm", "Ohm", "ohms", "Ω"),
    "H": ("H",),
    "F": ("F",),
    "A": ("A",),
    "V": ("V",),
    "W": ("W",),
    "rad/s": ("rad/s",),
    "dB": ("dB",),
}

_NUMBER = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?|[-+]?inf)\s*(.*?)\s*$")


class UnitError(DesignError):
    """A quantity string could not be read in the expected unit."""


def parse_quantity(text: str, unit: str | None = None) -> float:
    """Read ``"10um"``, ``"5.5 GHz"``, ``"150mK"`` etc. into SI base units.

    Args:
        text: Number with an optional SI-prefixed unit suffix. Whitespace
            between number and suffix is allowed. A bare number is taken
            to be in base units already.
        unit: Expected base unit (a key of the alias table), or ``None`` for
            dimensionless values that must carry no suffix. ``"dB"`` takes no
            prefix and is returned unconverted.

    Raises:
        UnitError: malformed number, unknown suffix, or wrong dimension.
    """
    match = _NUMBER.match(text)
    if not match:
        raise UnitError(f"cannot read quantity {text!r}")
    value = float(match.group(1))
    suffix = match.group(2)
    if not suffix:
        return value
    if unit is None:
        raise UnitError(f"{text!r}: expected a plain number, got suffix {suffix!r}")
    if unit == "dB":
        if suffix == "dB":
            return value
        raise UnitError(f"{text!r}: expected dB")
    for alias in _UNIT_ALIASES[unit]:
        if suffix.endswith(alias):
            prefix = suffix[: -len(alias)]
            if prefix in _PREFIXES:
                return value * _PREFIXES[prefix]
    raise UnitError(f"{text!r}: unknown suffix {suffix!r} for unit {unit}")
