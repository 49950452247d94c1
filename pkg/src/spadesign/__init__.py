"""Design calculations for superconducting resonators and parametric amplifiers."""

from .core import (
    CONSTANTS,
    ConvergenceError,
    DesignError,
    DivergenceError,
    DomainError,
    UnitError,
    db_from_linear,
    elliptic_k_agm,
    linear_from_db,
    parse_quantity,
    power_gain,
)
from .coupling import (
    CouplingLayout,
    QualityFactors,
    ResonanceModel,
    bandwidth_from_q,
    bare_quarter_wave_frequency,
    coupling_phases,
    dip_response,
    loaded_q,
    measure_dip,
    q_from_bandwidth,
    sweep_response,
)
from .cpw import (
    CpwCharacteristics,
    CpwGeometry,
    ResonatorMode,
    UnachievableImpedanceError,
    analyze,
    guided_wavelength,
    k_ratio_approx,
    lc_resonance,
    moduli,
    resonant_frequency,
    resonator_length,
    synthesize_gap,
)
from .nonlinear import (
    JunctionParams,
    KineticInductanceParams,
    josephson_current,
    josephson_inductance,
    josephson_voltage,
    kinetic_inductance,
)
from .paramp import (
    ChainStage,
    InvalidConfigurationError,
    MixingProcess,
    MixingResult,
    MixingSpec,
    cascade_noise_temperature,
    gain_bandwidth,
    haus_caves_min_added_noise,
    mixing_products,
    sql_noise_temperature,
)

__all__ = [
    "CONSTANTS",
    "ConvergenceError",
    "DesignError",
    "DivergenceError",
    "DomainError",
    "UnitError",
    "db_from_linear",
    "elliptic_k_agm",
    "linear_from_db",
    "parse_quantity",
    "power_gain",
    "CouplingLayout",
    "QualityFactors",
    "ResonanceModel",
    "bandwidth_from_q",
    "bare_quarter_wave_frequency",
    "coupling_phases",
    "dip_response",
    "loaded_q",
    "measure_dip",
    "q_from_bandwidth",
    "sweep_response",
    "CpwCharacteristics",
    "CpwGeometry",
    "ResonatorMode",
    "UnachievableImpedanceError",
    "analyze",
    "guided_wavelength",
    "k_ratio_approx",
    "lc_resonance",
    "moduli",
    "resonant_frequency",
    "resonator_length",
    "synthesize_gap",
    "JunctionParams",
    "KineticInductanceParams",
    "josephson_current",
    "josephson_inductance",
    "josephson_voltage",
    "kinetic_inductance",
    "ChainStage",
    "InvalidConfigurationError",
    "MixingProcess",
    "MixingResult",
    "MixingSpec",
    "cascade_noise_temperature",
    "gain_bandwidth",
    "haus_caves_min_added_noise",
    "mixing_products",
    "sql_noise_temperature",
]

__version__ = "0.1.0"
