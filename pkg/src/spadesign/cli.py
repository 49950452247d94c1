"""Command line front end.

Quantities accept SI-prefixed unit suffixes (``10um``, ``5.5GHz``,
``150 mK``); bare numbers are SI base units. Any option can also come
from a ``key = value`` file passed with ``--config``; options given on the
command line win.

Exit codes: 0 success, 1 domain or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from . import coupling, cpw, nonlinear, paramp
from .core import (
    DesignError,
    UnitError,
    db_from_linear,
    elliptic_k_agm,
    linear_from_db,
    parse_quantity,
    power_gain,
)

CSV_HEADER = ("freq_hz", "s_mag_db", "s_phase_deg")

# Walkthrough reference values reported for the example design.
PAPER_Z0 = 50.0
PAPER_EPS_EFF = 6.3
PAPER_GAP = 6e-6
PAPER_LENGTH = 5.43e-3
PAPER_F_R = 5.5e9
PAPER_KAPPA = 0.093
PAPER_Q = 15000.0


class ConfigError(DesignError):
    pass


def _quantity(unit):
    def parse(text):
        try:
            return parse_quantity(text, unit)
        except UnitError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    parse.__name__ = unit or "number"
    return parse


LENGTH = _quantity("m")
FREQ = _quantity("Hz")
OHM = _quantity("ohm")
HENRY = _quantity("H")
FARAD = _quantity("F")
AMPERE = _quantity("A")
WATT = _quantity("W")
DB = _quantity("dB")
RATE = _quantity("rad/s")
NUMBER = _quantity(None)


def _count(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def _g(x):
    return f"{x:.6g}"


def _print_rows(rows):
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        args._parser.error(f"missing required option(s): {flags}")


def _geometry(args):
    _need(args, "w", "s", "h", "er")
    return cpw.CpwGeometry(args.w, args.s, args.h, args.er)


# cpw ----------------------------------------------------------------------


def cmd_cpw_analyze(args):
    g = _geometry(args)
    ch = cpw.analyze(g)
    _print_rows(
        [
            ("k0", _g(ch.k0)),
            ("k1", _g(ch.k1)),
            ("eps_eff", _g(ch.eps_eff)),
            ("z0", f"{_g(ch.z0)} ohm"),
            ("v_p", f"{_g(ch.v_p)} m/s"),
        ]
    )


def cmd_cpw_synth(args):
    _need(args, "w", "h", "er", "z0")
    s = cpw.synthesize_gap(args.w, args.h, args.er, args.z0)
    ch = cpw.analyze(cpw.CpwGeometry(args.w, s, args.h, args.er))
    _print_rows(
        [
            ("s", f"{_g(s * 1e6)} um"),
            ("z0", f"{_g(ch.z0)} ohm"),
            ("eps_eff", _g(ch.eps_eff)),
        ]
    )


def cmd_cpw_kratio(args):
    _need(args, "k")
    approx = cpw.k_ratio_approx(args.k)
    exact = elliptic_k_agm(args.k) / elliptic_k_agm(math.sqrt(1 - args.k**2))
    _print_rows(
        [
            ("K(k)/K(k') approx", _g(approx)),
            ("K(k)/K(k') AGM", _g(exact)),
            ("relative error", f"{abs(approx / exact - 1):.3e}"),
        ]
    )


# resonators ---------------------------------------------------------------


def _eps_eff(args):
    if args.eps_eff is not None:
        return args.eps_eff
    if all(getattr(args, n) is not None for n in ("w", "s", "h", "er")):
        return cpw.analyze(_geometry(args)).eps_eff
    args._parser.error("give --eps-eff or the geometry --w --s --h --er")


def cmd_resonator(args):
    if (args.length is None) == (args.freq is None):
        args._parser.error("give exactly one of --length or --freq")
    mode = cpw.ResonatorMode(args.mode)
    eps_eff = _eps_eff(args)
    if args.freq is not None:
        f = args.freq
        length = cpw.resonator_length(f, eps_eff, mode)
    else:
        length = args.length
        f = cpw.resonant_frequency(length, eps_eff, mode)
    _print_rows(
        [
            ("mode", mode.value),
            ("eps_eff", _g(eps_eff)),
            ("length", f"{_g(length * 1e3)} mm"),
            ("frequency", f"{_g(f / 1e9)} GHz"),
            ("guided wavelength", f"{_g(cpw.guided_wavelength(f, eps_eff) * 1e3)} mm"),
        ]
    )


def cmd_lc(args):
    _need(args, "l", "c")
    f = cpw.lc_resonance(args.l, args.c)
    _print_rows([("f0", f"{_g(f / 1e9)} GHz")])


def cmd_quality_loaded(args):
    _need(args, "q_int", "q_ext")
    _print_rows([("q_loaded", _g(coupling.loaded_q(args.q_int, args.q_ext)))])


def cmd_quality_bandwidth(args):
    _need(args, "f0")
    if (args.df is None) == (args.q is None):
        args._parser.error("give exactly one of --df or --q")
    if args.df is not None:
        rows = [("q", _g(coupling.q_from_bandwidth(args.f0, args.df)))]
    else:
        rows = [("bandwidth", f"{_g(coupling.bandwidth_from_q(args.f0, args.q) / 1e3)} kHz")]
    _print_rows(rows)


def _layout(args):
    _need(args, "l_open", "l_couple", "l_short", "eps_eff")
    if not args.l_open > 0:
        raise DesignError(f"l_open must be > 0, got {args.l_open!r}")
    return coupling.CouplingLayout(
        args.l_open, args.l_couple, args.l_short, args.eps_eff, args.kappa if args.kappa is not None else 0.0
    )


def _coupling_rows(layout):
    f_r0 = coupling.bare_quarter_wave_frequency(layout)
    theta, psi = coupling.coupling_phases(layout)
    return [
        ("total length", f"{_g(layout.total_length * 1e3)} mm"),
        ("f_r0", f"{_g(f_r0 / 1e9)} GHz"),
        ("theta", f"{_g(theta)} rad"),
        ("psi", f"{_g(psi)} rad"),
        ("psi - theta", f"{_g(psi - theta)} rad"),
        ("kappa", _g(layout.kappa_c)),
        ("q_ext", "not computed: needs the first-order coupling model, supply --q-ext to 'response'"),
    ]


def cmd_couple(args):
    _print_rows(_coupling_rows(_layout(args)))


def write_sweep_csv(path, sweep):
    """Write a sweep as ``freq_hz,s_mag_db,s_phase_deg`` rows at full precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for f, s in sweep:
            mag = abs(s)
            mag_db = 20 * math.log10(mag) if mag > 0 else -math.inf
            writer.writerow((repr(f), repr(mag_db), repr(math.degrees(math.atan2(s.imag, s.real)))))


def read_sweep_csv(path):
    """Read a sweep CSV back as a list of ``(freq_hz, s_mag_db, s_phase_deg)``."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_HEADER:
            raise DesignError(f"{path}: unexpected header {header!r}")
        return [tuple(float(x) for x in row) for row in reader]


def _response_rows(model, sweep):
    summary = coupling.measure_dip(sweep)
    return [
        ("f_dip", f"{_g(summary.f_dip / 1e9)} GHz"),
        ("depth", f"{_g(summary.depth_db)} dB"),
        ("fwhm", f"{_g(summary.fwhm / 1e3)} kHz"),
        ("q_loaded (from fwhm)", _g(summary.q_loaded)),
        ("q_loaded (model)", _g(model.q.q_loaded)),
    ]


def cmd_response(args):
    _need(args, "f_r", "q_ext", "f_start", "f_stop")
    if not args.f_start < args.f_stop:
        args._parser.error("--f-start must be below --f-stop")
    if args.points < 2:
        args._parser.error("--points must be at least 2")
    q_int = args.q_int if args.q_int is not None else math.inf
    model = coupling.ResonanceModel(args.f_r, coupling.QualityFactors(q_int, args.q_ext))
    sweep = coupling.sweep_response(model, args.f_start, args.f_stop, args.points)
    if args.out is not None:
        write_sweep_csv(args.out, sweep)
    try:
        rows = _response_rows(model, sweep)
    except DesignError as exc:
        rows = [("dip", str(exc))]
    if args.out is not None:
        rows.append(("csv", f"{args.out} ({len(sweep)} points)"))
    _print_rows(rows)


# amplifier ----------------------------------------------------------------


def cmd_amp_sql(args):
    _need(args, "f")
    t = paramp.sql_noise_temperature(args.f)
    _print_rows([("f", f"{_g(args.f / 1e9)} GHz"), ("T_SQL", f"{_g(t * 1e3)} mK")])


def cmd_amp_gbw(args):
    _need(args, "gain_db", "kappa")
    g = linear_from_db(args.gain_db)
    bw = paramp.gain_bandwidth(g, args.kappa)
    _print_rows(
        [
            ("gain", f"{_g(args.gain_db)} dB ({_g(g)} linear)"),
            ("bandwidth", f"{_g(bw / 1e6)} MHz"),
            ("sqrt(G) * bandwidth", f"{_g(math.sqrt(g) * bw / 1e6)} MHz"),
        ]
    )


def cmd_amp_haus_caves(args):
    _need(args, "gain_db", "f")
    g = linear_from_db(args.gain_db)
    energy = paramp.haus_caves_min_added_noise(g, args.f)
    n = paramp.photons(energy, args.f)
    _print_rows(
        [
            ("gain", f"{_g(args.gain_db)} dB ({_g(g)} linear)"),
            ("N_add,min", f"{_g(energy)} J"),
            ("N_add,min", f"{_g(n)} photons (h f)"),
            ("per unit gain", f"{_g(n / g)} photons, tends to 0.5 for G >> 1"),
        ]
    )


def cmd_amp_mix(args):
    _need(args, "pump", "signal")
    spec = paramp.MixingSpec(args.pump, args.signal, paramp.MixingProcess(args.process))
    result = paramp.mixing_products(spec)
    rows = [(f"idler{i + 1}" if len(result.idlers) > 1 else "idler", f"{_g(f / 1e9)} GHz")
            for i, f in enumerate(result.idlers)]
    rows.append(("degenerate", "yes" if result.degenerate else "no"))
    _print_rows(rows)


def cmd_amp_gain(args):
    _need(args, "p_in", "p_out")
    g = power_gain(args.p_out, args.p_in)
    _print_rows([("gain", f"{_g(g)} linear"), ("gain", f"{_g(db_from_linear(g))} dB")])


# chain --------------------------------------------------------------------


def read_stage_file(path):
    """Parse ``gain_db, noise_temp`` lines; ``#`` starts a comment."""
    stages = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                if len(parts) != 2:
                    raise DesignError("expected 'gain_db, noise_temp'")
                stages.append(paramp.ChainStage(parse_quantity(parts[0], "dB"), parse_quantity(parts[1], "K")))
            except DesignError as exc:
                raise DesignError(f"{path}:{lineno}: {exc}") from None
    if not stages:
        raise DesignError(f"{path}: no stages found")
    return stages


def cmd_chain(args):
    stages = read_stage_file(args.stages)
    contributions = paramp.stage_contributions(stages)
    rows = []
    for i, (stage, t) in enumerate(zip(stages, contributions), 1):
        rows.append((f"stage {i}", f"{_g(stage.gain_db)} dB, {_g(stage.noise_temp)} K -> {_g(t)} K at input"))
    t_sys = paramp.cascade_noise_temperature(stages)
    rows.append(("T_sys", f"{_g(t_sys)} K"))
    if args.f is not None:
        t_sql = paramp.sql_noise_temperature(args.f)
        rows.append(("T_SQL", f"{_g(t_sql)} K at {_g(args.f / 1e9)} GHz"))
        rows.append(("T_sys / T_SQL", _g(t_sys / t_sql)))
    _print_rows(rows)


# nonlinear ----------------------------------------------------------------


def cmd_nonlinear_lj(args):
    _need(args, "ic")
    lj = nonlinear.josephson_inductance(nonlinear.JunctionParams(args.ic, args.phase))
    _print_rows([("L_J", f"{_g(lj * 1e9)} nH")])


def cmd_nonlinear_lk(args):
    _need(args, "lk0", "i")
    if (args.istar is None) == (args.alpha is None):
        args._parser.error("give exactly one of --istar or --alpha")
    if args.istar is not None:
        p = nonlinear.KineticInductanceParams(args.lk0, args.istar)
    else:
        p = nonlinear.KineticInductanceParams.from_alpha(args.lk0, args.alpha)
    lk = nonlinear.kinetic_inductance(p, args.i)
    _print_rows([("L_k", f"{_g(lk * 1e9)} nH"), ("alpha", f"{_g(p.alpha)} 1/A^2")])


def cmd_nonlinear_ic_current(args):
    _need(args, "ic")
    i = nonlinear.josephson_current(nonlinear.JunctionParams(args.ic, args.phase))
    _print_rows([("I", f"{_g(i * 1e6)} uA")])


def cmd_nonlinear_voltage(args):
    _need(args, "dphi_dt")
    v = nonlinear.josephson_voltage(args.dphi_dt)
    _print_rows([("V", f"{_g(v * 1e6)} uV")])


# walkthrough --------------------------------------------------------------


def cmd_walkthrough(args):
    g = cpw.CpwGeometry(args.w, args.s, args.h, args.er)
    ch = cpw.analyze(g)
    s_50 = cpw.synthesize_gap(args.w, args.h, args.er, args.z0)
    quarter = cpw.ResonatorMode.QUARTER
    length = cpw.resonator_length(args.freq, ch.eps_eff, quarter)
    length_ref = cpw.resonator_length(args.freq, PAPER_EPS_EFF, quarter)
    f_ref = cpw.resonant_frequency(PAPER_LENGTH, PAPER_EPS_EFF, quarter)
    l_short = length - args.l_open - args.l_couple
    layout = coupling.CouplingLayout(args.l_open, args.l_couple, l_short, ch.eps_eff, args.kappa)
    f_r0 = coupling.bare_quarter_wave_frequency(layout)
    theta, psi = coupling.coupling_phases(layout)
    q = coupling.QualityFactors(args.q_int, args.q_ext)
    model = coupling.ResonanceModel(f_r0, q)
    span = 2e6
    sweep = coupling.sweep_response(model, f_r0 - span, f_r0 + span, args.points)
    dip = coupling.measure_dip(sweep)
    if args.out is not None:
        write_sweep_csv(args.out, sweep)

    table = [
        ("step", "quantity", "toolkit", "reference"),
        ("analyze", "z0 [ohm]", _g(ch.z0), f"~{_g(PAPER_Z0)}"),
        ("analyze", "eps_eff", _g(ch.eps_eff), _g(PAPER_EPS_EFF)),
        ("synth", f"s for {_g(args.z0)} ohm [um]", _g(s_50 * 1e6), _g(PAPER_GAP * 1e6)),
        ("resonator", f"l at {_g(args.freq / 1e9)} GHz [mm]", _g(length * 1e3), f"~{_g(PAPER_LENGTH * 1e3)}"),
        ("resonator", f"l at eps_eff {_g(PAPER_EPS_EFF)} [mm]", _g(length_ref * 1e3), f"~{_g(PAPER_LENGTH * 1e3)}"),
        ("resonator", f"f_r of {_g(PAPER_LENGTH * 1e3)} mm [GHz]", _g(f_ref / 1e9), f"~{_g(PAPER_F_R / 1e9)}"),
        ("couple", "f_r0 [GHz]", _g(f_r0 / 1e9), f"~{_g(PAPER_F_R / 1e9)}"),
        ("couple", "theta [rad]", _g(theta), "-"),
        ("couple", "psi [rad]", _g(psi), "-"),
        ("couple", "kappa (input)", _g(layout.kappa_c), _g(PAPER_KAPPA)),
        ("couple", "q_ext from kappa", "not computed", f"~{_g(PAPER_Q)}"),
        ("response", "q_ext (input)", _g(args.q_ext), f"~{_g(PAPER_Q)}"),
        ("response", "q_loaded", _g(q.q_loaded), "-"),
        ("response", "dip depth [dB]", _g(dip.depth_db), "-"),
        ("response", "q_loaded from fwhm", _g(dip.q_loaded), "-"),
    ]
    widths = [max(len(row[i]) for row in table) for i in range(4)]
    for row in table:
        print("  ".join(cell.ljust(wd) for cell, wd in zip(row, widths)).rstrip())


# parser -------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spadesign",
        description="Superconducting resonator and parametric amplifier design calculations.",
        allow_abbrev=False,
    )
    parser.add_argument("--config", type=Path, help="key = value file supplying option defaults")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    leaves = []

    def leaf(group, name, func, help):
        p = group.add_parser(name, help=help, description=help, allow_abbrev=False)
        p.set_defaults(func=func, _parser=p)
        leaves.append(p)
        return p

    def geometry_flags(p, gap=True):
        p.add_argument("--w", type=LENGTH, help="center conductor width")
        if gap:
            p.add_argument("--s", type=LENGTH, help="gap to ground")
        p.add_argument("--h", type=LENGTH, help="substrate thickness")
        p.add_argument("--er", type=NUMBER, help="substrate relative permittivity")

    cpw_cmd = commands.add_parser("cpw", help="coplanar waveguide analysis and synthesis")
    cpw_sub = cpw_cmd.add_subparsers(dest="action", required=True, metavar="ACTION")
    p = leaf(cpw_sub, "analyze", cmd_cpw_analyze, "impedance and effective permittivity of a CPW")
    geometry_flags(p)
    p = leaf(cpw_sub, "synth", cmd_cpw_synth, "gap width for a target impedance")
    geometry_flags(p, gap=False)
    p.add_argument("--z0", type=OHM, help="target impedance")
    p = leaf(cpw_sub, "kratio", cmd_cpw_kratio, "elliptic integral ratio K(k)/K(k')")
    p.add_argument("--k", type=NUMBER, help="modulus in (0, 1)")

    p = leaf(commands, "resonator", cmd_resonator, "half/quarter-wave resonator length or frequency")
    p.add_argument("--mode", choices=[m.value for m in cpw.ResonatorMode], default="quarter")
    p.add_argument("--length", type=LENGTH)
    p.add_argument("--freq", type=FREQ)
    p.add_argument("--eps-eff", type=NUMBER)
    geometry_flags(p)

    p = leaf(commands, "lc", cmd_lc, "lumped LC resonance frequency")
    p.add_argument("--l", type=HENRY, help="inductance")
    p.add_argument("--c", type=FARAD, help="capacitance")

    q_cmd = commands.add_parser("quality", help="quality factor algebra")
    q_sub = q_cmd.add_subparsers(dest="action", required=True, metavar="ACTION")
    p = leaf(q_sub, "loaded", cmd_quality_loaded, "loaded Q from internal and external Q")
    p.add_argument("--q-int", type=NUMBER)
    p.add_argument("--q-ext", type=NUMBER)
    p = leaf(q_sub, "bandwidth", cmd_quality_bandwidth, "convert between Q and bandwidth")
    p.add_argument("--f0", type=FREQ)
    p.add_argument("--df", type=FREQ)
    p.add_argument("--q", type=NUMBER)

    p = leaf(commands, "couple", cmd_couple, "bare frequency and coupling phases of a side-coupled resonator")
    p.add_argument("--l-open", type=LENGTH)
    p.add_argument("--l-couple", type=LENGTH)
    p.add_argument("--l-short", type=LENGTH)
    p.add_argument("--eps-eff", type=NUMBER)
    p.add_argument("--kappa", type=NUMBER)

    p = leaf(commands, "response", cmd_response, "notch response sweep written as CSV")
    p.add_argument("--f-r", type=FREQ)
    p.add_argument("--q-int", type=NUMBER, help="internal Q (default: lossless)")
    p.add_argument("--q-ext", type=NUMBER)
    p.add_argument("--f-start", type=FREQ)
    p.add_argument("--f-stop", type=FREQ)
    p.add_argument("--points", type=_count, default=1001)
    p.add_argument("--out", type=Path)

    amp = commands.add_parser("amp", help="amplifier noise, gain and mixing metrics")
    amp_sub = amp.add_subparsers(dest="action", required=True, metavar="ACTION")
    p = leaf(amp_sub, "sql", cmd_amp_sql, "standard quantum limit noise temperature")
    p.add_argument("--f", type=FREQ)
    p = leaf(amp_sub, "gbw", cmd_amp_gbw, "bandwidth at a given gain")
    p.add_argument("--gain-db", type=DB)
    p.add_argument("--kappa", type=FREQ, help="resonator linewidth")
    p = leaf(amp_sub, "haus-caves", cmd_amp_haus_caves, "minimum added noise of a phase-preserving amplifier")
    p.add_argument("--gain-db", type=DB)
    p.add_argument("--f", type=FREQ)
    p = leaf(amp_sub, "mix", cmd_amp_mix, "idler frequencies for 3WM/4WM")
    p.add_argument("--pump", type=FREQ)
    p.add_argument("--signal", type=FREQ)
    p.add_argument("--process", choices=[m.value for m in paramp.MixingProcess], default="3wm")
    p = leaf(amp_sub, "gain", cmd_amp_gain, "power gain from input and output power")
    p.add_argument("--p-in", type=WATT)
    p.add_argument("--p-out", type=WATT)

    p = leaf(commands, "chain", cmd_chain, "cascade noise temperature of a readout chain")
    p.add_argument("stages", type=Path, help="file of 'gain_db, noise_temp' lines")
    p.add_argument("--f", type=FREQ, help="compare with the quantum limit at this frequency")

    nl = commands.add_parser("nonlinear", help="kinetic and Josephson inductance")
    nl_sub = nl.add_subparsers(dest="action", required=True, metavar="ACTION")
    p = leaf(nl_sub, "lj", cmd_nonlinear_lj, "Josephson inductance")
    p.add_argument("--ic", type=AMPERE)
    p.add_argument("--phase", type=NUMBER, default=0.0, help="phase difference in rad")
    p = leaf(nl_sub, "lk", cmd_nonlinear_lk, "current-dependent kinetic inductance")
    p.add_argument("--lk0", type=HENRY)
    p.add_argument("--istar", type=AMPERE)
    p.add_argument("--alpha", type=NUMBER, help="nonlinearity in 1/A^2, instead of --istar")
    p.add_argument("--i", type=AMPERE)
    p = leaf(nl_sub, "ic-current", cmd_nonlinear_ic_current, "supercurrent I_c sin(phi)")
    p.add_argument("--ic", type=AMPERE)
    p.add_argument("--phase", type=NUMBER, default=0.0)
    p = leaf(nl_sub, "voltage", cmd_nonlinear_voltage, "junction voltage from phase rate")
    p.add_argument("--dphi-dt", type=RATE)

    design = commands.add_parser("design", help="end-to-end design examples")
    design_sub = design.add_subparsers(dest="action", required=True, metavar="ACTION")
    p = leaf(design_sub, "walkthrough", cmd_walkthrough, "CPW quarter-wave readout resonator design, step by step")
    p.add_argument("--w", type=LENGTH, default=10e-6)
    p.add_argument("--s", type=LENGTH, default=6e-6)
    p.add_argument("--h", type=LENGTH, default=550e-6)
    p.add_argument("--er", type=NUMBER, default=11.7)
    p.add_argument("--z0", type=OHM, default=50.0)
    p.add_argument("--freq", type=FREQ, default=5.5e9)
    p.add_argument("--l-open", type=LENGTH, default=0.2e-3)
    p.add_argument("--l-couple", type=LENGTH, default=0.4e-3)
    p.add_argument("--kappa", type=NUMBER, default=PAPER_KAPPA)
    p.add_argument("--q-int", type=NUMBER, default=1e6)
    p.add_argument("--q-ext", type=NUMBER, default=PAPER_Q)
    p.add_argument("--points", type=_count, default=10001)
    p.add_argument("--out", type=Path)

    return parser, leaves


def read_config(path):
    """Read ``key = value`` lines into an ordered list of (lineno, key, value)."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip().replace("-", "_"), value.strip()
            if not sep or not key or not value:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            entries.append((lineno, key, value))
    return entries


def apply_config(path, leaves):
    """Install config values as option defaults on every command that has them."""
    actions = {}
    for p in leaves:
        for action in p._actions:
            if action.option_strings and action.dest != "help":
                actions.setdefault(action.dest, []).append((p, action))
    for lineno, key, value in read_config(path):
        if key not in actions:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        for p, action in actions[key]:
            try:
                converted = action.type(value) if action.type else value
            except argparse.ArgumentTypeError as exc:
                raise ConfigError(f"{path}:{lineno}: {key}: {exc}") from None
            if action.choices is not None and converted not in action.choices:
                raise ConfigError(f"{path}:{lineno}: {key}: choose from {', '.join(action.choices)}")
            p.set_defaults(**{key: converted})


def main(argv=None):
    parser, leaves = build_parser()
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", type=Path)
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config is not None:
            apply_config(known.config, leaves)
    except (DesignError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (DesignError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
