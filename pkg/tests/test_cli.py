import math
import re
import subprocess
import sys

import pytest

from spadesign.cli import CSV_HEADER, main, read_sweep_csv
from spadesign.coupling import QualityFactors, ResonanceModel, dip_response, sweep_response


def run(argv, capsys):
    """Run the CLI in-process; return (exit code, stdout, stderr)."""
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    table = {}
    for line in out.strip().splitlines():
        name, _, value = re.split(r"(\s{2,})", line.strip(), maxsplit=1)
        table.setdefault(name, value)
    return table


def num(text):
    return float(text.split()[0])


PAPER_CPW = ["--w", "10um", "--s", "6um", "--h", "550um", "--er", "11.7"]


class TestCpw:
    def test_analyze(self, capsys):
        code, out, _ = run(["cpw", "analyze", *PAPER_CPW], capsys)
        assert code == 0
        r = rows(out)
        assert num(r["z0"]) == pytest.approx(50, abs=1)
        assert num(r["eps_eff"]) == pytest.approx(6.3, abs=0.1)
        assert set(r) == {"k0", "k1", "eps_eff", "z0", "v_p"}

    @pytest.mark.parametrize("override", [["--er", "0.5"], ["--s", "0"]])
    def test_analyze_domain_error(self, capsys, override):
        code, out, err = run(["cpw", "analyze", *PAPER_CPW, *override], capsys)
        assert code == 1
        assert "error" in err and out == ""

    def test_permittivity_message(self, capsys):
        _, _, err = run(["cpw", "analyze", *PAPER_CPW, "--er", "0.5"], capsys)
        assert "permittivity" in err

    @pytest.mark.parametrize(
        "argv", [["cpw", "analyze", "--w", "10um"], ["cpw", "analyze", *PAPER_CPW, "--w", "10GHz"], ["cpw", "analyse"]]
    )
    def test_analyze_usage_error(self, capsys, argv):
        assert run(argv, capsys)[0] == 2

    def test_synth(self, capsys):
        code, out, _ = run(["cpw", "synth", "--w", "10um", "--h", "550um", "--er", "11.7", "--z0", "50"], capsys)
        assert code == 0
        s_um = num(rows(out)["s"])
        assert s_um == pytest.approx(6, rel=0.1)
        # round trip through analyze
        code, out, _ = run(["cpw", "analyze", "--w", "10um", "--s", f"{s_um}um", "--h", "550um", "--er", "11.7"], capsys)
        assert num(rows(out)["z0"]) == pytest.approx(50, abs=1e-3)

    def test_synth_unachievable(self, capsys):
        code, _, err = run(["cpw", "synth", "--w", "10um", "--h", "550um", "--er", "11.7", "--z0", "1"], capsys)
        assert code == 1
        assert re.search(r"\[\d+\.?\d*, \d+\.?\d*\] ohm", err)

    def test_synth_usage(self, capsys):
        assert run(["cpw", "synth", "--w", "10um", "--h", "550um", "--er", "11.7"], capsys)[0] == 2

    def test_kratio(self, capsys):
        code, out, _ = run(["cpw", "kratio", "--k", "0.45455"], capsys)
        assert code == 0
        assert num(rows(out)["K(k)/K(k') approx"]) == pytest.approx(0.7415, abs=1e-4)
        assert run(["cpw", "kratio", "--k", "1.5"], capsys)[0] == 1
        assert run(["cpw", "kratio"], capsys)[0] == 2


class TestResonator:
    def test_quarter_length(self, capsys):
        code, out, _ = run(["resonator", "--mode", "quarter", "--freq", "5.5GHz", "--eps-eff", "6.3"], capsys)
        assert code == 0
        r = rows(out)
        assert num(r["length"]) == pytest.approx(5.43, rel=0.01)
        assert num(r["guided wavelength"]) == pytest.approx(4 * num(r["length"]), rel=1e-5)

    def test_half_mode(self, capsys):
        _, out, _ = run(["resonator", "--mode", "half", "--length", "5.43mm", "--eps-eff", "6.3"], capsys)
        f_half = num(rows(out)["frequency"])
        _, out, _ = run(["resonator", "--mode", "quarter", "--length", "5.43mm", "--eps-eff", "6.3"], capsys)
        assert f_half == pytest.approx(2 * num(rows(out)["frequency"]), rel=1e-5)

    def test_from_geometry(self, capsys):
        code, out, _ = run(["resonator", "--freq", "5.5GHz", *PAPER_CPW], capsys)
        assert code == 0
        assert num(rows(out)["eps_eff"]) == pytest.approx(6.34963, rel=1e-5)

    @pytest.mark.parametrize(
        "argv",
        [
            ["resonator", "--mode", "quarter", "--eps-eff", "6.3"],
            ["resonator", "--length", "5mm", "--freq", "5GHz", "--eps-eff", "6.3"],
            ["resonator", "--freq", "5GHz"],
            ["resonator", "--mode", "third", "--freq", "5GHz", "--eps-eff", "6.3"],
        ],
    )
    def test_usage(self, capsys, argv):
        assert run(argv, capsys)[0] == 2

    def test_domain(self, capsys):
        assert run(["resonator", "--freq", "5GHz", "--eps-eff", "0.5"], capsys)[0] == 1

    def test_lc(self, capsys):
        code, out, _ = run(["lc", "--l", "1nH", "--c", "1pF"], capsys)
        assert code == 0
        assert num(rows(out)["f0"]) == pytest.approx(5.03292, rel=1e-6)
        assert run(["lc", "--l", "0nH", "--c", "1pF"], capsys)[0] == 1
        assert run(["lc", "--l", "1nH"], capsys)[0] == 2


class TestQuality:
    def test_loaded(self, capsys):
        code, out, _ = run(["quality", "loaded", "--q-int", "1e6", "--q-ext", "15000"], capsys)
        assert code == 0
        assert num(rows(out)["q_loaded"]) == pytest.approx(14778.3, abs=0.1)
        assert run(["quality", "loaded", "--q-int", "inf", "--q-ext", "-1"], capsys)[0] == 1
        assert run(["quality", "loaded", "--q-int", "1e6"], capsys)[0] == 2

    def test_bandwidth(self, capsys):
        code, out, _ = run(["quality", "bandwidth", "--f0", "5.5GHz", "--df", "366.667kHz"], capsys)
        assert code == 0
        assert num(rows(out)["q"]) == pytest.approx(15000, rel=1e-5)
        _, out, _ = run(["quality", "bandwidth", "--f0", "5.5GHz", "--q", "15000"], capsys)
        assert num(rows(out)["bandwidth"]) == pytest.approx(366.667, rel=1e-6)
        assert run(["quality", "bandwidth", "--f0", "5.5GHz", "--q", "0"], capsys)[0] == 1
        assert run(["quality", "bandwidth", "--f0", "5.5GHz"], capsys)[0] == 2


COUPLE = ["couple", "--l-open", "0.2mm", "--l-couple", "0.4mm", "--l-short", "4.83mm", "--eps-eff", "6.3", "--kappa", "0.093"]


class TestCouple:
    def test_report(self, capsys):
        code, out, _ = run(COUPLE, capsys)
        assert code == 0
        r = rows(out)
        assert num(r["f_r0"]) == pytest.approx(5.5, rel=0.01)
        assert num(r["kappa"]) == 0.093
        assert "not computed" in r["q_ext"]
        assert num(r["psi"]) - num(r["theta"]) == pytest.approx(num(r["psi - theta"]), abs=2e-6)

    def test_zero_open_rejected(self, capsys):
        code, _, err = run([*COUPLE, "--l-open", "0"], capsys)
        assert code == 1
        assert "l_open" in err

    def test_usage(self, capsys):
        assert run(["couple", "--l-open", "0.2mm"], capsys)[0] == 2


RESPONSE = ["response", "--f-r", "5.5GHz", "--q-int", "1e6", "--q-ext", "15000",
            "--f-start", "5.498GHz", "--f-stop", "5.502GHz", "--points", "10001"]


class TestResponse:
    def test_summary_and_csv(self, capsys, tmp_path):
        path = tmp_path / "sweep.csv"
        code, out, _ = run([*RESPONSE, "--out", str(path)], capsys)
        assert code == 0
        r = rows(out)
        assert num(r["depth"]) == pytest.approx(-36.6, abs=0.05)
        assert num(r["q_loaded (from fwhm)"]) == pytest.approx(14778.3, rel=0.01)

        text = path.read_bytes()
        assert b"\r" not in text
        lines = text.decode().split("\n")
        assert lines[0] == ",".join(CSV_HEADER)
        assert lines[-1] == ""  # trailing newline only
        assert len(lines) - 1 == 10002
        data = read_sweep_csv(path)
        freqs = [row[0] for row in data]
        assert all(b > a for a, b in zip(freqs, freqs[1:]))

        m = ResonanceModel(5.5e9, QualityFactors(1e6, 15000))
        sweep = sweep_response(m, 5.498e9, 5.502e9, 10001)
        for (f, mag_db, phase), (f_mem, s_mem) in zip(data, sweep):
            assert f == f_mem
            assert 10 ** (mag_db / 20) == pytest.approx(abs(s_mem), rel=1e-9)
            assert math.radians(phase) == pytest.approx(math.atan2(s_mem.imag, s_mem.real), abs=1e-12)
            assert abs(dip_response(m, f)) == pytest.approx(10 ** (mag_db / 20), rel=1e-9)

    def test_two_points(self, capsys, tmp_path):
        path = tmp_path / "two.csv"
        code, _, _ = run([*RESPONSE, "--points", "2", "--out", str(path)], capsys)
        assert code == 0
        assert len(path.read_text().splitlines()) == 3

    @pytest.mark.parametrize("extra", [["--f-stop", "5.498GHz"], ["--points", "1"], ["--points", "ten"]])
    def test_window_usage(self, capsys, extra):
        assert run([*RESPONSE, *extra], capsys)[0] == 2

    def test_unwritable(self, capsys, tmp_path):
        code, _, err = run([*RESPONSE, "--out", str(tmp_path / "missing" / "x.csv")], capsys)
        assert code == 1
        assert "error" in err

    def test_lossless_default(self, capsys):
        argv = [a for a in RESPONSE if a not in ("--q-int", "1e6")]
        code, out, _ = run(argv, capsys)
        assert code == 0
        assert rows(out)["depth"].startswith("-inf")


class TestAmp:
    def test_sql(self, capsys):
        code, out, _ = run(["amp", "sql", "--f", "6GHz"], capsys)
        assert code == 0
        assert num(rows(out)["T_SQL"]) == pytest.approx(144, abs=0.5)
        assert run(["amp", "sql", "--f", "0"], capsys)[0] == 1
        assert run(["amp", "sql", "--f", "6K"], capsys)[0] == 2

    def test_gbw(self, capsys):
        code, out, _ = run(["amp", "gbw", "--gain-db", "20", "--kappa", "60MHz"], capsys)
        assert code == 0
        assert num(rows(out)["bandwidth"]) == pytest.approx(6, rel=1e-9)
        assert run(["amp", "gbw", "--gain-db", "-3", "--kappa", "60MHz"], capsys)[0] == 1
        assert run(["amp", "gbw", "--gain-db", "20"], capsys)[0] == 2

    def test_haus_caves(self, capsys):
        code, out, _ = run(["amp", "haus-caves", "--gain-db", "20", "--f", "6GHz"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert num(lines[1].split(None, 1)[1]) == pytest.approx(1.968e-22, rel=1e-3)
        assert "49.5 photons" in out
        assert run(["amp", "haus-caves", "--gain-db", "-1", "--f", "6GHz"], capsys)[0] == 1
        assert run(["amp", "haus-caves", "--f", "6GHz"], capsys)[0] == 2

    def test_mix(self, capsys):
        code, out, _ = run(["amp", "mix", "--pump", "11GHz", "--signal", "5.5GHz", "--process", "3wm"], capsys)
        assert code == 0
        r = rows(out)
        assert num(r["idler"]) == 5.5 and r["degenerate"] == "yes"
        _, out, _ = run(["amp", "mix", "--pump", "6GHz", "--signal", "5.8GHz", "--process", "4wm"], capsys)
        r = rows(out)
        assert (num(r["idler1"]), num(r["idler2"])) == (6.2, 5.6) and r["degenerate"] == "no"
        assert run(["amp", "mix", "--pump", "5GHz", "--signal", "6GHz"], capsys)[0] == 1
        assert run(["amp", "mix", "--pump", "5GHz", "--signal", "6GHz", "--process", "5wm"], capsys)[0] == 2

    def test_gain(self, capsys):
        code, out, _ = run(["amp", "gain", "--p-in", "1pW", "--p-out", "100pW"], capsys)
        assert code == 0
        assert "20 dB" in out
        assert run(["amp", "gain", "--p-in", "0", "--p-out", "1pW"], capsys)[0] == 1
        assert run(["amp", "gain", "--p-in", "1pW"], capsys)[0] == 2


class TestChain:
    def test_budget(self, capsys, tmp_path):
        path = tmp_path / "chain.txt"
        path.write_text("# paramp then HEMT\n20 dB, 150 mK\n0, 4K  # LNA\n\n")
        code, out, _ = run(["chain", str(path), "--f", "6GHz"], capsys)
        assert code == 0
        r = rows(out)
        assert num(r["T_sys"]) == pytest.approx(0.19, rel=1e-6)
        assert "0.04 K at input" in r["stage 2"]
        assert num(r["T_sys / T_SQL"]) == pytest.approx(0.19 / 0.14397729, rel=1e-5)

    def test_single_stage(self, capsys, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text("20, 0.15\n")
        _, out, _ = run(["chain", str(path)], capsys)
        assert num(rows(out)["T_sys"]) == 0.15

    def test_malformed(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("20, 0.15\n# comment\n20 0.15\n")
        code, _, err = run(["chain", str(path)], capsys)
        assert code == 1
        assert ":3:" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(["chain", str(tmp_path / "nope.txt")], capsys)[0] == 1

    def test_usage(self, capsys):
        assert run(["chain"], capsys)[0] == 2


class TestNonlinear:
    def test_lj(self, capsys):
        code, out, _ = run(["nonlinear", "lj", "--ic", "1uA", "--phase", "0"], capsys)
        assert code == 0
        assert num(rows(out)["L_J"]) == pytest.approx(0.329, abs=1e-3)

    def test_lj_divergence(self, capsys):
        code, _, err = run(["nonlinear", "lj", "--ic", "1uA", "--phase", "1.57079632679"], capsys)
        assert code == 1
        assert "diverges" in err

    def test_lk(self, capsys):
        code, out, _ = run(["nonlinear", "lk", "--lk0", "1nH", "--istar", "1mA", "--i", "1mA"], capsys)
        assert code == 0
        assert num(rows(out)["L_k"]) == 2
        _, out, _ = run(["nonlinear", "lk", "--lk0", "1nH", "--alpha", "1e6", "--i", "0.5mA"], capsys)
        assert num(rows(out)["L_k"]) == pytest.approx(1.25)
        assert run(["nonlinear", "lk", "--lk0", "1nH", "--istar", "0", "--i", "1mA"], capsys)[0] == 1
        assert run(["nonlinear", "lk", "--lk0", "1nH", "--i", "1mA"], capsys)[0] == 2

    def test_ic_current(self, capsys):
        code, out, _ = run(["nonlinear", "ic-current", "--ic", "2uA", "--phase", str(math.pi / 6)], capsys)
        assert code == 0
        assert num(rows(out)["I"]) == pytest.approx(1.0)
        assert run(["nonlinear", "ic-current", "--ic=-2uA"], capsys)[0] == 1
        assert run(["nonlinear", "ic-current", "--phase", "0"], capsys)[0] == 2

    def test_voltage(self, capsys):
        code, out, _ = run(["nonlinear", "voltage", "--dphi-dt", str(2 * math.pi * 1e9)], capsys)
        assert code == 0
        assert num(rows(out)["V"]) == pytest.approx(2.06783, rel=1e-5)
        assert run(["nonlinear", "voltage"], capsys)[0] == 2

    def test_lj_usage(self, capsys):
        assert run(["nonlinear", "lj", "--phase", "0"], capsys)[0] == 2


class TestConfig:
    def test_equivalent_to_flags(self, capsys, tmp_path):
        cfg = tmp_path / "design.cfg"
        cfg.write_text("# CPW on silicon\nw = 10 um\ns = 6um\nh = 550um  # wafer\ner = 11.7\n", encoding="utf-8")
        by_flags = run(["cpw", "analyze", *PAPER_CPW], capsys)
        by_config = run(["--config", str(cfg), "cpw", "analyze"], capsys)
        assert by_flags == by_config

    def test_flags_override(self, capsys, tmp_path):
        cfg = tmp_path / "design.cfg"
        cfg.write_text("w = 10um\ns = 20um\nh = 550um\ner = 11.7\n")
        assert run(["--config", str(cfg), "cpw", "analyze", "--s", "6um"], capsys) == run(
            ["cpw", "analyze", *PAPER_CPW], capsys
        )

    def test_shared_keys(self, capsys, tmp_path):
        cfg = tmp_path / "design.cfg"
        cfg.write_text("eps_eff = 6.3\nmode = quarter\nf_r = 5.5GHz\nq_ext = 15000\n")
        code, out, _ = run(["--config", str(cfg), "resonator", "--freq", "5.5GHz"], capsys)
        assert code == 0
        assert num(rows(out)["length"]) == pytest.approx(5.43, rel=0.01)

    def test_unknown_key(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("w = 10um\n\n# note\nwidth = 10um\n")
        code, _, err = run(["--config", str(cfg), "cpw", "analyze"], capsys)
        assert code == 1
        assert ":4:" in err and "width" in err

    def test_bad_value(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("w = 10GHz\n")
        code, _, err = run(["--config", str(cfg), "cpw", "analyze"], capsys)
        assert code == 1
        assert ":1:" in err

    def test_missing_equals(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("w 10um\n")
        assert run(["--config", str(cfg), "cpw", "analyze"], capsys)[0] == 1


class TestWalkthrough:
    def test_table(self, capsys):
        code, out, _ = run(["design", "walkthrough"], capsys)
        assert code == 0
        table = {}
        for line in out.splitlines()[1:]:
            step, quantity, value, ref = re.split(r"\s{2,}", line.strip())
            table[quantity] = value
        assert float(table["z0 [ohm]"]) == pytest.approx(50, abs=1)
        assert float(table["eps_eff"]) == pytest.approx(6.3, abs=0.1)
        assert float(table["l at eps_eff 6.3 [mm]"]) == pytest.approx(5.43, rel=0.01)
        assert float(table["f_r of 5.43 mm [GHz]"]) == pytest.approx(5.5, rel=0.01)
        assert float(table["f_r0 [GHz]"]) == pytest.approx(5.5, rel=0.01)
        assert table["q_ext from kappa"] == "not computed"

    def test_csv(self, capsys, tmp_path):
        path = tmp_path / "walk.csv"
        assert run(["design", "walkthrough", "--out", str(path)], capsys)[0] == 0
        assert len(path.read_text().splitlines()) == 10002

    def test_errors(self, capsys):
        assert run(["design", "walkthrough", "--er", "0.5"], capsys)[0] == 1
        assert run(["design", "walkthrough", "--w", "wide"], capsys)[0] == 2


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ["cpw", "analyze", *PAPER_CPW],
            ["design", "walkthrough"],
            RESPONSE,
            ["amp", "mix", "--pump", "6GHz", "--signal", "5.8GHz", "--process", "4wm"],
        ],
    )
    def test_identical_output(self, capsys, argv):
        assert run(argv, capsys) == run(argv, capsys)

    def test_csv_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run([*RESPONSE, "--out", str(a)], capsys)
        run([*RESPONSE, "--out", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv, code",
    [
        (["amp", "sql", "--f", "6GHz"], 0),
        (["nonlinear", "lj", "--ic", "1uA", "--phase", "1.57079632679"], 1),
        (["resonator", "--eps-eff", "6.3"], 2),
    ],
)
def test_process_exit_codes(argv, code):
    proc = subprocess.run([sys.executable, "-m", "spadesign", *argv], capture_output=True, text=True)
    assert proc.returncode == code
