#!/usr/bin/env python3
"""
Tests for the command-line front end
"""
import csv
import io
import json
import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from photonswap.cli import RunConfig, build_parser, parse_amplitudes, parse_initial, run_cli
from photonswap.config import Config
from photonswap.errors import DomainError


@pytest.fixture
def config_path(tmp_path):
    return str(tmp_path / "config.json")


def run(capsys, config_path, *argv):
    code = run_cli(["--config", config_path, *argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_spectrum_M2(capsys, config_path):
    code, out, _ = run(capsys, config_path, "spectrum", "--M", "2")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["x", "E", "c_0", "c_1", "c_2"]
    assert [float(r[1]) for r in rows] == [-2.0, 0.0, 2.0]
    assert float(rows[2][2]) == pytest.approx(0.5)


def test_spectrum_M0_and_M38(capsys, config_path):
    _, out, _ = run(capsys, config_path, "spectrum", "--M", "0")
    assert parse_csv(out)[1] == [["0", "0", "1"]]
    _, out, _ = run(capsys, config_path, "spectrum", "--M", "38")
    rows = parse_csv(out)[1]
    assert len(rows) == 39
    assert [float(r[1]) for r in rows] == list(range(-38, 39, 2))


def test_csv_uses_lf_line_endings(capsys, config_path):
    _, out, _ = run(capsys, config_path, "spectrum", "--M", "3")
    assert "\r" not in out
    assert out.endswith("\n")


def test_distribution_peaks(capsys, config_path):
    code, out, _ = run(capsys, config_path, "distribution", "--M", "38", "--energy", "38", "--energy", "32")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["n", "E=38", "E=32"]
    assert rows[-1] == ["peaks", "1", "4"]
    assert len(rows) == 40


def test_distribution_off_lattice_energy(capsys, config_path):
    code, _, err = run(capsys, config_path, "distribution", "--M", "2", "--energy", "1")
    assert code == 1
    assert "not an eigenvalue" in err


def test_entropy_vs_E(capsys, config_path):
    _, out, _ = run(capsys, config_path, "entropy", "--mode", "vs-E", "--M", "2")
    header, rows = parse_csv(out)
    assert header == ["M", "E", "s_ent"]
    assert [float(r[2]) for r in rows] == pytest.approx([3.0, 2.0, 3.0], abs=1e-12)


def test_entropy_vs_M_top_energy(capsys, config_path):
    _, out, _ = run(capsys, config_path, "entropy", "--mode", "vs-M", "--m-min", "1", "--m-max", "1")
    rows = parse_csv(out)[1]
    assert float(rows[0][2]) == pytest.approx(2.0, abs=1e-12)


def test_evolve_evenswap_from_shifted_fock_state(capsys, config_path):
    code, out, _ = run(
        capsys, config_path, "evolve", "--design", "evenswap", "--initial", "8,2", "--t-max", "1", "--samples", "2"
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["t", "n2_expectation"]
    assert float(rows[0][1]) == pytest.approx(2.0, abs=1e-12)
    assert float(rows[1][1]) == pytest.approx(8.0, abs=1e-9)


def test_evolve_lswap(capsys, config_path):
    _, out, _ = run(capsys, config_path, "evolve", "--design", "lswap", "--M", "10", "--t-max", "1", "--samples", "3")
    rows = parse_csv(out)[1]
    assert len(rows) == 3
    assert float(rows[-1][1]) == pytest.approx(10.0, abs=1e-9)


def test_evolve_default_grid(capsys, config_path):
    _, out, _ = run(capsys, config_path, "evolve", "--M", "4")
    rows = parse_csv(out)[1]
    assert len(rows) == 400
    assert float(rows[-1][0]) == pytest.approx(4.0)


def test_evolve_requires_input(capsys, config_path):
    code, _, _ = run(capsys, config_path, "evolve")
    assert code == 1


def test_unknown_design(capsys, config_path):
    code, _, err = run(capsys, config_path, "evolve", "--M", "2", "--design", "bogus")
    assert code == 1
    assert "Unknown design" in err


def test_unknown_design_lists_available_names(capsys, config_path):
    _, _, err = run(capsys, config_path, "swaps", "--design", "bogus")
    assert "pswap-half:<N>" in err
    assert "@<file.json>" in err


def test_evolve_json_carries_hamiltonian(capsys, config_path):
    _, out, _ = run(
        capsys, config_path, "evolve", "--M", "3", "--design", "pswap", "--N", "2", "--samples", "2", "--format", "json"
    )
    hamiltonian = json.loads(out)["hamiltonian"]
    assert hamiltonian["label"] == "pswap"
    assert hamiltonian["N"] == 2
    assert len(hamiltonian["terms"]) == 4


def test_saved_design_reloads(capsys, config_path, tmp_path):
    saved = tmp_path / "half.json"
    argv = ["swaps", "--m-min", "1", "--m-max", "6"]
    _, by_name, _ = run(capsys, config_path, *argv, "--design", "pswap-half", "--N", "2", "--save-design", str(saved))
    assert saved.exists()
    code, by_file, _ = run(capsys, config_path, *argv, "--design", f"@{saved}")
    assert code == 0
    assert by_file == by_name

    _, out, _ = run(capsys, config_path, *argv, "--design", f"@{saved}", "--format", "json")
    assert json.loads(out)["hamiltonian"]["params"] == {"half": True}


def test_missing_design_file(capsys, config_path, tmp_path):
    code, _, err = run(capsys, config_path, "evolve", "--M", "2", "--design", f"@{tmp_path / 'none.json'}")
    assert code == 1
    assert "Cannot read design file" in err


def test_cat_report(capsys, config_path):
    code, out, _ = run(capsys, config_path, "cat", "--alpha-re", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["fidelity"] >= 1 - 1e-10
    assert payload["discarded_weight"] < 1e-12
    assert payload["rows"][-1][0] == "fidelity"


def test_cat_vacuum(capsys, config_path):
    _, out, _ = run(capsys, config_path, "cat", "--alpha-re", "0", "--format", "json")
    payload = json.loads(out)
    assert payload["cutoff"] == 0
    assert payload["fidelity"] == pytest.approx(1.0)


def test_cat_invalid_epsilon(capsys, config_path):
    code, _, _ = run(capsys, config_path, "cat", "--epsilon", "0")
    assert code == 1


def test_cat_respects_photon_limit(capsys, config_path):
    Config(config_path).set("limits.max_photons", 5)
    code, _, err = run(capsys, config_path, "cat", "--alpha-re", "2")
    assert code == 1
    assert "needs more than 5 photons" in err


def test_sort_fock_input(capsys, config_path):
    _, out, _ = run(capsys, config_path, "sort", "--M", "4")
    header, rows = parse_csv(out)
    assert header == ["n1", "n2", "n3", "n4", "re", "im"]
    assert len(rows) == 1
    assert rows[0][:4] == ["0", "0", "0", "4"]
    assert float(rows[0][4]) == pytest.approx(1.0, abs=1e-9)


def test_sort_superposition(capsys, config_path):
    _, out, _ = run(capsys, config_path, "sort", "--amplitudes", "1:0.6,2:0.8")
    rows = parse_csv(out)[1]
    by_occupation = {tuple(r[:4]): complex(float(r[4]), float(r[5])) for r in rows}
    assert by_occupation[("1", "0", "0", "0")] == pytest.approx(0.6j, abs=1e-9)
    assert by_occupation[("0", "2", "0", "0")] == pytest.approx(0.8, abs=1e-9)


def test_sort_rejects_five_photons(capsys, config_path):
    code, _, _ = run(capsys, config_path, "sort", "--M", "5")
    assert code == 1


def test_swaps_table(capsys, config_path):
    _, out, _ = run(capsys, config_path, "swaps", "--design", "pswap", "--N", "2", "--m-min", "1", "--m-max", "4")
    rows = parse_csv(out)[1]
    swap = [float(r[1]) for r in rows]
    assert swap == pytest.approx([1.0, 0.0, 1.0, 0.0], abs=1e-9)


def test_verify_trivial_range(capsys, config_path):
    code, out, _ = run(capsys, config_path, "verify", "--M-max", "0")
    assert code == 0
    assert "Verification Summary" in out


def test_verify_negative_control(capsys, config_path):
    code, _, _ = run(capsys, config_path, "--verify", "--M-max", "3", "--perturb")
    assert code == 2


def test_json_and_csv_carry_identical_numbers(capsys, config_path):
    _, csv_out, _ = run(capsys, config_path, "spectrum", "--M", "5")
    _, json_out, _ = run(capsys, config_path, "spectrum", "--M", "5", "--format", "json")
    header, rows = parse_csv(csv_out)
    payload = json.loads(json_out)
    assert payload["columns"] == header
    for csv_row, json_row in zip(rows, payload["rows"]):
        assert [float(v) for v in csv_row] == [float(v) for v in json_row]


def test_output_is_deterministic(capsys, config_path):
    _, first, _ = run(capsys, config_path, "entropy", "--mode", "vs-E", "--M", "9")
    _, second, _ = run(capsys, config_path, "entropy", "--mode", "vs-E", "--M", "9")
    assert first == second


def test_out_and_plot_files(capsys, config_path, tmp_path):
    data = tmp_path / "traj.csv"
    script = tmp_path / "traj.gp"
    code, out, _ = run(
        capsys, config_path, "evolve", "--M", "6", "--samples", "10", "--out", str(data), "--plot", str(script)
    )
    assert code == 0
    assert out == ""
    assert data.read_text().startswith("t,n2_expectation\n")
    assert str(data) in script.read_text()


def test_plot_requires_out(capsys, config_path, tmp_path):
    code, _, _ = run(capsys, config_path, "evolve", "--M", "6", "--plot", str(tmp_path / "x.gp"))
    assert code == 1


def test_missing_M(capsys, config_path):
    code, _, err = run(capsys, config_path, "spectrum")
    assert code == 1
    assert "--M" in err


def test_missing_command(capsys, config_path):
    code, _, _ = run(capsys, config_path)
    assert code == 1


def test_invalid_config_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    config = Config(str(path))
    config.set("physics.tau", -1.0)
    code, _, err = run(capsys, str(path), "spectrum", "--M", "2")
    assert code == 1
    assert "physics.tau" in err


def test_parse_helpers():
    assert parse_initial("9,2") == (9, 2)
    assert parse_amplitudes("1:0.6,2:0.8j") == {1: 0.6, 2: 0.8j}
    with pytest.raises(DomainError):
        parse_initial("9")
    with pytest.raises(DomainError):
        parse_initial("-1,2")
    with pytest.raises(DomainError):
        parse_amplitudes("1=0.6")


def test_run_config_folds_pswap_options(config_path):
    args = build_parser().parse_args(["evolve", "--M", "3", "--design", "pswap", "--N", "2", "--half"])
    run_config = RunConfig.from_args(args, Config(config_path))
    assert run_config.design_name == "pswap-half:2"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
