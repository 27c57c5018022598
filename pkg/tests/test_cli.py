import json

import pytest

from qtlink.cli import main

FIG2_HEADER = "eta,du_sql,du_tmsv_3db,du_tmsv_7db,du_tmsv_11db,du_tmsv_15db"


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_delta_u_table(capsys):
    code, out, _ = run(["delta-u", "--eta", "0.5", "--r-db", "5"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "scheme,delta_u_s"
    values = dict(line.split(",") for line in lines[1:5])
    assert float(values["TMSV_real"]) == pytest.approx(1.0412e-17, rel=1e-3)
    assert float(values["SQL"]) == pytest.approx(1.1849e-17, rel=1e-3)


def test_delta_u_json_format(capsys):
    code, out, _ = run(
        ["delta-u", "--eta", "0.5", "--r-db", "5", "--format", "json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["SMSV_real"] == pytest.approx(7.8486e-18, rel=1e-3)


def test_fig2_writes_golden_header(tmp_path, capsys):
    out_path = tmp_path / "fig2.csv"
    code, _, _ = run(["fig2", "--steps", "10", "--out", str(out_path)], capsys)
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[1] == FIG2_HEADER
    assert len(lines) == 12  # comment + header + 10 rows


def test_fig2_byte_identical_across_runs(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["fig2", "--steps", "25", "--out", str(a)], capsys)
    run(["fig2", "--steps", "25", "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_fig3_svg_with_levels(tmp_path, capsys):
    out_path = tmp_path / "fig3.svg"
    code, _, _ = run(
        [
            "fig3",
            "--steps",
            "12",
            "--format",
            "svg",
            "--levels",
            "0.5e-18,1.0e-18,1.5e-18,1.9e-18",
            "--out",
            str(out_path),
        ],
        capsys,
    )
    assert code == 0
    assert out_path.read_text().startswith("<svg")


def test_fig4_and_compare_match(tmp_path, capsys):
    fig4, cmp_ = tmp_path / "f.csv", tmp_path / "c.csv"
    run(["fig4", "--steps", "15", "--out", str(fig4)], capsys)
    run(["compare", "--steps", "15", "--r-db", "5", "--out", str(cmp_)], capsys)
    # identical physics; only the config echo differs
    assert fig4.read_text().splitlines()[1:] == cmp_.read_text().splitlines()[1:]


def test_sweep_subcommand(tmp_path, capsys):
    out_path = tmp_path / "s.csv"
    code, _, _ = run(
        [
            "sweep",
            "--variable",
            "r_db",
            "--start",
            "0",
            "--stop",
            "15",
            "--steps",
            "6",
            "--schemes",
            "TMSV",
            "--eta",
            "0.8",
            "--out",
            str(out_path),
        ],
        capsys,
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[1] == "r_db,du_tmsv"
    assert len(lines) == 8


def test_verify_passes(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == 0
    assert "passed=True" in out


def test_verify_impossible_tolerance_exits_2(capsys):
    code, _, err = run(["verify", "--tol", "1e-16"], capsys)
    assert code == 2
    assert "cross-check failed" in err


def test_verify_independent_policy(capsys):
    code, out, _ = run(["verify", "--policy", "independent"], capsys)
    assert code == 0
    assert "note:" in out


def test_tm_check(capsys):
    code, out, _ = run(["tm-check"], capsys)
    assert code == 0
    assert "tm-check passed" in out


def test_invalid_flag_value_exits_1(capsys):
    code, _, err = run(["delta-u", "--eta", "1.5"], capsys)
    assert code == 1
    assert "error" in err


def test_unknown_argument_exits_1(capsys):
    code, _, _ = run(["delta-u", "--bogus"], capsys)
    assert code == 1


def test_unwritable_output_exits_3(capsys):
    code, _, err = run(["fig2", "--steps", "5", "--out", "/no/dir/fig2.csv"], capsys)
    assert code == 3
    assert "could not write" in err


def test_config_file_sections(tmp_path, capsys):
    config = {
        "sensing": {"r_db": 5.0, "n_in": 1000.0},
        "channel": {"eta1": 0.5, "eta2": 0.5},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config))
    code, out, _ = run(["delta-u", "--config", str(path)], capsys)
    assert code == 0
    values = dict(line.split(",") for line in out.splitlines()[1:5])
    assert float(values["TMSV_real"]) == pytest.approx(1.0412e-17, rel=1e-3)


def test_flags_override_config_file(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"sensing": {"r_db": 5.0}, "channel": {"eta1": 0.2}}))
    code, out, _ = run(
        ["delta-u", "--config", str(path), "--eta", "0.5", "--r-db", "5"], capsys
    )
    assert code == 0
    values = dict(line.split(",") for line in out.splitlines()[1:5])
    assert float(values["TMSV_real"]) == pytest.approx(1.0412e-17, rel=1e-3)


def test_config_file_link_section(tmp_path, capsys):
    config = {
        "sensing": {"r_db": 5.0},
        "link": {
            "path1": {"eta_diffraction": 0.8, "eta_pointing": 0.9, "eta_detector": 0.7},
            "path2": {"eta_detector": 0.504},
        },
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config))
    code, out, _ = run(["delta-u", "--config", str(path)], capsys)
    assert code == 0
    values = dict(line.split(",") for line in out.splitlines()[1:5])
    # both paths compose to eta = 0.504
    expected = run(["delta-u", "--eta", "0.504", "--r-db", "5"], capsys)[1]
    expected_values = dict(line.split(",") for line in expected.splitlines()[1:5])
    assert values["TMSV_real"] == expected_values["TMSV_real"]


def test_config_file_link_geometry(tmp_path, capsys):
    config = {
        "link": {
            "geometry": {
                "range_m": 1.0,
                "tx_waist_m": 0.01,
                "rx_aperture_m": 10.0,
                "wavelength_m": 815e-9,
            },
            "eta_detector": 0.9,
        }
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(config))
    code, out, _ = run(["delta-u", "--config", str(path)], capsys)
    assert code == 0


def test_missing_config_file_exits_3(capsys):
    code, _, _ = run(["delta-u", "--config", "/no/such.json"], capsys)
    assert code == 3


def test_bad_config_json_exits_1(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, _ = run(["delta-u", "--config", str(path)], capsys)
    assert code == 1
