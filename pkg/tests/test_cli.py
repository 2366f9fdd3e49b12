import json

import pytest

from xxzmat.cli import fmt_complex, load_config, main, parse_complex
from xxzmat.errors import ConfigError


class TestParsing:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("0.6+0.25i", 0.6 + 0.25j),
            ("1.21", 1.21),
            ("-0.4i", -0.4j),
            ("2-1i", 2 - 1j),
        ],
    )
    def test_parse_complex(self, text, value):
        assert parse_complex(text) == value

    def test_roundtrip(self):
        z = 0.123456789012345678 - 9.87654321e-5j
        assert parse_complex(fmt_complex(z)) == z

    def test_bad_literal(self):
        with pytest.raises(ConfigError):
            parse_complex("zzz")

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("q = 0.6+0.25i\nbogus = 1\n")
        with pytest.raises(ConfigError):
            load_config(str(cfg))


class TestCommands:
    def test_expectation_empty_prints_one(self, capsys):
        assert main(["expectation"]) == 0
        assert capsys.readouterr().out.strip() == "1+0i"

    def test_rho_from_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# the P0 chain\n"
            "q = 0.6+0.25i\nalpha = 0.35\nkappa = 0.4\n"
            "spins = 1/2, 1/2\ntau2 = 1.21, 0.81\nsector = 0\n"
        )
        assert main(["rho", "--zeta2", "1.3+0.2i", "--config", str(cfg)]) == 0
        z = parse_complex(capsys.readouterr().out.strip())
        from xxzmat import fixtures

        assert abs(z - fixtures.omega_evaluator("P0").rho(1.3 + 0.2j)) < 1e-12

    def test_malformed_config_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nonsense = 3\n")
        assert main(["rho", "--zeta2", "1.3", "--config", str(cfg)]) == 2

    def test_degenerate_configuration_exits_2(self, tmp_path):
        cfg = tmp_path / "degen.cfg"
        # coinciding inhomogeneities: pole collision
        cfg.write_text(
            "q = 0.6+0.25i\nalpha = 0.35\nkappa = 0.4\n"
            "spins = 1/2, 1/2\ntau2 = 1.21, 1.21\n"
        )
        assert main(["rho", "--zeta2", "1.3", "--config", str(cfg)]) == 2

    def test_verify_report_schema(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["verify", "--suite", "wronskian", "--out", str(out),
                     "--no-figures"])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["suite"] == "wronskian"
        for check in payload["checks"]:
            assert set(check) == {"name", "equation", "residual", "tolerance", "pass"}
            assert check["pass"] is True

    def test_verify_deterministic(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        main(["verify", "--suite", "baxter", "--out", str(a), "--no-figures"])
        main(["verify", "--suite", "baxter", "--out", str(b), "--no-figures"])
        assert a.read_bytes() == b.read_bytes()

    def test_verify_renders_figure(self, tmp_path):
        out = tmp_path / "report.json"
        main(["verify", "--suite", "bilinear", "--out", str(out)])
        assert (tmp_path / "report.png").exists()

    def test_grid_csv(self, tmp_path):
        out = tmp_path / "grid.csv"
        code = main([
            "omega", "--grid", "0.5:0.9:3", "--zeta2", "0+0.2i", "--xi2", "0-0.1i",
            "--out", str(out), "--no-figures",
        ])
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "zeta2_re,zeta2_im,xi2_re,xi2_im,value_re,value_im"
        assert len(lines) == 1 + 9

    def test_grid_figure(self, tmp_path):
        out = tmp_path / "grid.csv"
        main(["omega", "--grid", "0.5:0.9:3", "--zeta2", "0+0.2i",
              "--xi2", "0-0.1i", "--out", str(out)])
        assert (tmp_path / "grid.png").exists()

    def test_spectrum_payload(self, tmp_path):
        out = tmp_path / "spec.json"
        assert main(["spectrum", "--fixture", "P0", "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert len(payload["kappa"]["t_poly"]) == 3
        assert len(payload["kappa"]["q_plus_poly"]) == 2

    def test_dwbc_payload(self, tmp_path, capsys):
        assert main([
            "dwbc", "--tau", "1.21,0.81", "--xi", "1.3+0.2i,0.9-0.4i",
        ]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["n"] == 2

    def test_basis_table(self, tmp_path):
        out = tmp_path / "table.json"
        assert main(["basis-table", "--pmax", "3", "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert len(payload["t_star_values"]) == 3
        assert len(payload["bc_values"]) == 3

    def test_omega_point_value(self, capsys):
        assert main(["omega", "--zeta2", "0.9+0.2i", "--xi2", "0.7-0.5i"]) == 0
        from xxzmat import fixtures

        got = parse_complex(capsys.readouterr().out.strip())
        want = fixtures.omega_evaluator("P0").omega(0.9 + 0.2j, 0.7 - 0.5j)
        assert abs(got - want) < 1e-12

    def test_classical_report(self, tmp_path):
        out = tmp_path / "ladder.json"
        assert main(["classical", "--out", str(out), "--no-figures"]) == 0
        payload = json.loads(out.read_text())
        assert len(payload["ladder"]) == 3
        assert payload["measure_monotone"] is True
