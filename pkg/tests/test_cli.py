import json
from pathlib import Path

import jsonschema
import pytest

from quantum_ess.cli import ConfigError, main, run, validate

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "docs" / "configs"
GOLDEN = Path(__file__).parent / "golden"
SHIPPED = {"classical_limit": "json", "flip_state": "json", "diagonal_state": "csv"}

ANALYZE = {
    "command": "analyze",
    "alpha": [[3, 4], [2, 5]],
    "weights": [[0, 0.5], [0.5, 0]],
}


def write(tmp_path, obj, name="cfg.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def errors_for(obj):
    with pytest.raises(ConfigError) as info:
        validate(obj if isinstance(obj, str) else json.dumps(obj))
    return info.value.errors


class TestValidate:
    def test_minimal_analyze(self):
        cfg = validate(json.dumps(ANALYZE))
        assert cfg.command == "analyze" and cfg.output_format == "json"

    def test_normalization_diagnostic(self):
        errs = errors_for({**ANALYZE, "weights": [[0.5, 0.2], [0.2, 0]]})
        assert "weights: normalization violated: sum=0.9" in errs

    def test_dimension_mismatch(self):
        errs = errors_for({"command": "transform", "alpha": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                           "weights": [[1, 0], [0, 0]]})
        assert any(e.startswith("weights: dimension mismatch") for e in errs)

    def test_missing_weights_named(self):
        errs = errors_for({"command": "analyze", "alpha": [[3, 4], [2, 5]]})
        assert any(e.startswith("weights:") for e in errs)

    def test_reports_all_errors(self):
        errs = errors_for({"command": "analyse", "alpha": [[1, 2], [3]], "bogus": 1,
                           "output": {"format": "xml"}})
        fields = {e.split(":")[0] for e in errs}
        assert {"command", "alpha", "bogus"} <= fields

    def test_syntax_error_has_position(self):
        errs = errors_for('{"command": "analyze",\n "alpha": [[1, 2], [3, 4]],,}')
        assert len(errs) == 1 and errs[0].startswith("syntax error at line 2 column")

    def test_simulate_needs_x0(self):
        errs = errors_for({"command": "simulate", "alpha": [[3, 4], [2, 5]], "dynamics": {"dt": 0.01}})
        assert "dynamics.x0: missing required field for simulate" in errs

    def test_operator_set_must_fit_alpha(self):
        errs = errors_for({**ANALYZE, "command": "transform", "operator_set": "rsp3"})
        assert any(e.startswith("operator_set:") for e in errs)

    def test_analyze_needs_2x2(self):
        errs = errors_for({"command": "analyze", "alpha": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                           "weights": [[1, 0, 0], [0, 0, 0], [0, 0, 0]]})
        assert any(e.startswith("alpha: analyze needs a 2x2") for e in errs)

    @pytest.mark.parametrize("name", list(SHIPPED))
    def test_round_trip(self, name):
        text = (CONFIGS / f"{name}.json").read_text()
        raw = json.loads(text)
        cfg = validate(text)
        again = cfg.to_dict()
        for key, value in raw.items():
            if isinstance(value, dict):
                for k, v in value.items():
                    assert again[key][k] == v
            else:
                assert again[key] == value
        assert validate(json.dumps(again)).to_dict() == again


class TestShippedConfigs:
    @pytest.mark.parametrize("name", list(SHIPPED))
    def test_match_schema(self, name):
        schema = json.loads((ROOT / "docs" / "config_schema.json").read_text())
        jsonschema.validate(json.loads((CONFIGS / f"{name}.json").read_text()), schema)

    @pytest.mark.parametrize("name, ext", list(SHIPPED.items()))
    def test_byte_identical_and_golden(self, tmp_path, name, ext):
        outs = []
        for i in range(2):
            out = tmp_path / f"{name}-{i}.{ext}"
            assert main(["--config", str(CONFIGS / f"{name}.json"), "--out", str(out)]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        assert outs[0] == (GOLDEN / f"{name}.{ext}").read_bytes()


class TestMain:
    def test_analyze_reports_flip(self, tmp_path, capsys):
        assert main(["--config", write(tmp_path, ANALYZE)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["result"]["flip"] is True

    def test_report_reparses_identically(self, tmp_path, capsys):
        from quantum_ess.ess_analyzer import analyze

        main(["--config", write(tmp_path, {**ANALYZE, "weights": [[0.1, 0.35], [0.35, 0.2]]})])
        out = json.loads(capsys.readouterr().out)["result"]
        assert out == analyze(ANALYZE["alpha"], __import__("quantum_ess").StateWeights(
            [[0.1, 0.35], [0.35, 0.2]])).to_dict()

    def test_transform_classical_limit(self, tmp_path, capsys):
        cfg = {"command": "transform", "alpha": [[3, 4], [2, 5]], "weights": [[1, 0], [0, 0]]}
        assert main(["--config", write(tmp_path, cfg)]) == 0
        assert json.loads(capsys.readouterr().out)["result"]["omega"] == [[3, 4], [2, 5]]

    def test_transform_csv(self, tmp_path, capsys):
        cfg = {"command": "transform", "alpha": [[3, 4], [2, 5]], "weights": [[0, 0.5], [0.5, 0]]}
        assert main(["--config", write(tmp_path, cfg), "--format", "csv"]) == 0
        assert capsys.readouterr().out == "operator,I,C\nI,3.0,4.0\nC,4.0,3.0\n"

    def test_missing_weights_exit_2(self, tmp_path, capsys):
        code = main(["--config", write(tmp_path, {"command": "analyze", "alpha": [[3, 4], [2, 5]]})])
        assert code == 2
        assert "weights" in capsys.readouterr().err

    def test_malformed_json_exit_2(self, tmp_path, capsys):
        assert main(["--config", write(tmp_path, "{not json")]) == 2
        assert "syntax error at line 1" in capsys.readouterr().err

    def test_unreadable_config_exit_2(self, tmp_path):
        assert main(["--config", str(tmp_path / "missing.json")]) == 2

    def test_format_not_supported(self, tmp_path, capsys):
        assert main(["--config", write(tmp_path, ANALYZE), "--format", "csv"]) == 2
        assert "--format" in capsys.readouterr().err

    def test_strict_degenerate(self, tmp_path, capsys):
        cfg = {**ANALYZE, "weights": [[0.25, 0.25], [0.25, 0.25]]}
        assert main(["--config", write(tmp_path, cfg)]) == 0
        assert main(["--config", write(tmp_path, cfg), "--strict-degenerate"]) == 1
        assert "degenerate" in capsys.readouterr().err

    def test_seed_recorded(self, tmp_path, capsys):
        main(["--config", write(tmp_path, ANALYZE), "--seed", "18446744073709551615"])
        assert json.loads(capsys.readouterr().out)["seed"] == 2**64 - 1

    def test_seed_range(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["--config", write(tmp_path, ANALYZE), "--seed", "-1"])
        assert info.value.code == 2

    def test_simulate_quantum_classifies(self, tmp_path, capsys):
        cfg = {**ANALYZE, "command": "simulate", "dynamics": {"x0": [0.6, 0.4], "record_every": 1000}}
        assert main(["--config", write(tmp_path, cfg)]) == 0
        res = json.loads(capsys.readouterr().out)["result"]
        assert res["game"] == "quantum" and res["classification"] == "Attracting"
        assert len(res["states"]) == 6
        assert abs(res["final"][0] - 0.5) <= 1e-6

    def test_simulate_csv(self, tmp_path, capsys):
        cfg = {"command": "simulate", "alpha": [[3, 4], [2, 5]],
               "dynamics": {"x0": [0.51, 0.49], "steps": 10, "record_every": 5}}
        assert main(["--config", write(tmp_path, cfg), "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "step,x0,x1" and [l.split(",")[0] for l in lines[1:]] == ["0", "5", "10"]

    def test_scan_json(self, tmp_path, capsys):
        cfg = {"command": "scan", "alpha": [[3, 4], [2, 5]], "scan": {"resolution": 3},
               "output": {"format": "json"}}
        assert main(["--config", write(tmp_path, cfg)]) == 0
        res = json.loads(capsys.readouterr().out)["result"]
        assert len(res["points"]) == 6 and 0 < res["flip_fraction"] < 1

    def test_output_path_from_config(self, tmp_path):
        out = tmp_path / "r.json"
        assert main(["--config", write(tmp_path, {**ANALYZE, "output": {"path": str(out)}})]) == 0
        assert json.loads(out.read_text())["result"]["flip"] is True

    def test_run_returns_text(self):
        status, text = run(validate(json.dumps(ANALYZE)))
        assert status == 0 and text.endswith("}\n")
