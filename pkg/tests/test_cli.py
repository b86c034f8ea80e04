"""End-to-end checks for the command-line verification driver."""

import io
import json
import subprocess
import sys

import pytest

from localzeta.cli import InputError, RunConfig, main, run


def run_capture(config):
    buf = io.StringIO()
    code = run(config, buf)
    return code, buf.getvalue()


def records_of(text):
    return [json.loads(line) for line in text.splitlines()]


def valid_local_doc():
    # omega_pi = u0^2 u1 u2 = 1 in the split scenario, so lambda_piF = 1.
    return {
        "local_scenarios": [
            {
                "q": 3,
                "symbol": "split",
                "lambda": {"piF": "1", "piL": "4", "piF_over_piL": "1/4"},
                "satake": {"u0": "1/2", "u1": "3", "u2": "4/3"},
                "omega": "2",
            },
            {
                "q": 2,
                "symbol": "inert",
                "lambda": {"piF": 1},
                "satake": {"u0": 1, "u1": 1, "u2": 1},
                "omega": 1,
            },
        ]
    }


def valid_global_doc(**overrides):
    base = {
        "l": 12,
        "D": 4,
        "N": 2,
        "lambda_classvals": [1],
        "fourier_classvals": [1],
        "a1": 1,
        "r": [0, -11],
        "satake_table": {"2": [1, 2, "1/2"], "3": [1, 1, 1]},
        "gl2_table": {"2": -1, "3": [1, 1]},
        "local_table": {
            "2": {"symbol": "inert", "lambda": {"piF": 1}},
            "3": {"symbol": "inert", "lambda": {"piF": 1}},
        },
        "s": 1.5,
    }
    base.update(overrides)
    return {"global_input": base}


@pytest.fixture
def write_doc(tmp_path):
    def _write(doc, name="input.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return _write


class TestRunConfig:
    def test_defaults_are_valid(self):
        config = RunConfig(command="lfactor")
        assert config.output_format == "table"
        assert config.trials == 50

    def test_unknown_command(self):
        with pytest.raises(InputError, match="unknown command"):
            RunConfig(command="frobnicate")

    def test_trials_must_be_positive(self):
        with pytest.raises(InputError, match="trials"):
            RunConfig(command="verify-local", trials=0)

    def test_order_floor_applies_only_to_verify_local(self):
        with pytest.raises(InputError, match="order >= 8"):
            RunConfig(command="verify-local", order=7)
        RunConfig(command="lfactor", order=7)

    @pytest.mark.parametrize("tol", [0.0, -1e-6, float("nan")])
    def test_tolerance_must_be_positive(self, tol):
        with pytest.raises(InputError, match="tolerance"):
            RunConfig(command="verify-arch", tolerance=tol)

    @pytest.mark.parametrize("seed", [-1, 2**64])
    def test_seed_must_fit_64_bits(self, seed):
        with pytest.raises(InputError, match="64-bit"):
            RunConfig(command="verify-local", seed=seed)

    def test_output_format_is_checked(self):
        with pytest.raises(InputError, match="format"):
            RunConfig(command="lfactor", output_format="yaml")


class TestMachineFormat:
    def test_records_are_sorted_and_well_formed(self):
        code, out = run_capture(
            RunConfig(command="verify-local", trials=2, order=10, output_format="machine")
        )
        assert code == 0
        records = records_of(out)
        names = [r["name"] for r in records]
        assert names == sorted(names)
        for r in records:
            assert set(r) == {"name", "status", "witness"}
            assert r["status"] == "pass"

    def test_byte_identical_reruns(self):
        config = RunConfig(
            command="verify-local", trials=3, order=10, seed=99, output_format="machine"
        )
        _, first = run_capture(config)
        _, second = run_capture(config)
        assert first == second

    def test_stream_size_counts_classes_and_primes(self):
        code, out = run_capture(
            RunConfig(command="verify-local", trials=2, order=10, output_format="machine")
        )
        assert code == 0
        assert len(records_of(out)) == 2 * 3 * 3


class TestVerifyLocal:
    def test_input_file_route(self, write_doc):
        path = write_doc(valid_local_doc())
        code, out = run_capture(
            RunConfig(command="verify-local", input_path=path, output_format="machine")
        )
        assert code == 0
        names = [r["name"] for r in records_of(out)]
        assert names == ["local/input/000", "local/input/001"]

    def test_pairing_violation_is_an_input_error(self, write_doc, capsys):
        doc = valid_local_doc()
        doc["local_scenarios"][0]["lambda"] = {
            "piF": "2",
            "piL": "4",
            "piF_over_piL": "1/2",
        }
        path = write_doc(doc)
        assert main(["verify-local", "--input", path]) == 2
        err = capsys.readouterr().err
        assert "local_scenarios[0]" in err

    def test_float_rational_is_rejected_with_path(self, write_doc, capsys):
        doc = valid_local_doc()
        doc["local_scenarios"][1]["lambda"]["piF"] = 0.5
        path = write_doc(doc)
        assert main(["verify-local", "--input", path]) == 2
        err = capsys.readouterr().err
        assert "local_scenarios[1].lambda.piF" in err
        assert "num/den" in err

    def test_empty_scenario_list_is_rejected(self, write_doc):
        path = write_doc({"local_scenarios": []})
        with pytest.raises(InputError, match="non-empty"):
            run(RunConfig(command="verify-local", input_path=path), io.StringIO())


class TestVerifyArch:
    def test_input_scenarios_pass_at_default_tolerance(self, write_doc):
        path = write_doc(
            {
                "arch_scenarios": [
                    {"l": 12, "l1": 12, "D": 4, "s": 1.5},
                    {"l": 12, "s1": 0.2, "s2": -0.2, "D": 3, "s": 1},
                ]
            }
        )
        code, out = run_capture(
            RunConfig(command="verify-arch", input_path=path, output_format="machine")
        )
        assert code == 0
        records = records_of(out)
        names = [r["name"] for r in records]
        assert "arch/zinf/input-000" in names
        assert "arch/zinf/input-001" in names
        # fixed-tolerance identities always ride along
        assert any(n.startswith("arch/reduction/") for n in names)
        assert any(n.startswith("arch/mellin/") for n in names)

    def test_unattainable_tolerance_fails_with_witness(self, write_doc):
        path = write_doc({"arch_scenarios": [{"l": 12, "l1": 12, "D": 4, "s": 1.5}]})
        code, out = run_capture(
            RunConfig(
                command="verify-arch",
                input_path=path,
                tolerance=1e-18,
                output_format="machine",
            )
        )
        assert code == 1
        failing = [r for r in records_of(out) if r["status"] == "fail"]
        assert failing
        witness = failing[0]["witness"]
        assert set(witness) == {"closed", "quadrature", "abs_error"}
        assert witness["abs_error"] > 0

    def test_scenario_needs_a_spectral_datum(self, write_doc):
        path = write_doc({"arch_scenarios": [{"l": 12, "D": 4, "s": 1.5}]})
        with pytest.raises(InputError, match="s1"):
            run(RunConfig(command="verify-arch", input_path=path), io.StringIO())

    def test_builtin_grid_constructs(self):
        from localzeta.cli import _builtin_arch_grid

        grid = _builtin_arch_grid()
        assert len(grid) == 13
        tags = [tag for tag, _ in grid]
        assert len(set(tags)) == 13


class TestVerifyCosets:
    def test_exhaustive_audit_at_two(self):
        code, out = run_capture(
            RunConfig(command="verify-cosets", trials=10, output_format="machine")
        )
        assert code == 0
        by_name = {r["name"]: r for r in records_of(out)}
        audit = by_name["cosets/p2/audit"]
        assert audit["witness"]["cosets"] == 45
        assert audit["witness"]["group_order"] == 720
        for which in ("i", "ii", "vi", "m0-equiv", "mpos-equiv"):
            assert by_name[f"cosets/identity/{which}"]["status"] == "pass"
        assert by_name["cosets/count-polynomial"]["status"] == "pass"

    def test_large_characteristic_is_rejected(self, capsys):
        assert main(["verify-cosets", "--p", "5"]) == 2
        assert "p in (2, 3)" in capsys.readouterr().err


class TestVerifyVolumes:
    def test_full_battery_passes(self):
        code, out = run_capture(
            RunConfig(command="verify-volumes", output_format="machine")
        )
        assert code == 0
        records = records_of(out)
        # 9 residue presentations x 4 depths, 9 cancellation rows, 3 volumes
        assert len(records) == 9 * 4 + 9 + 3
        assert all(r["status"] == "pass" for r in records)
        names = {r["name"] for r in records}
        assert "volumes/index/p5/split/m3" in names
        assert "volumes/ksharp/q3" in names


class TestLfactor:
    def test_default_prints_the_trivial_factor(self, capsys):
        assert main(["lfactor"]) == 0
        out = capsys.readouterr().out
        assert "1/15 - 1/120*t^2" in out
        assert "1 - 2*t + 3/2*t^2 - 1/2*t^3 + 1/16*t^4" in out

    def test_machine_record_carries_the_factor(self):
        code, out = run_capture(RunConfig(command="lfactor", output_format="machine"))
        assert code == 0
        (record,) = records_of(out)
        assert record["name"] == "lfactor/000"
        assert record["witness"]["q"] == 2
        assert record["witness"]["factor"].startswith("(1/15")

    def test_input_scenarios_each_get_a_record(self, write_doc):
        path = write_doc(valid_local_doc())
        code, out = run_capture(
            RunConfig(command="lfactor", input_path=path, output_format="machine")
        )
        assert code == 0
        records = records_of(out)
        assert [r["name"] for r in records] == ["lfactor/000", "lfactor/001"]
        assert all("/" in r["witness"]["factor"] for r in records)


class TestGlobal:
    def test_report_record(self, write_doc):
        path = write_doc(valid_global_doc())
        code, out = run_capture(
            RunConfig(command="global", input_path=path, p_max=3, output_format="machine")
        )
        assert code == 0
        (record,) = records_of(out)
        assert record["name"] == "global/z"
        witness = record["witness"]
        assert witness["primes_used"] == 2
        assert witness["in_convergence_region"] is True
        assert witness["tail_bound"] > 0
        assert any("assembled" in note for note in witness["notes"])

    def test_special_value_needs_norms_and_holomorphic_point(self, write_doc):
        doc = valid_global_doc(petersson_phi=1.0, petersson_psi=2.5)
        path = write_doc(doc)
        code, out = run_capture(
            RunConfig(command="global", input_path=path, p_max=3, output_format="machine")
        )
        assert code == 0
        names = [r["name"] for r in records_of(out)]
        assert "global/special-value" in names

        # same data but off the holomorphic point: no special-value record
        doc = valid_global_doc(petersson_phi=1.0, petersson_psi=2.5, r=[0, -10.5])
        path = write_doc(doc, name="off-point.json")
        code, out = run_capture(
            RunConfig(command="global", input_path=path, p_max=3, output_format="machine")
        )
        assert code == 0
        assert "global/special-value" not in [r["name"] for r in records_of(out)]

    def test_the_disclaimer_rides_with_the_ratio(self, write_doc):
        path = write_doc(valid_global_doc(petersson_phi=1.0, petersson_psi=2.5))
        code, out = run_capture(
            RunConfig(command="global", input_path=path, p_max=3, output_format="machine")
        )
        by_name = {r["name"]: r for r in records_of(out)}
        assert "not certified" in by_name["global/special-value"]["witness"]["note"]

    def test_missing_input_is_exit_two(self, capsys):
        assert main(["global"]) == 2
        assert "global_input" in capsys.readouterr().err

    def test_cutoff_below_level_prime_is_exit_two(self, write_doc, capsys):
        path = write_doc(valid_global_doc())
        assert main(["global", "--input", path, "--pmax", "1"]) == 2
        assert "level prime" in capsys.readouterr().err

    def test_complex_entries_must_be_real_pairs(self, write_doc, capsys):
        path = write_doc(valid_global_doc(r=[[0, 1], 3]))
        assert main(["global", "--input", path]) == 2
        assert "must be real" in capsys.readouterr().err


class TestConsistency:
    def test_battery_passes(self):
        code, out = run_capture(
            RunConfig(command="consistency", output_format="machine")
        )
        assert code == 0
        records = records_of(out)
        assert len(records) == 2 * 15 + 9 + 1
        assert all(r["status"] == "pass" for r in records)
        names = {r["name"] for r in records}
        assert "consistency/arch-constant/D3/l12" in names
        assert "consistency/level-factor/p5-split/s1-3" in names
        assert "consistency/v-level/2" in names


class TestEntryPoints:
    def test_unknown_subcommand_exits_via_argparse(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_unreadable_file(self, capsys):
        assert main(["verify-local", "--input", "/no/such/file.json"]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_json_syntax_error_reports_position(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{broken", encoding="utf-8")
        assert main(["verify-local", "--input", str(path)]) == 2
        assert "line 1 column 2" in capsys.readouterr().err

    def test_module_execution(self):
        proc = subprocess.run(
            [sys.executable, "-m", "localzeta.cli", "verify-cosets", "--format", "machine", "--trials", "5"],
            capture_output=True,
            text=True,
            check=False,
        )
        assert proc.returncode == 0
        names = [json.loads(line)["name"] for line in proc.stdout.splitlines()]
        assert names == sorted(names)
        assert "cosets/p2/audit" in names

    def test_table_format_has_summary_line(self, capsys):
        assert main(["verify-volumes"]) == 0
        out = capsys.readouterr().out
        assert out.strip().endswith("checks, 0 failed")
