"""End-to-end command-line checks, run in process through main()."""

import json

import pytest

from gradeforge.cli import main
from gradeforge.holonomic import PRecurrence, unroll


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv, "--json")
    assert rc == 0, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# expand


def test_expand_builtin_json(capsys):
    data = run_json(capsys, "expand", "builtin", "catalan", "--terms", "8")
    assert data["kind"] == "coeffs"
    assert data["terms"] == 8
    assert data["coeffs"] == ["1", "1", "2", "5", "14", "42", "132", "429"]


def test_expand_table_is_the_default(capsys):
    rc, out, err = run(capsys, "expand", "builtin", "exp", "--terms", "4")
    assert rc == 0
    assert out.splitlines() == ["0\t1", "1\t1", "2\t1/2", "3\t1/6"]


def test_expand_inline_coeffs(capsys):
    data = run_json(capsys, "expand", "coeffs", '[3, "1/2"]', "--terms", "2")
    assert data["coeffs"] == ["3", "1/2"]


def test_expand_descriptor_from_file(capsys, tmp_path):
    path = tmp_path / "branch.json"
    path.write_text(json.dumps(
        {"P": [[0, 2, "1"], [0, 1, "-1"], [1, 0, "1"]], "y0": "0"}
    ))
    data = run_json(capsys, "expand", "algebraic", f"@{path}", "--terms", "6")
    assert data["coeffs"] == ["0", "1", "1", "2", "5", "14"]


def test_expand_output_round_trips_as_a_descriptor(capsys):
    first = run_json(capsys, "expand", "builtin", "central-binomial",
                     "--terms", "10")
    again = run_json(capsys, "expand", "coeffs", json.dumps(first),
                     "--terms", "10")
    assert again == first


def test_expand_rejects_bad_payload(capsys):
    rc, out, err = run(capsys, "expand", "coeffs", "[1.5]")
    assert rc == 2
    assert "error:" in err


def test_expand_rejects_nonpositive_terms(capsys):
    rc, out, err = run(capsys, "expand", "builtin", "exp", "--terms", "0")
    assert rc == 2


# ---------------------------------------------------------------------------
# hadamard


def test_hadamard_collapses_euler_against_exp(capsys):
    data = run_json(capsys, "hadamard", "builtin", "euler", "builtin", "exp",
                    "--terms", "8")
    assert data["coeffs"] == ["1", "-1", "1", "-1", "1", "-1", "1", "-1"]


def test_hadamard_emit_recurrence(capsys):
    data = run_json(capsys, "hadamard", "builtin", "euler", "builtin", "exp",
                    "--terms", "6", "--emit-recurrence")
    rec = PRecurrence.from_json_dict(data["recurrence"])
    assert [str(c) for c in unroll(rec, 6).coeffs] == data["coeffs"]


def test_hadamard_emit_recurrence_table_rendering(capsys):
    rc, out, err = run(capsys, "hadamard", "builtin", "euler", "builtin",
                       "exp", "--terms", "4", "--emit-recurrence")
    assert rc == 0
    assert "recurrence of order" in out
    assert "initial:" in out


def test_hadamard_emit_recurrence_needs_holonomic_inputs(capsys):
    rc, out, err = run(capsys, "hadamard", "coeffs", "[1, 2]", "builtin",
                       "exp", "--terms", "2", "--emit-recurrence")
    assert rc == 2
    assert "recurrence" in err


# ---------------------------------------------------------------------------
# obstruct


def test_obstruct_flags_factorial_growth(capsys):
    data = run_json(capsys, "obstruct", "builtin", "exp", "--terms", "40")
    assert data["verdict"] == "infinite-grade-evidence"


def test_obstruct_passes_geometric(capsys):
    data = run_json(capsys, "obstruct", "builtin", "geometric",
                    "--terms", "40")
    assert data["verdict"] == "no-obstruction-found"


def test_obstruct_table_lists_the_scans(capsys):
    rc, out, err = run(capsys, "obstruct", "builtin", "euler",
                       "--terms", "30")
    assert rc == 0
    for label in ("verdict", "prime support", "radius fit", "periodicity"):
        assert label in out


def test_obstruct_clamps_out_of_range_windows(capsys):
    # the report clamps rather than refuses: the command still runs, but a
    # one-index window is too blunt to certify growing prime support
    data = run_json(capsys, "obstruct", "builtin", "exp", "--terms", "40",
                    "--window", "0")
    assert data["verdict"] == "no-obstruction-found"


# ---------------------------------------------------------------------------
# modp


def test_modp_catalan_closes(capsys):
    data = run_json(capsys, "modp", "builtin", "catalan", "--p", "2",
                    "--depth", "5")
    assert data["status"] == "closed"
    assert data["state_count"] == 3
    assert data["consistent"] is True
    assert data["q"] == 2


def test_modp_table_rendering(capsys):
    rc, out, err = run(capsys, "modp", "builtin", "catalan", "--p", "2",
                       "--depth", "5")
    assert rc == 0
    assert "status       closed" in out
    assert out.count("state ") == 3


def test_modp_dot_rendering(capsys):
    rc, out, err = run(capsys, "modp", "builtin", "catalan", "--p", "2",
                       "--depth", "5", "--dot")
    assert rc == 0
    assert out.startswith("digraph kernel {")
    assert 'label="base 2, mod 2, closed"' in out


def test_modp_explicit_base(capsys):
    data = run_json(capsys, "modp", "builtin", "geometric", "--p", "3",
                    "--base", "2", "--depth", "4")
    assert data["q"] == 2
    assert data["p"] == 3
    assert data["status"] == "closed"


def test_modp_needs_an_algebraic_input(capsys):
    rc, out, err = run(capsys, "modp", "builtin", "exp", "--p", "2",
                       "--depth", "4")
    assert rc == 2
    assert "annihilator" in err


def test_modp_bad_prime_power_is_a_precondition_error(capsys):
    # 1/2 coefficients cannot be reduced mod 2
    payload = json.dumps({
        "P": [[0, 2, "1"], [0, 1, "2"], [1, 0, "-1"]],  # y^2 + 2y - z
        "y0": "0",
    })
    rc, out, err = run(capsys, "modp", "algebraic", payload, "--p", "2",
                       "--depth", "4")
    assert rc == 3
    assert "denominator" in err


def test_modp_validates_p_and_r(capsys):
    rc, _, _ = run(capsys, "modp", "builtin", "catalan", "--p", "1",
                   "--depth", "4")
    assert rc == 2
    rc, _, _ = run(capsys, "modp", "builtin", "catalan", "--p", "2",
                   "--r", "0", "--depth", "4")
    assert rc == 2


# ---------------------------------------------------------------------------
# diagonal


def test_diagonal_witness_output(capsys):
    data = run_json(capsys, "diagonal", "builtin", "catalan", "--order", "6")
    assert data["diagonal"] == ["1", "1", "2", "5", "14", "42"]
    w = data["witness"]
    assert w["d"] == 1
    assert w["constant_shift"] == "1"


def test_diagonal_square_lifts_to_four_variables(capsys):
    data = run_json(capsys, "diagonal", "builtin", "central-binomial",
                    "--order", "6", "--square")
    assert data["witness"]["d"] == 2
    assert data["diagonal"] == ["1", "4", "36", "400", "4900", "63504"]


def test_diagonal_table_prints_the_rational_function(capsys):
    rc, out, err = run(capsys, "diagonal", "builtin", "catalan",
                       "--order", "5")
    assert rc == 0
    assert "numerator" in out and "denominator" in out
    assert "diagonal" in out


def test_diagonal_needs_an_annihilator(capsys):
    rc, out, err = run(capsys, "diagonal", "builtin", "euler", "--order", "4")
    assert rc == 2


def test_diagonal_order_over_desk_cap_exhausts_budget(capsys):
    rc, out, err = run(capsys, "diagonal", "builtin", "catalan",
                       "--order", "13")
    assert rc == 4


# ---------------------------------------------------------------------------
# euler and optics


def test_euler_bench_values(capsys):
    data = run_json(capsys, "euler", "--z", "1.0")
    assert abs(data["value"] - 0.5963473623) < 1e-6
    assert data["discrepancy"] < 1e-8
    assert data["method"]


def test_euler_rejects_nonpositive_z(capsys):
    rc, out, err = run(capsys, "euler", "--z", "-1.0")
    assert rc == 3


def test_euler_table_rendering(capsys):
    rc, out, err = run(capsys, "euler", "--z", "0.5")
    assert rc == 0
    assert "value" in out and "branch offset" in out


def test_optics_exact_identity(capsys):
    tangent = '[0, 1, 0, "1/3", 0, "2/15", 0]'
    data = run_json(capsys, "optics", "coeffs", tangent,
                    "--plates", '[[1, 1], ["1/2", 3]]', "--terms", "7")
    assert data["exact"] is True
    assert data["discrepancy"] == "0"
    assert data["plates"] == 2


def test_optics_rejects_even_series(capsys):
    rc, out, err = run(capsys, "optics", "builtin", "geometric",
                       "--plates", "[[1, 1]]", "--terms", "6")
    assert rc == 3


def test_optics_validates_plates(capsys):
    odd = '[0, 1, 0, "1/3"]'
    for plates in ("[]", "[[1]]", '[[1, 0]]', '[["1/0", 1]]', "{}"):
        rc, out, err = run(capsys, "optics", "coeffs", odd,
                           "--plates", plates, "--terms", "4")
        assert rc == 2, plates


# ---------------------------------------------------------------------------
# global behavior


def test_show_config_prints_effective_knobs(capsys, monkeypatch):
    monkeypatch.delenv("GRADEFORGE_CONFIG", raising=False)
    rc, out, err = run(capsys, "--show-config")
    assert rc == 0
    cfg = json.loads(out)
    assert cfg["terms"] == 32
    assert cfg["depth_budget"] == 8


def test_config_file_overrides_apply(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"terms": 5}))
    monkeypatch.setenv("GRADEFORGE_CONFIG", str(path))
    data = run_json(capsys, "expand", "builtin", "exp")
    assert data["terms"] == 5


def test_broken_config_file_is_a_schema_error(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cfg.json"
    path.write_text("{oops")
    monkeypatch.setenv("GRADEFORGE_CONFIG", str(path))
    rc, out, err = run(capsys, "expand", "builtin", "exp")
    assert rc == 2


def test_no_command_prints_usage(capsys):
    rc, out, err = run(capsys)
    assert rc == 2
    assert "usage" in err.lower()


def test_unknown_flag_exits_through_argparse(capsys):
    with pytest.raises(SystemExit) as info:
        main(["expand", "builtin", "exp", "--frobnicate"])
    assert info.value.code == 2


def test_json_and_table_are_mutually_exclusive(capsys):
    with pytest.raises(SystemExit) as info:
        main(["expand", "builtin", "exp", "--json", "--table"])
    assert info.value.code == 2
