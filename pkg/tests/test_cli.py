"""Command-line interface: every subcommand and every exit code."""

import json

import pytest

from gottlieb.cli import main


DOC = {
    "spaces": {
        "Y": {
            "betti": [1, 0, 1],
            "flags": {"simply_connected": True, "finite": True, "g_space": False},
            "gottlieb": {
                "entries": {"1": "Z/4", "2": "Z", "3": "Z/2", "4": "0", "5": "Z", "6": "0"},
                "zero_above": 6,
            },
            "homotopy": {"entries": {"2": "Z", "3": "Z/2"}},
        },
        # Free-loop table over Y: entry d is G_d(Y) + G_{d+1}(Y).
        "LY": {
            "gottlieb": {
                "entries": {"1": "Z + Z/4", "2": "Z + Z/2", "3": "Z/2", "4": "Z"}
            }
        },
        "X": {"suspension_shifts": [5, 10], "flags": {"finite": True}},
        "C": {
            "betti": [1, 1],
            "flags": {"finite": True},
            "gottlieb": {"entries": {"1": "Z", "2": "Z/2", "3": "Z", "4": "0", "5": "Z/3"}},
        },
        "B": {"flags": {"finite": True}},
        "N": {"betti": [1]},
        "P": {},
    },
    "maps": {
        "f": {
            "source": "C",
            "target": "Y",
            "relative_gottlieb": {
                "entries": {"1": "Z/2", "2": "Z", "3": "Z/8", "4": "0", "5": "Z"}
            },
        },
        "idY": {"source": "Y", "target": "Y", "is_identity": True},
    },
}


@pytest.fixture()
def profile_path(tmp_path):
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(DOC))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decompose_text(capsys):
    code, out, _ = run(capsys, "decompose", "--expr", "map(T2, Y)", "--degree", "1")
    assert code == 0
    assert out.strip() == "G[1](Y) + 2*G[2](Y) + G[3](Y)"


def test_decompose_json_is_byte_deterministic(capsys):
    args = ("decompose", "--expr", "map(T2, Y)", "--degree", "1", "--format", "json")
    code_a, out_a, _ = run(capsys, *args)
    code_b, out_b, _ = run(capsys, *args)
    assert code_a == code_b == 0
    assert out_a == out_b
    obj = json.loads(out_a)
    assert out_a == json.dumps(obj, sort_keys=True) + "\n"
    assert obj["text"] == "G[1](Y) + 2*G[2](Y) + G[3](Y)"
    assert obj["terms"][1] == {
        "kind": "gottlieb", "space": "Y", "degree": 2, "multiplicity": 2,
    }


def test_decompose_uses_profile_shifts(capsys, profile_path):
    code, out, _ = run(
        capsys, "decompose", "--expr", "map(X, Y)", "--degree", "1",
        "--profiles", profile_path,
    )
    assert code == 0
    assert out.strip() == "G[1](Y) + G[6](Y) + G[11](Y)"


def test_eval_complete(capsys, profile_path):
    code, out, _ = run(
        capsys, "eval", "--expr", "loop(Y)", "--degree", "2", "--profiles", profile_path
    )
    assert code == 0
    assert out.strip() == "Z + Z/2"


def test_eval_applies_triviality_bound(capsys, profile_path):
    code, out, _ = run(
        capsys, "eval", "--expr", "map(X, Y)", "--degree", "1", "--profiles", profile_path
    )
    assert code == 0
    assert out.strip() == "Z/4"


def test_eval_incomplete_exits_one(capsys, profile_path):
    code, out, _ = run(
        capsys, "eval", "--expr", "map(B, Y)", "--degree", "2", "--profiles", profile_path
    )
    assert code == 1
    assert "incomplete" in out
    assert "residual: Gen[Σ^2 B -> Y]" in out
    assert "partial: Z" in out


def test_eval_incomplete_json(capsys, profile_path):
    code, out, _ = run(
        capsys, "eval", "--expr", "map(B, Y)", "--degree", "2",
        "--profiles", profile_path, "--format", "json",
    )
    assert code == 1
    obj = json.loads(out)
    assert obj["status"] == "incomplete"
    assert obj["residuals"] == ["Gen[Σ^2 B -> Y]"]
    assert obj["partial"]["rank"] == 1


def test_parse_error_exits_two(capsys):
    code, _, err = run(capsys, "decompose", "--expr", "map(S1", "--degree", "1")
    assert code == 2
    assert "error:" in err


def test_decompose_error_exits_two(capsys):
    code, _, err = run(capsys, "decompose", "--expr", "wedge(S1, S2)", "--degree", "1")
    assert code == 2
    assert "no decomposition rule" in err


def test_pathologically_deep_expression_exits_two(capsys):
    expr = "wedge(S1, " * 5000 + "S1" + ")" * 5000
    code, _, err = run(capsys, "decompose", "--expr", expr, "--degree", "1")
    assert code == 2
    assert "nested too deeply" in err


def test_bad_degree_exits_two(capsys):
    code, _, err = run(capsys, "decompose", "--expr", "Y", "--degree", "0")
    assert code == 2


def test_missing_profile_file_exits_three(capsys, tmp_path):
    code, _, err = run(
        capsys, "eval", "--expr", "Y", "--degree", "1",
        "--profiles", str(tmp_path / "nope.json"),
    )
    assert code == 3
    assert "cannot read profile document" in err


def test_schema_error_exits_three(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"spaces": {"Y": {"color": "red"}}}')
    code, _, err = run(capsys, "eval", "--expr", "Y", "--degree", "1", "--profiles", str(path))
    assert code == 3


def test_unknown_space_exits_three(capsys, profile_path):
    code, _, err = run(
        capsys, "eval", "--expr", "Zz9", "--degree", "1", "--profiles", profile_path
    )
    assert code == 3
    assert "error:" in err


def test_usage_errors_exit_two(capsys, profile_path):
    # argparse's own failure mode: missing required argument.
    code, _, _ = run(capsys, "decompose", "--degree", "1")
    assert code == 2
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2
    # Post-parse usage validation.
    code, _, err = run(
        capsys, "rank", "--expr", "wedge(S1, S2)", "--profiles", profile_path
    )
    assert code == 2
    assert "map(X, Y)" in err


def test_rank_with_degree(capsys, profile_path):
    code, out, _ = run(
        capsys, "rank", "--expr", "map(C, Y)", "--degree", "2", "--profiles", profile_path
    )
    assert code == 0
    assert out.strip() == "gamma[2](map(C, Y)) = 1"


def test_rank_top_degree_report(capsys, profile_path):
    code, out, _ = run(capsys, "rank", "--expr", "map(C, Y)", "--profiles", profile_path)
    assert code == 0
    assert out.strip() == "top degree 5: gamma = 1"


def test_rank_json(capsys, profile_path):
    code, out, _ = run(
        capsys, "rank", "--expr", "map(C, Y)", "--degree", "2",
        "--profiles", profile_path, "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["gamma"] == 1
    assert obj["hypotheses_verified"] is True


def test_rank_hypothesis_failure_exits_two(capsys, profile_path):
    code, _, err = run(
        capsys, "rank", "--expr", "map(C, B)", "--degree", "1", "--profiles", profile_path
    )
    assert code == 2
    assert "hypotheses" in err


def test_rank_unchecked_watermarks_output(capsys, profile_path):
    code, out, _ = run(
        capsys, "rank", "--expr", "map(N, Y)", "--degree", "2",
        "--profiles", profile_path, "--unchecked-hypotheses",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "gamma[2](map(N, Y)) = 1"
    assert lines[1] == "warning: hypotheses not verified"


def test_rank_unchecked_incomplete_exits_one(capsys, profile_path):
    code, out, _ = run(
        capsys, "rank", "--expr", "map(C, B)", "--degree", "1",
        "--profiles", profile_path, "--unchecked-hypotheses",
    )
    assert code == 1
    assert "unknown: gamma[1](B)" in out


def test_fox_symbolic_and_evaluated(capsys, profile_path):
    code, out, _ = run(capsys, "fox", "--expr", "Y", "--degree", "3")
    assert code == 0
    assert out.strip() == "G[1](Y) + 2*G[2](Y) + G[3](Y)"
    code, out, _ = run(
        capsys, "fox", "--expr", "Y", "--degree", "3", "--profiles", profile_path
    )
    assert code == 0
    assert out.strip().splitlines() == ["G[1](Y) + 2*G[2](Y) + G[3](Y)", "Z^2 + Z/2 + Z/4"]


def test_fox_requires_atom_target(capsys):
    code, _, err = run(capsys, "fox", "--expr", "map(S1, Y)", "--degree", "2")
    assert code == 2
    assert "bare atom" in err


def test_loop_homotopy(capsys, profile_path):
    code, out, _ = run(
        capsys, "loop-homotopy", "--expr", "Y", "--degree", "2", "--iterations", "2"
    )
    assert code == 0
    assert out.strip() == "pi[2](Y) + 2*pi[3](Y) + pi[4](Y)"
    code, out, _ = run(
        capsys, "loop-homotopy", "--expr", "Y", "--degree", "2", "--iterations", "1",
        "--profiles", profile_path,
    )
    assert code == 0
    assert out.strip().splitlines()[-1] == "Z + Z/2"


def test_loop_homotopy_degree_one_exits_two(capsys):
    code, _, err = run(capsys, "loop-homotopy", "--expr", "Y", "--degree", "1")
    assert code == 2
    assert "split extension" in err


def test_relative(capsys, profile_path):
    code, out, _ = run(
        capsys, "relative", "--map", "f", "--degree", "2", "--m", "2",
        "--profiles", profile_path,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "factors: G[2](C) + 2*Grel[3](f)"
    assert lines[1] == "structure: direct-sum"
    assert lines[2] == "Z/2 + Z/8 + Z/8"


def test_relative_degree_one_marks_split_extension(capsys, profile_path):
    code, out, _ = run(
        capsys, "relative", "--map", "f", "--degree", "1", "--profiles", profile_path
    )
    assert code == 0
    assert "structure: split-extension" in out
    assert "note: degree-1 factors only" in out


def test_relative_identity_reduces(capsys, profile_path):
    code, out, _ = run(
        capsys, "relative", "--map", "idY", "--degree", "2", "--m", "3",
        "--profiles", profile_path,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "factors: G[2](Y) + 3*G[3](Y)"
    assert lines[2] == "Z + Z/2 + Z/2 + Z/2"


def test_relative_unsupported_iterations_exit_two(capsys, profile_path):
    code, _, err = run(
        capsys, "relative", "--map", "f", "--degree", "2", "--iterations", "3",
        "--profiles", profile_path,
    )
    assert code == 2
    code, _, err = run(
        capsys, "relative", "--map", "f", "--degree", "2", "--m", "2",
        "--iterations", "2", "--profiles", profile_path,
    )
    assert code == 2


def test_flags_text(capsys, profile_path):
    code, out, _ = run(
        capsys, "flags", "--expr", "map(S2, Y)", "--profiles", profile_path
    )
    assert code == 0
    assert out.strip().splitlines() == ["g_space: false", "t_space: unknown"]


def test_flags_json_uses_null_for_unknown(capsys, profile_path):
    code, out, _ = run(
        capsys, "flags", "--expr", "map(B, Y)", "--profiles", profile_path,
        "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["g_space"] is False  # false propagates even without a splitting
    assert obj["t_space"] is None


def test_loop_check_pass(capsys, profile_path):
    code, out, _ = run(
        capsys, "loop-check", "--expr", "Y", "--candidate", "LY",
        "--degrees", "1..4", "--profiles", profile_path,
    )
    assert code == 0
    assert out.strip() == "pass"


def test_loop_check_fail_exits_four(capsys, profile_path):
    code, out, _ = run(
        capsys, "loop-check", "--expr", "Y", "--candidate", "Y",
        "--degrees", "1..2", "--profiles", profile_path,
    )
    assert code == 4
    lines = out.strip().splitlines()
    assert lines[0] == "fail"
    assert "degree 1" in lines[1]


def test_loop_check_incomplete_exits_one(capsys, profile_path):
    code, out, _ = run(
        capsys, "loop-check", "--expr", "Y", "--candidate", "P",
        "--degrees", "1", "--profiles", profile_path,
    )
    assert code == 1
    assert out.strip().splitlines()[0] == "incomplete"


def test_loop_check_bad_window_exits_two(capsys, profile_path):
    code, _, err = run(
        capsys, "loop-check", "--expr", "Y", "--candidate", "LY",
        "--degrees", "4..1", "--profiles", profile_path,
    )
    assert code == 2
    code, _, err = run(
        capsys, "loop-check", "--expr", "Y", "--candidate", "LY",
        "--degrees", "a..b", "--profiles", profile_path,
    )
    assert code == 2


def test_check_single_expression(capsys):
    code, out, _ = run(capsys, "check", "--expr", "map(T2, Y)", "--degree", "3")
    assert code == 0
    assert "all checks passed" in out
    assert "FAIL" not in out


def test_check_json(capsys):
    code, out, _ = run(
        capsys, "check", "--expr", "bloop(Y, 2, 2)", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert obj["reports"][0]["expr"] == "bloop(Y, 2, 2)"
    assert all(e["passed"] for e in obj["reports"][0]["entries"])


def test_check_default_suite(capsys):
    code, out, _ = run(capsys, "check", "--seed", "1")
    assert code == 0
    assert "all checks passed" in out
    # Six fixed cases plus the randomized corpus.
    assert out.count("crosscheck ") == 31
