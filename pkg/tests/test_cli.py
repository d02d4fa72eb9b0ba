import contextlib
import io
import json
import pathlib

import jsonschema
import pytest

from mvspoly.cli import main

SCHEMA = json.loads(
    (pathlib.Path(__file__).resolve().parent.parent / "docs" / "schema.json").read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def run(argv):
    buf = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, buf.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run(argv)
    payload = json.loads(out)
    VALIDATOR.validate(payload)
    return code, payload


def test_verify_positive_example():
    code, d = run_json(["verify", "--field", "2^6:1",
                        "--T", "x^4+x^2+x", "--F", "x^18+x^9"])
    assert code == 0
    assert d["is_member"] and d["theta"] == [1, 0, 0, 0, 0, 0]


def test_verify_negative_example():
    code, d = run_json(["verify", "--field", "2^6:1",
                        "--T", "x^4+x^2+x", "--F", "x^2"])
    assert code == 1 and d["reason"] == "value set mismatch"


def test_verify_input_error():
    code, out, err = run(["verify", "--field", "2^6:1",
                          "--T", "x^3+x", "--F", "x"])
    assert code == 2 and "input error" in err


def test_basis_binomial_example():
    code, d = run_json(["basis", "--field", "2^6:1", "--binomial", "d=3,alpha=1"])
    assert code == 0 and d["dim"] == 12 and len(d["elements"]) == 12


def test_basis_d_alpha_flags():
    code, d = run_json(["basis", "--field", "2^6:1", "--d", "3", "--alpha", "1"])
    assert code == 0 and d["dim"] == 12


def test_orbits_csv():
    code, out, err = run(["orbits", "--q", "2", "--n", "3", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",") == ["n", "representative_bits", "exponent", "size"]
    assert lines[1:] == ["3,000,0,1", "3,100,1,3", "3,110,3,3", "3,111,7,1"]


def test_orbits_json_counts():
    code, d = run_json(["orbits", "--q", "2", "--n", "6"])
    assert code == 0 and d["orbit_count"] == 14
    assert sum(int(k) * v for k, v in d["counts"].items()) == 64


def test_wspace_group_aliases():
    code, d = run_json(["wspace", "orbits", "--q", "2", "--n", "3"])
    assert code == 0 and d["kind"] == "orbits"
    code, d = run_json(["wspace", "basis", "--field", "2^2:1", "--d", "1"])
    assert code == 0 and d["dim"] == 4


def test_lift_command_tau_input():
    code, d = run_json(["lift", "--field", "2^6:1", "--A", "T^2+T+1"])
    assert code == 0
    assert d["dim_lower"] == 11 and d["M"] == "T + 1,0,0,0,0,0"


def test_lift_command_sparse_input():
    code, d = run_json(["lift", "--field", "2^6:1", "--A", "x^4+x^2+x"])
    assert code == 0 and d["d"] == 3 and d["t"] == 2


def test_enumerate_counts():
    code, d = run_json(["enumerate", "--field", "2^2:1", "--d", "1"])
    assert code == 0 and d["count"] == 16 and len(d["members"]) == 16


def test_enumerate_guard_refusal():
    code, out, err = run(["enumerate", "--field", "2^6:1", "--d", "1",
                          "--guard-max", "1024"])
    assert code == 3 and "guard refusal" in err


def test_classify_example():
    code, d = run_json(["classify", "--field", "3^2:1", "--F", "x^4"])
    assert code == 0 and d["shape"] == "sqrt_plus_one_power"
    code, d = run_json(["classify", "--field", "3^2:1", "--F", "x^4+x"])
    assert code == 1 and not d["found"]


def test_reduce_example():
    code, d = run_json(["reduce", "--field", "3^6:1", "--T", "x^5+x^2+x"])
    assert code == 0
    assert any(w["v"] == 2 and w["A"] == "x^9 + x^3 + x" for w in d["witnesses"])


def test_profile_example():
    code, d = run_json(["profile", "--field", "2^6:1",
                        "--T", "x^8+x", "--F", "x^9"])
    assert code == 0
    assert d["multiplicities_coprime_p"] and d["has_required_simple_roots"]


def test_oracle_census():
    code, d = run_json(["oracle", "census", "--field", "2^3:1"])
    assert code == 0 and d["members"] == 256 and d["disagreements"] == 0


def test_oracle_census_fixed_values():
    code, d = run_json(["oracle", "census", "--field", "2^3:1",
                        "--values", "0;1;0,1"])
    assert code == 0 and d["members"] == 3


def test_oracle_dim():
    code, d = run_json(["oracle", "dim", "--field", "2^6:1", "--A", "x^4+x^2+x"])
    assert code == 0 and d["dim"] == 11


def test_oracle_theorems():
    code, d = run_json(["oracle", "theorems", "--field", "2^2:1"])
    assert code == 0
    assert all(r["mismatches"] == 0 for r in d["reports"])


def test_examples_section1():
    code, d = run_json(["examples", "--section", "1"])
    assert code == 0 and d["ok"]
    assert d["orbit_sizes"] == [1, 3, 3, 1] and d["total_dim"] == 8


def test_examples_section1_q5():
    code, d = run_json(["examples", "--section", "1", "--q", "5"])
    assert code == 0 and d["orbit_sizes"] == [1, 3, 3, 1]


def test_examples_section2():
    code, d = run_json(["examples", "--section", "2"])
    assert code == 0
    assert (d["dim_w_binomial"], d["dim_lower"], d["oracle_dim"]) == (12, 11, 11)


def test_examples_section3():
    code, d = run_json(["examples", "--section", "3"])
    assert code == 0
    assert d["is_mvsp"] and d["deg"] == 18 and d["values"] == 4
    assert not d["classical_power_form_found"]
    assert d["degree_exceeds_subfield_cap"]


def test_examples_section4_small_sample():
    code, d = run_json(["examples", "--section", "4", "--samples", "8"])
    assert code == 0
    assert d["reduction"] == {"v": 2, "base": 1, "gamma": [0, 0, 0, 0, 0, 0]}
    assert d["dim_lower"] == 11 and d["verified"] == 8
    assert d["image_count_lower_bound"] == 88574


def test_examples_bad_section():
    code, out, err = run(["examples", "--section", "7"])
    assert code == 2


def test_outputs_byte_identical():
    argv = ["basis", "--field", "2^6:1", "--d", "3", "--alpha", "1"]
    _, out1, _ = run(argv)
    _, out2, _ = run(argv + ["--jobs", "4"])
    assert out1 == out2


def test_unknown_flag_rejected():
    code, out, err = run(["verify", "--field", "2^2:1", "--T", "x^2+x",
                          "--F", "x^2+x", "--bogus", "1"])
    assert code == 2


def test_jobs_validation():
    code, out, err = run(["orbits", "--q", "2", "--n", "3", "--jobs", "0"])
    assert code == 2


def test_csv_census_witness_dump():
    code, out, err = run(["oracle", "census", "--field", "2^2:1",
                          "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,polynomial"
    assert len(lines) == 17
