import json

import pytest

from hvol.cli import JobSpec, main, parse_group, parse_model, run
from hvol.errors import SchemaError
from hvol.singularities import PolarizedConeData, ToricConeSingularity


AKM_35 = '{"type":"akm","n":3,"k":5}'
C2_TORIC = '{"type":"toric_cone","rays":[[1,0],[0,1]],"canonical_xi":[1,1]}'


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_compute_toric(capsys):
    code, out = run_cli(
        capsys, ["compute", "--model", C2_TORIC, "--valuation", "1,1"]
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["nvol"]["exact"] == "4"
    assert all(check["pass"] for check in report["checks"])


def test_compute_akm_rational_weights(capsys):
    code, out = run_cli(
        capsys,
        ["compute", "--model", AKM_35, "--valuation", "1,1,1,1/2"],
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["logdisc"]["exact"] == "3/2"
    assert report["results"]["volume"]["exact"] == "4"


def test_minimize_akm(capsys):
    code, out = run_cli(capsys, ["minimize", "--model", AKM_35])
    assert code == 0
    report = json.loads(out)
    assert report["results"]["min_nvol_exact"] == "27/2"
    assert report["results"]["converged"] is True


def test_minimize_with_init_matches_example(capsys):
    model = '{"type":"toric_cone","rays":[[1,0,0],[0,1,0],[0,0,1]]}'
    code, out = run_cli(
        capsys, ["minimize", "--model", model, "--init", "1,2,5"]
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["argmin"] == ["1", "1", "1"]
    assert report["results"]["min_nvol_exact"] == "27"


def test_quotient_cyclic(capsys):
    code, out = run_cli(
        capsys, ["quotient", "--group", '{"type":"cyclic","r":7,"a":3}']
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["min_nvol"]["exact"] == "4/7"


def test_quotient_element_list(capsys):
    group = '{"type":"elements","eigs":[[0,1,0,1],[1,2,1,2]]}'
    code, out = run_cli(capsys, ["quotient", "--group", group])
    assert code == 0
    report = json.loads(out)
    assert report["results"]["order"] == 2
    assert report["results"]["min_nvol"]["exact"] == "2"


def test_filtration_command(capsys):
    code, out = run_cli(
        capsys, ["filtration", "--model", C2_TORIC, "--v1", "1,2", "--lam", "auto"]
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["c1"]["exact"] == "1"
    assert report["results"]["vol_v1"]["exact"] == "1/2"
    assert all(check["pass"] for check in report["checks"])


def test_selftest_filtered(capsys):
    code, out = run_cli(capsys, ["selftest", "--filter", "sharpness"])
    assert code == 0
    report = json.loads(out)
    assert report["results"]["failed"] == 0
    assert report["results"]["total"] == 50


def test_csv_output(capsys):
    code, out = run_cli(
        capsys,
        ["minimize", "--model", C2_TORIC, "--init", "1,3", "--format", "csv"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "iteration,w0,w1,nvol"
    assert len(lines) >= 2


def test_reports_are_byte_identical(tmp_path):
    spec = JobSpec(
        command="minimize",
        model=json.loads(AKM_35),
        options={"seed": 3},
    )
    first, _ = run(spec)
    second, _ = run(spec)
    assert first.to_json() == second.to_json()


def test_exit_code_on_schema_error(capsys):
    code = main(["compute", "--model", '{"type":"mystery"}'])
    err = capsys.readouterr().err
    assert code == 3
    assert "schema_error" in err


def test_exit_code_on_model_error(capsys):
    code = main(["compute", "--model", C2_TORIC, "--valuation", "1,-1"])
    assert code == 3


def test_parse_model_variants():
    assert isinstance(
        parse_model({"type": "toric_cone", "rays": [[1, 0], [0, 1]]}),
        ToricConeSingularity,
    )
    assert isinstance(
        parse_model({"type": "polarized_cone", "n": 3, "r": "2", "degH": "1/2"}),
        PolarizedConeData,
    )
    hyp = parse_model(
        {"type": "hypersurface", "n": 2, "monomials": [[2, 0, 0], [0, 2, 0], [0, 0, 3]]}
    )
    assert hyp.nvars == 3
    with pytest.raises(SchemaError):
        parse_model({"rays": [[1, 0]]})
    with pytest.raises(SchemaError):
        parse_model({"type": "toric_cone"})
    with pytest.raises(SchemaError):
        parse_group({"type": "cyclic", "r": 3})


def test_schema_version_rejected():
    with pytest.raises(SchemaError):
        parse_model({"schema": 2, "type": "akm", "n": 2, "k": 2})


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(
        ["compute", "--model", C2_TORIC, "--valuation", "2,3", "--output", str(target)]
    )
    assert code == 0
    report = json.loads(target.read_text())
    assert report["results"]["logdisc"]["exact"] == "5"
