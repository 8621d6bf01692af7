import json
import os

import pytest

from tropih import cli, corpus
from tropih.instances import Instance, canonical_json, dump_instance, load_instance
from tropih.polyhedral_core import FaceComplex, point, ray


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out


@pytest.fixture
def shipped():
    return lambda name: os.path.join(corpus.data_dir(), name + ".json")


def write(tmp_path, inst, name):
    path = str(tmp_path / (name + ".json"))
    dump_instance(inst, path)
    return path


def test_parse_range():
    assert cli.parse_range("0-2") == [0, 1, 2]
    assert cli.parse_range("0,1,3") == [0, 1, 3]
    assert cli.parse_range("2") == [2]
    assert cli.parse_range(None) is None


def test_u31_gm_cohomology_table(capsys, shipped):
    code, out = run(capsys, "homology", shipped("u31_p0"), "--variant", "gm", "--coeff", "q",
                    "--flavor", "cohom", "--format", "table")
    assert code == cli.EXIT_OK
    rows = dict(line.split("\t") for line in out.splitlines())
    assert rows["0,0"] == "Q"
    assert all(v == "0" for k, v in rows.items() if k not in ("0,0", "1,0"))


def test_segment_nongm_json(capsys, shipped):
    code, out = run(capsys, "homology", shipped("segment_p0"), "--variant", "nongm")
    assert code == 0
    data = json.loads(out)
    nonzero = {k: v["rank"] for k, v in data["groups"].items() if v["rank"]}
    assert nonzero == {"0,1": 1, "1,1": 1}
    assert data["variant"] == "NONGM" and data["coeff"] == "Q"


def test_empty_instance_gives_empty_table(capsys, tmp_path):
    path = write(tmp_path, Instance(FaceComplex([]), "face", "zero", name="empty"), "empty")
    code, out = run(capsys, "homology", path, "--format", "table")
    assert code == 0 and out == ""
    code, out = run(capsys, "homology", path)
    assert code == 0 and json.loads(out)["groups"] == {}


def test_flavors_and_relative(capsys, shipped):
    for flavor in ("ih", "bm", "cohom", "cohom-c", "plain"):
        code, _ = run(capsys, "homology", shipped("u31_p0"), "--flavor", flavor, "--coeff", "z")
        assert code == 0
    inst = load_instance(shipped("u31_p0"))
    code, out = run(capsys, "homology", shipped("u31_p0"), "--p", "0",
                    "--rel", str(inst.cone_point), "--format", "table")
    assert code == 0 and "0,1\tQ^3" in out.splitlines()
    code, _ = run(capsys, "homology", shipped("u31_p0"), "--flavor", "bm", "--rel", "0")
    assert code == cli.EXIT_VALIDATION


def test_exit_codes(capsys, tmp_path, shipped, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "homology", str(bad))[0] == cli.EXIT_VALIDATION
    assert run(capsys, "info", str(bad))[0] == cli.EXIT_VALIDATION
    assert run(capsys, "homology", str(tmp_path / "missing.json"))[0] == cli.EXIT_VALIDATION
    assert run(capsys, "oracle", "--suite", "nope")[0] == cli.EXIT_VALIDATION
    assert run(capsys, "frobnicate")[0] == cli.EXIT_VALIDATION
    rays = FaceComplex.from_maximal([ray([0], [1]), ray([2], [1])])
    path = write(tmp_path, Instance(rays, "trop", "zero", name="two_rays"), "two_rays")
    assert run(capsys, "homology", path, "--flavor", "bm")[0] == cli.EXIT_UNSUPPORTED

    import tropih.ic_engine as eng
    real = eng._run

    def flaky(model, level, *a, **k):
        groups, uct = real(model, level, *a, **k)
        return ({key: g for key, g in groups.items() if level % 2 == 0 or key != (0, 1)}, uct)
    monkeypatch.setattr(eng, "_run", flaky)
    monkeypatch.setenv("TIH_MAX_SUBDIV", "3")
    assert run(capsys, "homology", shipped("segment_p0"))[0] == cli.EXIT_STABILIZATION


def test_info(capsys, tmp_path, shipped):
    code, out = run(capsys, "info", shipped("u31_p0"))
    assert code == 0
    data = json.loads(out)
    assert len(data["cells"]) == 4 and len(data["strata"]) == 4
    origin = [c for c in data["cells"] if c["dim"] == 0][0]
    assert origin["multitangent_ranks"][1] == 2
    path = write(tmp_path, Instance(FaceComplex.from_maximal([point([0])]), "face", "zero",
                                    name="point"), "point")
    data = json.loads(run(capsys, "info", path)[1])
    assert len(data["cells"]) == 1 and data["cells"][0]["multitangent_ranks"][0] == 1


def test_validate(capsys, tmp_path, shipped):
    assert run(capsys, "validate", shipped("u31_p0"))[0] == 0
    from tropih.polyhedral_core import segment
    X = FaceComplex.from_maximal([segment([0, 0], [2, 2]), segment([0, 2], [2, 0])])
    path = write(tmp_path, Instance(X, "face", "zero", name="crossing"), "crossing")
    code, out = run(capsys, "validate", path)
    assert code == cli.EXIT_VALIDATION and not json.loads(out)["valid"]


def test_oracle_suites(capsys, shipped):
    code, out = run(capsys, "oracle", "--suite", "duality")
    assert code == 0
    assert "PASS u31_p0 GM (expected mismatch)" in out
    code, out = run(capsys, "oracle", shipped("segment_p0"))
    assert code == 0 and out.splitlines()[-1].endswith("0 failed")


def test_oracle_mismatch_exit(capsys, monkeypatch, shipped):
    monkeypatch.setattr(cli, "onedim_nongm", lambda m, p_range=None: {})
    code, out = run(capsys, "oracle", shipped("segment_p0"))
    assert code == cli.EXIT_MISMATCH and "FAIL" in out


def test_byte_identical_output(capsys, shipped):
    outs = [run(capsys, "homology", shipped("u31_p0"), "--coeff", "z", "--variant", "gm")[1]
            for _ in range(2)]
    assert outs[0] == outs[1]
    assert outs[0] == canonical_json(json.loads(outs[0]))


@pytest.mark.parametrize("name", sorted(n[:-5] for n in os.listdir(corpus.data_dir())))
def test_shipped_instances_round_trip(name, shipped):
    path = shipped(name)
    inst = load_instance(path)
    text = canonical_json(inst.to_json())
    with open(path) as fh:
        assert fh.read() == text
    assert canonical_json(Instance.from_json(json.loads(text)).to_json()) == text
