import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from skorodist.cli import cli
from skorodist.io import (load_ordered_set, load_path, ordered_set_from_json,
                          ordered_set_to_json, path_from_json, path_to_json,
                          save_ordered_set, save_path)
from skorodist.ordered import OrderedPointSet
from skorodist.paths import step_path


def path_json(a, dom=((0.0, 2.0),)):
    return {"space": "R",
            "domain": {"intervals": [list(p) for p in dom], "points": []},
            "initial": 0.0,
            "jumps": [{"t": a, "left": 0.0, "right": 1.0}]}


def test_path_round_trip(tmp_path):
    p = step_path([(0, 2)], initial=0.0,
                  jumps=[(1.0, 0.0, 0.5), (1.5, 0.5, 1.0)])
    save_path(p, tmp_path / "p.json")
    q = load_path(tmp_path / "p.json")
    assert q.domain.pieces == p.domain.pieces
    assert [(j.t, j.left, j.right) for j in q.jumps] == \
        [(j.t, j.left, j.right) for j in p.jumps]


def test_path_vector_values_and_inf_bounds():
    obj = {"space": "R^2",
           "domain": {"intervals": [[0.0, "+inf"]], "points": []},
           "initial": [0.0, 0.0],
           "jumps": [{"t": 1.0, "left": [0.0, 0.0], "right": [1.0, 2.0]}]}
    p = path_from_json(obj)
    assert p.domain.pieces == ((0.0, math.inf),)
    assert p.right(1.0) == (1.0, 2.0)
    back = path_to_json(p)
    assert back["space"] == "R^2" and back["domain"]["intervals"] == [[0.0, "+inf"]]
    with pytest.raises(ValueError):
        path_from_json({"space": "R^0", "domain": {}, "initial": 0.0})
    with pytest.raises(ValueError):
        path_from_json({"space": "R", "domain": {"points": [0.0]}})  # no initial
    with pytest.raises(ValueError):
        path_from_json({"space": "R^2", "domain": {"points": [0.0]},
                        "initial": 1.0})  # dimension mismatch


def test_trivial_path_json():
    p = path_from_json({"space": "R", "domain": {"intervals": [], "points": []}})
    assert p.is_trivial
    assert path_to_json(p)["domain"] == {"intervals": [], "points": []}


def test_ordered_set_round_trip(tmp_path):
    k = OrderedPointSet([0.0, 1.0, 2.0], [(0, 1)])
    save_ordered_set(k, tmp_path / "k.json")
    k2 = load_ordered_set(tmp_path / "k.json")
    assert (k2.leq == k.leq).all() and k2.points == k.points and not k2.total
    obj = ordered_set_to_json(OrderedPointSet.chain([(0.0, 1.0), (2.0, 3.0)]))
    k3 = ordered_set_from_json(obj)
    assert k3.total and k3.points == [(0.0, 1.0), (2.0, 3.0)]
    with pytest.raises(ValueError):
        ordered_set_from_json({"order_pairs": []})
    with pytest.raises(ValueError):
        ordered_set_from_json({"points": [0.0, 1.0], "order_pairs": [],
                               "total": True})  # totality flag contradicts closure


def test_cli_dist_and_witness(tmp_path):
    a = {"space": "R", "domain": {"intervals": [], "points": [0.0]},
         "initial": 0.0, "jumps": []}
    b = dict(a, initial=0.3)
    (tmp_path / "a.json").write_text(json.dumps(a))
    (tmp_path / "b.json").write_text(json.dumps(b))
    r = CliRunner().invoke(cli, ["dist", str(tmp_path / "a.json"),
                                 str(tmp_path / "b.json"), "--variant", "tot"])
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "0.3 ± 0"
    assert "witness correspondence: 3 pairs" in r.output


def test_cli_hausdorff_identity(tmp_path):
    (tmp_path / "f.json").write_text(json.dumps(path_json(1.0)))
    r = CliRunner().invoke(cli, ["dist", str(tmp_path / "f.json"),
                                 str(tmp_path / "f.json"), "--mode", "m1",
                                 "--variant", "hausdorff"])
    assert r.exit_code == 0 and r.output.startswith("0 ")


def test_cli_malformed_json_exit_2(tmp_path):
    (tmp_path / "bad.json").write_text("{broken")
    (tmp_path / "ok.json").write_text(json.dumps(path_json(1.0)))
    r = CliRunner().invoke(cli, ["dist", str(tmp_path / "bad.json"),
                                 str(tmp_path / "ok.json")])
    assert r.exit_code == 2
    assert "line 1" in r.output  # parse position is reported


def test_cli_budget_exit_3(tmp_path):
    r = CliRunner().invoke(cli, ["gen", "noop", "--m", "3", "--eps", "0.25"],
                           env={"SKORODIST_BUDGET": "10"})
    assert r.exit_code == 3
    assert "budget" in r.output


def test_cli_gen_writes_files(tmp_path):
    out = tmp_path / "inst"
    r = CliRunner().invoke(cli, ["gen", "noop", "--m", "2", "--eps", "0.25",
                                 "--out", str(out)])
    assert r.exit_code == 0
    k1 = load_ordered_set(out / "K1.json")
    assert len(k1) == 3 and k1.total
    assert "(>= 0.5)" in r.output and "True" in r.output
    r = CliRunner().invoke(cli, ["gen", "diftop", "--m", "1", "--n", "50"])
    assert r.exit_code == 0
    r = CliRunner().invoke(cli, ["gen", "noncompl", "--n", "4"])
    assert r.exit_code == 0 and "Cauchy" in r.output


def test_cli_converge_csv_and_figure(tmp_path):
    seq = tmp_path / "seq"
    seq.mkdir()
    for n in (4, 16, 64):
        (seq / f"f_{n}.json").write_text(json.dumps(path_json(1.0 + 1.0 / n)))
    (tmp_path / "limit.json").write_text(json.dumps(path_json(1.0)))
    out = tmp_path / "conv.csv"
    r = CliRunner().invoke(cli, ["converge", str(seq), str(tmp_path / "limit.json"),
                                 "--mode", "j1", "--out", str(out)])
    assert r.exit_code == 0
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "n,distance"
    vals = [float(line.split(",")[1]) for line in rows[1:]]
    assert vals[0] > vals[1] > vals[2]
    assert (tmp_path / "conv.png").exists()
    # identical files give zeros
    r = CliRunner().invoke(cli, ["converge", str(seq), str(seq / "f_4.json"),
                                 "--n-list", "4"])
    assert r.exit_code == 0 and r.output.strip().splitlines()[-1] == "4,0"


def test_cli_diagnose_report_and_figure(tmp_path):
    fam = tmp_path / "fam"
    fam.mkdir()
    for n in range(2, 18):
        (fam / f"g_{n}.json").write_text(json.dumps({
            "space": "R", "domain": {"intervals": [[0.0, 2.0]], "points": []},
            "initial": 0.0,
            "jumps": [{"t": 1.0, "left": 0.0, "right": 0.5},
                      {"t": 1.0 + 1.0 / n, "left": 0.5, "right": 1.0}]}))
    out = tmp_path / "report.json"
    r = CliRunner().invoke(cli, ["diagnose", str(fam), "--mode", "j1",
                                 "--out", str(out)])
    assert r.exit_code == 0
    rep = json.loads(out.read_text())
    assert rep["verdict"] == "not-precompact"
    assert rep["curves"]
    assert (tmp_path / "report.png").exists()
    r = CliRunner().invoke(cli, ["diagnose", str(fam), "--mode", "m1",
                                 "--windows", "2"])
    assert r.exit_code == 0 and "consistent-with-precompact" in r.output


def test_cli_axioms_and_modulus(tmp_path):
    r = CliRunner().invoke(cli, ["axioms", "--mode", "m1", "--triples", "40",
                                 "--dim", "3"])
    assert r.exit_code == 0 and "0 violations" in r.output
    (tmp_path / "g.json").write_text(json.dumps({
        "space": "R", "domain": {"intervals": [[0.0, 2.0]], "points": []},
        "initial": 0.0,
        "jumps": [{"t": 1.0, "left": 0.0, "right": 0.5},
                  {"t": 1.5, "left": 0.5, "right": 1.0}]}))
    r = CliRunner().invoke(cli, ["modulus", str(tmp_path / "g.json"),
                                 "--kind", "skorohod", "--deltas", "0.6,0.4"])
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "delta,value"
    assert "0.6,0.5" in r.output and "0.4,0" in r.output


def test_cli_modulus_witness_split_form(tmp_path):
    (tmp_path / "g.json").write_text(json.dumps({
        "space": "R", "domain": {"intervals": [[0.0, 2.0]], "points": []},
        "initial": 0.0,
        "jumps": [{"t": 1.0, "left": 0.0, "right": 0.5},
                  {"t": 1.5, "left": 0.5, "right": 1.0}]}))
    r = CliRunner().invoke(cli, ["modulus", str(tmp_path / "g.json"),
                                 "--witness", "--deltas", "0.6"])
    assert r.exit_code == 0
    assert r.output.splitlines()[1] == "0.6,0.5,1-,1+,1.5+"


def test_cli_dist_with_config(tmp_path):
    (tmp_path / "f.json").write_text(json.dumps(path_json(1.0)))
    (tmp_path / "g.json").write_text(json.dumps(path_json(1.25)))
    (tmp_path / "cfg.json").write_text(json.dumps(
        {"phi": "inv_one_plus_sq", "dbar": "tanh"}))
    r = CliRunner().invoke(cli, ["dist", str(tmp_path / "f.json"),
                                 str(tmp_path / "g.json"),
                                 "--config", str(tmp_path / "cfg.json")])
    assert r.exit_code == 0
    default = CliRunner().invoke(cli, ["dist", str(tmp_path / "f.json"),
                                       str(tmp_path / "g.json")])
    assert default.output != r.output  # the config really changes the numbers
    (tmp_path / "badcfg.json").write_text(json.dumps({"phi": "nope"}))
    r = CliRunner().invoke(cli, ["dist", str(tmp_path / "f.json"),
                                 str(tmp_path / "g.json"),
                                 "--config", str(tmp_path / "badcfg.json")])
    assert r.exit_code == 2


def test_cli_custom_mode_matches_m1(tmp_path):
    # the registered linear_blend interpolation spans the same segments as m1
    (tmp_path / "f.json").write_text(json.dumps(path_json(1.0)))
    (tmp_path / "g.json").write_text(json.dumps(path_json(1.25)))
    args = [str(tmp_path / "f.json"), str(tmp_path / "g.json"), "--eta", "0.05"]
    m1 = CliRunner().invoke(cli, ["dist", *args, "--mode", "m1"])
    custom = CliRunner().invoke(cli, ["dist", *args, "--mode", "custom",
                                      "--custom", "linear_blend"])
    assert m1.exit_code == custom.exit_code == 0
    assert m1.output.splitlines()[0] == custom.output.splitlines()[0]
    missing = CliRunner().invoke(cli, ["dist", *args, "--mode", "custom"])
    assert missing.exit_code == 2


def test_cli_matrix(tmp_path):
    fam = tmp_path / "fam"
    fam.mkdir()
    for i, a in enumerate((0.5, 1.0, 1.5)):
        (fam / f"p_{i}.json").write_text(json.dumps(path_json(a)))
    out = tmp_path / "m.csv"
    r = CliRunner().invoke(cli, ["matrix", str(fam), "--eta", "0.05",
                                 "--out", str(out), "--jobs", "2"])
    assert r.exit_code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("name,")
    cells = [line.split(",")[1:] for line in lines[1:]]
    assert cells[0][0] == "0" and cells[0][1] == cells[1][0]
    assert (tmp_path / "m.png").exists()


def test_cli_missing_member_is_input_error(tmp_path):
    seq = tmp_path / "seq"
    seq.mkdir()
    (seq / "f_4.json").write_text(json.dumps(path_json(1.25)))
    (tmp_path / "limit.json").write_text(json.dumps(path_json(1.0)))
    r = CliRunner().invoke(cli, ["converge", str(seq), str(tmp_path / "limit.json"),
                                 "--n-list", "4,8"])
    assert r.exit_code == 2
