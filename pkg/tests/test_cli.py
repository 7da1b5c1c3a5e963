import json
from fractions import Fraction


from freehop import cli, tables


def run(args):
    return cli.main(args)


def test_hurwitz_table_output(tmp_path, capsys):
    out = tmp_path / "h.json"
    assert run(["hurwitz", "--d", "2", "--kind", "strict", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["d"] == 2 and obj["kind"] == "strict"
    entry = [e for e in obj["entries"] if e["lambda"] == [2] and e["nu"] == [1, 1]]
    assert entry and entry[0]["r"] == 1 and entry[0]["value"] == "1/2"


def test_hurwitz_d1_weak(tmp_path):
    out = tmp_path / "h.json"
    assert run(["hurwitz", "--d", "1", "--kind", "weak", "--hbar", "4", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["entries"] == [{"lambda": [1], "nu": [1], "r": 0, "value": "1"}]


def test_hurwitz_bound_exit_2(capsys):
    assert run(["hurwitz", "--d", "7", "--kind", "strict"]) == 2


def test_moebius_output(tmp_path):
    out = tmp_path / "m.json"
    assert run(["moebius", "--d", "2", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    vals = {
        (json.dumps(e["partition"]), tuple(e["perm"])): e["value"]
        for e in obj["entries"]
    }
    assert vals[("[[1, 2]]", (2, 1))] == "-1"
    assert vals[("[[1, 2]]", (1, 2))] == "1"


def test_moebius_hbar_output(tmp_path):
    out = tmp_path / "mh.json"
    assert run(["moebius", "--d", "2", "--hbar", "4", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["kind"] == "moebius-hbar"


def test_transform_roundtrip(tmp_path):
    cum = tmp_path / "cum.json"
    mom = tmp_path / "mom.json"
    back = tmp_path / "back.json"
    tables.save(str(cum), tables.gue_table())
    assert run([
        "transform", "c2m", "--route", "hurwitz", "--in", str(cum),
        "--out", str(mom), "--deg", "8", "--genus", "2",
    ]) == 0
    obj = json.loads(mom.read_text())
    t = tables.from_json(obj)
    assert t[(0, (8,))] == 14  # Catalan(4)
    assert t[(2, (4,))] == 1
    assert obj["route"] == "hurwitz"
    # invert at desk scale (the weakly monotone series grows quickly in
    # the hbar order, so the inverse leg runs at d <= 4)
    mom4 = tmp_path / "mom4.json"
    tables.save(str(mom4), tables.restrict_table(t, deg=4, g2=2))
    assert run([
        "transform", "m2c", "--route", "hurwitz", "--in", str(mom4),
        "--out", str(back), "--deg", "4", "--genus", "2",
    ]) == 0
    t2, _ = tables.load(str(back))
    assert t2 == tables.gue_table()


def test_transform_routes_agree(tmp_path):
    cum = tmp_path / "cum.json"
    tables.save(str(cum), tables.random_table(seed=7, nmax=3, degmax=3, g2max=2))
    outs = {}
    for route in ("hurwitz", "convolution", "schur"):
        out = tmp_path / ("out-%s.json" % route)
        assert run([
            "transform", "c2m", "--route", route, "--in", str(cum),
            "--out", str(out), "--deg", "3", "--genus", "2",
        ]) == 0
        outs[route], _ = tables.load(str(out))
    assert outs["hurwitz"] == outs["convolution"] == outs["schur"]


def test_transform_formula_route(tmp_path):
    cum = tmp_path / "cum.json"
    out = tmp_path / "mom.json"
    tables.save(str(cum), tables.gue_table())
    assert run([
        "transform", "c2m", "--route", "formula", "--in", str(cum),
        "--out", str(out), "--deg", "6",
    ]) == 0
    t, _ = tables.load(str(out))
    assert t[(0, (6,))] == 5


def test_transform_bad_input_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["transform", "c2m", "--route", "hurwitz", "--in", str(bad)]) == 2
    missing = tmp_path / "missing.json"
    assert run(["transform", "c2m", "--route", "hurwitz", "--in", str(missing)]) == 2


def test_transform_degree_mismatch_exit_2(tmp_path):
    cum = tmp_path / "cum.json"
    tables.save(str(cum), {(0, (5,)): Fraction(1)})
    assert run([
        "transform", "c2m", "--route", "hurwitz", "--in", str(cum), "--deg", "3",
    ]) == 2


def test_transform_csv(tmp_path):
    cum = tmp_path / "cum.json"
    out = tmp_path / "mom.csv"
    tables.save(str(cum), tables.gue_table())
    assert run([
        "transform", "c2m", "--route", "hurwitz", "--in", str(cum),
        "--out", str(out), "--deg", "4", "--csv",
    ]) == 0
    text = out.read_text()
    assert text.startswith("g2,k,value")
    assert "0,4,2" in text


def test_gue_fixture(tmp_path):
    out = tmp_path / "gue.json"
    assert run(["gue", "--genus", "4", "--deg", "8", "--out", str(out)]) == 0
    t, _ = tables.load(str(out))
    assert t[(2, (8,))] == 70 and t[(4, (8,))] == 21


def test_verify_suite_pass(tmp_path):
    out = tmp_path / "rep.json"
    assert run(["verify", "--suite", "orthogonality", "--d", "3", "--hbar", "6", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["pass"] and rep["suite"] == "orthogonality"
    assert all("pass" in c for c in rep["cases"])


def test_verify_small_suites(tmp_path):
    assert run(["verify", "--suite", "gue", "--out", str(tmp_path / "g.json")]) == 0
    assert run([
        "verify", "--suite", "genus0-trees", "--n", "2", "--deg", "4",
        "--out", str(tmp_path / "t.json"),
    ]) == 0


def test_exit_codes_stable():
    assert cli.EXIT_OK == 0
    assert cli.EXIT_VERIFY_FAIL == 1
    assert cli.EXIT_INPUT == 2
    assert cli.EXIT_TRUNCATION == 3
