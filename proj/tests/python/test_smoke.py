"""Smoke tests for the _intpts extension and the CLI binary."""

import json
import os
import subprocess

import _intpts as ip


def test_invariants():
    c = ip.ShortCurve("0", "1")
    inv = ip.invariants(c)
    assert inv["disc"] == "-432"
    assert inv["j"] == "0"
    assert not inv["singular"]
    assert ip.invariants(ip.ShortCurve("0", "0"))["singular"]


def test_enumerate_box():
    pts = ip.enumerate_box(ip.ShortCurve("0", "1"), -10, 10, -10, 10)
    assert pts == [("-1", "0"), ("0", "-1"), ("0", "1"), ("2", "-3"), ("2", "3")]


def test_canonical_height():
    h = ip.canonical_height(ip.ShortCurve("0", "-2"), "3", "5")
    assert abs(h - 0.6747882) < 1e-4
    assert ip.canonical_height(ip.ShortCurve("0", "1"), "2", "3") < 1e-6


def test_height_breakdown():
    rep = json.loads(ip.height_breakdown(ip.ShortCurve("0", "-2"), "3", "5"))
    assert abs(rep["total"] + rep["normalization_offset"] - rep["oracle"]) < 1e-4
    assert rep["residual"] < 1e-5


def test_tau_roundtrip():
    re, im, resid = ip.associate_tau(1728.0)
    assert abs(re) < 1e-8 and abs(im - 1.0) < 1e-8
    assert resid < 1e-6
    assert abs(ip.j_of_tau(0.0, 1.0) - 1728.0) < 1e-4


def test_j_coeffs():
    c = ip.j_qexp_coeffs(2)
    assert c[0] == "744"
    assert c[1] == "196884"


def test_sieve_bound_sound():
    bound = ip.sieve_bound(ip.ShortCurve("0", "1"), -5000, 5000, False)
    pts = ip.enumerate_box(ip.ShortCurve("0", "1"), -5000, 5000, -600000, 600000)
    xs = {p[0] for p in pts}
    assert len(xs) <= bound


def test_pipeline_reports():
    rep = json.loads(ip.main_pipeline(ip.ShortCurve("0", "1"), 1000, 0.01, 4.5))
    assert rep["has_points"]
    assert rep["count"] <= rep["upper_bound"] or rep["bound_constant_dependent"]


def test_run_check_smoke():
    rep = json.loads(ip.run_check("L5"))
    assert rep["passed"]


def _cli(*args, ok=True):
    cli = os.environ.get("INTPTS_CLI")
    if not cli:
        return None
    out = subprocess.run([cli, *args], capture_output=True, text=True)
    if ok:
        assert out.returncode == 0, out.stderr
    return out


CURVE = '{"form":"short","A":"0","B":"1"}'


def test_cli_enumerate():
    out = _cli("enumerate", "--curve", CURVE, "--box", "[-10,10,-10,10]")
    if out is None:
        return
    payload = json.loads(out.stdout)
    assert payload["report"]["count"] == 5
    assert payload["manifest"]["subcommand"] == "enumerate"
    # identical manifests give byte-identical output
    again = _cli("enumerate", "--curve", CURVE, "--box", "[-10,10,-10,10]")
    assert again.stdout == out.stdout


def test_cli_sieve_and_pipeline_methods():
    if os.environ.get("INTPTS_CLI") is None:
        return
    sieve = json.loads(
        _cli("enumerate", "--curve", CURVE, "--box", "[-5000,5000,-9,9]", "--method", "sieve").stdout
    )
    assert sieve["report"]["x_bound"] > 0
    pipe = json.loads(
        _cli("enumerate", "--curve", CURVE, "--box", "[-60,60,-60,60]", "--method", "pipeline").stdout
    )
    assert pipe["report"]["branch"].startswith("origin-delegation")
    main = json.loads(
        _cli("pipeline", "--curve", '{"form":"long","a":["0","1","0","0","1"]}', "--N", "100").stdout
    )
    assert main["report"]["has_points"]


def test_cli_sieve_bound_and_delpezzo(tmp_path):
    if os.environ.get("INTPTS_CLI") is None:
        return
    sb = json.loads(
        _cli("sieve-bound", "--curve", CURVE, "--interval", "[0,10000]", "--exact-alpha").stdout
    )
    assert sb["report"]["x_bound"] > 0
    csv_path = tmp_path / "fibers.csv"
    dp = json.loads(
        _cli(
            "delpezzo",
            "--surface",
            '{"F4":[1,0,0,0,1],"F6":[1,0,0,0,0,0,1]}',
            "--N",
            "2",
            "--csv",
            str(csv_path),
        ).stdout
    )
    assert int(dp["report"]["total"]) > 0
    assert csv_path.read_text().startswith("u,v,count,singular")


def test_cli_reports_validate_against_the_published_schemas():
    if os.environ.get("INTPTS_CLI") is None:
        return
    try:
        import jsonschema
        from referencing import Registry, Resource
    except ImportError:
        return
    schemas_dir = os.path.join(os.path.dirname(__file__), "..", "..", "docs", "schemas")
    registry = Registry()
    for name in os.listdir(schemas_dir):
        with open(os.path.join(schemas_dir, name)) as f:
            res = Resource.from_contents(json.load(f))
        registry = registry.with_resource("intpts/" + name, res)

    def validate(payload, schema_name):
        with open(os.path.join(schemas_dir, schema_name)) as f:
            schema = json.load(f)
        jsonschema.validate(payload, schema, registry=registry)

    out = json.loads(_cli("enumerate", "--curve", CURVE, "--box", "[-10,10,-10,10]").stdout)
    validate(out["manifest"], "manifest.schema.json")
    validate(out["report"], "count_report.schema.json")

    hb = json.loads(_cli("height", "--curve", '{"form":"short","A":"0","B":"-2"}', "--point", "[3,5]").stdout)
    validate(hb["report"], "height_breakdown.schema.json")

    vr = json.loads(_cli("verify", "--check", "L5").stdout)
    for r in vr["report"]:
        validate(r, "verification_report.schema.json")

    dp = json.loads(
        _cli("delpezzo", "--surface", '{"F4":[1,0,0,0,1],"F6":[1,0,0,0,0,0,1]}', "--N", "2").stdout
    )
    validate(dp["report"], "dp_count_report.schema.json")


def test_cli_exit_codes():
    if os.environ.get("INTPTS_CLI") is None:
        return
    bad = _cli("enumerate", "--curve", "junk", "--box", "[0,1,0,1]", ok=False)
    assert bad.returncode == 2
    badprec = _cli("tau", "--j", "0", "--prec", "99", ok=False)
    assert badprec.returncode == 2
