import json
import os

import numpy as np
import pytest

from tentops.funcmodel import AnalyticFn, derivative
from tentops.harness.cli import main, parse_function, UsageError
from tentops.harness.config import Config
from tentops.harness.corpus import (bounded_suite, critical_symbol, poly_primitive, primitive,
                                    standard_corpus, unbounded_symbol)
from tentops.harness.report import dumps, emit_plotdata, load_report, write_report
from tentops.harness.suites import SUITES, T_DECAY, run_verify
from tentops.tentnorm import SpaceParams


def _files(d):
    return sorted(os.listdir(d))


def test_config_roundtrip_and_overrides(tmp_path):
    cfg = Config()
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"aperture": 2.0, "degree": 128}))
    loaded = Config.load(path)
    assert (loaded.aperture, loaded.degree, loaded.cap) == (2.0, 128, cfg.cap)
    assert Config.from_dict(cfg.to_dict()) == cfg
    o = cfg.with_overrides(t=4.0, aperture=None)
    assert (o.t, o.aperture) == (4.0, 1.0)
    assert o.spec().radial_levels == cfg.radial_levels


def test_config_errors(tmp_path):
    with pytest.raises(ValueError, match="unknown config keys: bogus"):
        Config.from_dict({"bogus": 1})
    bad = tmp_path / "bad.json"
    bad.write_text('{"aperture": 1.0,\n "t": }')
    with pytest.raises(ValueError, match="line 2 column"):
        Config.load(bad)
    with pytest.raises(ValueError):
        Config(aperture=0.5)
    with pytest.raises(ValueError):
        Config(cap=1.0)


def test_corpus():
    c = standard_corpus(2, 0)
    assert len(c) == 12
    assert len({name for name, _ in c}) == 12
    again = standard_corpus(2, 0)
    z = np.array([0.3 + 0.2j, -0.5j])
    assert all(np.array_equal(f(z), g(z)) for (_, f), (_, g) in zip(c, again))


@pytest.mark.parametrize("c,m,a", [(2.5, 0, 1.0), (2.5, 1, 1.0), (3.0, 2, 0.5), (1.0, 1, 1.0),
                                   (1.0, 1, 0.5), (4.5, 3, 0.5)])
def test_primitive(rng, c, m, a):
    z = 0.7 * np.sqrt(rng.random(20)) * np.exp(2j * np.pi * rng.random(20))
    got = derivative(primitive(c, m, a), m)(z)
    assert np.allclose(got, (1 - a * z) ** (-c), rtol=1e-12)


def test_primitive_limits_and_poly():
    with pytest.raises(ValueError):
        primitive(1.5, 2)
    z = np.array([0.2, 0.4j])
    f = poly_primitive([1, 2], 2)
    assert np.allclose(derivative(f, 2)(z), 1 + 2 * z)


def test_symbol_suites():
    P = SpaceParams(2, 2)
    names = [gid for gid, _ in bounded_suite(P)]
    assert names == ["poly1", "poly2", "poly3", "inner0.5", "crit1"]
    assert critical_symbol(SpaceParams(2, 1))[0] == "crit2"
    assert unbounded_symbol(P)[0] == "unb1.5"


def test_run_verify_unknown():
    with pytest.raises(KeyError):
        run_verify("nosuch")
    assert len(SUITES) == 19


def test_report_files(tmp_path):
    rep = {"id": "x", "passed": True, "checks": [{"name": "a", "passed": True}],
           "tables": {"t/1": {"columns": ["u", "v"], "rows": [[1.5, None], ["s", 2]]}},
           "profiles": {}, "errors": []}
    paths = write_report(rep, str(tmp_path))
    assert [os.path.basename(p) for p in paths] == ["report.json", "checks.csv", "t_1.csv"]
    assert (tmp_path / "x" / "t_1.csv").read_text() == "u,v\n1.5,\ns,2\n"
    assert load_report(paths[0]) == json.loads(dumps(rep))
    assert json.loads(dumps({"v": float("inf")}))["v"] == "inf"


def test_emit_plotdata_empty(tmp_path):
    paths = emit_plotdata({"id": "empty"}, str(tmp_path / "p"))
    assert _files(tmp_path / "p") == ["manifest.json"]
    assert len(paths) == 1


@pytest.fixture(scope="module")
def th3_report():
    return run_verify("th3")


def test_th3_plotdata(th3_report, tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    emit_plotdata(th3_report, str(d1))
    emit_plotdata(th3_report, str(d1))
    emit_plotdata(th3_report, str(d2))
    files = _files(d1)
    assert files == _files(d2)
    for f in files:
        assert (d1 / f).read_bytes() == (d2 / f).read_bytes()
    decay = [f for f in files if "decay" in f]
    assert len(decay) == 3
    for gid in ("poly1", "poly2", "poly3"):
        assert sum(gid in f for f in decay) == 1
    text = (d1 / decay[0]).read_text().splitlines()
    assert text[0] == "radius,value" and len(text) == 9
    man = json.loads((d1 / "manifest.json").read_text())
    assert len(man["profiles"]) == len(files) - 1
    assert th3_report["config"] == Config().to_dict()
    assert T_DECAY.p == 1


def test_parse_function_errors():
    assert parse_function('{"type": "poly", "coeffs": [0, 1]}')(0.5) == 0.5
    with pytest.raises(UsageError, match="line 1 column 10"):
        parse_function('{"type": ]')
    with pytest.raises(UsageError, match="missing field"):
        parse_function('{"type": "kernel", "a": [0.5, 0]}')


def test_cli_classify(tmp_path, capsys):
    g = json.dumps(AnalyticFn.poly([0, 1]).to_spec())
    code = main(["classify", g, "--out-dir", str(tmp_path), "--no-families"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert (out["classification"], out["compactness"]) == ("bounded", "compact")
    assert json.loads((tmp_path / "classify.json").read_text()) == out
    assert out["config"]["out_dir"] == str(tmp_path)


def test_cli_errors(tmp_path, capsys):
    assert main(["classify", '{"type": "poly", "coeffs": [0, 1]', "--out-dir", str(tmp_path)]) == 2
    assert "parse error at line 1 column" in capsys.readouterr().err
    code = main(["classify", '{"type":"poly","coeffs":[0,1]}', "--kind", "S", "--p", "4",
                 "--q", "2", "--alpha", "2", "--out-dir", str(tmp_path)])
    assert code == 2
    assert "lambda" in capsys.readouterr().err
    assert main(["verify", "nosuch", "--out-dir", str(tmp_path)]) == 2
    assert "unknown theorem id" in capsys.readouterr().err
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"nope": 1}')
    assert main(["lattice", "--config", str(cfg)]) == 2
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_cli_verify_report_norm_lattice(tmp_path, capsys):
    out = tmp_path / "r"
    assert main(["verify", "truncation", "--out-dir", str(out)]) == 0
    rep = out / "truncation" / "report.json"
    assert rep.exists() and (out / "truncation" / "checks.csv").exists()
    assert main(["report", str(rep), "--plot-dir", str(tmp_path / "plot")]) == 0
    assert "manifest.json" in _files(tmp_path / "plot")
    capsys.readouterr()
    assert main(["norm", '{"type":"poly","coeffs":[3]}', "--norm", "lp"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == pytest.approx(3)
    lat = tmp_path / "lat.json"
    assert main(["lattice", "--cap", "0.6", "--output", str(lat)]) == 0
    data = json.loads(lat.read_text())
    assert data["r"] == 0.5 and len(data["nodes"]) > 1
