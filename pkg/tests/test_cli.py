import json
import re

import pytest

from hyperverify.cli import main
from tests.test_catalog import REPORT_SCHEMA


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list(capsys):
    code, out, _ = _run(capsys, "list")
    assert code == 0
    assert re.search(r"^bell\.sigma2\s+.*\[bell-sigma2\]$", out, re.M)


def test_verify_bell(capsys):
    code, out, _ = _run(capsys, "verify", "--id", "bell.sigma2", "--order", "200")
    assert code == 0 and out.startswith("PASS")


def test_verify_unknown(capsys):
    code, out, err = _run(capsys, "verify", "--id", "nonsense")
    assert code == 2 and "usage" in err and out == ""


@pytest.mark.parametrize("argv", [["bogus"], ["verify"], ["verify", "--id", "x", "--frob"], ["const", "--name", "e"], [], ["verify", "--id", "rr.1", "--order", "5", "--prec", "9"]])
def test_usage_errors(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2 and "usage" in err


def test_bad_override_is_config_error(capsys):
    code, _, err = _run(capsys, "verify", "--id", "pi.sun1", "--order", "10")
    assert code == 2 and "order" in err


def test_failing_check_exits_1(capsys):
    code, out, _ = _run(capsys, "verify", "--id", "zetaq.limit", "--tol", "1e-9")
    assert code == 1 and out.startswith("FAIL")


def test_const(capsys):
    code, out, _ = _run(capsys, "const", "--name", "mu0", "--prec", "64")
    assert code == 0 and out.startswith("13.417820")
    _, out, _ = _run(capsys, "const", "--name", "zeta3", "--prec", "64")
    assert out.startswith("1.2020569031595942")
    _, out, _ = _run(capsys, "const", "--name", "rate-limit", "--prec", "64")
    assert out.startswith("0.029437251522859")


def test_apery(capsys):
    code, out, _ = _run(capsys, "apery", "--n", "2")
    assert code == 0
    assert "u_n = 73" in out and "v_n = 351/4" in out
    assert "2 d_n^3 v_n integral: True" in out


def _strip_timing(text):
    return re.sub(r"elapsed_ms=\S+", "", text)


def test_verify_all_report(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = _run(capsys, "verify-all", "--filter", "pi.*", "--report", str(path))
    assert code == 0
    assert "PASS=3 FAIL=0 PARTIAL=0" in out
    doc = json.loads(path.read_text())
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert [d["id"] for d in doc] == ["pi.ramanujan", "pi.sun1", "pi.sun2"]


def test_output_is_deterministic(capsys):
    _, a, _ = _run(capsys, "verify-all", "--filter", "rr.*")
    _, b, _ = _run(capsys, "verify-all", "--filter", "rr.*", "--jobs", "2")
    assert _strip_timing(a) == _strip_timing(b)


def test_empty_filter_succeeds(capsys):
    code, out, _ = _run(capsys, "verify-all", "--filter", "zzz*")
    assert code == 0 and "PASS=0" in out


def test_partial_counts_only_when_allowed(capsys, monkeypatch):
    from hyperverify import catalog

    rep = catalog.VerificationReport("x", "PARTIAL", 3, None, None, 1.0, "")
    monkeypatch.setattr(catalog, "run", lambda i, o: rep)
    assert main(["verify", "--id", "x"]) == 1
    assert main(["verify", "--id", "x", "--allow-partial"]) == 0
