import json
import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def _run(name, *args):
    return subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, timeout=300)


def test_heisenberg_obstruction_script():
    r = _run("heisenberg_obstruction.py", "--range", "1")
    assert r.returncode == 0
    assert "class zero: True" not in r.stdout and "extends: True" not in r.stdout
    assert "[['0', '0']]" in r.stdout


def test_corpus_survey_script():
    r = _run("corpus_survey.py", "--json", "--max-degree", "1")
    assert r.returncode == 0
    rows = json.loads(r.stdout)
    heis = next(x for x in rows if (x["algebra"], x["ideal"]) == ("heisenberg3", "center"))
    assert heis["hom_ideal"] == [2, 4] and heis["rigid_whitehead"] is False


@pytest.mark.parametrize("alg,ideal", [("heisenberg3", "center"), ("sl2xsl2", "factor1")])
def test_les_report_script(alg, ideal):
    r = _run("les_report.py", "--corpus", alg, "--ideal", ideal, "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["top"]["exact"] and out["bottom"]["exact"] and out["squares_commute"]
