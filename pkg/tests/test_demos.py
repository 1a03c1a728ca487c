import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).resolve().parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=[p.stem for p in DEMOS])
def test_demo_runs(path):
    proc = subprocess.run([sys.executable, str(path)], capture_output=True, text=True, timeout=300)
    assert proc.returncode == 0, proc.stderr


def test_demo_data_matches_corpus():
    from rotorduality import corpus
    from rotorduality.formats import load_graph

    assert load_graph(DEMOS[0].parent / "fig1.json") == corpus()["fig1"]
