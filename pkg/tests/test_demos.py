"""Each demo script runs clean and prints its headline result."""

import subprocess
import sys
from pathlib import Path

import pytest

DEMO_DIR = Path(__file__).resolve().parent.parent / "demos"

MARKERS = {
    "walsh_basics.py": "Gram matrix equals 8 * identity exactly: True",
    "kernel_gallery.py": "pieces reassemble to the full kernel: True",
    "triangular_means.py": "reproduces the input: True",
    "atom_anatomy.py": "atomic-space size at p=1: 1",
    "growth_scan.py": "Overall:",
    "report_pipeline.py": "rerun produces byte-identical CSV: True",
}


@pytest.mark.parametrize("script", sorted(MARKERS))
def test_demo_runs(script):
    proc = subprocess.run(
        [sys.executable, str(DEMO_DIR / script)],
        capture_output=True, text=True, timeout=300,
    )
    assert proc.returncode == 0, proc.stderr[-2000:]
    assert MARKERS[script] in proc.stdout


def test_demo_directory_is_complete():
    found = {p.name for p in DEMO_DIR.glob("*.py")}
    assert found == set(MARKERS)
