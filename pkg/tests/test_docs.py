import os
import subprocess
import sys


def test_walkthrough_runs():
    script = os.path.join(os.path.dirname(__file__), "..", "docs",
                          "walkthrough.py")
    proc = subprocess.run([sys.executable, script], capture_output=True,
                          text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert "pipeline output equals the tangency module" in proc.stdout
