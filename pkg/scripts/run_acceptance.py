"""Run the acceptance criteria and print one verdict line per criterion."""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    cmd = [sys.executable, "-m", "pytest", "-q", "-s", "-p", "no:cacheprovider", str(ROOT / "tests" / "test_acceptance.py")]
    sys.exit(subprocess.call(cmd, cwd=ROOT))
