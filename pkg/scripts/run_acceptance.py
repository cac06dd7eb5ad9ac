"""Run every acceptance criterion and print one PASS/FAIL line each."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    sys.exit(subprocess.call([sys.executable, str(ROOT / "tests" / "test_acceptance.py")]))
