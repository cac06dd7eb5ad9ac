"""Write the reference measure and tuple files into fixtures/."""

import json
import sys
from pathlib import Path

from otpuc.fixtures import MEASURE_SPECS, ger_tuple_rows


def main(out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    for name, spec in MEASURE_SPECS.items():
        (out / f"{name}.json").write_text(json.dumps(spec, indent=2) + "\n")
    tuples = out / "tuples"
    tuples.mkdir(exist_ok=True)
    (tuples / "ger_tuples.json").write_text(json.dumps({"tuples": ger_tuple_rows(8)}, indent=2) + "\n")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "fixtures")
