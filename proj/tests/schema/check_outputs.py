"""Runs each dampspec command, validates JSON against docs/schema and checks CSV headers."""

import csv
import json
import pathlib
import re
import subprocess
import sys
import tempfile

import jsonschema

RUNS = [
    ("spectrum", ["spectrum-line", "--k-max", "3", "--verify"]),
    ("spectrum", ["spectrum-line", "--n", "2", "--a0", "3", "--q0", "1"]),
    ("spectrum", ["spectrum-strip", "--j-max", "5", "--k-max", "1"]),
    ("spectrum", ["figure", "fig-x2", "--k-max", "3"]),
    ("spectrum", ["figure", "fig-strip", "--j-max", "5"]),
    ("oscillator", ["oscillator", "--n", "2", "--k-max", "5"]),
    ("oscillator", ["oscillator", "--ell", "1", "--k-max", "3"]),
    ("converge", ["converge", "--k", "1"]),
    ("converge", ["converge", "--k", "1", "--a0", "3"]),
    ("essential", ["essential", "--cone", "--m", "10,20"]),
    ("essential", ["essential", "--damping", "x4", "--m", "10,20"]),
    ("verify", ["verify", "--N", "2000"]),
]


def main() -> int:
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, (schema_name, args) in enumerate(RUNS):
            schema = json.loads((schema_dir / f"{schema_name}.schema.json").read_text())
            for fmt in ("json", "csv"):
                out = pathlib.Path(tmp) / f"run{i}.{fmt}"
                proc = subprocess.run([exe, *args, "--format", fmt, "--out", str(out)], capture_output=True, text=True)
                label = " ".join(args) + f" [{fmt}]"
                if proc.returncode != 0:
                    print(f"FAIL {label}: exit {proc.returncode} {proc.stderr.strip()}")
                    failures += 1
                    continue
                if fmt == "json":
                    try:
                        jsonschema.validate(json.loads(out.read_text()), schema)
                    except jsonschema.ValidationError as e:
                        print(f"FAIL {label}: {e.message}")
                        failures += 1
                        continue
                else:
                    for path in sorted(out.parent.glob(f"run{i}*.csv")):
                        with path.open(newline="") as fh:
                            rows = list(csv.reader(fh))
                        widths = {len(r) for r in rows}
                        if not rows or len(widths) != 1 or not all(re.fullmatch(r"[a-z_]+", c) for c in rows[0]):
                            print(f"FAIL {label}: {path.name} header or row width")
                            failures += 1
                print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
