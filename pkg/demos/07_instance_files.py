"""Instance files and machine-readable reports.

Instances live in JSON files; every command produces a canonical report
(sorted keys, 12-significant-digit floats) whose bytes are identical across
runs for a fixed seed, so reports can be golden-file tested.  The same
commands are available on the command line:

    gpmspace axioms instance.json
    gpmspace dalpha instance.json --alpha 0.5 --csv table.csv
    gpmspace full-report instance.json --out report.json
"""
import json
import tempfile
from pathlib import Path

import gpmspace as g
from gpmspace.cli import Options

doc = {
    "version": 1,
    "points": ["a", "b", "c"],
    "d": [[0, 1, 3], [1, 0, 2], [3, 2, 0]],
    "family": "scaled",
    "params": {},
    "op": "max",
    "t_grid": [1e-4, 0.5, 1, 2, 4, 50],
    "alpha_grid": [0.25, 0.5, 1, 2, 4],
    "seed": 7,
    "tol": 1e-6,
}

workdir = Path(tempfile.mkdtemp(prefix="gpmspace-demo-"))
path = workdir / "three_point_scaled_max.json"
path.write_text(json.dumps(doc, indent=2), encoding="utf-8")
print("wrote", path)

inst_file = g.load_instance(str(path))
print("instance digest:", inst_file.digest[:16], "...")

report = g.run_command("axioms", inst_file)
print("axioms exit code:", report.exit_code)
for check in report.checks:
    print(f"  {check.name:10s} {check.verdict}")

report = g.run_command("full-report", inst_file, Options(alpha=1.0))
text = report.to_canonical_json()
again = g.run_command("full-report", inst_file, Options(alpha=1.0)).to_canonical_json()
print(f"full-report: {len(report.checks)} checks, byte-identical re-run: {text == again}")

out = workdir / "report.json"
out.write_text(text, encoding="utf-8")
print("canonical report written to", out)

bad = dict(doc, t_grid=[0, 1, 2])
bad_path = workdir / "bad.json"
bad_path.write_text(json.dumps(bad), encoding="utf-8")
try:
    g.load_instance(str(bad_path))
except g.ParseError as exc:
    print(f"malformed file rejected (field {exc.field!r}): {exc}")
