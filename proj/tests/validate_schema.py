"""Run the CLI on a spread of commands and validate every JSON report against the shipped schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
report_schema = json.loads((schema_dir / "report.schema.json").read_text())
model_schema = json.loads((schema_dir / "model.schema.json").read_text())
model = schema_dir / "model_example.json"

jsonschema.validate(json.loads(model.read_text()), model_schema)
jsonschema.validate(json.loads((schema_dir / "report_example.json").read_text()), report_schema)

runs = [
    ["invariants", str(model)],
    ["classify", str(model)],
    ["mw", str(model)],
    ["mw", "--fibers", "A~8"],
    ["verify-case", "--id", "12", "--p", "7"],
    ["verify-case", "--id", "22", "--p", "5", "--param", "lambda=3"],
    ["verify-case", "--id", "2", "--p", "0"],
    ["verify-case", "--id", "5", "--p", "3"],
    ["verify-nonjacobian", "--id", "12'"],
    ["enumerate-extremal", "--p", "2"],
    ["act", "--m", "1", "--A", "0,1,-1,0,0,0,0,0,0,0", "--D", "1,0,0,0,0,0,0,0,0,0"],
    ["torsion-scan", "--fibers", "2"],
    ["enriques", "--config", "C"],
]
bad = 0
for args in runs:
    out = subprocess.run([cli, *args, "--format", "json"], capture_output=True, text=True)
    if out.returncode not in (0, 1, 2):
        print("exit", out.returncode, args, out.stderr)
        bad += 1
        continue
    try:
        jsonschema.validate(json.loads(out.stdout), report_schema)
    except jsonschema.ValidationError as e:
        print("invalid report for", args, ":", e.message)
        bad += 1

# a model file with an unknown key is rejected by both the schema and the CLI
wrong = {"p": 7, "a5": [1]}
try:
    jsonschema.validate(wrong, model_schema)
    print("schema accepted an unknown key")
    bad += 1
except jsonschema.ValidationError:
    pass

print(f"{len(runs)} reports checked, {bad} problems")
sys.exit(1 if bad else 0)
