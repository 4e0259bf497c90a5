"""Validate CLI JSON output against schemas/ with the jsonschema package.

usage: validate_schemas.py TOOL SOURCE_DIR
"""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

tool, source = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in (source / "schemas").glob("*.schema.json")}

with tempfile.TemporaryDirectory() as tmp:
    synth = pathlib.Path(tmp) / "synth.csv"
    subprocess.run([tool, "synth", "--seed", "42", "-o", str(synth)], check=True)
    cases = [
        (["rsc", "--u", "0.278"], "rsc", 0),
        (["rsc", "--w-l-mm", "1.25", "--f-mm", "4.5"], "rsc", 0),
        (["coupling", "--u", "0.278", "--loss-budget", "1e-4"], "coupling", 0),
        (["lens", "--f-mm", "4.5", "--n", "1.5", "--theta-deg", "45"], "lens", 0),
        (["fit", "-i", str(synth)], "fit", 0),
        (["lens", "--f-mm", "4.5", "--n", "1"], "error", 2),
        (["fit", "-i", str(pathlib.Path(tmp) / "missing.csv")], "error", 3),
    ]
    failed = 0
    for args, name, code in cases:
        proc = subprocess.run([tool, *args], capture_output=True, text=True)
        text = proc.stderr if code else proc.stdout
        try:
            if proc.returncode != code:
                raise ValueError(f"exit {proc.returncode}, expected {code}")
            jsonschema.validate(json.loads(text), schemas[name])
            print(f"ok   {name}: {' '.join(args)}")
        except Exception as exc:  # noqa: BLE001
            failed += 1
            print(f"FAIL {name}: {' '.join(args)}: {exc}")

sys.exit(1 if failed else 0)
