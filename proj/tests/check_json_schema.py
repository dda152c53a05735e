"""Validates `aenx ... --format json` output against schemas/aenx-output.schema.json."""
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["level-table"],
    ["level-table", "--snr-db", "12", "--levels", "21", "--dist", "c2"],
    ["rates-sweep", "--snr-db", "0:5:30", "--levels", "21,41"],
    ["rates-sweep", "--scheme", "r1"],
    ["gap-cert", "--epsilon", "0.5"],
    ["gap-cert", "--epsilon", "2", "--gamma", "4", "--l1", "2"],
    ["validate", "--blocklength", "20000"],
    ["simulate", "--trials", "2", "--blocklength", "1000"],
    ["simulate", "--mode", "carry_as_noise", "--trials", "1", "--blocklength", "1"],
]


def main(binary, schema_path):
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in COMMANDS:
        proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        status = "ok" if not errors else f"FAIL {errors[0].json_path}: {errors[0].message[:160]}"
        failures += bool(errors)
        print(f"{status:4} {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
