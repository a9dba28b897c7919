"""Runs each table command with --format json and validates the result
against the shipped schema. Also checks that CSV and JSON carry the same rows
and that a schema violation is actually detected."""

import csv
import io
import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["verify", "--q", "all", "--max-two-n", "60"],
    ["verify", "--q", "3", "--max-two-n", "60", "--inject-fault", "c4"],
    ["circle", "--q", "11", "--two-n", "29,61"],
    ["circle", "--q", "3", "--two-n", "3"],
    ["survey", "--q", "4", "--x", "1000"],
    ["survey", "--q", "all", "--x", "200"],
    ["count", "--q", "all", "--x", "100"],
    ["count", "--q", "3", "--x", "2000"],
    ["bnumbers", "--q", "4", "--h", "1", "--x", "1000"],
    ["bnumbers", "--q", "3", "--h", "1", "--y", "2000", "--s", "2.2"],
    ["bnumbers", "--q", "7", "--h", "-2", "--y", "500", "--z", "10"],
]


def run(cli, args, fmt):
    p = subprocess.run([cli, *args, "--format", fmt], capture_output=True, text=True)
    if p.returncode not in (0, 1):
        raise SystemExit(f"{' '.join(args)}: exit {p.returncode}: {p.stderr}")
    return p.stdout


def csv_rows(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        doc = json.loads(run(cli, args, "json"))
        errors = list(validator.iter_errors(doc))
        table = csv_rows(run(cli, args, "csv"))
        same = len(table) == len(doc["rows"]) and all(
            list(r.keys()) == list(j.keys()) for r, j in zip(table, doc["rows"])
        )
        ok = not errors and same
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {' '.join(args)}: {len(doc['rows'])} rows")
        for e in errors[:3]:
            print("     ", e.message)
        if not same:
            print("      csv and json rows differ")

    # negative control: a tampered document must be rejected
    doc = json.loads(run(cli, RUNS[2], "json"))
    doc["rows"][0]["h"] = "not a number"
    if validator.is_valid(doc):
        print("FAIL tampered circle document passed validation")
        failures += 1
    else:
        print("ok   tampered circle document rejected")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
