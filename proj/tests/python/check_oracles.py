#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Re-runs the fixture oracle scripts and compares with the committed expectations."""

import json
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCRIPTS = ROOT / "scripts"
FIX = ROOT / "tests" / "fixtures"


def run(*args):
    return subprocess.run([sys.executable, *map(str, args)], check=True, capture_output=True, text=True).stdout


def main():
    failures = []
    if json.loads(run(SCRIPTS / "count_mini_fixture.py")) != json.loads((FIX / "mini/expected_counts.json").read_text()):
        failures.append("mini corpus counts")
    if int(run(SCRIPTS / "count_corpus_lines.py", FIX / "mini/corpus.jsonl")) != 12:
        failures.append("mini corpus line count")
    stats = json.loads(run(SCRIPTS / "count_dataset.py", FIX / "stats/dataset.jsonl"))
    if stats != json.loads((FIX / "stats/expected_counts.json").read_text()):
        failures.append("stats fixture counts")
    for f in failures:
        print("mismatch:", f)
    print("oracles ok" if not failures else f"{len(failures)} oracle mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
