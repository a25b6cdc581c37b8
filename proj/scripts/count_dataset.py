#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Counts examples per chain length and split by filtering raw lines."""

import json
import re
import sys

LEN = re.compile(r'"chain_length": (\d+)')
SPLIT = re.compile(r'"split": "(train|test)"')
PATH = re.compile(r'"category_path": (\[[^\]]*\])')

counts, paths = {}, {}
total = 0
for line in open(sys.argv[1], encoding="utf-8"):
    if not line.strip():
        continue
    k = LEN.search(line).group(1)
    s = SPLIT.search(line).group(1)
    counts.setdefault(k, {"train": 0, "test": 0})[s] += 1
    paths.setdefault(k, set()).add(PATH.search(line).group(1))
    total += 1
json.dump({"counts": counts, "unique_category_tuples": {k: len(v) for k, v in sorted(paths.items())},
           "total": total}, sys.stdout, indent=1, sort_keys=True)
sys.stdout.write("\n")
