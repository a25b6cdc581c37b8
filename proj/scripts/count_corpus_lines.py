#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Counts nonblank lines carrying a task_id in a JSONL corpus."""

import sys

print(sum(1 for line in open(sys.argv[1], encoding="utf-8") if line.strip() and '"task_id"' in line))
