#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Writes a 100-example dataset with a hand-chosen length and split mix."""

import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "stats" / "dataset.jsonl"

CATS = ["Summarization", "Title Generation", "Paraphrasing", "Translation", "Question Answering",
        "Sentiment Analysis"]
WORDS = "the a river city report music garden teacher window market letter story bright quiet".split()
# (length, train, test)
PLAN = [(1, 40, 0), (2, 22, 6), (3, 10, 6), (4, 0, 10), (5, 0, 6)]


def target(hops):
    if len(hops) == 1:
        return hops[0]
    k = len(hops)
    parts = []
    for i, h in enumerate(hops):
        head = f"Task {i + 1} output" + (f" and task {i + 2} input" if i + 1 < k else "")
        parts.append(f"{head}: {h}")
    return " ".join(parts)


def main():
    rng = random.Random(20)
    rows = []
    for k, train, test in PLAN:
        for n in range(train + test):
            path = rng.sample(CATS[:-1], k - 1) + [rng.choice(CATS)] if k > 1 else [rng.choice(CATS)]
            while len(set(path)) != len(path):
                path = rng.sample(CATS, k)
            hops = [" ".join(rng.choice(WORDS) for _ in range(rng.randint(2, 6))).capitalize() + "."
                    for _ in range(k)]
            instr = " and then ".join(f"Do step {i + 1} on the text" for i in range(k))
            rows.append({
                "example_id": f"stats{k}#{n}",
                "instruction": instr,
                "input": " ".join(rng.choice(WORDS) for _ in range(8)),
                "target": target(hops),
                "chain_length": k,
                "category_path": path,
                "split": "train" if n < train else "test",
                "variant": "standard",
            })
    rng.shuffle(rows)
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r) + "\n")


if __name__ == "__main__":
    main()
