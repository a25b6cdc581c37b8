#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Writes the 40-case judge fixture, its canned judge table and the expected results.

The judge table prefers one fixed output per case whatever position it is shown
in. The expected swap pattern comes from a separate mt19937_64 implementation.
"""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "judge"
JUDGE_SEED = 3
MASK = (1 << 64) - 1


class MT19937_64:
    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & MASK
        for i in range(1, 312):
            self.mt[i] = (6364136223846793005 * (self.mt[i - 1] ^ (self.mt[i - 1] >> 62)) + i) & MASK
        self.index = 312

    def twist(self):
        upper, lower = 0xFFFFFFFF80000000, 0x7FFFFFFF
        for i in range(312):
            x = (self.mt[i] & upper) | (self.mt[(i + 1) % 312] & lower)
            xa = x >> 1
            if x & 1:
                xa ^= 0xB5026F5AA96619E9
            self.mt[i] = self.mt[(i + 156) % 312] ^ xa
        self.index = 0

    def __call__(self):
        if self.index >= 312:
            self.twist()
        y = self.mt[self.index]
        self.index += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & MASK


def mix_seed(seed, salt):
    z = (seed + 0x9E3779B97F4A7C15 * (salt + 1)) & MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


# case kinds: a preferred, b preferred, neither
KINDS = ["a"] * 22 + ["b"] * 12 + ["none"] * 6
TOPICS = ["rainy weekend", "new library", "bike lanes", "school garden", "night market", "river cleanup",
          "chess club", "winter concert", "bakery contest", "museum visit"]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rules = []
    cases = []
    for i in range(40):
        kind = KINDS[(i * 7) % 40]
        topic = TOPICS[i % len(TOPICS)]
        gold = f"A short note about the {topic}, case {i}."
        out_a = f"Model one wrote about the {topic} in case {i}."
        out_b = f"Model two wrote about the {topic} in case {i}."
        cases.append({"case_id": f"j{i:02d}", "instruction": f"Write one sentence about the {topic}.",
                      "input": f"Notes for case {i}", "gold": gold, "output_a": out_a, "output_b": out_b,
                      "expected": kind})
        if kind != "none":
            pref = out_a if kind == "a" else out_b
            rules.append({"all_of": ["Generated output A: " + pref + "\n"], "response": "A"})
            rules.append({"all_of": ["Generated output B: " + pref], "response": "B"})
    with open(OUT / "cases.jsonl", "w", encoding="utf-8") as f:
        for c in cases:
            f.write(json.dumps({k: v for k, v in c.items() if k != "expected"}) + "\n")
    with open(OUT / "judge_table.json", "w", encoding="utf-8") as f:
        json.dump({"rules": rules, "default": "None"}, f, indent=1)
        f.write("\n")

    swapped = [(MT19937_64(mix_seed(JUDGE_SEED, i))() >> 63) == 1 for i in range(40)]
    n = len(cases)
    a = sum(c["expected"] == "a" for c in cases)
    b = sum(c["expected"] == "b" for c in cases)
    expected = {
        "judge_seed": JUDGE_SEED,
        "order_swapped": swapped,
        "winners": [c["expected"] for c in cases],
        "pct_a": 100.0 * a / n,
        "pct_b": 100.0 * b / n,
        "pct_none": 100.0 * (n - a - b) / n,
    }
    with open(OUT / "expected.json", "w", encoding="utf-8") as f:
        json.dump(expected, f, indent=1)
        f.write("\n")
    print(sum(swapped), "of", n, "swapped")


if __name__ == "__main__":
    main()
