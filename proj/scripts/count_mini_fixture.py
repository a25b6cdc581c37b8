#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Derives the mini pipeline's structural counts from the corpus and mock table alone.

Each category pair is probed for every task choice and instance; the verdict
must not depend on the choice, so the counts hold for any sampling seed.
"""

import itertools
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIX = ROOT / "tests" / "fixtures" / "mini"


def lookup(rules, prompt_tail):
    for r in rules:
        if all(a in prompt_tail for a in r["all_of"]) and (
                not r.get("any_of") or any(a in prompt_tail for a in r["any_of"])):
            return r["response"]
    raise KeyError(prompt_tail[:80])


def main():
    tasks = [json.loads(line) for line in open(FIX / "corpus.jsonl", encoding="utf-8") if line.strip()]
    rules = json.load(open(FIX / "mock_table.json", encoding="utf-8"))["rules"]
    final_only = {line.strip() for line in open(ROOT / "rules" / "final_only.txt", encoding="utf-8")
                  if line.strip() and not line.startswith("#")}
    conf = dict(line.split("=", 1) for line in open(FIX / "pipeline.conf") if "=" in line and not line.startswith("#"))
    conf = {k.strip(): v.strip() for k, v in conf.items()}
    per_task = int(conf["instances_per_task"])
    max_len = int(conf["max_chain_length"])
    fraction = float(conf["test_fraction"])

    summary = {}
    for t in tasks:
        reply = lookup(rules, "Instruction 6: " + t["instruction"] + "\n\nCategory 6: " + t["category"])
        if len(reply.split()) > 30:
            reply = lookup(rules, "Your previous modified instruction \"" + reply + "\"\n\nInstruction 6: " +
                           t["instruction"] + "\n")
        summary[t["task_id"]] = reply

    def probe(task_id, text):
        q = "Instruction: " + summary[task_id] + "\nInput: " + text + "\n\nAnswer:"
        reply = json.loads(lookup(rules, q))
        return reply["Valid input"] == "Yes", reply["Output"]

    categories = list(dict.fromkeys(t["category"] for t in tasks))
    members = {c: [t for t in tasks if t["category"] == c] for c in categories}

    candidates = [(a, b) for a, b in itertools.permutations(categories, 2)]
    passing = [(a, b) for a, b in candidates if a not in final_only]

    # walk every category path with every task choice and instance
    counts = {}
    frontier = [(c,) for c in categories if c not in final_only]
    for k in range(2, max_len + 1):
        nxt = []
        for path in frontier:
            for z in categories:
                if z in path or (k == 2 and (path[0], z) not in passing):
                    continue
                if path[-1] in final_only:
                    continue
                verdicts = set()
                for choice in itertools.product(*[members[c] for c in path + (z,)]):
                    for inst in choice[0]["instances"]:
                        text, ok = inst["output"], True
                        for hop in choice[1:]:
                            ok, text = probe(hop["task_id"], text)
                            if not ok:
                                break
                        verdicts.add(ok)
                if len(verdicts) != 1:
                    sys.exit(f"verdict depends on task choice for {path + (z,)}")
                if verdicts.pop():
                    counts[k] = counts.get(k, 0) + 1
                    nxt.append(path + (z,))
        frontier = nxt

    n1 = sum(min(per_task, len(t["instances"])) for t in tasks)
    expected = {
        "tasks": len(tasks),
        "candidates": len(candidates),
        "heuristic_pass": len(passing),
        "chains": {str(k): counts.get(k, 0) for k in range(2, max_len + 1)},
        "rejections": {"2": len(candidates) - counts.get(2, 0)},
        "examples": {"1": n1, **{str(k): counts.get(k, 0) for k in range(2, max_len + 1)}},
        "test": {"1": 0, **{str(k): round(fraction * counts.get(k, 0)) for k in range(2, 4)},
                 **{str(k): counts.get(k, 0) for k in range(4, max_len + 1)}},
    }
    expected["total"] = sum(expected["examples"].values())
    expected["mean_words_before"] = sum(len(t["instruction"].split()) for t in tasks) / len(tasks)
    expected["mean_words_after"] = sum(len(s.split()) for s in summary.values()) / len(tasks)
    json.dump(expected, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
