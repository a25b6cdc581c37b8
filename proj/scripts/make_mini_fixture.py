#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Writes the mini corpus, its canned mock table and the pipeline config."""

import itertools
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))
from mini_corpus_source import CATEGORIES, TASKS, YES_PAIRS, generate  # noqa: E402

FINAL_ONLY = {"Sentiment Analysis", "Text Categorization"}
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "mini"

BY_ID = {t["task_id"]: t for t in TASKS}


def verdict(reply_valid, reason, output):
    return json.dumps({"Valid input": "Yes" if reply_valid else "No", "Reason": reason, "Output": output})


def rewrite(summaries):
    parts = [summaries[0]]
    for s in summaries[1:]:
        s = s[0].lower() + s[1:]
        parts.append(s.replace("the given ", "the resulting ", 1))
    return " and then ".join(parts)


def concise(summaries):
    return ", then ".join(" ".join(s.split()[:4]) for s in summaries)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "corpus.jsonl", "w", encoding="utf-8") as f:
        for t in TASKS:
            rec = {
                "task_id": t["task_id"],
                "category": t["category"],
                "instruction": t["instruction"],
                "input_language": "en",
                "output_language": t.get("output_language", "en"),
                "instances": [{"input": i, "output": o} for i, o in t["instances"]],
            }
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")

    rules = []
    for t in TASKS:
        key = "Instruction 6: " + t["instruction"] + "\n"
        if "first_summary" in t:
            rules.append({"all_of": [key, "Your previous modified instruction"], "response": t["summary"]})
            rules.append({"all_of": [key], "response": t["first_summary"]})
        else:
            rules.append({"all_of": [key], "response": t["summary"]})

    # Every text that can reach a hop input, by the task that produced it.
    seen = {}
    composability = {}

    def ask(z, text, generated):
        ok = (BY_ID[z_src[text]]["category"], BY_ID[z]["category"]) in YES_PAIRS
        if generated and BY_ID[z]["category"] == "Text Categorization":
            ok = False
        out = generate(z, text) if ok else ""
        reason = "The input fits the instruction." if ok else "The input does not fit the instruction."
        composability[(z, text)] = verdict(ok, reason, out)
        return ok, out

    z_src = {}
    for t in TASKS:
        for _, o in t["instances"]:
            z_src[o] = t["task_id"]

    chains = []
    for k in (2, 3, 4):
        for cats in itertools.permutations(CATEGORIES, k):
            if any(c in FINAL_ONLY for c in cats[:-1]):
                continue
            for tasks in itertools.product(*[[t["task_id"] for t in TASKS if t["category"] == c] for c in cats]):
                chains.append(tasks)

    for tasks in chains:
        for _, o in BY_ID[tasks[0]]["instances"]:
            text = o
            for depth, z in enumerate(tasks[1:]):
                ok, out = ask(z, text, depth > 0)
                if not ok:
                    break
                if BY_ID[z]["category"] not in FINAL_ONLY:
                    prev = z_src.setdefault(out, z)
                    if BY_ID[prev]["category"] != BY_ID[z]["category"]:
                        raise SystemExit(f"output collision: {out!r}")
                text = out
            else:
                seen[tasks] = True

    for (z, text), reply in composability.items():
        rules.append({"all_of": ["Instruction: " + BY_ID[z]["summary"] + "\nInput: " + text + "\n\nAnswer:"],
                      "response": reply})

    for tasks in seen:
        summaries = [BY_ID[t]["summary"] for t in tasks]
        joined = " and then ".join(summaries)
        rewritten = rewrite(summaries)
        reply = json.dumps({"modified_instruction": rewritten})
        rules.append({"all_of": ['Instruction: "' + joined + '"\n\nSubtask 1:'], "response": reply})
        rules.append({"all_of": ['Input: "' + rewritten + '"\n\n', "single coherent sentence"],
                      "response": concise(summaries)})

    # A key that also occurs in a few-shot demo would match every prompt built
    # from that template, so such rules go last.
    prompts = pathlib.Path(__file__).resolve().parent.parent / "prompts"
    templates = [p.read_text(encoding="utf-8") for p in sorted(prompts.glob("*.txt"))]
    rules.sort(key=lambda r: any(r["all_of"][0] in tpl for tpl in templates))
    table = {"meta": {"fixture": "mini corpus"}, "rules": rules}
    with open(OUT / "mock_table.json", "w", encoding="utf-8") as f:
        json.dump(table, f, ensure_ascii=False, indent=1)
        f.write("\n")

    (OUT / "pipeline.conf").write_text(
        "# mock pipeline over the 12-task mini corpus\n"
        "provider = mock\n"
        "mock_table = mock_table.json\n"
        "seed_corpus = corpus.jsonl\n"
        "seed = 11\n"
        "split_seed = 5\n"
        "judge_seed = 3\n"
        "instances_per_task = 2\n"
        "pair_instances = 1\n"
        "cap_per_category = 3\n"
        "max_chain_length = 4\n"
        "test_fraction = 0.2\n"
        "variants = concise,irrelevant\n"
        "workers = 4\n"
    )
    print(f"{len(TASKS)} tasks, {len(rules)} rules, {len(seen)} reachable chains")


if __name__ == "__main__":
    main()
