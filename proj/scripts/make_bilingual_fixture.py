#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Writes tests/fixtures/bilingual.jsonl: 50 two-language outputs with known spans."""
import json
import random
from pathlib import Path

root = Path(__file__).resolve().parent.parent
fixture = root / "tests" / "fixtures"
sentences = {
    lang: (fixture / "langid" / f"{lang}.txt").read_text(encoding="utf-8").splitlines()
    for lang in ("en", "fr", "es")
}

rng = random.Random(7)
rows = []
for i in range(50):
    tgt_lang = "fr" if i % 2 == 0 else "es"
    src = " ".join(rng.sample(sentences["en"], 2))
    tgt = " ".join(rng.sample(sentences[tgt_lang], 2))
    sep = "\n" if i % 5 == 0 else " "
    rows.append({
        "output": src + sep + tgt,
        "src_lang": "en",
        "tgt_lang": tgt_lang,
        "src_span": src,
        "tgt_span": tgt,
    })

with open(fixture / "bilingual.jsonl", "w", encoding="utf-8") as f:
    for r in rows:
        f.write(json.dumps(r, ensure_ascii=False) + "\n")
print(len(rows), "rows")
