# Copyright 2026 The RECAP Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the synthetic corpus under tests/fixtures/corpus/."""

import json
import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "fixtures" / "corpus"
SCHEMA = json.loads((ROOT / "data" / "checklist_v1.json").read_text())

PAPERS = [
    ("p01", 2021, "Tabu search for capacitated routing", True, False),
    ("p02", 2022, "A study of restart strategies in local search", False, True),
    ("p03", 2022, "Surrogate models for expensive black-box problems", False, False),
]

BODY = """{title}

Abstract. We study {topic} on standard benchmark instances and report
aggregated results over repeated runs. The algorithm is described in
pseudocode and all parameter values are listed in the experimental setup.

1 Introduction
{topic_cap} has received steady attention. We compare against two baselines
under an equal evaluation budget.

2 Experimental setup
Experiments ran on a machine with two 16-core processors and 128 GB of
memory. Each configuration was run 30 times with different random seeds.
{extra}
3 Results
Table 1 reports the mean objective value and the standard deviation.
"""


def answers_for(seed):
    rng = random.Random(seed)
    out = {}
    for item in SCHEMA["items"]:
        dom = item["domain"]
        if dom["type"] == "categorical":
            value = rng.choice(dom["options"])
        else:
            value = rng.choice(["Y", "Y", "N", "NA"])
        out[item["id"]] = {"value": value, "disambiguation": "annotator note for " + item["id"]}
    return out


def main():
    (OUT / "papers").mkdir(parents=True, exist_ok=True)
    (OUT / "human").mkdir(parents=True, exist_ok=True)
    rows = ["paper_id,year,title,pdf_path"]
    cache = {}
    for i, (pid, year, title, nominated, supplementary) in enumerate(PAPERS):
        text = BODY.format(title=title, topic=title.lower(), topic_cap=title, extra="")
        (OUT / "papers" / f"{pid}.txt").write_text(text)
        rows.append(f"{pid},{year},{title},papers/{pid}.txt")
        cache[pid] = {"nominated": nominated, "won": False, "supplementary": supplementary}
        doc = {"paper_id": pid, "rater": "human", "answers": answers_for(100 + i)}
        (OUT / "human" / f"{pid}.json").write_text(json.dumps(doc, indent=2) + "\n")
    (OUT / "manifest.csv").write_text("\n".join(rows) + "\n")
    (OUT / "best_papers.json").write_text(json.dumps(cache, indent=2) + "\n")

    # One paper far longer than the context limit used with this manifest.
    filler = "The local search continues from the incumbent solution. " * 1500
    long_text = BODY.format(title="An exhaustive appendix", topic="appendices", topic_cap="Appendices", extra=filler)
    (OUT / "papers" / "p99.txt").write_text(long_text)
    (OUT / "manifest_with_oversized.csv").write_text(
        "\n".join(rows + ["p99,2022,An exhaustive appendix,papers/p99.txt"]) + "\n")


if __name__ == "__main__":
    main()
