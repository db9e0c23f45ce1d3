"""
Measuring recall with planted oracles
=====================================

Inline Method is the reverse of Extract Method. Inlining a helper back
into its caller plants a known-good extraction, and a recommender is
credited only when it proposes exactly that statement range.
"""

import json
import tempfile
from pathlib import Path

from emrec import evaluate, format_table, load, mutate, pretty_print
from emrec.synth import planted_corpus

work = Path(tempfile.mkdtemp())
(work / "src").mkdir()
(work / "mutated").mkdir()

# synthetic programs whose helper shares nothing with its caller
programs = planted_corpus(30, seed=1)
print(programs[0][1])

entries = []
for name, text in programs:
    unit, found = mutate(load(text), seed=len(entries), probability=1.0, file=name)
    (work / "mutated" / name).write_text(pretty_print(unit))
    entries += found
(work / "oracle.json").write_text(json.dumps([e.to_json() for e in entries], indent=2))
print(len(entries), "oracles, e.g.", entries[0].to_json())

# recall and precision at Top-1..3
reports = [evaluate(work / "mutated", work / "oracle.json", k) for k in (1, 2, 3)]
for r in reports:
    print(format_table([("planted", r)]))

# the same protocol from a shell:
#   emrec mutate src --seed 1 -o mutated --oracle oracle.json
#   emrec bench mutated --oracle oracle.json --k 1
