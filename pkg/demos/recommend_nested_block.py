"""
Recommending an extraction in a nested block
============================================

A mouse handler computes a rectangle, then inside a nested ``if`` builds a
figure and its box. The box-building lines use their own variables and
their own packages, so they make a good new method.
"""

from pathlib import Path

from emrec import build_blocks, extract, load, pretty_print, recommend
from emrec.scoring import candidate_deps

source = (Path(__file__).parent.parent / "tests" / "fixtures" / "classifier_box.jx").read_text()
unit = load(source)
_, method = unit.find_method("mouseReleased")

# label every statement with its block and position
labeled = build_blocks(method)
print(labeled.annotate())

# the three best candidates, best first
recs = recommend(labeled)
for rec in recs:
    s = rec.score
    print(rec.rank, rec.candidate.sel.label_range(),
          f"total={s.total:.4f} var={s.dist_var:.4f} type={s.dist_type:.4f} pack={s.dist_pack:.4f}")

# why the winner wins: its variables barely overlap with the rest
best = recs[0].candidate
mine, rest = candidate_deps(best, labeled)
print("selected vars :", sorted(mine.var_names))
print("remaining vars:", sorted(rest.var_names))
print("shared        :", sorted(mine.var_names & rest.var_names))

# apply it
print(pretty_print(extract(unit, best, "showClassifierBox")))
