"""
How a candidate is scored
=========================

A score is the mean of three Kulczynski distances, one each for the
variables, the types and the packages a selection touches, measured
against the rest of the method. Larger means better separated.
"""

from emrec import build_blocks, generate, kulczynski_dist, load, score

# identical sets are at distance 0, disjoint ones at 1
print(kulczynski_dist({"a", "b"}, {"a", "b"}))
print(kulczynski_dist({"a"}, {"b"}))

# one shared element out of 3 and 9: 1 - (1/3 + 1/9) / 2 = 7/9
print(kulczynski_dist({"x", "y", "shared"}, {"shared"} | {f"r{k}" for k in range(8)}))

source = """package app.report;
import app.model.Ledger;
import lib.pdf.Page;
import lib.pdf.Font;

class Exporter {
    void export(Ledger ledger) {
        int rows = ledger.size();
        ledger.lock();
        Page page = new Page();
        Font font = Font.bold();
        page.write(font);
        page.close();
        ledger.unlock(rows);
    }
}
"""
method = load(source).classes[0].method("export")
labeled = build_blocks(method)

# every valid candidate with its score, in enumeration order
for cand in generate(labeled):
    s = score(cand, labeled)
    print(cand.sel.label_range(), f"{s.total:.4f}",
          f"(var {s.dist_var:.3f}, type {s.dist_type:.3f}, pack {s.dist_pack:.3f})")

# the lib.pdf statements S1.3-S1.6 share nothing with the ledger code: score 1.0
