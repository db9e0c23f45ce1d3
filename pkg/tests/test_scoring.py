from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from emrec import (RankingConfig, Score, extract_deps, generate, kulczynski_dist, make_candidate,
                   rank, recommend, score, selection)
from emrec.scoring import score_sets
from emrec.structure import remainder

from conftest import labeled_of

SELECTED_VARS = {"metaType", "fc", "fcb"}
REST_VARS = {"metaType", "btn", "cy", "cx", "cw", "ch", "buttons", "me", "rect"}


def test_kulczynski_listed_sets():
    # a = 1, b = 2, c = 8
    expect = 1 - Fraction(1, 2) * (Fraction(1, 3) + Fraction(1, 9))
    assert expect == Fraction(7, 9)
    assert kulczynski_dist(SELECTED_VARS, REST_VARS) == pytest.approx(7 / 9, abs=1e-12)


@pytest.mark.parametrize("a, b", [(set(), set()), ({1}, set()), (set(), {1}), ({1, 2}, {3})])
def test_kulczynski_disjoint_is_one(a, b):
    assert kulczynski_dist(a, b) == 1.0


def test_kulczynski_identity():
    assert kulczynski_dist({"x", "y"}, {"x", "y"}) == 0.0


def test_classifier_box_score(classifier_box):
    _, lm = classifier_box
    sc = score(make_candidate(lm, 3, 2, 5), lm)
    assert sc.dist_var == pytest.approx(7 / 9)
    assert sc.total == pytest.approx((sc.dist_var + sc.dist_type + sc.dist_pack) / 3, abs=1e-12)


def test_classifier_box_top_recommendation(classifier_box):
    _, lm = classifier_box
    recs = recommend(lm)
    assert recs[0].key == (3, 2, 5)
    assert [r.rank for r in recs] == [1, 2, 3]


def test_disjoint_candidate_scores_one():
    lm = labeled_of("Pen p = new Pen(); p.draw(); p.lift(); Log.info(1); Log.info(2); Log.info(3);",
                    imports="import g.Pen; import u.Log;")
    assert score(make_candidate(lm, 1, 1, 3), lm).total == 1.0


def test_identical_sets_score_zero():
    lm = labeled_of("a = new A(); a.f(); a.g(); a = new A(); a.h(); a.k();",
                    params="A a", imports="import k.A;")
    sc = score(make_candidate(lm, 1, 1, 3), lm)
    assert sc == Score(0.0, 0.0, 0.0, 0.0)


def _scored(totals):
    lm = labeled_of(" ".join(f"f{k}();" for k in range(len(totals) + 3)))
    cands = [make_candidate(lm, 1, k + 1, k + 3) for k in range(len(totals))]
    return [(c, Score(t, t, t, t)) for c, t in zip(cands, totals)]


def test_rank_keeps_top_three():
    scored = _scored([0.2, 0.9, 0.5, 0.7, 0.1])
    recs = rank(scored)
    assert [r.score.total for r in recs] == [0.9, 0.7, 0.5]
    assert [r.rank for r in recs] == [1, 2, 3]


def test_rank_min_score():
    assert rank(_scored([0.2, 0.5, 0.4]), RankingConfig(min_score=0.8)) == []


def test_rank_tie_prefers_earlier_start():
    scored = _scored([0.5, 0.5, 0.5])
    recs = rank(list(reversed(scored)), RankingConfig(max_recommendations_per_method=1))
    assert recs[0].key == (1, 1, 3)


def test_rank_tie_same_start_prefers_smaller():
    lm = labeled_of("f(); g(); h(); k(); m();")
    long, short = make_candidate(lm, 1, 1, 4), make_candidate(lm, 1, 1, 3)
    s = Score(0.5, 0.5, 0.5, 0.5)
    assert rank([(long, s), (short, s)])[0].candidate is short


def test_ranking_config_bounds():
    with pytest.raises(ValueError):
        RankingConfig(max_recommendations_per_method=0)
    with pytest.raises(ValueError):
        RankingConfig(min_score=1.5)


@given(st.lists(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]), min_size=1, max_size=6), st.randoms())
def test_rank_permutation_invariant(totals, rnd):
    scored = _scored(totals)
    shuffled = list(scored)
    rnd.shuffle(shuffled)
    cfg = RankingConfig(max_recommendations_per_method=4)
    assert [r.key for r in rank(scored, cfg)] == [r.key for r in rank(shuffled, cfg)]


def test_complement_symmetry(classifier_box):
    _, lm = classifier_box
    for cand in generate(lm):
        sel = extract_deps(cand.sel.closure, lm)
        rest = extract_deps(remainder(lm, cand.sel), lm)
        assert score_sets(sel, rest) == score_sets(rest, sel)


def test_score_as_dict_four_digits(classifier_box):
    _, lm = classifier_box
    d = score(make_candidate(lm, 3, 2, 5), lm).as_dict()
    assert d["var"] == 0.7778
