"""Candidate scoring by dependency-set dissimilarity, and ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable, List, Tuple

from . import deps
from .candidates import Candidate, GenerationConfig, generate
from .structure import LabeledMethod, remainder


def kulczynski_dist(a: AbstractSet, b: AbstractSet) -> float:
    """Kulczynski distance ``1 - (x/(x+y) + x/(x+z)) / 2``.

    ``x`` is the size of the intersection and ``y``, ``z`` the sizes of the
    two differences. With an empty intersection both ratios are taken as 0,
    so disjoint (or empty) operands are at distance 1.
    """
    common = len(a & b)
    if common == 0:
        return 1.0
    only_a = len(a) - common
    only_b = len(b) - common
    return 1.0 - 0.5 * (common / (common + only_a) + common / (common + only_b))


@dataclass(frozen=True)
class Score:
    total: float
    dist_var: float
    dist_type: float
    dist_pack: float

    @classmethod
    def of(cls, dist_var: float, dist_type: float, dist_pack: float) -> "Score":
        return cls((dist_var + dist_type + dist_pack) / 3.0, dist_var, dist_type, dist_pack)

    def as_dict(self, digits: int = 4) -> dict:
        return {
            "total": round(self.total, digits),
            "var": round(self.dist_var, digits),
            "type": round(self.dist_type, digits),
            "pack": round(self.dist_pack, digits),
        }


def score_sets(selected: deps.DepSets, rest: deps.DepSets) -> Score:
    return Score.of(
        kulczynski_dist(selected.vars, rest.vars),
        kulczynski_dist(selected.types, rest.types),
        kulczynski_dist(selected.packs, rest.packs),
    )


def candidate_deps(cand: Candidate, labeled: LabeledMethod) -> Tuple[deps.DepSets, deps.DepSets]:
    """Dependency sets of the selection and of the rest of the method."""
    return (deps.extract_deps(cand.sel.closure, labeled),
            deps.extract_deps(remainder(labeled, cand.sel), labeled))


def score(cand: Candidate, labeled: LabeledMethod) -> Score:
    selected, rest = candidate_deps(cand, labeled)
    return score_sets(selected, rest)


@dataclass(frozen=True)
class RankingConfig:
    max_recommendations_per_method: int = 3
    min_score: float = 0.0

    def __post_init__(self):
        if self.max_recommendations_per_method < 1:
            raise ValueError("max_recommendations_per_method must be >= 1")
        if not 0.0 <= self.min_score <= 1.0:
            raise ValueError("min_score must lie in [0, 1]")


@dataclass(frozen=True)
class Recommendation:
    candidate: Candidate
    score: Score
    rank: int

    @property
    def key(self):
        return self.candidate.key


def _order(item):
    cand, sc = item
    block, start, end = cand.key
    return (-sc.total, cand.sel.span.start_offset, cand.size, block, start, end)


def rank(scored: Iterable[Tuple[Candidate, Score]],
         cfg: RankingConfig = RankingConfig()) -> List[Recommendation]:
    kept = sorted((item for item in scored if item[1].total >= cfg.min_score), key=_order)
    kept = kept[:cfg.max_recommendations_per_method]
    return [Recommendation(c, s, r) for r, (c, s) in enumerate(kept, 1)]


def recommend(labeled: LabeledMethod, gen_cfg: GenerationConfig = GenerationConfig(),
              rank_cfg: RankingConfig = RankingConfig()) -> List[Recommendation]:
    """Generate, score and rank the candidates of one method."""
    cands = generate(labeled, gen_cfg)
    return rank([(c, score(c, labeled)) for c in cands], rank_cfg)
