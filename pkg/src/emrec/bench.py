"""Recall/precision of recommendations against planted oracles."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .candidates import GenerationConfig
from .refactor import OracleEntry
from .scoring import Recommendation, RankingConfig, recommend
from .structure import RangeError, build_blocks, selection
from .syntax import LexError, ParseError, ResolveError, load


class CorpusError(Exception):
    pass


@dataclass(frozen=True)
class MatchResult:
    oracle: OracleEntry
    matched_rank: Optional[int] = None

    @property
    def matched(self) -> bool:
        return self.matched_rank is not None


def match(recs: Sequence[Recommendation], oracle: OracleEntry) -> MatchResult:
    """Exact match only: the recommended range must equal the oracle's."""
    for rec in recs:
        if rec.key == oracle.key:
            return MatchResult(oracle, rec.rank)
    return MatchResult(oracle, None)


@dataclass(frozen=True)
class BenchReport:
    k: int
    oracle_count: int
    matched: int
    recommendations_emitted: int
    results: Tuple[MatchResult, ...] = field(default=(), compare=False, repr=False)

    @property
    def recall(self) -> float:
        return self.matched / self.oracle_count if self.oracle_count else 0.0

    @property
    def precision(self) -> float:
        return self.matched / self.recommendations_emitted if self.recommendations_emitted else 0.0

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "oracles": self.oracle_count,
            "matched": self.matched,
            "emitted": self.recommendations_emitted,
            "recall": round(self.recall, 6),
            "precision": round(self.precision, 6),
        }


def format_table(rows: Iterable[Tuple[str, BenchReport]]) -> str:
    """Aligned text table: system, oracle count, matches (recall %), precision %."""
    rows = list(rows)
    header = ("System", "#", "Recall", "Prec.")
    body = []
    for name, r in rows:
        body.append((name, str(r.oracle_count), f"{r.matched} ({100 * r.recall:.1f}%)",
                     f"{100 * r.precision:.1f}%"))
    k_line = ", ".join(sorted({f"Top-{r.k}" for _, r in rows}))
    widths = [max(len(row[i]) for row in [header] + body) for i in range(4)]
    lines = [k_line]
    for row in [header] + body:
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells))
    return "\n".join(lines) + "\n"


def load_oracle(path: Union[str, Path]) -> List[OracleEntry]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        return [OracleEntry.from_json(d) for d in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"malformed oracle file {path}: {exc}") from None


def evaluate(corpus: Union[str, Path], oracle: Union[str, Path, Sequence[OracleEntry]], k: int,
             gen_cfg: GenerationConfig = GenerationConfig(), min_score: float = 0.0) -> BenchReport:
    """Run the recommender on every method carrying an oracle entry.

    Precision counts every recommendation emitted for those methods; methods
    without an oracle entry are not analysed.
    """
    corpus = Path(corpus)
    entries = load_oracle(oracle) if isinstance(oracle, (str, Path)) else list(oracle)
    rank_cfg = RankingConfig(max_recommendations_per_method=k, min_score=min_score)

    units = {}
    recs_by_method: Dict[Tuple[str, str, str], List[Recommendation]] = {}
    results = []
    for entry in entries:
        if entry.file not in units:
            path = corpus / entry.file
            if not path.is_file():
                raise CorpusError(f"oracle refers to missing file {entry.file!r}")
            try:
                units[entry.file] = load(path.read_text(encoding="utf-8"))
            except (LexError, ParseError, ResolveError) as exc:
                raise CorpusError(f"{entry.file}: {exc}") from None
        mkey = (entry.file, entry.class_name, entry.method_name)
        if mkey not in recs_by_method:
            cls = units[entry.file].find_class(entry.class_name)
            method = cls.method(entry.method_name) if cls is not None else None
            if method is None:
                raise CorpusError(
                    f"oracle refers to missing method {entry.class_name}.{entry.method_name} in {entry.file}")
            labeled = build_blocks(method)
            try:
                selection(labeled, *entry.key)
            except RangeError as exc:
                raise CorpusError(f"oracle range {entry.key} in {entry.method_name}: {exc}") from None
            recs_by_method[mkey] = recommend(labeled, gen_cfg, rank_cfg)
        results.append(match(recs_by_method[mkey], entry))

    emitted = sum(len(r) for r in recs_by_method.values())
    matched = sum(1 for r in results if r.matched)
    return BenchReport(k, len(entries), matched, emitted, tuple(results))
