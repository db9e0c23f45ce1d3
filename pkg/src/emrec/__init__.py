"""Extract Method recommendations for JX, a small Java-like language.

Candidates are contiguous statement ranges inside a block. Each one is
scored by how little its variables, types and packages overlap with the
rest of the method, and the best few per method are reported.
"""

__version__ = "0.1.0"

from .bench import BenchReport, CorpusError, MatchResult, evaluate, format_table, load_oracle, match
from .candidates import Candidate, GenerationConfig, ValidityVerdict, generate, is_valid, make_candidate
from .deps import DefUse, DepSets, VarId, def_use, extract_deps, inputs, live_out
from .refactor import (InlineError, NameClashError, OracleEntry, PreconditionError, RefactorError,
                       equivalent, extract, inline, mutate)
from .scoring import (RankingConfig, Recommendation, Score, kulczynski_dist, rank, recommend,
                      score)
from .structure import LabeledMethod, RangeError, Selection, StmtLabel, build_blocks, count_statements, selection
from .syntax import LexError, ParseError, ResolveError, load, parse, pretty_print, resolve_types, tokenize
