"""Extract Method candidate enumeration and validity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from . import deps
from .structure import LabeledMethod, Selection, count_statements, remainder, selection
from .syntax import nodes as n

# precondition codes
V1_TOO_SMALL = "V1"
V2_MULTIPLE_LIVE_OUT = "V2"
V3_CONTROL_TRANSFER = "V3"
V4_EMPTY_REMAINDER = "V4"
V5_SPLIT_DECLARATION = "V5"

REASON_TEXT = {
    V1_TOO_SMALL: "fewer statements than the minimum",
    V2_MULTIPLE_LIVE_OUT: "more than one variable is live after the selection",
    V3_CONTROL_TRANSFER: "return, or break/continue leaving the selection",
    V4_EMPTY_REMAINDER: "selection covers the whole method body",
    V5_SPLIT_DECLARATION: "a local declared inside is read outside",
}


@dataclass(frozen=True)
class GenerationConfig:
    min_extracted_statements: int = 3

    def __post_init__(self):
        if self.min_extracted_statements < 1:
            raise ValueError("min_extracted_statements must be >= 1")


@dataclass(frozen=True)
class Candidate:
    method: n.MethodDecl = field(compare=False, repr=False)
    sel: Selection
    size: int

    @property
    def key(self) -> Tuple[int, int, int]:
        return self.sel.key


@dataclass(frozen=True)
class ValidityVerdict:
    valid: bool
    reasons: Tuple[str, ...] = ()

    def __bool__(self):
        return self.valid


def make_candidate(labeled: LabeledMethod, block_id: int, i: int, j: int) -> Candidate:
    sel = selection(labeled, block_id, i, j)
    return Candidate(labeled.method, sel, count_statements(sel))


def _escaping_jump(labeled: LabeledMethod, sel: Selection) -> bool:
    inside = {id(s) for s in sel.closure}
    for s in sel.closure:
        if isinstance(s, n.Return):
            return True
        if isinstance(s, (n.Break, n.Continue)):
            loops = [p for p in labeled.enclosing(s) if isinstance(p, n.LOOP_TYPES)]
            if not loops or id(loops[0]) not in inside:
                return True
    return False


def is_valid(cand: Candidate, labeled: LabeledMethod,
             cfg: GenerationConfig = GenerationConfig()) -> ValidityVerdict:
    sel = cand.sel
    reasons = []
    if cand.size < cfg.min_extracted_statements:
        reasons.append(V1_TOO_SMALL)
    live = deps.live_out(labeled, sel)
    if len(live) > 1:
        reasons.append(V2_MULTIPLE_LIVE_OUT)
    if _escaping_jump(labeled, sel):
        reasons.append(V3_CONTROL_TRANSFER)
    rest = remainder(labeled, sel)
    if not rest:
        reasons.append(V4_EMPTY_REMAINDER)
    inside = {id(s) for s in sel.closure}
    facts = deps.method_facts(labeled)
    # a local declared inside may only be read outside as the one returned value
    returned = live if len(live) == 1 else frozenset()
    for s in rest:
        split = [v for v in facts[id(s)].uses
                 if v.kind == deps.LOCAL and v not in returned
                 and id(labeled.stmt_at(v.decl_label.block, v.decl_label.index)) in inside]
        if split:
            reasons.append(V5_SPLIT_DECLARATION)
            break
    return ValidityVerdict(not reasons, tuple(reasons))


def all_triples(labeled: LabeledMethod) -> List[Tuple[int, int, int]]:
    out = []
    for info in labeled.blocks:
        size = len(info)
        for i in range(1, size + 1):
            for j in range(i, size + 1):
                out.append((info.block_id, i, j))
    return out


def generate(labeled: LabeledMethod, cfg: GenerationConfig = GenerationConfig(),
             validate: bool = True) -> List[Candidate]:
    """Every contiguous run of statements within one block that passes
    :func:`is_valid`, ordered by block, then start, then end."""
    out = []
    for block_id, i, j in all_triples(labeled):
        cand = make_candidate(labeled, block_id, i, j)
        if not validate or is_valid(cand, labeled, cfg):
            out.append(cand)
    return out
