"""Block/statement decomposition of a method body.

Every statement gets a label ``SX.Y``: ``X`` is the block number and ``Y``
its 1-based position among the block's direct statements. The method body
is block 1; blocks owned by a compound statement are numbered when that
statement is visited (then-block before else-block), before descending
into them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .syntax import nodes as n
from .syntax.printer import format_method


class RangeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class StmtLabel:
    block: int
    index: int

    def __str__(self):
        return f"S{self.block}.{self.index}"


@dataclass(frozen=True)
class BlockInfo:
    block_id: int
    statements: Tuple[object, ...]
    parent_stmt: Optional[object] = field(default=None, compare=False)
    node: Optional[n.Block] = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.statements)


@dataclass(frozen=True)
class Selection:
    block_id: int
    start: int
    end: int
    closure: Tuple[object, ...] = field(default=(), compare=False, repr=False)
    span: n.SourceSpan = field(default=n.NO_SPAN, compare=False, repr=False)

    @property
    def key(self) -> Tuple[int, int, int]:
        return (self.block_id, self.start, self.end)

    def label_range(self) -> str:
        return f"S{self.block_id}.{self.start}–S{self.block_id}.{self.end}"


class LabeledMethod:
    """A method body split into numbered blocks with per-statement labels.

    Statements are tracked by object identity, so structurally identical
    statements in different places keep distinct labels.
    """

    def __init__(self, method: n.MethodDecl):
        self.method = method
        self.blocks: List[BlockInfo] = []
        self.label_index: Dict[int, StmtLabel] = {}
        self._by_label: Dict[StmtLabel, object] = {}
        self._parent: Dict[int, Optional[object]] = {}
        self.flat: List[object] = []
        self.position: Dict[int, int] = {}
        self._subtree_end: Dict[int, int] = {}
        self._number(method.body, None)
        self._visit(1)
        self._flatten(method.body.stmts)

    def _number(self, block: n.Block, owner) -> int:
        bid = len(self.blocks) + 1
        self.blocks.append(BlockInfo(bid, block.stmts, owner, block))
        return bid

    def _visit(self, bid: int):
        info = self.blocks[bid - 1]
        for y, stmt in enumerate(info.statements, 1):
            label = StmtLabel(bid, y)
            self.label_index[id(stmt)] = label
            self._by_label[label] = stmt
            self._parent[id(stmt)] = info.parent_stmt
            kids = [self._number(b, stmt) for b in n.child_blocks(stmt)]
            for k in kids:
                self._visit(k)

    def _flatten(self, stmts):
        for stmt in stmts:
            self.position[id(stmt)] = len(self.flat)
            self.flat.append(stmt)
            for b in n.child_blocks(stmt):
                self._flatten(b.stmts)
            self._subtree_end[id(stmt)] = len(self.flat)

    # -- queries ------------------------------------------------------------

    def block(self, block_id: int) -> BlockInfo:
        if not 1 <= block_id <= len(self.blocks):
            raise RangeError(f"no block {block_id} (method has {len(self.blocks)})")
        return self.blocks[block_id - 1]

    def label_of(self, stmt) -> StmtLabel:
        return self.label_index[id(stmt)]

    def stmt_at(self, block: int, index: int):
        try:
            return self._by_label[StmtLabel(block, index)]
        except KeyError:
            raise RangeError(f"no statement S{block}.{index}") from None

    def parent_of(self, stmt):
        """The compound statement owning ``stmt``'s block (None in the body)."""
        return self._parent[id(stmt)]

    def enclosing(self, stmt) -> List[object]:
        """Compound statements enclosing ``stmt``, innermost first."""
        out = []
        cur = self.parent_of(stmt)
        while cur is not None:
            out.append(cur)
            cur = self.parent_of(cur)
        return out

    def subtree(self, stmt) -> List[object]:
        """``stmt`` followed by every statement nested inside it."""
        i = self.position[id(stmt)]
        return self.flat[i:self._subtree_end[id(stmt)]]

    def __len__(self):
        return len(self.flat)

    def annotate(self) -> str:
        """The method source with each statement line prefixed by its label."""
        width = max((len(str(lbl)) for lbl in self.label_index.values()), default=4)

        def prefix(owner):
            lbl = self.label_index.get(id(owner)) if owner is not None else None
            return (str(lbl) if lbl else "").ljust(width) + "  "

        return format_method(self.method, prefix)


def build_blocks(method: n.MethodDecl) -> LabeledMethod:
    return LabeledMethod(method)


def selection(labeled: LabeledMethod, block_id: int, i: int, j: int) -> Selection:
    """Statements ``i..j`` (1-based, inclusive) of a block, plus everything
    nested inside them."""
    info = labeled.block(block_id)
    if not 1 <= i <= j <= len(info):
        raise RangeError(f"range {i}..{j} outside block {block_id} of length {len(info)}")
    first, last = info.statements[i - 1], info.statements[j - 1]
    lo = labeled.position[id(first)]
    hi = labeled._subtree_end[id(last)]
    closure = tuple(labeled.flat[lo:hi])
    return Selection(block_id, i, j, closure, first.span.cover(last.span))


def count_statements(sel: Selection) -> int:
    return len(sel.closure)


def remainder(labeled: LabeledMethod, sel: Selection) -> List[object]:
    inside = {id(s) for s in sel.closure}
    return [s for s in labeled.flat if id(s) not in inside]
