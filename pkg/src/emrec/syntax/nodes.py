"""AST node classes for JX.

Nodes are frozen dataclasses. Source spans are excluded from equality so
two trees compare equal when they have the same structure, regardless of
where they came from (a file, the pretty-printer, a rewrite).
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, is_dataclass, replace
from typing import Callable, Iterator, Optional, Tuple, Union

PRIMITIVES = frozenset({"int", "boolean", "double", "String"})


@dataclass(frozen=True)
class SourceSpan:
    start_offset: int
    end_offset: int
    start_line: int = 1
    start_col: int = 1
    end_line: int = 1
    end_col: int = 1

    def __post_init__(self):
        if self.start_offset > self.end_offset:
            raise ValueError(f"inverted span {self.start_offset}>{self.end_offset}")

    def contains(self, other: "SourceSpan") -> bool:
        return self.start_offset <= other.start_offset and other.end_offset <= self.end_offset

    def cover(self, other: "SourceSpan") -> "SourceSpan":
        first = self if self.start_offset <= other.start_offset else other
        last = self if self.end_offset >= other.end_offset else other
        return SourceSpan(first.start_offset, last.end_offset, first.start_line,
                          first.start_col, last.end_line, last.end_col)


NO_SPAN = SourceSpan(0, 0)


def _span():
    return field(default=NO_SPAN, compare=False, repr=False)


@dataclass(frozen=True)
class TypeRef:
    kind: str  # "primitive" | "named"
    name: str
    resolved: Optional[str] = None
    span: SourceSpan = _span()

    @classmethod
    def of(cls, name: str, span: SourceSpan = NO_SPAN) -> "TypeRef":
        kind = "primitive" if name in PRIMITIVES else "named"
        return cls(kind, name, None, span)

    @property
    def is_primitive(self) -> bool:
        return self.kind == "primitive"

    @property
    def package(self) -> Optional[str]:
        """Package of the resolved type, or None for builtins and top-level names."""
        if self.is_primitive or not self.resolved or "." not in self.resolved:
            return None
        return self.resolved.rsplit(".", 1)[0]


# --- expressions -----------------------------------------------------------

@dataclass(frozen=True)
class IntLit:
    value: int
    span: SourceSpan = _span()


@dataclass(frozen=True)
class BoolLit:
    value: bool
    span: SourceSpan = _span()


@dataclass(frozen=True)
class DoubleLit:
    value: float
    span: SourceSpan = _span()


@dataclass(frozen=True)
class StringLit:
    value: str
    span: SourceSpan = _span()


@dataclass(frozen=True)
class VarRef:
    name: str
    span: SourceSpan = _span()


@dataclass(frozen=True)
class FieldRef:
    """``this.name``"""

    name: str
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Unary:
    op: str  # "!" or "-"
    operand: "Expr"
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Call:
    """Method call. ``receiver`` is None (implicit this), an expression, or a
    TypeRef for static calls such as ``Math.abs(x)``."""

    receiver: Union["Expr", TypeRef, None]
    name: str
    args: Tuple["Expr", ...] = ()
    span: SourceSpan = _span()


@dataclass(frozen=True)
class New:
    type: TypeRef
    args: Tuple["Expr", ...] = ()
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Cast:
    type: TypeRef
    operand: "Expr"
    span: SourceSpan = _span()


Expr = Union[IntLit, BoolLit, DoubleLit, StringLit, VarRef, FieldRef, Binary,
             Unary, Call, New, Cast]
LValue = Union[VarRef, FieldRef]


# --- statements ------------------------------------------------------------

@dataclass(frozen=True, eq=True)
class Block:
    stmts: Tuple["Stmt", ...] = ()
    span: SourceSpan = _span()


@dataclass(frozen=True)
class VarDecl:
    type: TypeRef
    name: str
    init: Optional[Expr] = None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class ExprStmt:
    expr: Expr
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Assign:
    target: LValue
    value: Expr
    span: SourceSpan = _span()


@dataclass(frozen=True)
class If:
    cond: Expr
    then: Block
    orelse: Optional[Block] = None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class While:
    cond: Expr
    body: Block
    span: SourceSpan = _span()


@dataclass(frozen=True)
class For:
    init: Union[VarDecl, Assign, None]
    cond: Optional[Expr]
    update: Optional[Assign]
    body: Block
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Return:
    value: Optional[Expr] = None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Break:
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Continue:
    span: SourceSpan = _span()


Stmt = Union[Block, VarDecl, ExprStmt, Assign, If, While, For, Return, Break, Continue]
STMT_TYPES = (Block, VarDecl, ExprStmt, Assign, If, While, For, Return, Break, Continue)
LOOP_TYPES = (While, For)


# --- declarations ----------------------------------------------------------

@dataclass(frozen=True)
class Param:
    type: TypeRef
    name: str
    span: SourceSpan = _span()


@dataclass(frozen=True)
class FieldDecl:
    type: TypeRef
    name: str
    init: Optional[Expr] = None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class MethodDecl:
    return_type: Optional[TypeRef]  # None means void
    name: str
    params: Tuple[Param, ...]
    body: Block
    span: SourceSpan = _span()


@dataclass(frozen=True)
class ClassDecl:
    name: str
    members: Tuple[Union[FieldDecl, MethodDecl], ...] = ()
    span: SourceSpan = _span()

    @property
    def fields(self) -> Tuple[FieldDecl, ...]:
        return tuple(m for m in self.members if isinstance(m, FieldDecl))

    @property
    def methods(self) -> Tuple[MethodDecl, ...]:
        return tuple(m for m in self.members if isinstance(m, MethodDecl))

    def method(self, name: str) -> Optional[MethodDecl]:
        for m in self.methods:
            if m.name == name:
                return m
        return None


@dataclass(frozen=True)
class SourceUnit:
    package_name: str
    imports: Tuple[str, ...] = ()
    classes: Tuple[ClassDecl, ...] = ()
    span: SourceSpan = _span()

    def find_class(self, name: str) -> Optional[ClassDecl]:
        for c in self.classes:
            if c.name == name:
                return c
        return None

    def find_method(self, qualified: str):
        """Look up ``Class.method`` or a bare ``method`` name.

        Returns ``(class_decl, method_decl)`` or None. A bare name must be
        unambiguous across the unit's classes.
        """
        if "." in qualified:
            cname, mname = qualified.split(".", 1)
            cls = self.find_class(cname)
            if cls is not None and cls.method(mname) is not None:
                return cls, cls.method(mname)
            return None
        hits = [(c, c.method(qualified)) for c in self.classes if c.method(qualified)]
        return hits[0] if len(hits) == 1 else None


# --- generic traversal -----------------------------------------------------

def children(node) -> Iterator[object]:
    """Yield the direct child nodes of ``node`` (dataclass nodes only)."""
    for f in fields(node):
        if f.name == "span":
            continue
        value = getattr(node, f.name)
        if isinstance(value, tuple):
            for item in value:
                if is_dataclass(item):
                    yield item
        elif is_dataclass(value):
            yield value


def walk(node) -> Iterator[object]:
    """Pre-order traversal over every node reachable from ``node``."""
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(list(children(current))))


def transform(node, fn: Callable[[object], object]):
    """Rebuild ``node`` bottom-up, applying ``fn`` to every rebuilt node."""
    if not is_dataclass(node) or isinstance(node, SourceSpan):
        return node
    changes = {}
    for f in fields(node):
        if f.name == "span":
            continue
        value = getattr(node, f.name)
        if isinstance(value, tuple):
            new = tuple(transform(v, fn) for v in value)
            if any(a is not b for a, b in zip(new, value)):
                changes[f.name] = new
        elif is_dataclass(value):
            new = transform(value, fn)
            if new is not value:
                changes[f.name] = new
    rebuilt = replace(node, **changes) if changes else node
    return fn(rebuilt)


def child_blocks(stmt) -> Tuple[Block, ...]:
    """Blocks directly owned by a statement, in then/else order."""
    if isinstance(stmt, If):
        return (stmt.then,) if stmt.orelse is None else (stmt.then, stmt.orelse)
    if isinstance(stmt, (While, For)):
        return (stmt.body,)
    if isinstance(stmt, Block):
        return (stmt,)
    return ()
