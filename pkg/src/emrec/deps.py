"""Dependency sets and def-use facts for statements of a method."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .structure import LabeledMethod, Selection, StmtLabel
from .syntax import nodes as n

LOCAL, PARAMETER, FIELD = "local", "parameter", "field"


@dataclass(frozen=True, order=True)
class VarId:
    kind: str
    name: str
    decl_label: Optional[StmtLabel] = None

    def __str__(self):
        return self.name

    @classmethod
    def field_named(cls, name: str) -> "VarId":
        return cls(FIELD, f"this.{name}")


@dataclass(frozen=True)
class DepSets:
    vars: FrozenSet[VarId] = frozenset()
    types: FrozenSet[str] = frozenset()
    packs: FrozenSet[str] = frozenset()

    def __or__(self, other: "DepSets") -> "DepSets":
        return DepSets(self.vars | other.vars, self.types | other.types, self.packs | other.packs)

    @property
    def var_names(self) -> FrozenSet[str]:
        return frozenset(v.name for v in self.vars)

    def as_dict(self) -> dict:
        return {
            "vars": sorted(self.var_names),
            "types": sorted(self.types),
            "packs": sorted(self.packs),
        }


@dataclass(frozen=True)
class StmtFacts:
    defs: Tuple[VarId, ...] = ()
    uses: Tuple[VarId, ...] = ()  # in evaluation order, duplicates removed
    types: FrozenSet[str] = frozenset()


def package_closure(type_names: Iterable[str]) -> FrozenSet[str]:
    """Every package containing one of ``type_names``, with all its parents."""
    packs = set()
    for t in type_names:
        parts = t.split(".")[:-1]
        for k in range(1, len(parts) + 1):
            packs.add(".".join(parts[:k]))
    return frozenset(packs)


def _type_name(t: n.TypeRef) -> Optional[str]:
    if t.is_primitive:
        return None
    return t.resolved or t.name


class _Collector:
    """Walks one method, assigning each name occurrence to a VarId."""

    def __init__(self, labeled: LabeledMethod):
        self.labeled = labeled
        self.params = {p.name: VarId(PARAMETER, p.name) for p in labeled.method.params}
        self.scopes: List[Dict[str, VarId]] = []
        self.facts: Dict[int, StmtFacts] = {}
        self.refs: Dict[int, VarId] = {}  # id(VarRef) -> binding
        self._defs: List[VarId] = []
        self._uses: List[VarId] = []
        self._types: set = set()

    def lookup(self, name: str) -> VarId:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        if name in self.params:
            return self.params[name]
        # not declared in the method: a field, possibly inherited
        return VarId.field_named(name)

    def run(self) -> Dict[int, StmtFacts]:
        self.block(self.labeled.method.body)
        return self.facts

    def block(self, block: n.Block):
        self.scopes.append({})
        for stmt in block.stmts:
            self.stmt(stmt)
        self.scopes.pop()

    def _begin(self):
        self._defs, self._uses, self._types = [], [], set()

    def _commit(self, stmt):
        self.facts[id(stmt)] = StmtFacts(
            tuple(dict.fromkeys(self._defs)),
            tuple(dict.fromkeys(self._uses)),
            frozenset(self._types),
        )

    def stmt(self, stmt):
        self._begin()
        if isinstance(stmt, n.VarDecl):
            self.var_decl(stmt, stmt)
            self._commit(stmt)
        elif isinstance(stmt, n.Assign):
            self.assign(stmt)
            self._commit(stmt)
        elif isinstance(stmt, n.ExprStmt):
            self.expr(stmt.expr)
            self._commit(stmt)
        elif isinstance(stmt, n.Return):
            if stmt.value is not None:
                self.expr(stmt.value)
            self._commit(stmt)
        elif isinstance(stmt, (n.Break, n.Continue)):
            self._commit(stmt)
        elif isinstance(stmt, n.If):
            self.expr(stmt.cond)
            self._commit(stmt)
            self.block(stmt.then)
            if stmt.orelse is not None:
                self.block(stmt.orelse)
        elif isinstance(stmt, n.While):
            self.expr(stmt.cond)
            self._commit(stmt)
            self.block(stmt.body)
        elif isinstance(stmt, n.For):
            self.scopes.append({})
            if isinstance(stmt.init, n.VarDecl):
                self.var_decl(stmt.init, stmt)
            elif stmt.init is not None:
                self.assign(stmt.init)
            if stmt.cond is not None:
                self.expr(stmt.cond)
            if stmt.update is not None:
                self.assign(stmt.update)
            self._commit(stmt)
            self.block(stmt.body)
            self.scopes.pop()
        elif isinstance(stmt, n.Block):
            self._commit(stmt)
            self.block(stmt)
        else:
            raise TypeError(f"unknown statement {stmt!r}")

    def var_decl(self, decl: n.VarDecl, owner):
        self.type_use(decl.type)
        if decl.init is not None:
            self.expr(decl.init)
        var = VarId(LOCAL, decl.name, self.labeled.label_of(owner))
        self.scopes[-1][decl.name] = var
        self._defs.append(var)

    def assign(self, a: n.Assign):
        self.expr(a.value)
        if isinstance(a.target, n.FieldRef):
            self._defs.append(VarId.field_named(a.target.name))
        else:
            var = self.lookup(a.target.name)
            self.refs[id(a.target)] = var
            self._defs.append(var)

    def type_use(self, t: n.TypeRef):
        name = _type_name(t)
        if name is not None:
            self._types.add(name)

    def expr(self, e):
        if isinstance(e, n.VarRef):
            var = self.lookup(e.name)
            self.refs[id(e)] = var
            self._uses.append(var)
        elif isinstance(e, n.FieldRef):
            self._uses.append(VarId.field_named(e.name))
        elif isinstance(e, n.Binary):
            self.expr(e.left)
            self.expr(e.right)
        elif isinstance(e, n.Unary):
            self.expr(e.operand)
        elif isinstance(e, n.Cast):
            self.type_use(e.type)
            self.expr(e.operand)
        elif isinstance(e, n.New):
            self.type_use(e.type)
            for a in e.args:
                self.expr(a)
        elif isinstance(e, n.Call):
            if isinstance(e.receiver, n.TypeRef):
                self.type_use(e.receiver)
            elif e.receiver is not None:
                self.expr(e.receiver)
            for a in e.args:
                self.expr(a)


def method_facts(labeled: LabeledMethod) -> Dict[int, StmtFacts]:
    """Per-statement facts keyed by statement identity (cached on ``labeled``)."""
    facts = getattr(labeled, "_facts", None)
    if facts is None:
        collector = _Collector(labeled)
        facts = collector.run()
        labeled._facts = facts
        labeled._refs = collector.refs
    return facts


def name_bindings(labeled: LabeledMethod) -> Dict[int, VarId]:
    """The VarId each bare name occurrence (keyed by node identity) binds to."""
    method_facts(labeled)
    return labeled._refs


def extract_deps(stmts: Iterable[object], labeled: LabeledMethod) -> DepSets:
    """Dependency sets of a statement set.

    Each statement contributes only what appears in its own syntax (a
    compound statement's condition or loop header, not its child blocks);
    pass the whole closure to cover nested statements.
    """
    facts = method_facts(labeled)
    vars_, types = set(), set()
    for s in stmts:
        f = facts[id(s)]
        vars_.update(f.defs)
        vars_.update(f.uses)
        types.update(f.types)
    return DepSets(frozenset(vars_), frozenset(types), package_closure(types))


@dataclass
class DefUse:
    labeled: LabeledMethod
    entries: Dict[int, StmtFacts] = field(repr=False, default_factory=dict)

    def defs(self, stmt) -> FrozenSet[VarId]:
        return frozenset(self.entries[id(stmt)].defs)

    def uses(self, stmt) -> FrozenSet[VarId]:
        return frozenset(self.entries[id(stmt)].uses)

    def __iter__(self):
        for stmt in self.labeled.flat:
            f = self.entries[id(stmt)]
            yield stmt, f.defs, f.uses


def def_use(labeled: LabeledMethod) -> DefUse:
    return DefUse(labeled, method_facts(labeled))


def _later_statements(labeled: LabeledMethod, sel: Selection) -> List[object]:
    """Statements that may execute after the selection, in textual order.

    Anything textually after it, plus (for a selection inside a loop) the
    rest of every enclosing loop including its header, which runs again on
    the next iteration.
    """
    inside = {id(s) for s in sel.closure}
    last = sel.closure[-1]
    end = labeled.position[id(last)] + 1
    out = list(labeled.flat[end:])
    seen = {id(s) for s in out}
    owner = labeled.block(sel.block_id).parent_stmt
    chain = [] if owner is None else [owner] + labeled.enclosing(owner)
    for stmt in chain:
        if isinstance(stmt, n.LOOP_TYPES):
            for s in labeled.subtree(stmt):
                if id(s) not in inside and id(s) not in seen:
                    seen.add(id(s))
                    out.append(s)
    return out


def live_out(labeled: LabeledMethod, sel: Selection) -> FrozenSet[VarId]:
    """Method variables written inside the selection and read after it.

    Fields are excluded: writes to them persist through the object.
    """
    facts = method_facts(labeled)
    written = set()
    for s in sel.closure:
        written.update(v for v in facts[id(s)].defs if v.kind != FIELD)
    if not written:
        return frozenset()
    read_later = set()
    for s in _later_statements(labeled, sel):
        read_later.update(facts[id(s)].uses)
    return frozenset(written & read_later)


def inputs(labeled: LabeledMethod, sel: Selection) -> List[VarId]:
    """Variables read in the selection but declared outside it, by first read."""
    facts = method_facts(labeled)
    inside = {id(s) for s in sel.closure}
    seen = {}
    for s in sel.closure:
        for v in facts[id(s)].uses:
            if v.kind == FIELD or v in seen:
                continue
            if v.kind == LOCAL and id(labeled.stmt_at(v.decl_label.block, v.decl_label.index)) in inside:
                continue
            seen[v] = None
    return list(seen)


def declared_type(labeled: LabeledMethod, var: VarId) -> n.TypeRef:
    """The declared type of a local or parameter."""
    if var.kind == PARAMETER:
        for p in labeled.method.params:
            if p.name == var.name:
                return p.type
    elif var.kind == LOCAL:
        decl = labeled.stmt_at(var.decl_label.block, var.decl_label.index)
        if isinstance(decl, n.For):
            decl = decl.init
        return decl.type
    raise KeyError(f"no declared type for {var}")
