"""Source rewrites: Extract Method, Inline Method, and random inlining.

Inline Method is the mutation used to plant benchmark oracles: it splices
a callee into its only call site and records the exact statement range so
that a perfect recommender would extract it again.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import deps
from .candidates import Candidate, GenerationConfig, is_valid, make_candidate
from .structure import LabeledMethod, build_blocks
from .syntax import nodes as n


class RefactorError(Exception):
    pass


class PreconditionError(RefactorError):
    def __init__(self, message: str, reasons: Sequence[str] = ()):
        super().__init__(message)
        self.reasons = tuple(reasons)


class NameClashError(RefactorError):
    pass


class InlineError(RefactorError):
    pass


@dataclass(frozen=True)
class ExtractPlan:
    new_method_name: str
    params: Tuple[deps.VarId, ...]
    return_var: Optional[deps.VarId]
    return_type: Optional[n.TypeRef]


@dataclass(frozen=True)
class OracleEntry:
    file: str
    class_name: str
    method_name: str
    block_id: int
    start: int
    end: int
    inlined_from: str

    @property
    def key(self) -> Tuple[int, int, int]:
        return (self.block_id, self.start, self.end)

    def to_json(self) -> dict:
        return {
            "file": self.file,
            "class": self.class_name,
            "method": self.method_name,
            "block": self.block_id,
            "start": self.start,
            "end": self.end,
            "inlined_from": self.inlined_from,
        }

    @classmethod
    def from_json(cls, d: dict) -> "OracleEntry":
        return cls(d["file"], d["class"], d["method"], int(d["block"]), int(d["start"]),
                   int(d["end"]), d["inlined_from"])


# --- helpers -----------------------------------------------------------------

def owner_class(unit: n.SourceUnit, method: n.MethodDecl) -> n.ClassDecl:
    for cls in unit.classes:
        if any(m is method for m in cls.members):
            return cls
    raise RefactorError(f"method {method.name!r} does not belong to this unit")


def _replace_class(unit: n.SourceUnit, old: n.ClassDecl, new: n.ClassDecl) -> n.SourceUnit:
    return replace(unit, classes=tuple(new if c is old else c for c in unit.classes))


def _replace_block(method: n.MethodDecl, target: n.Block, stmts) -> n.MethodDecl:
    """Copy of ``method`` where the block object ``target`` holds ``stmts``."""
    def fn(node):
        if node is target:
            return replace(node, stmts=tuple(stmts))
        return node
    return n.transform(method, fn)


def _rename_locals(stmts, mapping: Dict[str, str]):
    """Rename variable declarations and references named in ``mapping``."""
    def fn(node):
        if isinstance(node, n.VarRef) and node.name in mapping:
            return replace(node, name=mapping[node.name])
        if isinstance(node, (n.VarDecl, n.Param)) and node.name in mapping:
            return replace(node, name=mapping[node.name])
        return node
    return [n.transform(s, fn) for s in stmts]


def _call_sites(node, name: str) -> List[n.Call]:
    return [c for c in n.walk(node)
            if isinstance(c, n.Call) and c.receiver is None and c.name == name]


def _declared_names(method: n.MethodDecl) -> Set[str]:
    names = {p.name for p in method.params}
    names.update(d.name for d in n.walk(method.body) if isinstance(d, n.VarDecl))
    return names


def _bare_field_names(labeled: LabeledMethod) -> Set[str]:
    """Fields the method refers to by bare name (without ``this.``)."""
    return {v.name[len("this."):] for v in deps.name_bindings(labeled).values()
            if v.kind == deps.FIELD}


# --- Extract Method ------------------------------------------------------------

def plan_extract(labeled: LabeledMethod, cand: Candidate, name: str) -> ExtractPlan:
    live = sorted(deps.live_out(labeled, cand.sel))
    ret = live[0] if len(live) == 1 else None
    rtype = deps.declared_type(labeled, ret) if ret is not None else None
    return ExtractPlan(name, tuple(deps.inputs(labeled, cand.sel)), ret, rtype)


def extract(unit: n.SourceUnit, cand: Candidate, name: str,
            cfg: GenerationConfig = GenerationConfig(), bound_params: int = 0) -> n.SourceUnit:
    """Move the candidate's statements into a new method ``name``.

    The new method is placed right after its host. With ``bound_params=k``
    the first ``k`` selected statements, which must be initialised local
    declarations, become parameters of the new method and their
    initialisers become call arguments; this undoes the parameter bindings
    written by :func:`inline`.
    """
    cls = owner_class(unit, cand.method)
    labeled = build_blocks(cand.method)
    cand = make_candidate(labeled, *cand.key)
    verdict = is_valid(cand, labeled, cfg)
    if not verdict:
        raise PreconditionError(f"candidate {cand.sel.label_range()} is not extractable",
                                verdict.reasons)
    if any(m.name == name for m in cls.members):
        raise NameClashError(f"class {cls.name} already has a member named {name!r}")

    plan = plan_extract(labeled, cand, name)
    info = labeled.block(cand.sel.block_id)
    chosen = list(info.statements[cand.sel.start - 1:cand.sel.end])

    facts = deps.method_facts(labeled)
    bound: List[n.VarDecl] = chosen[:bound_params]
    bound_vars = set()
    for decl in bound:
        if not isinstance(decl, n.VarDecl) or decl.init is None:
            raise PreconditionError("bound parameters must be initialised declarations")
        if any(v in bound_vars for v in facts[id(decl)].uses):
            raise PreconditionError(f"initialiser of {decl.name!r} reads a bound parameter")
        bound_vars.update(facts[id(decl)].defs)

    inside = {id(s) for s in cand.sel.closure}
    bound_ids = {id(s) for s in bound}
    extra: Dict[deps.VarId, None] = {}
    for s in cand.sel.closure:
        if id(s) in bound_ids:
            continue
        for v in facts[id(s)].uses:
            if v.kind == deps.FIELD or v in bound_vars:
                continue
            if v.kind == deps.LOCAL and id(labeled.stmt_at(*_at(v))) in inside:
                continue
            extra.setdefault(v, None)
    # a returned variable from outside may be written on only some paths,
    # so the new method starts from the caller's value
    ret = plan.return_var
    if ret is not None and ret not in bound_vars and not (
            ret.kind == deps.LOCAL and id(labeled.stmt_at(*_at(ret))) in inside):
        extra.setdefault(ret, None)

    params = [n.Param(d.type, d.name) for d in bound]
    params += [n.Param(deps.declared_type(labeled, v), v.name) for v in extra]
    args = [d.init for d in bound] + [n.VarRef(v.name) for v in extra]
    body = chosen[len(bound):]
    call = n.Call(None, name, tuple(args))
    if ret is None:
        site = n.ExprStmt(call)
    else:
        body = body + [n.Return(n.VarRef(ret.name))]
        declared_inside = ret.kind == deps.LOCAL and id(labeled.stmt_at(*_at(ret))) in inside
        if declared_inside:
            site = n.VarDecl(plan.return_type, ret.name, call)
        else:
            site = n.Assign(n.VarRef(ret.name), call)

    stmts = list(info.statements)
    stmts[cand.sel.start - 1:cand.sel.end] = [site]
    host = _replace_block(cand.method, info.node, stmts)
    new_method = n.MethodDecl(plan.return_type, name, tuple(params), n.Block(tuple(body)))
    members = []
    for m in cls.members:
        if m is cand.method:
            members += [host, new_method]
        else:
            members.append(m)
    return _replace_class(unit, cls, replace(cls, members=tuple(members)))


def _at(v: deps.VarId):
    return v.decl_label.block, v.decl_label.index


# --- Inline Method -------------------------------------------------------------

@dataclass
class _InlineSite:
    cls: n.ClassDecl
    callee: n.MethodDecl
    host: n.MethodDecl
    host_labeled: LabeledMethod
    site: object
    call: n.Call


def _check_inline(unit: n.SourceUnit, class_name: str, callee_name: str) -> _InlineSite:
    cls = unit.find_class(class_name)
    if cls is None:
        raise InlineError(f"no class {class_name!r}")
    callee = cls.method(callee_name)
    if callee is None:
        raise InlineError(f"no method {class_name}.{callee_name}")
    if _call_sites(callee, callee_name):
        raise InlineError(f"{callee_name} is recursive")
    calls = [(m, c) for m in cls.members for c in _call_sites(m, callee_name)]
    if len(calls) != 1:
        raise InlineError(f"{callee_name} is called {len(calls)} times, expected exactly once")
    host, call = calls[0]
    if not isinstance(host, n.MethodDecl):
        raise InlineError(f"{callee_name} is called from a field initialiser")
    if len(call.args) != len(callee.params):
        raise InlineError(f"call to {callee_name} has the wrong number of arguments")

    body = callee.body.stmts
    returns = [s for s in n.walk(callee.body) if isinstance(s, n.Return)]
    if callee.return_type is None:
        if returns:
            raise InlineError(f"void method {callee_name} contains return")
    else:
        last = body[-1] if body else None
        if (len(returns) != 1 or returns[0] is not last
                or not isinstance(last.value, n.VarRef)):
            raise InlineError(f"{callee_name} must end with its only return, 'return <variable>;'")
        callee_labeled = build_blocks(callee)
        rv = deps.method_facts(callee_labeled)[id(last)].uses[0]
        if rv.kind == deps.FIELD:
            raise InlineError(f"{callee_name} returns a field")
        if deps.declared_type(callee_labeled, rv).name != callee.return_type.name:
            raise InlineError(f"{callee_name} returns a variable of a different type")
    callee_labeled = build_blocks(callee)
    for s in callee_labeled.flat:
        if isinstance(s, (n.Break, n.Continue)):
            if not any(isinstance(p, n.LOOP_TYPES) for p in callee_labeled.enclosing(s)):
                raise InlineError(f"{callee_name} has a jump outside any loop")

    host_labeled = build_blocks(host)
    site = None
    for s in host_labeled.flat:
        own = [s] if not n.child_blocks(s) else []
        if any(x is call for o in own for x in n.walk(o)):
            site = s
            break
    if callee.return_type is None:
        if not (isinstance(site, n.ExprStmt) and site.expr is call):
            raise InlineError(f"call to void {callee_name} must be a statement on its own")
    else:
        if not (isinstance(site, n.VarDecl) and site.init is call):
            raise InlineError(f"call to {callee_name} must initialise a declaration")
        if site.type.name != callee.return_type.name:
            raise InlineError(f"call to {callee_name} is stored in a variable of a different type")

    callee_fields = _bare_field_names(callee_labeled)
    if callee_fields & _declared_names(host):
        raise InlineError(f"{callee_name} reads a field that the host shadows with a local")
    if callee_fields & _declared_names(callee):
        raise InlineError(f"{callee_name} mixes a field and a local of the same name")
    return _InlineSite(cls, callee, host, host_labeled, site, call)


def inline(unit: n.SourceUnit, class_name: str, callee_name: str,
           file: str = "") -> Tuple[n.SourceUnit, OracleEntry]:
    """Inline the only call of ``class_name.callee_name`` and delete the callee.

    Each parameter becomes a local initialised with its argument, followed
    by the callee's body. A returned variable takes the name of the
    variable declared at the call site. Callee locals that collide with
    names used by the host get a numeric suffix.
    """
    s = _check_inline(unit, class_name, callee_name)
    callee, host = s.callee, s.host

    host_names = _declared_names(host) | {r.name for r in n.walk(host.body) if isinstance(r, n.VarRef)}
    host_names |= {f.name for f in s.cls.fields}
    callee_names = _declared_names(callee)
    mapping: Dict[str, str] = {}
    if callee.return_type is not None:
        mapping[callee.body.stmts[-1].value.name] = s.site.name
    taken = host_names | callee_names | set(mapping.values())
    for name in sorted(callee_names):
        if name in mapping or name not in host_names:
            continue
        k = 1
        while f"{name}_{k}" in taken:
            k += 1
        mapping[name] = f"{name}_{k}"
        taken.add(mapping[name])

    # arguments are host expressions: only the bound name is renamed
    bindings = [n.VarDecl(p.type, mapping.get(p.name, p.name), arg)
                for p, arg in zip(callee.params, s.call.args)]
    body = list(callee.body.stmts)
    if callee.return_type is not None:
        body = body[:-1]
    spliced = bindings + _rename_locals(body, mapping)
    if not spliced:
        raise InlineError(f"{callee_name} has an empty body")

    label = s.host_labeled.label_of(s.site)
    info = s.host_labeled.block(label.block)
    stmts = list(info.statements)
    stmts[label.index - 1:label.index] = spliced
    new_host = _replace_block(host, info.node, stmts)

    members = []
    for m in s.cls.members:
        if m is callee:
            continue
        members.append(new_host if m is host else m)
    new_unit = _replace_class(unit, s.cls, replace(s.cls, members=tuple(members)))

    where = build_blocks(new_host).label_of(spliced[0])
    entry = OracleEntry(file, s.cls.name, host.name, where.block, where.index,
                        where.index + len(spliced) - 1, callee_name)
    return new_unit, entry


def inline_eligible(unit: n.SourceUnit, class_name: str, callee_name: str,
                    cfg: GenerationConfig = GenerationConfig()) -> bool:
    try:
        s = _check_inline(unit, class_name, callee_name)
    except InlineError:
        return False
    size = len(build_blocks(s.callee).flat) - (0 if s.callee.return_type is None else 1)
    return size >= cfg.min_extracted_statements


def mutate(unit: n.SourceUnit, seed: int, cfg: GenerationConfig = GenerationConfig(),
           probability: float = 0.5, file: str = "") -> Tuple[n.SourceUnit, List[OracleEntry]]:
    """Randomly inline eligible callees, at most one per host method.

    Eligible callees are visited in a seeded random order and each is
    inlined with the given probability. A splice whose range would not be
    a valid extraction candidate is discarded.
    """
    rng = random.Random(seed)
    eligible = [(c.name, m.name) for c in unit.classes for m in c.methods
                if inline_eligible(unit, c.name, m.name, cfg)]
    rng.shuffle(eligible)
    hosts: Set[Tuple[str, str]] = set()
    entries: List[OracleEntry] = []
    for class_name, callee_name in eligible:
        if rng.random() >= probability:
            continue
        if (class_name, callee_name) in hosts:
            continue
        try:
            s = _check_inline(unit, class_name, callee_name)
        except InlineError:
            continue
        if (class_name, s.host.name) in hosts:
            continue
        new_unit, entry = inline(unit, class_name, callee_name, file)
        host = new_unit.find_class(class_name).method(entry.method_name)
        labeled = build_blocks(host)
        if not is_valid(make_candidate(labeled, *entry.key), labeled, cfg):
            continue
        unit = new_unit
        hosts.add((class_name, entry.method_name))
        entries.append(entry)
    return unit, entries


# --- structural comparison -----------------------------------------------------

def alpha_normalize(method: n.MethodDecl) -> n.MethodDecl:
    """Rename parameters and locals to ``v0, v1, ...`` in declaration order."""
    mapping: Dict[str, str] = {}
    for node in n.walk(method):
        if isinstance(node, (n.Param, n.VarDecl)) and node.name not in mapping:
            mapping[node.name] = f"v{len(mapping)}"
    params = tuple(replace(p, name=mapping[p.name]) for p in method.params)
    body = _rename_locals([method.body], mapping)[0]
    return replace(method, params=params, body=body)


def equivalent(a: n.SourceUnit, b: n.SourceUnit) -> bool:
    """Structural equality up to local renaming and method order."""
    if (a.package_name, a.imports) != (b.package_name, b.imports):
        return False
    if [c.name for c in a.classes] != [c.name for c in b.classes]:
        return False
    for ca, cb in zip(a.classes, b.classes):
        if ca.fields != cb.fields:
            return False
        ma = sorted((alpha_normalize(m) for m in ca.methods), key=lambda m: m.name)
        mb = sorted((alpha_normalize(m) for m in cb.methods), key=lambda m: m.name)
        if ma != mb:
            return False
    return True
