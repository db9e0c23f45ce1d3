"""Deterministic pretty-printer for JX ASTs.

Output uses 4-space indentation, one statement per line, and the minimum
parentheses needed for the text to parse back to the same tree.
"""

from __future__ import annotations

from typing import Callable, Iterator, List, Optional, Tuple

from . import nodes as n

INDENT = "    "

_PREC = {
    "||": 1, "&&": 2, "==": 3, "!=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5, "*": 6, "/": 6, "%": 6,
}
_UNARY = 7
_PRIMARY = 8

_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


def format_type(t: Optional[n.TypeRef]) -> str:
    return "void" if t is None else t.name


def format_expr(e, min_prec: int = 0) -> str:
    if isinstance(e, n.IntLit):
        return str(e.value)
    if isinstance(e, n.DoubleLit):
        return repr(float(e.value))
    if isinstance(e, n.BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, n.StringLit):
        return '"' + "".join(_STRING_ESCAPES.get(c, c) for c in e.value) + '"'
    if isinstance(e, n.VarRef):
        return e.name
    if isinstance(e, n.FieldRef):
        return f"this.{e.name}"
    if isinstance(e, n.Binary):
        p = _PREC[e.op]
        text = f"{format_expr(e.left, p)} {e.op} {format_expr(e.right, p + 1)}"
        return f"({text})" if p < min_prec else text
    if isinstance(e, n.Unary):
        text = e.op + format_expr(e.operand, _UNARY)
        return f"({text})" if _UNARY < min_prec else text
    if isinstance(e, n.Cast):
        text = f"({e.type.name}) {format_expr(e.operand, _PRIMARY)}"
        return f"({text})" if _UNARY < min_prec else text
    if isinstance(e, n.New):
        return f"new {e.type.name}({_format_args(e.args)})"
    if isinstance(e, n.Call):
        return _format_call(e)
    raise TypeError(f"not an expression: {e!r}")


def _format_args(args) -> str:
    return ", ".join(format_expr(a) for a in args)


def _format_call(e: n.Call) -> str:
    call = f"{e.name}({_format_args(e.args)})"
    recv = e.receiver
    if recv is None:
        return call
    if isinstance(recv, n.TypeRef):
        return f"{recv.name}.{call}"
    text = format_expr(recv, _PRIMARY)
    # a bare capitalised name or a number would not read back as a receiver value
    if (isinstance(recv, n.VarRef) and recv.name[:1].isupper()) or isinstance(recv, (n.IntLit, n.DoubleLit)):
        text = f"({text})"
    return f"{text}.{call}"


def _format_simple(stmt) -> str:
    """Single-line form of a simple statement, without the trailing semicolon."""
    if isinstance(stmt, n.VarDecl):
        text = f"{stmt.type.name} {stmt.name}"
        return text if stmt.init is None else f"{text} = {format_expr(stmt.init)}"
    if isinstance(stmt, n.Assign):
        return f"{format_expr(stmt.target)} = {format_expr(stmt.value)}"
    if isinstance(stmt, n.ExprStmt):
        return format_expr(stmt.expr)
    if isinstance(stmt, n.Return):
        return "return" if stmt.value is None else f"return {format_expr(stmt.value)}"
    if isinstance(stmt, n.Break):
        return "break"
    if isinstance(stmt, n.Continue):
        return "continue"
    raise TypeError(f"not a simple statement: {stmt!r}")


Line = Tuple[Optional[object], str]


def stmt_lines(stmt, depth: int = 0) -> Iterator[Line]:
    """Yield ``(owner, text)`` pairs; ``owner`` is the statement a line opens,
    or None for closing braces and ``else`` continuations."""
    pad = INDENT * depth
    if isinstance(stmt, n.Block):
        yield stmt, pad + "{"
        yield from _block_body(stmt, depth + 1)
        yield None, pad + "}"
    elif isinstance(stmt, n.If):
        yield stmt, f"{pad}if ({format_expr(stmt.cond)}) {{"
        yield from _block_body(stmt.then, depth + 1)
        if stmt.orelse is not None:
            yield None, pad + "} else {"
            yield from _block_body(stmt.orelse, depth + 1)
        yield None, pad + "}"
    elif isinstance(stmt, n.While):
        yield stmt, f"{pad}while ({format_expr(stmt.cond)}) {{"
        yield from _block_body(stmt.body, depth + 1)
        yield None, pad + "}"
    elif isinstance(stmt, n.For):
        init = "" if stmt.init is None else _format_simple(stmt.init)
        cond = "" if stmt.cond is None else " " + format_expr(stmt.cond)
        update = "" if stmt.update is None else " " + _format_simple(stmt.update)
        yield stmt, f"{pad}for ({init};{cond};{update}) {{"
        yield from _block_body(stmt.body, depth + 1)
        yield None, pad + "}"
    else:
        yield stmt, f"{pad}{_format_simple(stmt)};"


def _block_body(block: n.Block, depth: int) -> Iterator[Line]:
    for s in block.stmts:
        yield from stmt_lines(s, depth)


def method_lines(m: n.MethodDecl, depth: int = 0) -> Iterator[Line]:
    pad = INDENT * depth
    params = ", ".join(f"{p.type.name} {p.name}" for p in m.params)
    yield m, f"{pad}{format_type(m.return_type)} {m.name}({params}) {{"
    yield from _block_body(m.body, depth + 1)
    yield None, pad + "}"


def format_method(m: n.MethodDecl, annotate: Callable[[object], str] = None) -> str:
    """Render one method; ``annotate`` maps each line's owner to a prefix."""
    out = []
    for owner, text in method_lines(m):
        out.append(text if annotate is None else annotate(owner) + text)
    return "\n".join(out) + "\n"


def pretty_print(unit: n.SourceUnit) -> str:
    lines: List[str] = [f"package {unit.package_name};"]
    lines.extend(f"import {imp};" for imp in unit.imports)
    for cls in unit.classes:
        lines.append(f"class {cls.name} {{")
        previous = None
        for member in cls.members:
            if previous is not None and (
                    isinstance(member, n.MethodDecl) or isinstance(previous, n.MethodDecl)):
                lines.append("")
            if isinstance(member, n.FieldDecl):
                text = f"{member.type.name} {member.name}"
                if member.init is not None:
                    text += f" = {format_expr(member.init)}"
                lines.append(f"{INDENT}{text};")
            else:
                lines.extend(text for _, text in method_lines(member, 1))
            previous = member
        lines.append("}")
    return "\n".join(lines) + "\n"
