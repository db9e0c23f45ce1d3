"""Recursive-descent parser for JX."""

from __future__ import annotations

from typing import List, Optional

from . import nodes as n
from .tokens import Token, decode_string, tokenize

_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)

_PRIMITIVE_KW = frozenset({"int", "boolean", "double", "String"})

# tokens that may follow "(Name)" when it is a cast rather than a parenthesised name
_CAST_FOLLOWERS_KIND = frozenset({"ident", "int", "double", "string"})
_CAST_FOLLOWERS_TEXT = frozenset({"this", "new", "true", "false", "(", "!"})


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


class Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token helpers ------------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        i = min(self.pos + k, len(self.tokens) - 1)
        return self.tokens[i]

    @property
    def prev(self) -> Token:
        return self.tokens[self.pos - 1]

    def advance(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok.text == text and tok.kind in ("kw", "op", "punct")

    def at_kind(self, kind: str, k: int = 0) -> bool:
        return self.peek(k).kind == kind

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.span.start_line, tok.span.start_col)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r} but found {_describe(self.peek())}")
        return self.advance()

    def expect_ident(self) -> Token:
        if not self.at_kind("ident"):
            raise self.error(f"expected identifier but found {_describe(self.peek())}")
        return self.advance()

    def span_from(self, start: Token) -> n.SourceSpan:
        return start.span.cover(self.prev.span)

    # -- declarations -------------------------------------------------------

    def parse_unit(self) -> n.SourceUnit:
        start = self.peek()
        self.expect("package")
        package = self.parse_dotted()
        self.expect(";")
        imports = []
        while self.at("import"):
            self.advance()
            tok = self.peek()
            name = self.parse_dotted()
            if name in imports:
                raise self.error(f"duplicate import {name}", tok)
            imports.append(name)
            self.expect(";")
        classes = []
        while not self.at_kind("eof"):
            classes.append(self.parse_class())
        if not classes:
            raise self.error("expected 'class' but found end of input")
        return n.SourceUnit(package, tuple(imports), tuple(classes), self.span_from(start))

    def parse_dotted(self) -> str:
        parts = [self.expect_ident().text]
        while self.at(".") and self.at_kind("ident", 1):
            self.advance()
            parts.append(self.advance().text)
        return ".".join(parts)

    def parse_class(self) -> n.ClassDecl:
        start = self.expect("class")
        name = self.expect_ident().text
        self.expect("{")
        members = []
        while not self.at("}"):
            if self.at_kind("eof"):
                raise self.error("expected '}' but found end of input")
            tok = self.peek()
            member = self.parse_member()
            if any(m.name == member.name for m in members):
                raise self.error(f"duplicate member {member.name!r} in class {name}", tok)
            members.append(member)
        self.expect("}")
        return n.ClassDecl(name, tuple(members), self.span_from(start))

    def parse_member(self):
        start = self.peek()
        if self.at("void"):
            self.advance()
            rtype = None
        else:
            rtype = self.parse_type()
        name = self.expect_ident().text
        if self.at("("):
            return self.parse_method_rest(start, rtype, name)
        if rtype is None:
            raise self.error(f"expected '(' but found {_describe(self.peek())}")
        init = None
        if self.at("="):
            self.advance()
            init = self.parse_expr()
        self.expect(";")
        return n.FieldDecl(rtype, name, init, self.span_from(start))

    def parse_method_rest(self, start, rtype, name) -> n.MethodDecl:
        self.expect("(")
        params = []
        tok = self.peek()
        if tok.kind == "ident" or (tok.kind == "kw" and tok.text in _PRIMITIVE_KW):
            while True:
                pstart = self.peek()
                ptype = self.parse_type()
                ptok = self.expect_ident()
                pname = ptok.text
                if any(q.name == pname for q in params):
                    raise self.error(f"duplicate parameter {pname!r}", ptok)
                params.append(n.Param(ptype, pname, self.span_from(pstart)))
                if not self.at(","):
                    break
                self.advance()
        self.expect(")")
        body = self.parse_block()
        return n.MethodDecl(rtype, name, tuple(params), body, self.span_from(start))

    def parse_type(self) -> n.TypeRef:
        start = self.peek()
        if start.kind == "kw" and start.text in _PRIMITIVE_KW:
            self.advance()
            return n.TypeRef("primitive", start.text, None, start.span)
        if start.kind != "ident":
            raise self.error(f"expected type but found {_describe(start)}")
        name = self.parse_dotted()
        return n.TypeRef("named", name, None, self.span_from(start))

    # -- statements ---------------------------------------------------------

    def parse_block(self) -> n.Block:
        start = self.expect("{")
        stmts = []
        while not self.at("}"):
            if self.at_kind("eof"):
                raise self.error("expected '}' but found end of input")
            stmts.append(self.parse_stmt())
        self.expect("}")
        return n.Block(tuple(stmts), self.span_from(start))

    def _starts_var_decl(self) -> bool:
        tok = self.peek()
        if tok.kind == "kw" and tok.text in _PRIMITIVE_KW:
            # "String.valueOf(x);" is a statement expression, not a declaration
            return not self.at(".", 1)
        if tok.kind != "ident":
            return False
        k = 1
        while self.at(".", k) and self.at_kind("ident", k + 1):
            k += 2
        return self.at_kind("ident", k)

    def _starts_assign(self) -> bool:
        if self.at_kind("ident") and self.at("=", 1):
            return True
        return self.at("this") and self.at(".", 1) and self.at_kind("ident", 2) and self.at("=", 3)

    def parse_stmt(self):
        tok = self.peek()
        if self.at("{"):
            return self.parse_block()
        if self.at("if"):
            return self.parse_if()
        if self.at("while"):
            self.advance()
            self.expect("(")
            cond = self.parse_expr()
            self.expect(")")
            body = self.parse_block()
            return n.While(cond, body, self.span_from(tok))
        if self.at("for"):
            return self.parse_for()
        if self.at("return"):
            self.advance()
            value = None if self.at(";") else self.parse_expr()
            self.expect(";")
            return n.Return(value, self.span_from(tok))
        if self.at("break"):
            self.advance()
            self.expect(";")
            return n.Break(self.span_from(tok))
        if self.at("continue"):
            self.advance()
            self.expect(";")
            return n.Continue(self.span_from(tok))
        if self._starts_var_decl():
            return self.parse_var_decl()
        if self._starts_assign():
            stmt = self.parse_assign_no_semi()
            self.expect(";")
            return n.Assign(stmt.target, stmt.value, self.span_from(tok))
        expr = self.parse_expr()
        self.expect(";")
        return n.ExprStmt(expr, self.span_from(tok))

    def parse_var_decl(self) -> n.VarDecl:
        start = self.peek()
        vtype = self.parse_type()
        name = self.expect_ident().text
        init = None
        if self.at("="):
            self.advance()
            init = self.parse_expr()
        self.expect(";")
        return n.VarDecl(vtype, name, init, self.span_from(start))

    def parse_assign_no_semi(self) -> n.Assign:
        start = self.peek()
        if self.at("this"):
            self.advance()
            self.expect(".")
            target = n.FieldRef(self.expect_ident().text, self.span_from(start))
        else:
            ident = self.expect_ident()
            target = n.VarRef(ident.text, ident.span)
        self.expect("=")
        value = self.parse_expr()
        return n.Assign(target, value, self.span_from(start))

    def parse_if(self) -> n.If:
        start = self.expect("if")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        then = self.parse_block()
        orelse = None
        if self.at("else"):
            self.advance()
            orelse = self.parse_block()
        return n.If(cond, then, orelse, self.span_from(start))

    def parse_for(self) -> n.For:
        start = self.expect("for")
        self.expect("(")
        if self.at(";"):
            self.advance()
            init = None
        elif self._starts_var_decl():
            init = self.parse_var_decl()
        else:
            istart = self.peek()
            a = self.parse_assign_no_semi()
            self.expect(";")
            init = n.Assign(a.target, a.value, self.span_from(istart))
        cond = None if self.at(";") else self.parse_expr()
        self.expect(";")
        update = None if self.at(")") else self.parse_assign_no_semi()
        self.expect(")")
        body = self.parse_block()
        return n.For(init, cond, update, body, self.span_from(start))

    # -- expressions --------------------------------------------------------

    def parse_expr(self):
        return self.parse_binary(0)

    def parse_binary(self, level: int):
        if level == len(_BINARY_LEVELS):
            return self.parse_unary()
        start = self.peek()
        left = self.parse_binary(level + 1)
        ops = _BINARY_LEVELS[level]
        while self.peek().kind == "op" and self.peek().text in ops:
            op = self.advance().text
            right = self.parse_binary(level + 1)
            left = n.Binary(op, left, right, self.span_from(start))
        return left

    def _cast_ahead(self) -> bool:
        """At "(": decide whether this opens a cast."""
        first = self.peek(1)
        if first.kind == "kw" and first.text in _PRIMITIVE_KW:
            return self.at(")", 2)
        if first.kind != "ident":
            return False
        k = 2
        while self.at(".", k) and self.at_kind("ident", k + 1):
            k += 2
        if not self.at(")", k):
            return False
        after = self.peek(k + 1)
        return after.kind in _CAST_FOLLOWERS_KIND or (
            after.kind in ("kw", "punct", "op") and after.text in _CAST_FOLLOWERS_TEXT)

    def parse_unary(self):
        start = self.peek()
        if start.kind == "op" and start.text in ("!", "-"):
            self.advance()
            operand = self.parse_unary()
            return n.Unary(start.text, operand, self.span_from(start))
        if self.at("(") and self._cast_ahead():
            self.advance()
            ctype = self.parse_type()
            self.expect(")")
            operand = self.parse_unary()
            return n.Cast(ctype, operand, self.span_from(start))
        return self.parse_postfix()

    def parse_postfix(self):
        start = self.peek()
        expr = self.parse_primary()
        while self.at(".") and self.at_kind("ident", 1) and self.at("(", 2):
            self.advance()
            name = self.advance().text
            args = self.parse_args()
            expr = n.Call(expr, name, args, self.span_from(start))
        if self.at(".") and not isinstance(expr, n.TypeRef):
            raise self.error("expected method call after '.'")
        if isinstance(expr, n.TypeRef):
            raise self.error(f"type name {expr.name!r} used as a value", start)
        return expr

    def parse_args(self):
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.parse_expr())
            while self.at(","):
                self.advance()
                args.append(self.parse_expr())
        self.expect(")")
        return tuple(args)

    def parse_primary(self):
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return n.IntLit(int(tok.text), tok.span)
        if tok.kind == "double":
            self.advance()
            return n.DoubleLit(float(tok.text), tok.span)
        if tok.kind == "string":
            self.advance()
            return n.StringLit(decode_string(tok.text), tok.span)
        if self.at("true") or self.at("false"):
            self.advance()
            return n.BoolLit(tok.text == "true", tok.span)
        if self.at("new"):
            self.advance()
            ntype = self.parse_type()
            args = self.parse_args()
            return n.New(ntype, args, self.span_from(tok))
        if self.at("("):
            self.advance()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if self.at("this"):
            self.advance()
            self.expect(".")
            name = self.expect_ident().text
            if self.at("("):
                return n.Call(None, name, self.parse_args(), self.span_from(tok))
            return n.FieldRef(name, self.span_from(tok))
        if tok.kind == "kw" and tok.text == "String" and self.at(".", 1):
            self.advance()
            return n.TypeRef("primitive", "String", None, tok.span)
        if tok.kind == "ident":
            if self.at("(", 1):
                self.advance()
                return n.Call(None, tok.text, self.parse_args(), self.span_from(tok))
            parts = [self.advance().text]
            # extend a dotted type name while the next segment is not a call
            while self.at(".") and self.at_kind("ident", 1) and not self.at("(", 2):
                self.advance()
                parts.append(self.advance().text)
            receiver_follows = self.at(".") and self.at_kind("ident", 1) and self.at("(", 2)
            if len(parts) > 1 or (receiver_follows and parts[0][0].isupper()):
                if not receiver_follows:
                    raise self.error(f"dotted name {'.'.join(parts)!r} is not an expression", tok)
                return n.TypeRef("named", ".".join(parts), None, self.span_from(tok))
            return n.VarRef(parts[0], tok.span)
        raise self.error(f"expected expression but found {_describe(tok)}")


def parse(text: str) -> n.SourceUnit:
    """Parse JX source text into a SourceUnit (type names unresolved)."""
    return Parser(tokenize(text)).parse_unit()
