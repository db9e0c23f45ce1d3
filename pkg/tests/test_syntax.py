import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emrec.syntax import (LexError, ParseError, ResolveError, load, parse, pretty_print,
                          resolve_types, tokenize)
from emrec.syntax import nodes as n

from conftest import fixture_units


def kinds(text):
    return [repr(t) for t in tokenize(text)][:-1]  # drop eof


# --- tokenize ------------------------------------------------------------------

def test_tokenize_declaration():
    assert kinds("int x = 1;") == ["kw:int", "ident:x", "op:=", "int:1", "punct:;"]


def test_tokenize_call():
    assert kinds("a.b()") == ["ident:a", "punct:.", "ident:b", "punct:(", "punct:)"]


def test_tokenize_illegal_character():
    with pytest.raises(LexError) as err:
        tokenize("int @x;")
    assert (err.value.line, err.value.column) == (1, 5)


@pytest.mark.parametrize("text", ['String s = "abc', "int x; /* never closed"])
def test_tokenize_unterminated(text):
    with pytest.raises(LexError):
        tokenize(text)


def test_tokenize_skips_comments():
    assert kinds("x // trailing\n/* block\n */ y") == ["ident:x", "ident:y"]


def test_token_spans_are_byte_offsets():
    toks = tokenize('String s = "é"; int x;')
    x = [t for t in toks if t.text == "x"][0]
    # the accented character takes two bytes in UTF-8
    assert x.span.start_offset == len('String s = "é"; int '.encode("utf-8"))


# --- parse ---------------------------------------------------------------------

def test_parse_minimal_unit():
    unit = parse("package p; class C { }")
    assert unit.package_name == "p"
    assert unit.imports == ()
    assert len(unit.classes) == 1 and unit.classes[0].members == ()


def test_parse_if_owns_one_block():
    unit = parse("package p; class C { void m() { int a = 1; if (a > 0) { f(); g(); h(); a = 2; } } }")
    body = unit.classes[0].method("m").body
    stmt = body.stmts[1]
    assert isinstance(stmt, n.If) and stmt.orelse is None
    assert len(stmt.then.stmts) == 4


def test_parse_missing_close_paren():
    with pytest.raises(ParseError, match=r"expected '\)'"):
        parse("package p; class C { int f( { }")


@pytest.mark.parametrize("text", [
    "package p; import a.X; import a.X; class C { }",
    "package p; class C { int f; void f() { } }",
    "package p; class C { void m(int a, int a) { } }",
])
def test_parse_duplicates(text):
    with pytest.raises(ParseError, match="duplicate"):
        parse(text)


def test_parse_static_call_and_cast():
    unit = parse("package p; class C { void m() { double d = (double) Math.abs(x); } }")
    init = unit.classes[0].method("m").body.stmts[0].init
    assert isinstance(init, n.Cast) and init.type.name == "double"
    call = init.operand
    assert isinstance(call.receiver, n.TypeRef) and call.receiver.name == "Math"


def test_parse_precedence():
    e = parse("package p; class C { int f = 1 + 2 * 3 - 4; }").classes[0].fields[0].init
    assert isinstance(e, n.Binary) and e.op == "-"
    assert e.left.op == "+" and e.left.right.op == "*"


def test_parse_for_header():
    unit = parse("package p; class C { void m() { for (int i = 0; i < 3; i = i + 1) { f(i); } } }")
    loop = unit.classes[0].method("m").body.stmts[0]
    assert isinstance(loop, n.For) and isinstance(loop.init, n.VarDecl)
    assert loop.update.target == n.VarRef("i")


# --- resolve -------------------------------------------------------------------

def _decl_type(unit):
    return unit.classes[0].method("m").body.stmts[0].type


def test_resolve_via_import():
    unit = load("package p; import org.app.ui.FigClass; class C { void m() { FigClass f = make(); } }")
    assert _decl_type(unit).resolved == "org.app.ui.FigClass"


def test_resolve_same_unit_class():
    unit = load("package p; class C { void m() { D d = new D(); } } class D { }")
    assert _decl_type(unit).resolved == "p.D"


def test_resolve_unknown_defaults_to_package():
    unit = load("package a.b; class C { void m() { Thing t = new Thing(); } }")
    assert _decl_type(unit).resolved == "a.b.Thing"


def test_resolve_dotted_name_is_itself():
    unit = load("package p; class C { void m() { q.r.T t = new q.r.T(); } }")
    assert _decl_type(unit).resolved == "q.r.T"


def test_resolve_ambiguous_import():
    with pytest.raises(ResolveError):
        load("package p; import a.X; import b.X; class C { void m() { X x = new X(); } }")


def test_resolution_totality():
    for _, unit in fixture_units():
        for node in n.walk(unit):
            if isinstance(node, n.TypeRef) and not node.is_primitive:
                assert node.resolved


# --- pretty print --------------------------------------------------------------

def test_print_empty_class():
    assert pretty_print(parse("package p; class C { }")) == "package p;\nclass C {\n}\n"


def test_print_nested_if_else():
    text = "package p; class C { void m() { if (a) { if (b) { f(); } else { g(); } } } }"
    out = pretty_print(parse(text))
    assert "            f();\n" in out
    assert "        } else {\n" in out
    assert parse(out) == parse(text)


def test_fixture_round_trip():
    for path, _ in fixture_units():
        unit = parse(path.read_text(encoding="utf-8"))
        assert parse(pretty_print(unit)) == unit, path.name


def test_span_nesting():
    for _, unit in fixture_units():
        stack = [unit]
        while stack:
            node = stack.pop()
            span = getattr(node, "span", n.NO_SPAN)
            for child in n.children(node):
                cspan = getattr(child, "span", n.NO_SPAN)
                if span is not n.NO_SPAN and cspan is not n.NO_SPAN:
                    assert span.contains(cspan), (node, child)
                stack.append(child)


# random ASTs: parse(pretty_print(ast)) must give the same tree back

_KEYWORDS = {"if", "else", "while", "for", "return", "break", "continue", "new", "this",
             "true", "false", "class", "package", "import", "void", "int", "boolean",
             "double", "String"}
names = st.from_regex(r"[a-z][a-z0-9]{0,4}", fullmatch=True).filter(lambda s: s not in _KEYWORDS)
type_names = st.sampled_from(["Foo", "Bar", "a.b.Baz", "q.Thing"])
types = st.one_of(st.sampled_from(["int", "boolean", "double", "String"]), type_names).map(n.TypeRef.of)

leaves = st.one_of(
    st.integers(0, 10 ** 6).map(n.IntLit),
    st.booleans().map(n.BoolLit),
    st.sampled_from([0.5, 1.25, 3.0, 100.75]).map(n.DoubleLit),
    st.text(st.sampled_from("ab \"\\\n\t"), max_size=5).map(n.StringLit),
    names.map(n.VarRef),
    names.map(n.FieldRef),
)


def _compound(sub):
    args = st.lists(sub, max_size=3).map(tuple)
    ops = st.sampled_from(["||", "&&", "==", "!=", "<", "<=", ">", ">=", "+", "-", "*", "/", "%"])
    return st.one_of(
        st.builds(n.Binary, ops, sub, sub),
        st.builds(n.Unary, st.sampled_from(["!", "-"]), sub),
        st.builds(n.Call, st.one_of(st.none(), sub, type_names.map(n.TypeRef.of)), names, args),
        st.builds(n.New, type_names.map(n.TypeRef.of), args),
        st.builds(n.Cast, types, sub),
    )


exprs = st.recursive(leaves, _compound, max_leaves=8)
lvalues = st.one_of(names.map(n.VarRef), names.map(n.FieldRef))
assigns = st.builds(n.Assign, lvalues, exprs)


def _stmts(sub):
    block = st.lists(sub, max_size=3).map(lambda s: n.Block(tuple(s)))
    return st.one_of(
        st.builds(n.If, exprs, block, st.one_of(st.none(), block)),
        st.builds(n.While, exprs, block),
        st.builds(n.For, st.one_of(st.none(), st.builds(n.VarDecl, types, names, exprs), assigns),
                  st.one_of(st.none(), exprs), st.one_of(st.none(), assigns), block),
        block,
    )


simple_stmts = st.one_of(
    st.builds(n.VarDecl, types, names, st.one_of(st.none(), exprs)),
    st.builds(n.ExprStmt, exprs),
    assigns,
    st.builds(n.Return, st.one_of(st.none(), exprs)),
    st.builds(n.Break),
    st.builds(n.Continue),
)
stmts = st.recursive(simple_stmts, _stmts, max_leaves=10)


@settings(max_examples=300, deadline=None)
@given(st.lists(stmts, max_size=5))
def test_random_ast_round_trip(body):
    method = n.MethodDecl(None, "m", (n.Param(n.TypeRef.of("int"), "x"),), n.Block(tuple(body)))
    unit = n.SourceUnit("p.q", ("a.b.Baz",), (n.ClassDecl("C", (method,)),))
    assert parse(pretty_print(unit)) == unit
