import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emrec import RangeError, build_blocks, count_statements, selection
from emrec.syntax import nodes as n

from conftest import labeled_of
from test_syntax import stmts as random_stmts


def labels(labeled):
    return [str(labeled.label_of(s)) for s in labeled.flat]


def under(stmt):
    """``stmt`` and every statement nested in it, by plain recursion."""
    out = [stmt]
    blocks = [stmt] if isinstance(stmt, n.Block) else [b for b in (
        getattr(stmt, "then", None), getattr(stmt, "orelse", None), getattr(stmt, "body", None)) if b]
    for b in blocks:
        for s in b.stmts:
            out += under(s)
    return out


def test_flat_body_is_one_block():
    lm = labeled_of("int a = 1; int b = 2; f(a, b);")
    assert len(lm.blocks) == 1
    assert labels(lm) == ["S1.1", "S1.2", "S1.3"]


def test_if_children_get_block_two():
    lm = labeled_of("int a = 1; if (a > 0) { f(); g(); h(); a = 2; }")
    assert [len(b) for b in lm.blocks] == [2, 4]
    assert labels(lm) == ["S1.1", "S1.2", "S2.1", "S2.2", "S2.3", "S2.4"]
    assert lm.block(2).parent_stmt is lm.stmt_at(1, 2)
    assert lm.block(1).parent_stmt is None


def test_numbering_is_preorder_then_before_else():
    lm = labeled_of("""
        if (a) { if (b) { f(); } } else { g(); }
        while (c) { h(); }
        { k(); }
    """)
    # then = 2 and else = 3 are numbered when the if is visited, so the
    # nested if's block comes after both; while body = 5, bare block = 6
    assert [len(b) for b in lm.blocks] == [3, 1, 1, 1, 1, 1]
    assert lm.block(3).statements[0] == n.ExprStmt(n.Call(None, "g", ()))
    assert lm.block(4).statements[0] == n.ExprStmt(n.Call(None, "f", ()))
    assert str(lm.label_of(lm.block(4).statements[0])) == "S4.1"
    assert lm.block(6).parent_stmt is lm.stmt_at(1, 3)


def test_for_header_is_not_a_statement():
    lm = labeled_of("for (int i = 0; i < 3; i = i + 1) { f(i); g(i); }")
    assert labels(lm) == ["S1.1", "S2.1", "S2.2"]


def test_classifier_box_closure_of_s2_6(classifier_box):
    _, lm = classifier_box
    sel = selection(lm, 2, 6, 6)
    assert [str(lm.label_of(s)) for s in sel.closure] == ["S2.6"] + [f"S3.{k}" for k in range(1, 8)]


def test_classifier_box_s3_2_to_s3_5(classifier_box):
    _, lm = classifier_box
    sel = selection(lm, 3, 2, 5)
    assert sel.label_range() == "S3.2–S3.5"
    assert count_statements(sel) == 4


def test_whole_body_closure():
    lm = labeled_of("int a = 1; if (a > 0) { f(); } g(a);")
    sel = selection(lm, 1, 1, 3)
    assert list(sel.closure) == lm.flat


def test_count_if_with_four_children():
    lm = labeled_of("if (x) { a(); b(); c(); d(); }")
    assert count_statements(selection(lm, 1, 1, 1)) == 5


def test_selection_span_covers_statements():
    lm = labeled_of("f(); g(); h();")
    sel = selection(lm, 1, 2, 3)
    assert sel.span.start_offset == lm.stmt_at(1, 2).span.start_offset
    assert sel.span.end_offset == lm.stmt_at(1, 3).span.end_offset


@pytest.mark.parametrize("key", [(1, 0, 1), (1, 2, 1), (1, 1, 4), (2, 1, 1)])
def test_selection_out_of_range(key):
    lm = labeled_of("f(); g(); h();")
    with pytest.raises(RangeError):
        selection(lm, *key)


def test_annotate_prefixes():
    lm = labeled_of("f(); if (x) { g(); }")
    lines = lm.annotate().splitlines()
    assert lines[1].startswith("S1.1") and lines[2].startswith("S1.2")
    assert lines[3].startswith("S2.1")
    assert not lines[0].strip().startswith("S")


@settings(max_examples=150, deadline=None)
@given(st.lists(random_stmts, min_size=1, max_size=5))
def test_structure_invariants(body):
    method = n.MethodDecl(None, "m", (), n.Block(tuple(body)))
    lm = build_blocks(method)
    # bijection between statements and valid labels
    seen = {lm.label_of(s) for s in lm.flat}
    assert len(seen) == len(lm.flat)
    valid = {(b.block_id, y) for b in lm.blocks for y in range(1, len(b) + 1)}
    assert {(lbl.block, lbl.index) for lbl in seen} == valid
    assert [b.block_id for b in lm.blocks] == list(range(1, len(lm.blocks) + 1))
    for b in lm.blocks:
        size = len(b)
        for i in range(1, size + 1):
            for j in range(i, size + 1):
                sel = selection(lm, b.block_id, i, j)
                expect = [s for stmt in b.statements[i - 1:j] for s in under(stmt)]
                assert [id(s) for s in sel.closure] == [id(s) for s in expect]
                if j < size:
                    wider = selection(lm, b.block_id, i, j + 1)
                    assert {id(s) for s in sel.closure} <= {id(s) for s in wider.closure}
                    after = selection(lm, b.block_id, j + 1, size)
                    assert not {id(s) for s in sel.closure} & {id(s) for s in after.closure}
