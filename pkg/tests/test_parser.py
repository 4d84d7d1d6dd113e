import random

import pytest

import goldens as g
from fcn import signature as sg
from fcn.cells import infer_boundary
from fcn.errors import BoundaryMismatch, ParseError, UnknownName
from fcn.gen import gen_cell
from fcn.parser import (
    parse_document,
    parse_script,
    parse_value,
    show_cell,
    show_proto,
)
from fcn.protocol import (
    ChooseP,
    DONE,
    OfferP,
    RecvP,
    SendP,
    StarPP,
    StarXP,
    seq_proto,
)
from fcn.trace import ContinueMove, PickMove, RecvMove, StopMove

HEADER = """
object a;
object b;
carrier a = { a0, a1 };
carrier b = { b0 };
mor f : a -> b;
map f = { a0 -> b0; a1 -> b0; };
"""


def doc(text):
    return parse_document(HEADER + text)


def test_empty_document():
    d = parse_document("")
    assert d.cell_order == []


def test_values():
    assert parse_value("()") == sg.UNITV
    assert parse_value("x") == sg.AtomV("x")
    assert parse_value("(x, y)") == sg.TupleV((sg.AtomV("x"), sg.AtomV("y")))
    assert parse_value("inl inr ()") == sg.InlV(sg.InrV(sg.UNITV))
    assert parse_value("[x, ()]") == sg.ListV((sg.AtomV("x"), sg.UNITV))
    assert parse_value("((x, y), z)") == sg.TupleV(
        (sg.AtomV("x"), sg.AtomV("y"), sg.AtomV("z"))
    )


def test_protocol_syntax():
    d = doc("protocol p = send a * recv b x I + (send a)^x;")
    # precedence: + weakest, then x, then *
    p = d.protocols["p"]
    assert p == OfferP(
        ChooseP(seq_proto(SendP(sg.GenObj("a")), RecvP(sg.GenObj("b"))), DONE),
        StarXP(SendP(sg.GenObj("a"))),
    )


def test_loop_postfix():
    d = doc("protocol p = (send a * recv a)^+;")
    a = sg.GenObj("a")
    assert d.protocols["p"] == StarPP(seq_proto(SendP(a), RecvP(a)))


def test_object_syntax():
    d = doc(
        "mor g : a * b (+) I -> stack (a * b);"
    )
    dom, cod = d.sig.morphisms["g"]
    a, b = sg.GenObj("a"), sg.GenObj("b")
    assert dom == sg.Sum(sg.tensor_obj(a, b), sg.UNIT)
    assert cod == sg.Stack(sg.tensor_obj(a, b))


def test_cell_term_precedence():
    d = doc(
        "cell k : [ I | a * b -> b | send b ] ="
        " [f] / putR b | getL b / [id b] | putR b;"
    )
    # '/' binds tighter than '|'; hchain of three vchains
    from fcn.cells import HComp, VComp

    t = d.cells["k"].term
    assert isinstance(t, HComp) and isinstance(t.a, HComp)
    assert isinstance(t.a.a, VComp) and isinstance(t.a.b, VComp)


def test_declared_boundary_checked():
    with pytest.raises(BoundaryMismatch):
        doc("cell k : [ I | a -> a | I ] = [f];")


def test_unknown_names_have_positions():
    with pytest.raises(UnknownName) as e:
        doc("cell k : [ I | nope -> I | I ] = [f];")
    assert "line" in str(e.value)


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse_document("object ;")
    assert "line 1" in str(e.value)


def test_map_totality_checked():
    with pytest.raises(ParseError):
        parse_document(
            "object a;\ncarrier a = { a0, a1 };\n"
            "mor f : a -> a;\nmap f = { a0 -> a0; };"
        )


def test_map_codomain_checked():
    with pytest.raises(ParseError):
        parse_document(
            "object a;\ncarrier a = { a0 };\n"
            "mor f : a -> a;\nmap f = { a0 -> zzz; };"
        )


def test_duplicate_carrier_atoms_rejected():
    with pytest.raises(ParseError):
        parse_document("object a;\ncarrier a = { x, x };")


def test_list_carrier_is_alias():
    d = parse_document(
        "object a;\ncarrier a = { a0 };\ncarrier s = list of a;\n"
        "mor f : s -> s;"
    )
    dom, _ = d.sig.morphisms["f"]
    assert dom == sg.Stack(sg.GenObj("a"))


def test_cell_reference():
    d = doc(
        "cell k : [ I | a -> I | send b ] = [f] / putR b;\n"
        "cell kk : [ I | a * a -> I | send b * send b ] = tensor(k, k);"
    )
    assert "kk" in d.cells


def test_scripts():
    moves = parse_script("recv (x, y)\npick 0\nstop\ncontinue\n\n# end\n")
    assert moves == [
        RecvMove(sg.TupleV((sg.AtomV("x"), sg.AtomV("y")))),
        PickMove(0),
        StopMove(),
        ContinueMove(),
    ]
    with pytest.raises(ParseError):
        parse_script("pick 2")


def test_macros_expand(bakery):
    d = doc(
        "cell c : [ send a | b -> b | send a ] = cross{send a, b};\n"
        "cell m : [ I | a -> a | (send a * recv a)^x ] ="
        " iterX(putR a / getR a; 1 a; id I);\n"
        "cell w : [ I | I -> I | (send a)^+ ] = sendword{a}[a0, a1];\n"
        "cell d : [ (send b)^x | I -> I | (send b)^x * (send b)^x ] ="
        " deltaX{send b};"
    )
    assert len(d.cell_order) == 4


def test_round_trip_golden(bakery):
    sig, _ = bakery
    prelude = (
        "object dough;\nobject bread;\nobject oven;\nobject coin;\nobject flour;\n"
        "mor bake : dough * oven -> bread * oven;\n"
        "mor knead : flour -> dough;\n"
        "mor swapdough : dough -> dough;\n"
    )
    for cell in [g.kneader, g.baker, g.bakery, g.react, g.choice_h, g.stack_h,
                 g.memory, g.sale, g.sales]:
        b = infer_boundary(cell, sig)
        text = (
            f"{prelude}cell c : [ {show_proto(b.left)} | {b.top} -> "
            f"{b.bottom} | {show_proto(b.right)} ] = {show_cell(cell)};"
        )
        d = parse_document(text)
        assert d.cells["c"].term == cell


def test_round_trip_random(bakery):
    sig, _ = bakery
    prelude = (
        "object dough;\nobject bread;\nobject oven;\nobject coin;\nobject flour;\n"
        "mor bake : dough * oven -> bread * oven;\n"
        "mor knead : flour -> dough;\n"
        "mor swapdough : dough -> dough;\n"
    )
    rng = random.Random(11)
    for _ in range(40):
        cell = gen_cell(rng, sig, size=3)
        b = infer_boundary(cell, sig)
        text = (
            f"{prelude}cell c : [ {show_proto(b.left)} | {b.top} -> "
            f"{b.bottom} | {show_proto(b.right)} ] = {show_cell(cell)};"
        )
        d = parse_document(text)
        assert d.cells["c"].term == cell
