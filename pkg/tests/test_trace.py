import pytest

import goldens as g
from fcn import signature as sg
from fcn.cells import GetL, GetR, HComp, Promote, PutR, Times, VComp
from fcn.errors import IllTypedValue, ScriptOverrun, ScriptUnderrun, WrongMove
from fcn.trace import ContinueMove, PickMove, RecvMove, StopMove, run_trace

A = g.DOUGH
RYE = sg.AtomV("ryedough")
WHEAT = sg.AtomV("wheatdough")


def test_send_trace(interp):
    assert run_trace(interp, PutR(A), RYE, []) == ["sent ryedough", "result ()"]


def test_recv_trace(interp):
    events = run_trace(interp, GetR(A), sg.UNITV, [RecvMove(WHEAT)])
    assert events == ["result wheatdough"]


def test_memory_golden(interp):
    events = run_trace(
        interp,
        g.memory,
        RYE,
        [
            ContinueMove(),
            RecvMove(WHEAT),
            ContinueMove(),
            RecvMove(RYE),
            StopMove(),
        ],
    )
    assert events == ["sent ryedough", "sent wheatdough", "result ryedough"]


def test_memory_stop_immediately(interp):
    assert run_trace(interp, g.memory, RYE, [StopMove()]) == ["result ryedough"]


def test_pick_trace(interp):
    plain = VComp(PutR(A), GetR(A))
    swapped = VComp(PutR(A), VComp(GetR(A), Promote(g.SWAP_DOUGH)))
    t = Times(plain, swapped)
    events = run_trace(interp, t, RYE, [PickMove(0), RecvMove(WHEAT)])
    assert events == ["sent ryedough", "result wheatdough"]
    events = run_trace(interp, t, RYE, [PickMove(1), RecvMove(WHEAT)])
    assert events == ["sent ryedough", "result ryedough"]


def test_open_left_is_rejected(interp):
    with pytest.raises(IllTypedValue):
        run_trace(interp, GetL(A), sg.UNITV, [])


def test_script_underrun(interp):
    with pytest.raises(ScriptUnderrun):
        run_trace(interp, GetR(A), sg.UNITV, [])


def test_script_overrun(interp):
    with pytest.raises(ScriptOverrun):
        run_trace(interp, PutR(A), RYE, [RecvMove(RYE)])


def test_wrong_move(interp):
    with pytest.raises(WrongMove):
        run_trace(interp, GetR(A), sg.UNITV, [PickMove(0)])
    with pytest.raises(WrongMove):
        run_trace(interp, g.memory, RYE, [RecvMove(RYE)])


def test_wrong_recv_value(interp):
    with pytest.raises(WrongMove):
        run_trace(interp, GetR(A), sg.UNITV, [RecvMove(sg.AtomV("hot"))])


def test_mealy_word_trace():
    table = {
        ("i0", "s0"): ("s1", "o1"),
        ("i1", "s0"): ("s0", "o0"),
        ("i0", "s1"): ("s0", "o0"),
        ("i1", "s1"): ("s1", "o1"),
    }
    sig, val, (a, s, b) = g.mealy_signature(2, 2, 2, table)
    from fcn.semantics import Interp

    interp = Interp(sig, val)
    cell = g.mealy_driver(["i0", "i1", "i0"], sig, a, s, b)
    events = run_trace(interp, cell, sg.AtomV("s0"), [])
    assert events == [
        "more",
        "sent o1",
        "more",
        "sent o1",
        "more",
        "sent o0",
        "halted",
        "result s0",
    ]


def test_offer_events(interp):
    # a committed injection shows up as an offered event on the right
    from fcn.protocol import SendP

    c = HComp(
        VComp(g.Promote(sg.ConstMor(g.BREAD, sg.AtomV("ryeloaf"))), PutR(g.BREAD)),
        g.Inj0(SendP(g.BREAD), SendP(A)),
    )
    events = run_trace(interp, c, sg.UNITV, [])
    assert events == ["offered 0", "sent ryeloaf", "result ()"]
