from hypothesis import given, strategies as st

from fcn import signature as sg
from fcn.protocol import (
    ChooseP,
    DONE,
    OfferP,
    RecvP,
    SendP,
    SeqP,
    StarPP,
    StarXP,
    has_loop,
    normalize_proto,
    proto_equal,
    proto_factors,
    seq_proto,
    star_p_unfold,
    star_x_unfold,
)

A = sg.GenObj("a")
B = sg.GenObj("b")

SEND_A = SendP(A)
RECV_B = RecvP(B)


protos = st.recursive(
    st.sampled_from([SEND_A, RECV_B, DONE]),
    lambda kids: st.one_of(
        st.tuples(kids, kids).map(lambda p: SeqP(p)),
        st.tuples(kids, kids).map(lambda p: ChooseP(*p)),
        st.tuples(kids, kids).map(lambda p: OfferP(*p)),
        kids.map(StarXP),
        kids.map(StarPP),
    ),
    max_leaves=6,
)


@given(protos)
def test_normalize_idempotent(p):
    n = normalize_proto(p)
    assert normalize_proto(n) == n


@given(protos)
def test_factors_flat_and_done_free(p):
    for f in proto_factors(p):
        assert not isinstance(f, SeqP)
        assert f != DONE


@given(protos)
def test_proto_equal_reflexive(p):
    assert proto_equal(p, p)


def test_done_is_empty_seq():
    assert normalize_proto(SeqP(())) == DONE
    assert seq_proto(DONE, SEND_A, DONE) == SEND_A
    assert seq_proto() == DONE


def test_seq_flattens():
    p = SeqP((SeqP((SEND_A, RECV_B)), SEND_A))
    assert proto_factors(p) == (SEND_A, RECV_B, SEND_A)


def test_star_unfold_equal():
    star = StarXP(SEND_A)
    assert proto_equal(star, star_x_unfold(star))
    plus = StarPP(SEND_A)
    assert proto_equal(plus, star_p_unfold(plus))
    assert not proto_equal(star, plus)
    assert not proto_equal(star, StarXP(RecvP(A)))


def test_unroll_folds_back():
    star = StarXP(SEND_A)
    assert normalize_proto(ChooseP(DONE, seq_proto(SEND_A, star))) == star
    plus = StarPP(seq_proto(SEND_A, RECV_B))
    assert (
        normalize_proto(OfferP(DONE, seq_proto(SEND_A, RECV_B, plus))) == plus
    )
    # a genuinely different left arm must not fold
    kept = normalize_proto(ChooseP(RECV_B, seq_proto(SEND_A, star)))
    assert isinstance(kept, ChooseP)


def test_nested_star_unfold_equal():
    inner = StarXP(SEND_A)
    outer = StarXP(inner)
    assert proto_equal(outer, star_x_unfold(outer))
    assert proto_equal(
        star_x_unfold(outer), ChooseP(DONE, seq_proto(inner, outer))
    )


def test_has_loop():
    assert not has_loop(seq_proto(SEND_A, RECV_B))
    assert has_loop(StarXP(SEND_A))
    assert has_loop(ChooseP(DONE, StarPP(SEND_A)))


def test_proto_equal_distinguishes_choice_sides():
    assert not proto_equal(ChooseP(SEND_A, RECV_B), ChooseP(RECV_B, SEND_A))
    assert not proto_equal(OfferP(SEND_A, RECV_B), ChooseP(SEND_A, RECV_B))
