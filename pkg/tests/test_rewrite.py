import random

import goldens as g
from fcn import signature as sg
from fcn.cells import (
    GetL,
    GetR,
    HComp,
    IdH,
    IdV,
    Pi1,
    Promote,
    PutL,
    PutR,
    Times,
    VComp,
    infer_boundary,
)
from fcn.gen import gen_cell
from fcn.laws import cells_equal
from fcn.protocol import SendP
from fcn.rewrite import rewrite, rewrite_step

A = g.DOUGH
B = g.BREAD


def rules_of(report):
    return [rule for rule, _ in report.trace]


def test_snap_send_beside():
    r = rewrite(HComp(PutR(A), GetL(A)))
    assert r.result == IdV(A)
    assert rules_of(r) == ["snap-send-beside"]


def test_snap_recv_beside():
    r = rewrite(HComp(GetR(A), PutL(A)))
    assert r.result == IdV(A)
    assert rules_of(r) == ["snap-recv-beside"]


def test_snap_send_above():
    r = rewrite(VComp(GetL(A), PutR(A)))
    assert r.result == IdH(SendP(A))
    assert rules_of(r) == ["snap-send-above"]


def test_promote_fusion():
    r = rewrite(VComp(Promote(g.KNEAD), Promote(g.SWAP_DOUGH)))
    assert r.result == Promote(sg.Compose(g.KNEAD, g.SWAP_DOUGH))


def test_promote_id_collapses():
    r = rewrite(Promote(sg.Id(A)))
    assert r.result == IdV(A)


def test_choose_beta():
    t = Times(PutR(A), PutR(A))
    r = rewrite(HComp(t, Pi1(SendP(A), SendP(A))))
    assert r.result == PutR(A)


def test_bakery_fuses_to_promote():
    r = rewrite(g.bakery)
    assert r.result == Promote(
        sg.Compose(sg.TensorM(g.KNEAD, sg.Id(g.OVEN)), g.BAKE)
    )
    assert "snap-send-around" in rules_of(r)


def test_identity_elimination():
    r = rewrite(VComp(IdV(A), GetR(A)))
    assert r.result == GetR(A)
    r = rewrite(HComp(IdH(SendP(A)), GetL(A)))
    assert r.result == GetL(A)


def test_loop_stop_arm():
    # an empty queue against the sales loop collapses to its stop handler
    r = rewrite(HComp(g.queue([]), g.sales))
    assert "loop-p-stop" in rules_of(r)
    assert r.result == IdV(sg.tensor_obj(g.S_BREAD, g.S_COIN))


def test_normal_form_is_fixed_point():
    r = rewrite(g.bakery)
    assert rewrite_step(r.result) is None
    assert not r.budget_exhausted


def test_budget_zero_reports_redex():
    r = rewrite(g.bakery, budget=0)
    assert r.result == g.bakery
    assert r.steps == 0
    assert r.budget_exhausted
    done = rewrite(IdV(A), budget=0)
    assert not done.budget_exhausted


def test_random_rewrites_preserve_boundary_and_meaning(bakery):
    sig, val = bakery
    rng = random.Random(7)
    for _ in range(25):
        c = gen_cell(rng, sig, size=3)
        r = rewrite(c)
        before = infer_boundary(c, sig)
        after = infer_boundary(r.result, sig)
        assert before.top == after.top and before.bottom == after.bottom
        assert cells_equal(c, r.result, sig, val, depth=3, samples=12)
