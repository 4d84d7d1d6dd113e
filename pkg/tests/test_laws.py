import pytest

import goldens as g
from fcn import signature as sg
from fcn.cells import GetR, HComp, IdV, Promote, PutR, VComp
from fcn.errors import BoundaryMismatch
from fcn.laws import EqConfig, LawResult, cells_equal

A = g.DOUGH


def test_equal_cells(bakery):
    sig, val = bakery
    assert cells_equal(HComp(PutR(A), g.GetL(A)), IdV(A), sig, val)


def test_unequal_cells(bakery):
    sig, val = bakery
    assert not cells_equal(Promote(g.SWAP_DOUGH), IdV(A), sig, val)


def test_boundary_mismatch_raises(bakery):
    sig, val = bakery
    with pytest.raises(BoundaryMismatch):
        cells_equal(IdV(A), IdV(g.BREAD), sig, val)


def test_loop_cells_compared_by_sampling(bakery):
    sig, val = bakery
    swap2 = VComp(
        PutR(A), VComp(GetR(A), Promote(sg.Compose(g.SWAP_DOUGH, g.SWAP_DOUGH)))
    )
    from fcn.cells import IdH, IterX
    from fcn.protocol import DONE

    like_memory = IterX(swap2, IdV(A), IdH(DONE))
    assert cells_equal(g.memory, like_memory, sig, val, depth=3, samples=16)
    swapped = IterX(
        VComp(PutR(A), VComp(GetR(A), Promote(g.SWAP_DOUGH))), IdV(A), IdH(DONE)
    )
    assert not cells_equal(g.memory, swapped, sig, val, depth=3, samples=16)


def test_sampling_deterministic(bakery):
    sig, val = bakery
    # same seed, same verdict path; different seed still same verdict
    for seed in (1, 1, 2):
        assert cells_equal(g.memory, g.memory, sig, val, depth=3, samples=8, seed=seed)


def test_law_result_formatting():
    row = LawResult("some-law", "pass", 7, None)
    text = str(row)
    assert "some-law" in text and "pass" in text and "7" in text


def test_eqconfig_defaults():
    cfg = EqConfig()
    assert cfg.depth == 4 and cfg.samples == 64 and cfg.seed == 0xFCC
