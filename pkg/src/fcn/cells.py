"""Cell terms and boundary typing.

A cell is a square-shaped interaction term with four boundaries: a left
protocol, a top object (inputs), a bottom object (outputs), and a right
protocol.  Reading top to bottom, the cell consumes its top inputs, performs
the interactions described by its side protocols, and yields its bottom
outputs.

`infer_boundary` assigns each well-formed term its boundary or raises
`BoundaryMismatch` / `IllTypedSubterm`.  Boundary comparisons go through
loop-unrolling protocol equality, so a loop protocol composes directly with
its one-step unrolling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundaryMismatch, IllTypedSubterm
from .protocol import (
    DONE,
    ChooseP,
    OfferP,
    Protocol,
    RecvP,
    SendP,
    StarPP,
    StarXP,
    normalize_proto,
    proto_equal,
    seq_proto,
)
from .signature import (
    UNIT,
    MorExpr,
    ObjExpr,
    Signature,
    Sum,
    infer_mor_type,
    normalize_obj,
    tensor_obj,
)


@dataclass(frozen=True)
class Boundary:
    left: Protocol
    top: ObjExpr
    bottom: ObjExpr
    right: Protocol

    def __str__(self):
        return f"[{self.left} | {self.top} -> {self.bottom} | {self.right}]"


def boundary(left, top, bottom, right):
    return Boundary(
        normalize_proto(left),
        normalize_obj(top),
        normalize_obj(bottom),
        normalize_proto(right),
    )


def boundaries_equal(b1: Boundary, b2: Boundary) -> bool:
    return (
        b1.top == b2.top
        and b1.bottom == b2.bottom
        and proto_equal(b1.left, b2.left)
        and proto_equal(b1.right, b2.right)
    )


# ---------------------------------------------------------------------------
# Cell terms


@dataclass(frozen=True)
class Cell:
    pass


@dataclass(frozen=True)
class Promote(Cell):
    """A plain morphism as a silent cell: done on both sides."""

    mor: MorExpr

    def __str__(self):
        return f"[{self.mor}]"


@dataclass(frozen=True)
class GetL(Cell):
    """Receive an A from the left participant: left !A, output A."""

    obj: ObjExpr

    def __str__(self):
        return f"getL {self.obj}"


@dataclass(frozen=True)
class PutR(Cell):
    """Send an input A to the right participant: right !A."""

    obj: ObjExpr

    def __str__(self):
        return f"putR {self.obj}"


@dataclass(frozen=True)
class GetR(Cell):
    """Receive an A from the right participant: right ?A, output A."""

    obj: ObjExpr

    def __str__(self):
        return f"getR {self.obj}"


@dataclass(frozen=True)
class PutL(Cell):
    """Send an input A to the left participant: left ?A."""

    obj: ObjExpr

    def __str__(self):
        return f"putL {self.obj}"


@dataclass(frozen=True)
class IdV(Cell):
    """Pass-through column: input A goes straight to output A, no talk."""

    obj: ObjExpr

    def __str__(self):
        return f"1 {self.obj}"


@dataclass(frozen=True)
class IdH(Cell):
    """Pass-through row: protocol U flows left to right, no data."""

    proto: Protocol

    def __str__(self):
        return f"id {self.proto}"


@dataclass(frozen=True)
class HComp(Cell):
    """Side-by-side composite: right boundary of a meets left of b."""

    a: Cell
    b: Cell

    def __str__(self):
        return f"({self.a} | {self.b})"


@dataclass(frozen=True)
class VComp(Cell):
    """Stacked composite: bottom of a meets top of b."""

    a: Cell
    b: Cell

    def __str__(self):
        return f"({self.a} / {self.b})"


@dataclass(frozen=True)
class Pi0(Cell):
    """Pick the left branch of a choice offered on the left boundary."""

    left: Protocol
    right: Protocol

    def __str__(self):
        return f"pi0{{{self.left}, {self.right}}}"


@dataclass(frozen=True)
class Pi1(Cell):
    left: Protocol
    right: Protocol

    def __str__(self):
        return f"pi1{{{self.left}, {self.right}}}"


@dataclass(frozen=True)
class Times(Cell):
    """Offer the right participant a choice between two cells."""

    a: Cell
    b: Cell

    def __str__(self):
        return f"times({self.a}, {self.b})"


@dataclass(frozen=True)
class Inj0(Cell):
    """Commit to the left branch of a choice owned by the left boundary."""

    left: Protocol
    right: Protocol

    def __str__(self):
        return f"in0{{{self.left}, {self.right}}}"


@dataclass(frozen=True)
class Inj1(Cell):
    left: Protocol
    right: Protocol

    def __str__(self):
        return f"in1{{{self.left}, {self.right}}}"


@dataclass(frozen=True)
class Plus(Cell):
    """Let the left participant choose between two cells."""

    a: Cell
    b: Cell

    def __str__(self):
        return f"plus({self.a}, {self.b})"


@dataclass(frozen=True)
class CopairC(Cell):
    """Branch on a sum-typed input, one cell per summand."""

    a: Cell
    b: Cell

    def __str__(self):
        return f"copair({self.a}, {self.b})"


@dataclass(frozen=True)
class IterX(Cell):
    """Repeat alpha as long as the right boundary's loop demands rounds.

    alpha : [V | A -> A | U] is the loop body; f handles the stop branch and
    g peels one layer off the left state.  The result runs on right loop U^x.
    """

    alpha: Cell
    f: Cell
    g: Cell

    def __str__(self):
        return f"iterX({self.alpha}; {self.f}; {self.g})"


@dataclass(frozen=True)
class IterP(Cell):
    """Consume a left loop U^p layer by layer, folding with alpha.

    Dual of IterX: the left participant drives, so the loop is finite and
    the fold always terminates.
    """

    alpha: Cell
    f: Cell
    g: Cell

    def __str__(self):
        return f"iterP({self.alpha}; {self.f}; {self.g})"


# ---------------------------------------------------------------------------
# Boundary inference


def _require_proto(site, expected, found):
    if not proto_equal(expected, found):
        raise BoundaryMismatch(site, expected, found)


def _require_obj(site, expected, found):
    if normalize_obj(expected) != normalize_obj(found):
        raise BoundaryMismatch(site, expected, found)


def infer_boundary(c: Cell, sig: Signature) -> Boundary:
    if isinstance(c, Promote):
        dom, cod = infer_mor_type(c.mor, sig)
        return boundary(DONE, dom, cod, DONE)
    if isinstance(c, GetL):
        return boundary(SendP(c.obj), UNIT, c.obj, DONE)
    if isinstance(c, PutR):
        return boundary(DONE, c.obj, UNIT, SendP(c.obj))
    if isinstance(c, GetR):
        return boundary(DONE, UNIT, c.obj, RecvP(c.obj))
    if isinstance(c, PutL):
        return boundary(RecvP(c.obj), c.obj, UNIT, DONE)
    if isinstance(c, IdV):
        return boundary(DONE, c.obj, c.obj, DONE)
    if isinstance(c, IdH):
        return boundary(c.proto, UNIT, UNIT, c.proto)
    if isinstance(c, HComp):
        ba = infer_boundary(c.a, sig)
        bb = infer_boundary(c.b, sig)
        _require_proto("horizontal seam", ba.right, bb.left)
        return boundary(
            ba.left,
            tensor_obj(ba.top, bb.top),
            tensor_obj(ba.bottom, bb.bottom),
            bb.right,
        )
    if isinstance(c, VComp):
        ba = infer_boundary(c.a, sig)
        bb = infer_boundary(c.b, sig)
        _require_obj("vertical seam", ba.bottom, bb.top)
        return boundary(
            seq_proto(ba.left, bb.left),
            ba.top,
            bb.bottom,
            seq_proto(ba.right, bb.right),
        )
    if isinstance(c, Pi0):
        return boundary(
            ChooseP(normalize_proto(c.left), normalize_proto(c.right)),
            UNIT,
            UNIT,
            c.left,
        )
    if isinstance(c, Pi1):
        return boundary(
            ChooseP(normalize_proto(c.left), normalize_proto(c.right)),
            UNIT,
            UNIT,
            c.right,
        )
    if isinstance(c, Times):
        ba = infer_boundary(c.a, sig)
        bb = infer_boundary(c.b, sig)
        _require_proto("times left sides", ba.left, bb.left)
        _require_obj("times tops", ba.top, bb.top)
        _require_obj("times bottoms", ba.bottom, bb.bottom)
        return boundary(
            ba.left, ba.top, ba.bottom, ChooseP(ba.right, bb.right)
        )
    if isinstance(c, Inj0):
        return boundary(
            c.left,
            UNIT,
            UNIT,
            OfferP(normalize_proto(c.left), normalize_proto(c.right)),
        )
    if isinstance(c, Inj1):
        return boundary(
            c.right,
            UNIT,
            UNIT,
            OfferP(normalize_proto(c.left), normalize_proto(c.right)),
        )
    if isinstance(c, Plus):
        ba = infer_boundary(c.a, sig)
        bb = infer_boundary(c.b, sig)
        _require_proto("plus right sides", ba.right, bb.right)
        _require_obj("plus tops", ba.top, bb.top)
        _require_obj("plus bottoms", ba.bottom, bb.bottom)
        return boundary(OfferP(ba.left, bb.left), ba.top, ba.bottom, ba.right)
    if isinstance(c, CopairC):
        ba = infer_boundary(c.a, sig)
        bb = infer_boundary(c.b, sig)
        _require_proto("copair left sides", ba.left, bb.left)
        _require_proto("copair right sides", ba.right, bb.right)
        _require_obj("copair bottoms", ba.bottom, bb.bottom)
        return boundary(
            ba.left, Sum(ba.top, bb.top), ba.bottom, ba.right
        )
    if isinstance(c, IterX):
        return _infer_iter_x(c, sig)
    if isinstance(c, IterP):
        return _infer_iter_p(c, sig)
    raise IllTypedSubterm(f"unknown cell form {c!r}")


def _infer_iter_x(c, sig):
    ba = infer_boundary(c.alpha, sig)
    bf = infer_boundary(c.f, sig)
    bg = infer_boundary(c.g, sig)
    # alpha : [V | A -> A | U], f : [W | A -> B | K], g : [W | I -> I | V.W]
    _require_obj("loop body top/bottom", ba.top, ba.bottom)
    _require_obj("stop cell top", bf.top, ba.top)
    _require_obj("peel cell top", bg.top, UNIT)
    _require_obj("peel cell bottom", bg.bottom, UNIT)
    _require_proto("peel cell left", bf.left, bg.left)
    _require_proto("peel cell right", seq_proto(ba.left, bg.left), bg.right)
    return boundary(
        bf.left,
        ba.top,
        bf.bottom,
        seq_proto(StarXP(normalize_proto(ba.right)), bf.right),
    )


def _infer_iter_p(c, sig):
    ba = infer_boundary(c.alpha, sig)
    bf = infer_boundary(c.f, sig)
    bg = infer_boundary(c.g, sig)
    # alpha : [U | A -> A | V], f : [K | A -> B | W], g : [V.W | I -> I | W]
    _require_obj("loop body top/bottom", ba.top, ba.bottom)
    _require_obj("stop cell top", bf.top, ba.top)
    _require_obj("collapse cell top", bg.top, UNIT)
    _require_obj("collapse cell bottom", bg.bottom, UNIT)
    _require_proto("collapse cell right", bf.right, bg.right)
    _require_proto(
        "collapse cell left", seq_proto(ba.right, bg.right), bg.left
    )
    return boundary(
        seq_proto(StarPP(normalize_proto(ba.left)), bf.left),
        ba.top,
        bf.bottom,
        bf.right,
    )
