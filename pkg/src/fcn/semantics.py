"""Executable denotational model: cells as stateful transformations.

A protocol denotes a payload functor:

    done        X  =  X
    !A          X  =  A-value paired with X            (PSend)
    ?A          X  =  table from A-values to X         (PTable)
    p1 . p2     X  =  [[p1]]([[p2]] X)                 (outermost first)
    U & W       X  =  pair of a U-value and a W-value  (PPair)
    U + W       X  =  tagged U-value or W-value        (PInl / PInr)
    U^p         X  =  finite tower of U-layers over X  (PStop / PStep)
    U^x         X  =  observable stream of U-layers    (PHandle)

A cell with boundary [U | A -> B | W] denotes, for every payload type X, a
map from ([[U]] X, A-value) to [[W]] (X, B-value): it consumes a U-shaped
environment and a top input, and produces a W-shaped environment whose
leaves carry the surviving payload together with the bottom output.

Loop protocols are identified with their unrollings, so the interpreter
coerces between a handle and a pair, and between a tower and a tagged
value, whenever the consuming position expects the other form.
"""

from __future__ import annotations

import itertools

from dataclasses import dataclass

from .errors import IllTypedValue, InfiniteRecvCarrier, NotEnumerable
from .protocol import (
    ChooseP,
    DoneP,
    OfferP,
    Protocol,
    RecvP,
    SendP,
    SeqP,
    StarPP,
    StarXP,
    normalize_proto,
    proto_factors,
)
from .cells import (
    Cell,
    CopairC,
    GetL,
    GetR,
    HComp,
    IdH,
    IdV,
    Inj0,
    Inj1,
    IterP,
    IterX,
    Pi0,
    Pi1,
    Plus,
    Promote,
    PutL,
    PutR,
    Times,
    VComp,
    infer_boundary,
)
from .signature import (
    UNITV,
    InlV,
    InrV,
    Signature,
    Valuation,
    Value,
    enumerate_values,
    eval_mor,
    obj_factors,
    tensor_value,
    value_factors,
)

# ---------------------------------------------------------------------------
# Protocol environments (pvals)
#
# A done environment is the bare payload, with no wrapper.  Sequential
# protocols nest: the environment for p1 . p2 is a p1-environment whose
# payloads are p2-environments.


@dataclass
class PSend:
    value: Value
    rest: object


@dataclass
class PTable:
    table: dict  # Value -> environment


@dataclass
class PPair:
    left: object
    right: object


@dataclass
class PInl:
    value: object


@dataclass
class PInr:
    value: object


@dataclass
class PStop:
    payload: object


@dataclass
class PStep:
    layer: object  # U-environment with tower leaves


class PHandle:
    """A right-driven loop environment, observed on demand.

    observe() returns (stop, layer): the payload if the right participant
    stops now, and a body-environment with handle leaves if it continues.
    The thunk is forced at most once.
    """

    __slots__ = ("_thunk", "_cached")

    def __init__(self, thunk):
        self._thunk = thunk
        self._cached = None

    def observe(self):
        if self._cached is None:
            self._cached = self._thunk()
        return self._cached


def as_pair(pv):
    """View an environment at a choice node, unrolling a handle if needed."""
    if isinstance(pv, PHandle):
        stop, layer = pv.observe()
        return PPair(stop, layer)
    if isinstance(pv, PPair):
        return pv
    raise IllTypedValue(f"expected a choice environment, got {pv!r}")


def as_handle(pv):
    if isinstance(pv, PHandle):
        return pv
    if isinstance(pv, PPair):
        return PHandle(lambda: (pv.left, pv.right))
    raise IllTypedValue(f"expected a loop environment, got {pv!r}")


def as_tagged(pv):
    """View an environment at an offer node, untagging a tower if needed."""
    if isinstance(pv, PStop):
        return PInl(pv.payload)
    if isinstance(pv, PStep):
        return PInr(pv.layer)
    if isinstance(pv, (PInl, PInr)):
        return pv
    raise IllTypedValue(f"expected an offer environment, got {pv!r}")


def as_tower(pv):
    if isinstance(pv, PInl):
        return PStop(pv.value)
    if isinstance(pv, PInr):
        return PStep(pv.value)
    if isinstance(pv, (PStop, PStep)):
        return pv
    raise IllTypedValue(f"expected a tower environment, got {pv!r}")


# ---------------------------------------------------------------------------
# Mapping over environment leaves


def pval_map(pv, protos, fn):
    """Apply fn to every payload of an environment over the given protocol
    factor list.  Loop layers under a handle are mapped lazily."""
    if not protos:
        return fn(pv)
    head, rest = protos[0], protos[1:]
    if rest:
        return pval_map(pv, (head,), lambda inner: pval_map(inner, rest, fn))
    if isinstance(head, DoneP):
        return fn(pv)
    if isinstance(head, SendP):
        return PSend(pv.value, fn(pv.rest))
    if isinstance(head, RecvP):
        return PTable({k: fn(v) for k, v in pv.table.items()})
    if isinstance(head, SeqP):
        return pval_map(pv, proto_factors(head), fn)
    if isinstance(head, ChooseP):
        pv = as_pair(pv)
        return PPair(
            pval_map(pv.left, (head.left,), fn),
            pval_map(pv.right, (head.right,), fn),
        )
    if isinstance(head, OfferP):
        pv = as_tagged(pv)
        if isinstance(pv, PInl):
            return PInl(pval_map(pv.value, (head.left,), fn))
        return PInr(pval_map(pv.value, (head.right,), fn))
    if isinstance(head, StarPP):
        pv = as_tower(pv)
        if isinstance(pv, PStop):
            return PStop(fn(pv.payload))
        return PStep(
            pval_map(
                pv.layer,
                (head.body,),
                lambda sub: pval_map(sub, (head,), fn),
            )
        )
    if isinstance(head, StarXP):
        h = as_handle(pv)

        def thunk():
            stop, layer = h.observe()
            return (
                fn(stop),
                pval_map(
                    layer,
                    (head.body,),
                    lambda sub: pval_map(sub, (head,), fn),
                ),
            )

        return PHandle(thunk)
    raise TypeError(f"unknown protocol form {head!r}")


# ---------------------------------------------------------------------------
# Cell application


class Interp:
    """Runs cells against a signature and a valuation of its generators."""

    def __init__(self, sig: Signature, val: Valuation):
        self.sig = sig
        self.val = val
        self._bcache = {}

    def boundary(self, c: Cell):
        b = self._bcache.get(c)
        if b is None:
            b = infer_boundary(c, self.sig)
            self._bcache[c] = b
        return b

    def apply(self, c: Cell, pv, a: Value):
        """Run cell c on a left environment pv and a top input a.

        Returns a right-side environment whose payloads are pairs
        (incoming payload, bottom output value).
        """
        if isinstance(c, Promote):
            return (pv, eval_mor(c.mor, a, self.val, self.sig))
        if isinstance(c, GetL):
            if not isinstance(pv, PSend):
                raise IllTypedValue(f"expected a sent value, got {pv!r}")
            return (pv.rest, pv.value)
        if isinstance(c, PutR):
            return PSend(a, (pv, UNITV))
        if isinstance(c, GetR):
            try:
                values = list(enumerate_values(c.obj, self.val))
            except NotEnumerable as e:
                raise InfiniteRecvCarrier(str(e)) from e
            return PTable({v: (pv, v) for v in values})
        if isinstance(c, PutL):
            if not isinstance(pv, PTable):
                raise IllTypedValue(f"expected a receive table, got {pv!r}")
            if a not in pv.table:
                raise IllTypedValue(f"{a} missing from receive table")
            return (pv.table[a], UNITV)
        if isinstance(c, IdV):
            return (pv, a)
        if isinstance(c, IdH):
            return pval_map(pv, (normalize_proto(c.proto),), lambda x: (x, UNITV))
        if isinstance(c, HComp):
            return self._apply_hcomp(c, pv, a)
        if isinstance(c, VComp):
            return self._apply_vcomp(c, pv, a)
        if isinstance(c, Pi0):
            pair = as_pair(pv)
            return pval_map(
                pair.left, (normalize_proto(c.left),), lambda x: (x, UNITV)
            )
        if isinstance(c, Pi1):
            pair = as_pair(pv)
            return pval_map(
                pair.right, (normalize_proto(c.right),), lambda x: (x, UNITV)
            )
        if isinstance(c, Times):
            return PPair(self.apply(c.a, pv, a), self.apply(c.b, pv, a))
        if isinstance(c, Inj0):
            return PInl(
                pval_map(pv, (normalize_proto(c.left),), lambda x: (x, UNITV))
            )
        if isinstance(c, Inj1):
            return PInr(
                pval_map(pv, (normalize_proto(c.right),), lambda x: (x, UNITV))
            )
        if isinstance(c, Plus):
            tagged = as_tagged(pv)
            if isinstance(tagged, PInl):
                return self.apply(c.a, tagged.value, a)
            return self.apply(c.b, tagged.value, a)
        if isinstance(c, CopairC):
            if isinstance(a, InlV):
                return self.apply(c.a, pv, a.value)
            if isinstance(a, InrV):
                return self.apply(c.b, pv, a.value)
            raise IllTypedValue(f"branching cell needs a tagged input, got {a}")
        if isinstance(c, IterX):
            return self._apply_iter_x(c, pv, a)
        if isinstance(c, IterP):
            return self._apply_iter_p(c, pv, a)
        raise TypeError(f"unknown cell form {c!r}")

    def _apply_hcomp(self, c, pv, a):
        ba = self.boundary(c.a)
        bb = self.boundary(c.b)
        parts = value_factors(a)
        n1 = len(obj_factors(ba.top))
        a1 = tensor_value(*parts[:n1])
        a2 = tensor_value(*parts[n1:])
        mid = self.apply(c.a, pv, a1)
        out = self.apply(c.b, mid, a2)
        # leaves are ((x, b), d); fuse the two bottom outputs
        return pval_map(
            out,
            proto_factors(bb.right),
            lambda leaf: (leaf[0][0], tensor_value(leaf[0][1], leaf[1])),
        )

    def _apply_vcomp(self, c, pv, a):
        ba = self.boundary(c.a)
        top = self.apply(c.a, pv, a)
        # each payload of the upper result is a lower-left environment
        return pval_map(
            top,
            proto_factors(ba.right),
            lambda leaf: self.apply(c.b, leaf[0], leaf[1]),
        )

    def _apply_iter_x(self, c, pv, a):
        ba = self.boundary(c.alpha)
        bg = self.boundary(c.g)
        body_right = proto_factors(ba.right)
        body_left = proto_factors(ba.left)

        def make_handle(state, inp):
            def thunk():
                stop = self.apply(c.f, state, inp)
                peeled = self.apply(c.g, state, UNITV)
                peeled = pval_map(
                    peeled, proto_factors(bg.right), lambda leaf: leaf[0]
                )
                # peeled : body-left env over fresh loop states
                stepped = self.apply(c.alpha, peeled, inp)
                layer = pval_map(
                    stepped,
                    body_right,
                    lambda leaf: make_handle(leaf[0], leaf[1]),
                )
                return (stop, layer)

            return PHandle(thunk)

        return make_handle(pv, a)

    def _apply_iter_p(self, c, pv, a):
        ba = self.boundary(c.alpha)
        bg = self.boundary(c.g)

        def fold(state, inp):
            state = as_tower(state)
            if isinstance(state, PStop):
                return self.apply(c.f, state.payload, inp)
            stepped = self.apply(c.alpha, state.layer, inp)
            folded = pval_map(
                stepped,
                proto_factors(ba.right),
                lambda leaf: fold(leaf[0], leaf[1]),
            )
            out = self.apply(c.g, folded, UNITV)
            return pval_map(
                out, proto_factors(bg.right), lambda leaf: leaf[0]
            )

        return fold(pv, a)


# ---------------------------------------------------------------------------
# Environment equality, enumeration, and printing


def pval_equal(p, q, protos, depth, payload_eq=None) -> bool:
    """Observational equality of environments over a protocol factor list.

    Loop handles are compared by observing up to `depth` unrollings; at
    depth zero any two handles count as equal.  Payloads at the leaves are
    compared with payload_eq (default: ==).
    """
    if payload_eq is None:
        payload_eq = lambda x, y: x == y
    if not protos:
        return payload_eq(p, q)
    head, rest = protos[0], protos[1:]
    if rest:
        inner = lambda x, y: pval_equal(x, y, rest, depth, payload_eq)
        return pval_equal(p, q, (head,), depth, inner)
    if isinstance(head, DoneP):
        return payload_eq(p, q)
    if isinstance(head, SendP):
        return p.value == q.value and payload_eq(p.rest, q.rest)
    if isinstance(head, RecvP):
        if set(p.table) != set(q.table):
            return False
        return all(payload_eq(p.table[k], q.table[k]) for k in p.table)
    if isinstance(head, SeqP):
        return pval_equal(p, q, proto_factors(head), depth, payload_eq)
    if isinstance(head, ChooseP):
        p, q = as_pair(p), as_pair(q)
        return pval_equal(
            p.left, q.left, (head.left,), depth, payload_eq
        ) and pval_equal(p.right, q.right, (head.right,), depth, payload_eq)
    if isinstance(head, OfferP):
        p, q = as_tagged(p), as_tagged(q)
        if isinstance(p, PInl) != isinstance(q, PInl):
            return False
        sub = head.left if isinstance(p, PInl) else head.right
        return pval_equal(p.value, q.value, (sub,), depth, payload_eq)
    if isinstance(head, StarPP):
        p, q = as_tower(p), as_tower(q)
        if isinstance(p, PStop) != isinstance(q, PStop):
            return False
        if isinstance(p, PStop):
            return payload_eq(p.payload, q.payload)
        deeper = lambda x, y: pval_equal(x, y, (head,), depth, payload_eq)
        return pval_equal(p.layer, q.layer, (head.body,), depth, deeper)
    if isinstance(head, StarXP):
        if depth <= 0:
            return True
        sp, lp = as_handle(p).observe()
        sq, lq = as_handle(q).observe()
        if not payload_eq(sp, sq):
            return False
        deeper = lambda x, y: pval_equal(x, y, (head,), depth - 1, payload_eq)
        return pval_equal(lp, lq, (head.body,), depth, deeper)
    raise TypeError(f"unknown protocol form {head!r}")


def pval_enumerate(protos, payloads, val: Valuation):
    """All environments over a loop-free protocol factor list, with leaf
    payloads drawn from the given list."""
    protos = tuple(protos)
    if not protos:
        yield from payloads
        return
    head, rest = protos[0], protos[1:]
    if rest:
        inner = list(pval_enumerate(rest, payloads, val))
        yield from pval_enumerate((head,), inner, val)
        return
    if isinstance(head, DoneP):
        yield from payloads
        return
    if isinstance(head, SendP):
        for v in enumerate_values(head.obj, val):
            for p in payloads:
                yield PSend(v, p)
        return
    if isinstance(head, RecvP):
        keys = list(enumerate_values(head.obj, val))
        for combo in itertools.product(payloads, repeat=len(keys)):
            yield PTable(dict(zip(keys, combo)))
        return
    if isinstance(head, SeqP):
        yield from pval_enumerate(proto_factors(head), payloads, val)
        return
    if isinstance(head, ChooseP):
        lefts = list(pval_enumerate((head.left,), payloads, val))
        rights = list(pval_enumerate((head.right,), payloads, val))
        for l in lefts:
            for r in rights:
                yield PPair(l, r)
        return
    if isinstance(head, OfferP):
        for l in pval_enumerate((head.left,), payloads, val):
            yield PInl(l)
        for r in pval_enumerate((head.right,), payloads, val):
            yield PInr(r)
        return
    raise NotEnumerable(f"cannot enumerate environments of {head}")


def pval_show(pv, protos, depth=2) -> str:
    """Render an environment, expanding loop handles to `depth` layers."""
    protos = tuple(protos)
    if not protos:
        return _show_payload(pv)
    head, rest = protos[0], protos[1:]
    if rest:
        # show the nested environment by treating the tail as the payload
        return pval_show(
            pval_map(pv, (head,), lambda x: _Wrapped(x, rest, depth)),
            (head,),
            depth,
        )
    if isinstance(head, DoneP):
        return _show_payload(pv)
    if isinstance(head, SendP):
        return f"({pv.value}, {_show_payload(pv.rest)})"
    if isinstance(head, RecvP):
        inside = ", ".join(
            f"{k} -> {_show_payload(v)}" for k, v in sorted(
                pv.table.items(), key=lambda kv: str(kv[0])
            )
        )
        return "{" + inside + "}"
    if isinstance(head, SeqP):
        return pval_show(pv, proto_factors(head), depth)
    if isinstance(head, ChooseP):
        pv = as_pair(pv)
        return (
            f"<{pval_show(pv.left, (head.left,), depth)}, "
            f"{pval_show(pv.right, (head.right,), depth)}>"
        )
    if isinstance(head, OfferP):
        pv = as_tagged(pv)
        if isinstance(pv, PInl):
            return f"L {pval_show(pv.value, (head.left,), depth)}"
        return f"R {pval_show(pv.value, (head.right,), depth)}"
    if isinstance(head, StarPP):
        pv = as_tower(pv)
        if isinstance(pv, PStop):
            return f"stop {_show_payload(pv.payload)}"
        return "step " + pval_show(pv.layer, (head.body, head), depth)
    if isinstance(head, StarXP):
        if depth <= 0:
            return "#handle"
        stop, layer = as_handle(pv).observe()
        return (
            f"<{_show_payload(stop)}, "
            + pval_show(layer, (head.body, head), depth - 1)
            + ">"
        )
    raise TypeError(f"unknown protocol form {head!r}")


@dataclass
class _Wrapped:
    pv: object
    protos: tuple
    depth: int


def _show_payload(x) -> str:
    if isinstance(x, _Wrapped):
        return pval_show(x.pv, x.protos, x.depth)
    if isinstance(x, tuple):
        return "(" + ", ".join(_show_payload(i) for i in x) + ")"
    return str(x)
