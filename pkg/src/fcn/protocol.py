"""Protocol types: the two-sided session vocabulary.

A protocol describes one column of interaction between a left participant
and a right participant.  `Send A` passes an A from left to right, `Recv A`
the other way.  Protocols compose in sequence, and branch by `Choose` (the
right participant picks) or `Offer` (the left participant picks).  The two
loop formers repeat a protocol: `StarX U` is driven by the right participant
(who may demand another round forever), `StarP U` by the left (who must stop
eventually).

Equality of protocols is loop-unrolling equality: `StarX U` is the same
protocol as `Choose(Done, Seq[U, StarX U])`, and `StarP U` the same as
`Offer(Done, Seq[U, StarP U])`.  `proto_equal` decides this by bisimulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .signature import ObjExpr, normalize_obj, _obj_atom_str


@dataclass(frozen=True)
class Protocol:
    pass


@dataclass(frozen=True)
class DoneP(Protocol):
    def __str__(self):
        return "done"


DONE = DoneP()


@dataclass(frozen=True)
class SendP(Protocol):
    obj: ObjExpr

    def __str__(self):
        return f"!{_obj_atom_str(self.obj)}"


@dataclass(frozen=True)
class RecvP(Protocol):
    obj: ObjExpr

    def __str__(self):
        return f"?{_obj_atom_str(self.obj)}"


@dataclass(frozen=True)
class SeqP(Protocol):
    parts: tuple

    def __str__(self):
        return " . ".join(_proto_atom_str(p) for p in self.parts)


@dataclass(frozen=True)
class ChooseP(Protocol):
    left: Protocol
    right: Protocol

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class OfferP(Protocol):
    left: Protocol
    right: Protocol

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class StarXP(Protocol):
    body: Protocol

    def __str__(self):
        return f"{_proto_atom_str(self.body)}^x"


@dataclass(frozen=True)
class StarPP(Protocol):
    body: Protocol

    def __str__(self):
        return f"{_proto_atom_str(self.body)}^p"


def _proto_atom_str(p):
    if isinstance(p, (SeqP, ChooseP, OfferP)):
        return f"({p})"
    return str(p)


def normalize_proto(p: Protocol) -> Protocol:
    """Flatten sequences and drop done factors. Idempotent."""
    parts = proto_factors(p)
    if not parts:
        return DONE
    if len(parts) == 1:
        return parts[0]
    return SeqP(tuple(parts))


# Protocols are immutable, and the interpreter refactors the same terms
# constantly, so factor lists are memoized by identity.  The key object is
# kept in the value to pin its id.
_FACTORS_CACHE = {}


def proto_factors(p: Protocol) -> tuple:
    """Flat sequential factor list; branch and loop nodes count as atoms."""
    hit = _FACTORS_CACHE.get(id(p))
    if hit is not None:
        return hit[1]
    out = _proto_factors(p)
    _FACTORS_CACHE[id(p)] = (p, out)
    return out


def _proto_factors(p: Protocol) -> tuple:
    if isinstance(p, DoneP):
        return ()
    if isinstance(p, SeqP):
        out = []
        for part in p.parts:
            out.extend(proto_factors(part))
        return tuple(out)
    if isinstance(p, SendP):
        return (SendP(normalize_obj(p.obj)),)
    if isinstance(p, RecvP):
        return (RecvP(normalize_obj(p.obj)),)
    if isinstance(p, ChooseP):
        left, right = normalize_proto(p.left), normalize_proto(p.right)
        folded = _fold_unroll(left, right, StarXP)
        return (folded if folded is not None else ChooseP(left, right),)
    if isinstance(p, OfferP):
        left, right = normalize_proto(p.left), normalize_proto(p.right)
        folded = _fold_unroll(left, right, StarPP)
        return (folded if folded is not None else OfferP(left, right),)
    if isinstance(p, StarXP):
        return (StarXP(normalize_proto(p.body)),)
    if isinstance(p, StarPP):
        return (StarPP(normalize_proto(p.body)),)
    raise TypeError(f"unknown protocol form {p!r}")


def _fold_unroll(left, right, star):
    """Recognize one unrolling of a loop and fold it back to the loop node:
    done & (U . U^x) becomes U^x, and done + (U . U^p) becomes U^p."""
    if not isinstance(left, DoneP):
        return None
    parts = proto_factors(right)
    if len(parts) < 2 or not isinstance(parts[-1], star):
        return None
    if normalize_proto(SeqP(parts[:-1])) == parts[-1].body:
        return parts[-1]
    return None


def seq_proto(*parts) -> Protocol:
    return normalize_proto(SeqP(tuple(parts)))


def star_x_unfold(p: StarXP) -> Protocol:
    """One unrolling: U^x = done & (U . U^x)."""
    return ChooseP(DONE, seq_proto(p.body, p))


def star_p_unfold(p: StarPP) -> Protocol:
    """One unrolling: U^p = done + (U . U^p)."""
    return OfferP(DONE, seq_proto(p.body, p))


def _is_star(p):
    return isinstance(p, (StarXP, StarPP))


def proto_equal(p: Protocol, q: Protocol) -> bool:
    """Loop-unrolling equality, decided by bisimulation on regular trees."""
    return _bisim(normalize_proto(p), normalize_proto(q), set())


def _bisim(p, q, seen):
    if p == q:
        return True
    key = (p, q)
    if key in seen:
        return True
    seen = seen | {key}
    # unroll a loop when the other side has branch (or different loop) shape
    if isinstance(p, StarXP) and not (isinstance(q, StarXP)):
        return _bisim(star_x_unfold(p), q, seen)
    if isinstance(q, StarXP) and not (isinstance(p, StarXP)):
        return _bisim(p, star_x_unfold(q), seen)
    if isinstance(p, StarPP) and not (isinstance(q, StarPP)):
        return _bisim(star_p_unfold(p), q, seen)
    if isinstance(q, StarPP) and not (isinstance(p, StarPP)):
        return _bisim(p, star_p_unfold(q), seen)
    if isinstance(p, SeqP) and isinstance(q, SeqP):
        # normalization fixes factor counts: unrolling happens inside atoms
        if len(p.parts) != len(q.parts):
            return False
        return all(_bisim(a, b, seen) for a, b in zip(p.parts, q.parts))
    if isinstance(p, SeqP) != isinstance(q, SeqP):
        return False
    if isinstance(p, ChooseP) and isinstance(q, ChooseP):
        return _bisim(p.left, q.left, seen) and _bisim(p.right, q.right, seen)
    if isinstance(p, OfferP) and isinstance(q, OfferP):
        return _bisim(p.left, q.left, seen) and _bisim(p.right, q.right, seen)
    if isinstance(p, StarXP) and isinstance(q, StarXP):
        return _bisim(p.body, q.body, seen)
    if isinstance(p, StarPP) and isinstance(q, StarPP):
        return _bisim(p.body, q.body, seen)
    return False


def has_loop(p: Protocol) -> bool:
    if isinstance(p, (StarXP, StarPP)):
        return True
    if isinstance(p, SeqP):
        return any(has_loop(x) for x in p.parts)
    if isinstance(p, (ChooseP, OfferP)):
        return has_loop(p.left) or has_loop(p.right)
    return False
