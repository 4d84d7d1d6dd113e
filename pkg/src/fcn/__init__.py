"""Protocol cells: typed two-dimensional terms over a monoidal signature.

The package models double-categorical cells whose vertical boundaries carry
communication protocols (send, receive, sequencing, choice, iteration) and
whose horizontal boundaries carry objects of a base monoidal category.  It
provides a term language for cells, boundary inference, a directed rewriter,
an executable interpreter used as the equality oracle, a law suite, an
interactive trace harness, and a text format with a CLI.
"""

from .errors import FcnError
from .signature import (
    GenObj,
    ObjExpr,
    Signature,
    Stack,
    Sum,
    Tensor,
    UNIT,
    UNITV,
    Valuation,
    Value,
)
from .protocol import (
    ChooseP,
    DONE,
    OfferP,
    Protocol,
    RecvP,
    SendP,
    StarPP,
    StarXP,
    proto_equal,
    seq_proto,
)
from .cells import (
    Boundary,
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
from .semantics import Interp, pval_equal, pval_show
from .rewrite import rewrite
from .laws import EqConfig, cells_equal, run_laws
from .trace import ContinueMove, PickMove, RecvMove, StopMove, run_trace
from .parser import parse_document, parse_script, parse_value, show_cell

__all__ = [
    "Boundary",
    "Cell",
    "ChooseP",
    "ContinueMove",
    "CopairC",
    "DONE",
    "EqConfig",
    "FcnError",
    "GenObj",
    "GetL",
    "GetR",
    "HComp",
    "IdH",
    "IdV",
    "Inj0",
    "Inj1",
    "Interp",
    "IterP",
    "IterX",
    "ObjExpr",
    "OfferP",
    "Pi0",
    "Pi1",
    "PickMove",
    "Plus",
    "Promote",
    "Protocol",
    "PutL",
    "PutR",
    "RecvMove",
    "RecvP",
    "SendP",
    "Signature",
    "Stack",
    "StarPP",
    "StarXP",
    "StopMove",
    "Sum",
    "Tensor",
    "Times",
    "UNIT",
    "UNITV",
    "Valuation",
    "Value",
    "VComp",
    "cells_equal",
    "infer_boundary",
    "parse_document",
    "parse_script",
    "parse_value",
    "proto_equal",
    "pval_equal",
    "pval_show",
    "rewrite",
    "run_laws",
    "run_trace",
    "seq_proto",
    "show_cell",
]
