"""Binary gradient coding: encoding, online decoding, metrics and simulation.

Thin Python layer over the C++ core in ``bgc._core``. Exact rational values
(d_s, heterogeneous loads) come back as :class:`fractions.Fraction`.
"""

from fractions import Fraction

from . import _core
from ._core import (
    BinaryMatrix,
    CodeParams,
    DecodingVector,
    EncodingMatrix,
    FormatError,
    InfeasibleScenario,
    MissingWorker,
    ParameterError,
    RunLog,
    balance_property,
    bipartite_edges,
    build_c1,
    build_c2,
    build_encoding,
    check_lemma,
    class_vector,
    derive_params,
    load_vector,
    recover_gradient,
    scan_order,
    select_decoder,
    simulate,
    verify_matrix,
    verify_scheme,
)

__all__ = [
    "BinaryMatrix",
    "CodeParams",
    "DecodingVector",
    "EncodingMatrix",
    "FormatError",
    "InfeasibleScenario",
    "MissingWorker",
    "ParameterError",
    "RunLog",
    "balance_property",
    "bipartite_edges",
    "build_c1",
    "build_c2",
    "build_encoding",
    "check_lemma",
    "class_vector",
    "derive_params",
    "distance_ds",
    "encode",
    "load_vector",
    "plan",
    "recover_gradient",
    "scan_order",
    "select_decoder",
    "simulate",
    "verify_matrix",
    "verify_scheme",
]


def encode(n, s):
    """Encoding matrix for n workers tolerating s stragglers."""
    return build_encoding(derive_params(n, s))


def distance_ds(matrix, s=None):
    """d_s of an EncodingMatrix, or of a BinaryMatrix when ``s`` is given."""
    if s is None:
        return Fraction(_core.distance_ds(matrix))
    return Fraction(_core.distance_ds_matrix(matrix, s))


def _time_text(value):
    if isinstance(value, float):
        return str(Fraction(value))
    return str(value)


def plan(s, k, types, round=True):
    """Heterogeneous load plan.

    ``types`` is a sequence of (count, unit_time) pairs ordered fastest first;
    times may be int, Fraction, float or str.
    """
    raw = _core.plan(s, k, [(int(c), _time_text(t)) for c, t in types], round)
    raw["real_loads"] = [Fraction(v) for v in raw["real_loads"]]
    if raw["equalization_error"] is not None:
        raw["equalization_error"] = Fraction(raw["equalization_error"])
    return raw
