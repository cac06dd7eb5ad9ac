"""Reference measures and tuple families used by the tests, scripts and CLI."""

from __future__ import annotations

import math

from .favard import TupleSeq, geronimus_family
from .measures import Measure, build_measure

GER_TRUNCATION = 16

MEASURE_SPECS: dict[str, dict] = {
    "leb": {"weight": {"kind": "lebesgue", "params": {}}},
    "cos": {"weight": {"kind": "cosine", "params": {"r": 1.0}}},
    "exp": {"weight": {"kind": "exp_cos", "params": {"t": 1.0}}},
    "bs1": {"weight": {"kind": "bernstein_szego", "params": {"alphas": [0.5]}}},
    "ger16": {"weight": {"kind": "bernstein_szego", "params": {"alphas": [0.5] * GER_TRUNCATION}}},
    "ger": {"weight": {"kind": "geronimus", "params": {"alpha": 0.5}}},
}


def measure(name: str, nodes: int | None = None) -> Measure:
    spec = dict(MEASURE_SPECS[name])
    if nodes is not None:
        spec["quadrature"] = {"nodes": nodes}
    return build_measure(spec)


def all_measures(nodes: int | None = None) -> dict[str, Measure]:
    return {name: measure(name, nodes) for name in MEASURE_SPECS}


def ger_tuples(N: int = 8) -> TupleSeq:
    return geronimus_family(N)


def ger_tuple_rows(N: int = 8) -> list[dict]:
    """Rows 1..N in the tuple-file layout (row 0 is implied)."""
    return [{"a": 0.75**n, "b": 0.75**n / math.sqrt(3), "beta": 0.0} for n in range(1, N + 1)]
