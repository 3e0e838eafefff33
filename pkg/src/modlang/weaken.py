"""Module weakening: keep only the instantiated answers to a set of queries.

Instead of importing all of ``/mf`` a caller can ask for ``(fib(3)=v)^/mf``
and receive the single fact ``fib(3) = 2``.  :func:`weaken_module` packages
such facts as a residual module that can be written to disk with
:func:`emit` and imported like any other module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import EngineConfig, preprocess
from .syntax import FunDef, Query, is_ident, pretty


@dataclass(frozen=True)
class WeakenRequest:
    queries: tuple
    registry: object
    output_name: str

    def __post_init__(self):
        if not is_ident(self.output_name):
            raise ValueError(f"invalid module name {self.output_name!r}")
        for q in self.queries:
            if not isinstance(q, Query):
                raise TypeError(f"not a query: {q!r}")


@dataclass(frozen=True)
class Provenance:
    module: str
    query: str  # the query as written, before earlier results were substituted


@dataclass(frozen=True)
class ResidualModule:
    name: str
    facts: tuple
    provenance: tuple

    @property
    def program(self) -> tuple:
        return self.facts


def weaken_module(req: WeakenRequest, cfg: EngineConfig = EngineConfig()) -> ResidualModule:
    """Instantiate ``req.queries`` left to right, one fact per query."""
    facts = preprocess(cfg, req.registry, tuple(req.queries))
    assert all(isinstance(f, FunDef) for f in facts)
    provenance = tuple(Provenance(q.module, pretty(q)[:-1]) for q in req.queries)
    return ResidualModule(req.output_name, facts, provenance)


def emit(rm: ResidualModule) -> str:
    """Render *rm* as ``.mod`` source with a provenance comment above each fact."""
    lines = [f"/{rm.name} ="]
    for fact, prov in zip(rm.facts, rm.provenance):
        lines.append(f"% from /{prov.module}: {prov.query}")
        lines.append(pretty(fact))
    return "\n".join(lines) + "\n"
