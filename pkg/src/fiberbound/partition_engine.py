"""Witness engine against claimed bounded-fiber maps from finitary
partitions into finite atom sets.

Each step collects the distinct oracle answers in first-occurrence order,
builds the quotient frame of their union, and walks the ranked stream of
class partitions until one lifts to a partition not emitted before.  At
most ``m`` lifts can be stale at step ``m``, so the walk stops within
``m + 1`` candidates no matter how many class partitions exist; the ranked
stream is generated lazily for exactly this reason, since the class count
routinely exceeds any materialization budget.
"""

from __future__ import annotations

from typing import Callable

from .auditing import OracleLedger, Violation, assemble_certificate
from .errors import BadParametersError, OracleCodomainError
from .partitions import (BELL_MAX, FinitaryPartition, bell, build_frame,
                         iter_partitions_ranked, lift)


class _Violated(Exception):
    def __init__(self, violation: Violation):
        self.violation = violation


class _Inconsistent(Exception):
    """Every lift was stale although the counting argument promises one fresh."""


def seed_partitions(k: int, base: int) -> list[FinitaryPartition]:
    """``72*k*k + 1`` pairwise distinct two-atom-block partitions."""
    if k < 1:
        raise BadParametersError("k must be at least 1")
    return [FinitaryPartition([(base, base + 1 + j)]) for j in range(72 * k * k + 1)]


class PartitionDiagEngine:
    def __init__(self, k: int, oracle: Callable[[FinitaryPartition], frozenset[int]],
                 instance_id: int = 0):
        self.k = k
        self.oracle = oracle
        self.base = 1000 * (instance_id + 1)
        self.threshold = 72 * k * k
        self.g: list[FinitaryPartition] = list(seed_partitions(k, self.base))
        self.g_set: set[FinitaryPartition] = set(self.g)
        self.seed_count = len(self.g)
        self.ledger = OracleLedger(
            k, lambda p: str(p),
            lambda s: "{" + ",".join(str(a) for a in sorted(s)) + "}")
        self.traces: list[dict] = []

    def _query_all(self) -> list[frozenset[int]]:
        values = []
        for p in self.g:
            out = self.oracle(p)
            if not isinstance(out, frozenset) or not all(isinstance(a, int) and a >= 0 for a in out):
                raise OracleCodomainError("oracle must return finite sets of atoms")
            violation = self.ledger.record(p, out)
            if violation is not None:
                raise _Violated(violation)
            values.append(out)
        return values

    def step(self) -> dict:
        m = len(self.g)
        values = self._query_all()
        distinct: list[frozenset[int]] = []
        seen: set[frozenset[int]] = set()
        for v in values:
            if v not in seen:
                seen.add(v)
                distinct.append(v)
        frame = build_frame(distinct)
        l = frame.l
        # A clean ledger caps fiber sizes at k, and each listed value is a
        # union of classes, so these hold on every recorded trace.
        assert m <= self.k * len(distinct)
        assert len(distinct) <= 2**l
        if m > self.threshold:
            assert 72 * self.k < 2**l
        if 1 <= l <= BELL_MAX:
            assert 72 * bell(l) > 4**l
        chosen = None
        examined = 0
        for q in iter_partitions_ranked(l):
            examined += 1
            candidate = lift(q, frame)
            if candidate not in self.g_set:
                chosen = (q, candidate)
                break
            assert examined <= m, "more stale lifts than emitted partitions"
        if chosen is None:
            raise _Inconsistent
        q, result = chosen
        trace = {
            "m": m,
            "C": [sorted(v) for v in distinct],
            "classes": [sorted(c) for c in frame.classes],
            "l": l,
            "q": sorted((sorted(b) for b in q), key=lambda b: b[0] if b else -1),
            "rank_checked": examined,
            "result": str(result),
        }
        self.g.append(result)
        self.g_set.add(result)
        self.traces.append(trace)
        return trace

    def run(self, steps: int) -> dict:
        if steps < 1:
            raise BadParametersError("steps must be at least 1")
        kind = "part-diag"
        violation = None
        try:
            for _ in range(steps):
                self.step()
        except _Violated as v:
            kind = "ledger-violation"
            violation = v.violation
        except _Inconsistent:
            kind = "stuck"
        return assemble_certificate(
            kind, None, self.k, None, self.threshold,
            len(self.g) - self.seed_count,
            [str(p) for p in self.g], violation, self.traces)


def run_partition_diag(k: int, oracle: Callable[[FinitaryPartition], frozenset[int]],
                       steps: int, instance_id: int = 0) -> dict:
    engine = PartitionDiagEngine(k, oracle, instance_id)
    return engine.run(steps)
