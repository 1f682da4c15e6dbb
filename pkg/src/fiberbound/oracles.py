"""Built-in adversary oracles for the engines.

No honest boundedly finite-to-one oracle can exist on these domains, so
the built-ins are chosen to exercise both run outcomes: fresh witness
streams and ledger violations.  All of them are deterministic across
processes; pool oracles hash canonical serializations with md5 rather
than the salted builtin hash.
"""

from __future__ import annotations

import hashlib
from typing import Callable

from .atoms import SetSpec
from .errors import BadParametersError
from .partitions import FinitaryPartition
from .perms import FinPerm


def _stable_index(text: str, modulus: int) -> int:
    digest = hashlib.md5(text.encode("ascii")).hexdigest()
    return int(digest, 16) % modulus


def truncate_oracle(n: int) -> Callable[[FinPerm], FinPerm]:
    """Deflate each input onto its n least moved atoms."""
    if n < 0:
        raise BadParametersError("n must be non-negative")

    def oracle(s: FinPerm) -> FinPerm:
        if len(s.moved) <= n:
            return s
        keep = sorted(s.moved)[:n]
        return s.deflate(SetSpec.finite(keep))

    return oracle


def pool_perm_oracle(pool_size: int, n: int) -> Callable[[FinPerm], FinPerm]:
    """Hash inputs into a fixed pool of permutations moving at most n points.

    For n below 2 the only such permutation is the identity, so the pool
    collapses to it regardless of the requested size.
    """
    if pool_size < 1:
        raise BadParametersError("pool size must be at least 1")
    if n < 2:
        pool = [FinPerm.identity()]
    else:
        pool = [FinPerm.cycle([0, i + 1]) for i in range(pool_size)]

    def oracle(s: FinPerm) -> FinPerm:
        return pool[_stable_index(s.to_cycles(), len(pool))]

    return oracle


def min_block_oracle(p: FinitaryPartition) -> frozenset[int]:
    """The block of the least atom lying in a non-singleton block."""
    blocks = p.exceptional_blocks
    if not blocks:
        return frozenset()
    return min(blocks, key=min)


def pool_set_oracle(pool_size: int) -> Callable[[FinitaryPartition], frozenset[int]]:
    """Hash partitions into the fixed pool {}, {0}, {0,1}, ..."""
    if pool_size < 1:
        raise BadParametersError("pool size must be at least 1")
    pool = [frozenset(range(i)) for i in range(pool_size)]

    def oracle(p: FinitaryPartition) -> frozenset[int]:
        return pool[_stable_index(str(p), len(pool))]

    return oracle
