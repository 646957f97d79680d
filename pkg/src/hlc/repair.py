"""Erasure repair with escalation from the innermost group to the whole code.

Works on any code object exposing ``field``, ``generator``, ``k`` and
``grouping`` (column groups per level, outermost first), so the same logic
serves coset-tree and pyramid codes.  A lost symbol is first repaired
inside its level-h group, then its level-(h-1) group, and so on up to the
full set of survivors (level 0).  Readers are chosen greedily in ascending
index order, keeping only columns that enlarge the span, until the lost
column lies in their span.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import UnrecoverableError
from .shards import ShardSet


@dataclass(frozen=True)
class RepairReport:
    index: int
    level: int                  # h = most local, 0 = global
    reads: int
    readers: tuple[int, ...]

    def to_json(self) -> dict:
        return {"index": self.index, "level": self.level, "reads": self.reads, "readers": list(self.readers)}


def _group_at(code, idx: int, level: int):
    if level == 0:
        return range(len(code.generator[0]))
    for g in code.grouping[level - 1]:
        if idx in g:
            return g
    return None


def repair_at_level(code, shards: ShardSet, idx: int, level: int):
    """Try to recover symbol ``idx`` reading only inside its level-``level`` group.

    Level 0 means all survivors.  Returns (value, RepairReport) or None.
    """
    group = _group_at(code, idx, level)
    if group is None:
        return None
    F, G = code.field, code.generator
    target = linalg.column(G, idx)
    ech = linalg.Echelon(F)
    offered, readers = [], []
    if not ech.contains(target):
        for c in sorted(group):
            if c == idx or shards.values[c] is None:
                continue
            offered.append(c)
            if ech.add(linalg.column(G, c)):
                readers.append(c)
                if ech.contains(target):
                    break
        else:
            return None
    combo = ech.express(target)
    value = 0
    for j, coef in combo.items():
        value = F.add(value, F.mul(coef, shards.values[offered[j]]))
    return value, RepairReport(idx, level, len(readers), tuple(readers))


def repair_symbol(code, shards: ShardSet, erased_index: int):
    """Recover one erased symbol from the most local group that can supply it.

    Returns:
        (value, RepairReport)

    Raises:
        UnrecoverableError: if even the full set of survivors does not determine it.
    """
    if shards.values[erased_index] is not None:
        raise ValueError(f"symbol {erased_index} is not erased")
    for level in range(len(code.grouping), -1, -1):
        got = repair_at_level(code, shards, erased_index, level)
        if got is not None:
            return got
    raise UnrecoverableError(f"symbol {erased_index} cannot be recovered", [erased_index])


def repair_all(code, shards: ShardSet):
    """Repair every recoverable symbol, cheapest level first, reusing repaired values.

    Returns:
        (restored ShardSet, list of RepairReport in repair order)

    Raises:
        UnrecoverableError: listing the indices that remain stuck.
    """
    work = shards.copy()
    reports = []
    h = len(code.grouping)
    while work.erased:
        hit = None
        for level in range(h, -1, -1):
            for idx in work.erased:
                hit = repair_at_level(code, work, idx, level)
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is None:
            raise UnrecoverableError(f"{len(work.erased)} symbols cannot be recovered", work.erased)
        value, rep = hit
        work.values[rep.index] = value
        reports.append(rep)
    return work, reports


def decode_message(code, shards: ShardSet) -> list[int]:
    """Solve for the message from the surviving symbols.

    Raises:
        UnrecoverableError: if the survivors do not have rank k.
    """
    F, G, k = code.field, code.generator, code.k
    ech = linalg.Echelon(F)
    chosen = []
    for c in shards.available:
        if ech.add(linalg.column(G, c)):
            chosen.append(c)
            if len(chosen) == k:
                break
    if len(chosen) < k:
        raise UnrecoverableError(f"survivors span rank {len(chosen)} < k={k}", shards.erased)
    inv = linalg.inverse(F, linalg.columns(G, chosen))
    return linalg.vecmat(F, [shards.values[c] for c in chosen], inv)
