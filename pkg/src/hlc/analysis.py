"""Distance bounds, optimality conditions, and brute-force verification.

Locality parameters are given outermost first: [(r_1, delta_1), ...,
(r_h, delta_h)] with r_1 >= ... >= r_h >= 1 and delta_1 >= ... >= delta_h >= 2.

The oracles here are deliberately independent of how codes are built:
they take a generator matrix and a column grouping and nothing else.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil

import numpy as np

from . import linalg
from .errors import CapExceededError
from .gf import Field

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 1 << 24
_TABLE_ROWS = 1 << 17

LocalityParams = list[tuple[int, int]]


def check_params(params) -> list[tuple[int, int]]:
    params = [(int(r), int(dl)) for r, dl in params]
    if not params:
        raise ValueError("at least one locality level is required")
    rs = [r for r, _ in params]
    ds = [dl for _, dl in params]
    if rs[-1] < 1 or any(a < b for a, b in zip(rs, rs[1:])):
        raise ValueError(f"localities must satisfy r_1 >= ... >= r_h >= 1, got {rs}")
    if ds[-1] < 2 or any(a < b for a, b in zip(ds, ds[1:])):
        raise ValueError(f"distances must satisfy delta_1 >= ... >= delta_h >= 2, got {ds}")
    return params


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def support_requirement(k: int, params) -> int:
    """Lower bound on the support of a (k-1)-dimensional subcode found by accumulation."""
    params = check_params(params)
    total = k - 1
    for (r, dl), (_, dl_next) in zip(params, params[1:]):
        total += (_ceil_div(k, r) - 1) * (dl - dl_next)
    r_h, dl_h = params[-1]
    return total + (_ceil_div(k, r_h) - 1) * (dl_h - 1)


def distance_bound(n: int, k: int, params) -> int:
    """Largest minimum distance allowed for an [n, k] code with h-level hierarchical locality.

    With one level this is the usual (r, delta)-locality bound, and with
    r = k it reduces to the Singleton bound.
    """
    if not n > k >= 1:
        raise ValueError(f"need n > k >= 1, got n={n}, k={k}")
    return n - support_requirement(k, params)


@dataclass
class OptimalityReport:
    bound: int
    designed_d: int
    conditions: dict
    optimal: bool

    @property
    def optimal_by(self) -> list[str]:
        return [name for name, c in self.conditions.items() if c["holds"]]

    def to_json(self) -> dict:
        return {"bound": self.bound, "designed_d": self.designed_d, "optimal": self.optimal,
                "optimal_by": self.optimal_by, "conditions": self.conditions}


def optimality_check(n: int, k: int, params, designed_d: int, level_lengths=None) -> OptimalityReport:
    """Evaluate the sufficient optimality conditions for the coset-tree construction.

    Conditions (each reported with its evaluated sides):

    - ``divisibility``: r_h | ... | r_1 | k.
    - ``length_match`` (needs ``level_lengths``): d = n_h + delta_h,
      n/n_h = ceil(k/r_h) + 1 and n/n_i = ceil(k/r_i) for i < h.
    - ``ceiling_identity`` (two levels only):
      ceil(k/r_2 - (ceil(k/r_1) - 1) r_1/r_2) = ceil(k/r_2) - (ceil(k/r_1) - 1) ceil(r_1/r_2).

    The code is reported optimal when some condition holds and the designed
    distance equals the bound.
    """
    params = check_params(params)
    bound = distance_bound(n, k, params)
    rs = [r for r, _ in params]
    conds = {}
    chain = [k] + rs
    conds["divisibility"] = {
        "holds": all(a % b == 0 for a, b in zip(chain, chain[1:])),
        "lhs": chain, "rhs": "each entry divisible by the next"}
    if level_lengths is not None:
        ns = list(level_lengths)
        h = len(params)
        lhs = [designed_d] + [Fraction(n, ni) for ni in ns]
        rhs = [ns[-1] + params[-1][1]] + [_ceil_div(k, r) for r in rs[:-1]] + [_ceil_div(k, rs[-1]) + 1]
        conds["length_match"] = {"holds": len(ns) == h and lhs == rhs,
                                 "lhs": [str(x) for x in lhs], "rhs": rhs}
    if len(params) == 2:
        r1, r2 = rs
        c1 = _ceil_div(k, r1) - 1
        lhs = ceil(Fraction(k, r2) - c1 * Fraction(r1, r2))
        rhs = _ceil_div(k, r2) - c1 * _ceil_div(r1, r2)
        conds["ceiling_identity"] = {"holds": lhs == rhs, "lhs": lhs, "rhs": rhs}
    optimal = designed_d == bound and any(c["holds"] for c in conds.values())
    return OptimalityReport(bound, designed_d, conds, optimal)


# -- brute-force minimum distance ----------------------------------------------

def _span_table(field: Field, rows: np.ndarray) -> np.ndarray:
    """All q^len(rows) linear combinations of ``rows``; row 0 is the zero word."""
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows:
        parts = [table]
        for a in range(1, field.q):
            parts.append(field.vadd(table, field.vmul(a, row)[None, :]))
        table = np.concatenate(parts)
    return table


def min_distance_oracle(field: Field, generator, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Exact minimum weight over all nonzero codewords, by enumerating every message.

    Raises:
        CapExceededError: if q**k exceeds ``cap``.
        ValueError: if the generator is not of full row rank.
    """
    G = np.array(generator, dtype=np.int64)
    k = G.shape[0]
    if field.q ** k > cap:
        raise CapExceededError(f"{field.q}^{k} messages exceed the oracle cap {cap}")
    if linalg.rank(field, generator) != k:
        raise ValueError("generator is not of full row rank")
    t = k
    while t > 0 and field.q ** t > _TABLE_ROWS:
        t -= 1
    table = _span_table(field, G[k - t:])
    best = G.shape[1] + 1
    for head in itertools.product(range(field.q), repeat=k - t):
        v = np.zeros(G.shape[1], dtype=np.int64)
        for a, row in zip(head, G):
            if a:
                v = field.vadd(v, field.vmul(a, row))
        weights = np.count_nonzero(field.vadd(table, v[None, :]), axis=1)
        if not any(head):
            weights = weights[1:]
        if weights.size:
            best = min(best, int(weights.min()))
    return best


def punctured_distance(field: Field, generator, cols, cap: int = DEFAULT_ORACLE_CAP) -> tuple[int, int, str]:
    """(dimension, minimum distance, method) of the code punctured to ``cols``.

    Small codes are enumerated.  Otherwise the distance is the fewest
    erasures inside ``cols`` that drop the rank, found by scanning erasure
    sets of increasing size; this is exact as well.
    """
    sub = linalg.columns(generator, cols)
    basis, _ = linalg.rref(field, sub)
    dim = len(basis)
    if dim == 0:
        return 0, len(cols) + 1, "empty"
    if field.q ** dim <= cap:
        return dim, min_distance_oracle(field, basis, cap), "enumeration"
    width = len(cols)
    for e in range(1, width - dim + 2):
        for erased in itertools.combinations(range(width), e):
            keep = [j for j in range(width) if j not in erased]
            if linalg.rank(field, linalg.columns(basis, keep)) < dim:
                return dim, e, "erasure-rank"
    raise AssertionError("unreachable: Singleton bound violated")  # pragma: no cover


def _check_grouping(grouping, n: int):
    for level in grouping:
        for g in level:
            if not g or any(not 0 <= c < n for c in g):
                raise ValueError(f"group {g} has columns outside 0..{n - 1}")
    for outer, inner in zip(grouping, grouping[1:]):
        for g in inner:
            if not any(set(g) <= set(o) for o in outer):
                raise ValueError(f"group {g} is not nested inside any enclosing group")


@dataclass
class LocalityReport:
    groups: list = dc_field(default_factory=list)
    violations: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"passed": self.passed, "groups": self.groups, "violations": self.violations}


def locality_audit(field: Field, generator, grouping, params, cover=None,
                   cap: int = DEFAULT_ORACLE_CAP) -> LocalityReport:
    """Check every group's punctured code against (r_i, delta_i) at its level.

    ``grouping[i-1]`` lists the level-i column groups.  ``cover`` is the set of
    columns that must lie in some group at every level: all columns for
    all-symbol locality, an information set for information-symbol locality.
    """
    params = check_params(params)
    n = len(generator[0])
    if len(grouping) != len(params):
        raise ValueError(f"{len(grouping)} grouping levels for {len(params)} locality levels")
    _check_grouping(grouping, n)
    cover = set(range(n)) if cover is None else set(cover)
    rep = LocalityReport()
    for lvl, (groups, (r, dl)) in enumerate(zip(grouping, params), 1):
        covered = set()
        for g in groups:
            dim, dist, method = punctured_distance(field, generator, g, cap)
            covered |= set(g)
            rep.groups.append({"level": lvl, "columns": list(g), "dim": dim, "d_min": dist, "method": method})
            if dim > r:
                rep.violations.append(f"level {lvl} group {list(g)}: dimension {dim} > r={r}")
            if dist < dl:
                rep.violations.append(f"level {lvl} group {list(g)}: distance {dist} < delta={dl}")
        missing = sorted(cover - covered)
        if missing:
            rep.violations.append(f"level {lvl}: columns {missing} lie in no group")
    return rep


# -- support accumulation ----------------------------------------------------

@dataclass
class AccumulationAudit:
    support: int                  # |Supp(C_s)| of the (k-1)-dimensional subcode found
    distance_upper: int           # n - support, an upper bound on this code's distance
    support_columns: list
    visited: list                 # codes entered per level 1..h
    trace: list = dc_field(default_factory=list)
    required_support: int | None = None
    violations: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"support": self.support, "distance_upper": self.distance_upper,
                "required_support": self.required_support, "visited": self.visited,
                "trace": self.trace, "violations": self.violations}


def support_accumulation_audit(field: Field, generator, grouping, params=None) -> AccumulationAudit:
    """Depth-first accumulation of rank through nested groups on a concrete generator.

    Descends from level 1 to level h through groups that add rank, absorbs
    every rank-adding level-h group, and when a group's children are
    exhausted swaps the last absorbed support for the group's whole
    incremental support.  When the rank reaches k, the last step is undone
    and refilled column by column up to rank k - 1; the resulting column set
    P has rank k - 1, so some nonzero codeword vanishes on it and the code's
    distance is at most n - |P|.

    This certifies a bound for this matrix only.  With ``params`` the
    per-step inequalities (incremental support >= incremental rank +
    delta - 1) and the final support requirement are checked and any
    failure is listed in ``violations``.

    Groups are scanned in ascending order of their smallest column.
    """
    k = len(generator)
    n = len(generator[0])
    h = len(grouping)
    _check_grouping(grouping, n)
    if params is not None:
        params = check_params(params)
        if len(params) != h:
            raise ValueError(f"{h} grouping levels for {len(params)} locality levels")
    if linalg.rank(field, generator) != k:
        raise ValueError("generator is not of full row rank")
    levels = [sorted((tuple(sorted(g)) for g in lvl), key=lambda g: g[0]) for lvl in grouping]

    def rk(cols):
        return linalg.rank(field, linalg.columns(generator, sorted(cols))) if cols else 0

    psi: set = set()
    s_last: set = set()
    a_last = 0
    current = [tuple(range(n))] + [None] * h
    visited = [0] * (h + 1)
    trace = []
    violations = []
    rank_psi = 0
    last_base, last_added = set(), set()
    ell = 1
    while rank_psi < k:
        parent = set(current[ell - 1])
        found = None
        for g in levels[ell - 1]:
            if set(g) <= parent:
                r = rk(psi | set(g))
                if r > rank_psi:
                    found = (g, r)
                    break
        if found is not None:
            g, r = found
            current[ell] = g
            visited[ell] += 1
            if ell < h:
                ell += 1
                continue
            new = set(g) - psi
            a = r - rank_psi
            step = {"op": "add", "level": h, "columns": list(g), "a": a, "s": len(new)}
            if params is not None:
                need = a + params[h - 1][1] - 1
                step["ok"] = len(new) >= need
                if not step["ok"]:
                    violations.append(f"level-{h} group {list(g)}: s={len(new)} < a + delta_h - 1 = {need}")
            trace.append(step)
            last_base, last_added = set(psi), new
            psi |= set(g)
            s_last, a_last = set(g), a
            rank_psi = r
        else:
            ell -= 1
            if ell == 0:
                raise ValueError("rank is below k but no group adds rank; the grouping does not span the code")
            base = psi - s_last
            T = set(current[ell]) - base
            rb = rk(base)
            r = rk(base | T)
            a = r - rb
            step = {"op": "swap", "level": ell, "columns": sorted(T), "a": a, "t": len(T)}
            if params is not None:
                need = a + params[ell - 1][1] - 1
                step["ok"] = len(T) >= need and a >= a_last
                if len(T) < need:
                    violations.append(f"level-{ell} group {list(current[ell])}: t={len(T)} < a + delta - 1 = {need}")
                if a < a_last:
                    violations.append(f"level-{ell} swap lost rank: a={a} < {a_last}")
            trace.append(step)
            last_base, last_added = set(base), T
            psi = base | T
            s_last, a_last = T, a
            rank_psi = r
    # undo the final step and refill up to rank k - 1
    P = set(last_base)
    ech = linalg.Echelon(field)
    for c in sorted(P):
        ech.add(linalg.column(generator, c))
    for c in sorted(last_added):
        if ech.rank >= k - 1:
            break
        if ech.add(linalg.column(generator, c)):
            P.add(c)
    if rk(P) != k - 1:
        raise ValueError(f"accumulated set has rank {rk(P)}, expected {k - 1}")
    audit = AccumulationAudit(len(P), n - len(P), sorted(P), visited[1:], trace, None, violations)
    if params is not None:
        audit.required_support = support_requirement(k, params)
        if audit.support < audit.required_support:
            violations.append(f"support {audit.support} < required {audit.required_support}")
        for lvl, ((r, _), v) in enumerate(zip(params, visited[1:]), 1):
            if v < _ceil_div(k, r):
                violations.append(f"visited {v} level-{lvl} codes, fewer than ceil(k/r_{lvl}) = {_ceil_div(k, r)}")
    return audit
