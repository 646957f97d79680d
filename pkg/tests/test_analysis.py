from __future__ import annotations

import itertools

import pytest

from hlc import linalg
from hlc.analysis import (distance_bound, locality_audit, min_distance_oracle, optimality_check,
                          punctured_distance, support_accumulation_audit, support_requirement)
from hlc.errors import CapExceededError
from hlc.gf import make_field
from hlc.pyramid import systematic_mds

F13 = make_field(13)


def _naive_distance(F, G):
    k, n = len(G), len(G[0])
    best = n
    for msg in itertools.product(range(F.q), repeat=k):
        if any(msg):
            w = sum(1 for v in linalg.vecmat(F, msg, G) if v)
            best = min(best, w)
    return best


def test_bound_examples():
    assert distance_bound(24, 14, [(8, 3), (3, 2)]) == 6
    assert distance_bound(16, 12, [(6, 2)]) == 4
    assert distance_bound(20, 7, [(7, 5)]) == 14        # r = k: Singleton
    assert support_requirement(14, [(8, 3), (3, 2)]) == 18


def test_bound_rejects_bad_params():
    for params in ([], [(2, 3), (3, 2)], [(3, 2), (2, 3)], [(3, 1)]):
        with pytest.raises(ValueError):
            distance_bound(10, 4, params)
    with pytest.raises(ValueError):
        distance_bound(4, 4, [(2, 2)])


def test_optimality_examples():
    rep = optimality_check(24, 14, [(8, 3), (3, 2)], 6, [12, 4])
    assert rep.optimal and rep.conditions["length_match"]["holds"]
    rep = optimality_check(12, 5, [(4, 2), (2, 2)], 6, [6, 3])
    assert rep.optimal and rep.conditions["ceiling_identity"]["holds"]
    assert rep.conditions["ceiling_identity"]["lhs"] == rep.conditions["ceiling_identity"]["rhs"] == 1
    rep = optimality_check(16, 8, [(4, 3), (2, 2)], 5, None)
    assert rep.conditions["divisibility"]["holds"]
    assert not optimality_check(24, 14, [(8, 3), (3, 2)], 5, [12, 4]).optimal


def test_oracle_small_cases():
    assert min_distance_oracle(F13, linalg.identity(4)) == 1
    assert min_distance_oracle(F13, [[1] * 7]) == 7
    G = systematic_mds(F13, 3, 4)
    assert min_distance_oracle(F13, G) == 4
    F5 = make_field(5)
    rng_G = [[1, 0, 2, 3, 0, 1], [0, 1, 4, 0, 2, 2], [1, 1, 0, 0, 3, 4]]
    assert min_distance_oracle(F5, rng_G) == _naive_distance(F5, rng_G)


def test_oracle_cap():
    with pytest.raises(CapExceededError):
        min_distance_oracle(F13, systematic_mds(F13, 5, 3), cap=1000)


def test_punctured_methods_agree():
    G = systematic_mds(F13, 4, 5)
    cols = list(range(8))
    d_enum = punctured_distance(F13, G, cols)
    d_rank = punctured_distance(F13, G, cols, cap=10)
    assert d_enum[2] == "enumeration" and d_rank[2] == "erasure-rank"
    assert d_enum[:2] == d_rank[:2] == (4, 5)


def test_locality_audit_examples(code25, code13):
    rep = locality_audit(code25.field, code25.generator, code25.grouping, [(8, 3), (3, 2)])
    assert rep.passed
    middle = [g for g in rep.groups if g["level"] == 1]
    local = [g for g in rep.groups if g["level"] == 2]
    assert [(g["dim"], g["d_min"]) for g in middle] == [(8, 3)] * 2
    assert [(len(g["columns"]), g["dim"], g["d_min"]) for g in local] == [(4, 3, 2)] * 6
    rep = locality_audit(code13.field, code13.generator, code13.grouping, code13.locality_params)
    assert rep.passed
    assert {(len(g["columns"]), g["dim"]) for g in rep.groups} == {(6, 4), (3, 2)}
    assert all(g["d_min"] >= 2 for g in rep.groups)


def test_locality_audit_flags_violations(code13):
    rep = locality_audit(code13.field, code13.generator, code13.grouping, [(3, 2), (1, 2)])
    assert not rep.passed
    whole = locality_audit(F13, systematic_mds(F13, 3, 4), [[tuple(range(6))]], [(3, 4)])
    assert whole.passed


def test_accumulation_on_mds():
    G = systematic_mds(F13, 4, 4)
    audit = support_accumulation_audit(F13, G, [[tuple(range(7))]], [(4, 4)])
    assert audit.passed
    assert audit.support >= 3
    assert audit.distance_upper == 7 - 4 + 1


@pytest.mark.parametrize("fixture", ["code13", "code17", "code25", "pyramid13"])
def test_accumulation_sandwich(fixture, request):
    code = request.getfixturevalue(fixture)
    audit = support_accumulation_audit(code.field, code.generator, code.grouping, code.locality_params)
    bound = distance_bound(code.n, code.k, code.locality_params)
    assert audit.passed, audit.violations
    assert code.designed_distance <= audit.distance_upper <= bound
    assert audit.support >= audit.required_support
