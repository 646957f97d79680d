from __future__ import annotations

import itertools

import pytest

from hlc import linalg
from hlc.analysis import locality_audit, min_distance_oracle
from hlc.errors import ProfileError
from hlc.gf import make_field
from hlc.pyramid import (PyramidSpec, build_pyramid, collapse_to_mds, length_formula,
                         pyramid_optimal, systematic_mds)

F13 = make_field(13)


def test_systematic_mds_all_subsets_nonsingular():
    G = systematic_mds(F13, 4, 3)
    assert len(G) == 4 and len(G[0]) == 6
    assert linalg.columns(G, range(4)) == linalg.identity(4)
    for cols in itertools.combinations(range(6), 4):
        assert linalg.rank(F13, linalg.columns(G, cols)) == 4


def test_systematic_mds_edge_cases():
    assert systematic_mds(F13, 3, 1) == linalg.identity(3)
    row = systematic_mds(F13, 1, 5)
    assert len(row) == 1 and all(row[0])
    with pytest.raises(ProfileError):
        systematic_mds(F13, 10, 5)


def test_length_formula_examples():
    assert length_formula(PyramidSpec(4, 3, 2, 1, 3)) == 10
    assert length_formula(PyramidSpec(8, 4, 4, 2, 3)) == 15
    assert build_pyramid(make_field(16 + 1), PyramidSpec(8, 4, 4, 2, 3)).n == 15


def test_optimality_examples():
    assert pyramid_optimal(PyramidSpec(8, 4, 4, 2, 3))
    assert pyramid_optimal(PyramidSpec(4, 3, 2, 1, 3))
    assert pyramid_optimal(PyramidSpec(5, 3, 5, 5, 3))
    assert not pyramid_optimal(PyramidSpec(5, 3, 3, 2, 3))


def test_no_split_gives_mds():
    spec = PyramidSpec(4, 3, 4, 4, 3)
    code = build_pyramid(F13, spec)
    assert code.generator == systematic_mds(F13, 4, 3)
    assert code.n == 6


def test_small_pyramid(pyramid13):
    code = pyramid13
    assert code.n == 10
    assert linalg.columns(code.generator, range(4)) == linalg.identity(4)
    assert collapse_to_mds(code) == code.mds_generator
    assert code.grouping[0] == [(0, 1, 4, 5, 6), (2, 3, 7, 8, 9)]
    assert code.grouping[1] == [(0, 4), (1, 5), (2, 7), (3, 8)]
    assert min_distance_oracle(F13, code.generator) == 3
    rep = locality_audit(F13, code.generator, code.grouping, code.locality_params, cover=range(4))
    assert rep.passed, rep.violations


@pytest.mark.parametrize("k,d,r1,r2,delta1", [(5, 3, 3, 2, 3), (6, 4, 4, 2, 3), (7, 4, 3, 2, 2)])
def test_partial_groups_keep_collapse_and_locality(k, d, r1, r2, delta1):
    spec = PyramidSpec(k, d, r1, r2, delta1)
    code = build_pyramid(F13, spec)
    assert collapse_to_mds(code) == code.mds_generator
    assert linalg.rank(F13, code.generator) == k
    assert code.n <= length_formula(spec)
    rep = locality_audit(F13, code.generator, code.grouping, code.locality_params, cover=range(k))
    assert rep.passed, rep.violations


def test_spec_validation():
    with pytest.raises(ProfileError):
        PyramidSpec(4, 3, 1, 2, 3)
    with pytest.raises(ProfileError):
        PyramidSpec(4, 3, 2, 1, 4)
    with pytest.raises(ProfileError):
        PyramidSpec(4, 3, 2, 1, 3, delta_2=3)
