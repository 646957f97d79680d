from __future__ import annotations

import pytest

from hlc.coset_tree import HierarchyProfile
from hlc.gf import make_field
from hlc.lrc import build_code
from hlc.pyramid import PyramidSpec, build_pyramid

PROFILES = {
    "gf25": HierarchyProfile(24, 14, ((12, 8), (4, 3))),
    "gf13": HierarchyProfile(12, 5, ((6, 4), (3, 2))),
    "gf17": HierarchyProfile(16, 5, ((8, 3), (4, 2), (2, 1))),
}


@pytest.fixture(scope="session")
def code25():
    return build_code(None, PROFILES["gf25"])


@pytest.fixture(scope="session")
def code13():
    return build_code(None, PROFILES["gf13"])


@pytest.fixture(scope="session")
def code17():
    return build_code(None, PROFILES["gf17"])


@pytest.fixture(scope="session")
def pyramid13():
    return build_pyramid(make_field(13), PyramidSpec(k=4, d=3, r_1=2, r_2=1, delta_1=3))
