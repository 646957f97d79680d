"""Two-level pyramid codes with information-symbol hierarchical locality.

A systematic MDS generator [I | Q] is split block by block.  The k
information rows are cut into groups of r_1 (the last group may be
shorter), and each group into sub-blocks of r_2.  The first column of a
group's slice of Q is split into one local parity column per sub-block;
the group's next delta_1 - 2 columns of Q stay whole; the remaining
d - delta_1 columns of Q are global parities.  The inner locality
distance is fixed at 2, so every sub-block plus its local parity forms a
single-parity-check code.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import ceil

from . import linalg
from .errors import ProfileError
from .gf import Field


def systematic_mds(field: Field, k: int, d: int) -> list[list[int]]:
    """Systematic [k+d-1, k, d] generator [I | Q] from evaluations at 0, 1, alpha, alpha^2, ..."""
    N = k + d - 1
    if k < 1 or d < 1:
        raise ProfileError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
    if N > field.q:
        raise ProfileError(f"{field} has fewer than {N} distinct evaluation points")
    points = [0] + [field.exp(i) for i in range(N - 1)]
    V = [[field.pow(x, r) if x else int(r == 0) for x in points] for r in range(k)]
    return linalg.matmul(field, linalg.inverse(field, linalg.columns(V, range(k))), V)


@dataclass(frozen=True)
class PyramidSpec:
    k: int
    d: int
    r_1: int
    r_2: int
    delta_1: int
    delta_2: int = 2

    def __post_init__(self):
        if self.delta_2 != 2:
            raise ProfileError("pyramid codes are built with delta_2 = 2 only")
        if self.k < 1 or self.r_2 < 1 or self.r_1 < self.r_2:
            raise ProfileError(f"need k >= 1 and r_1 >= r_2 >= 1, got {self}")
        if not 2 <= self.delta_1 <= self.d:
            raise ProfileError(f"need 2 <= delta_1 <= d, got delta_1={self.delta_1}, d={self.d}")

    @property
    def alpha(self) -> int:
        return self.k // self.r_1

    @property
    def beta(self) -> int:
        return (self.k % self.r_1) // self.r_2

    @property
    def gamma(self) -> int:
        return (self.k % self.r_1) % self.r_2

    @property
    def mu(self) -> int:
        return self.r_1 // self.r_2

    @property
    def nu(self) -> int:
        return self.r_1 % self.r_2

    @property
    def locality_params(self) -> list[tuple[int, int]]:
        return [(self.r_1, self.delta_1), (self.r_2, self.delta_2)]

    def to_json(self) -> dict:
        return {"k": self.k, "d": self.d, "r_1": self.r_1, "r_2": self.r_2, "delta_1": self.delta_1}


def length_formula(spec: PyramidSpec) -> int:
    g = ceil(spec.k / spec.r_1)
    return spec.k + spec.d - 1 + (g * ceil(spec.r_1 / spec.r_2) - 1) + (g - 1) * (spec.delta_1 - 2)


def pyramid_optimal(spec: PyramidSpec) -> bool:
    """Ceiling identity under which the pyramid code meets the distance bound."""
    return ceil(spec.k / spec.r_1) * ceil(spec.r_1 / spec.r_2) == ceil(spec.k / spec.r_2)


def _split(start: int, size: int, block: int) -> list[range]:
    return [range(s, min(s + block, start + size)) for s in range(start, start + size, block)]


@dataclass(frozen=True)
class PyramidCode:
    field: Field
    spec: PyramidSpec
    generator: list = dc_field(repr=False, compare=False)
    mds_generator: list = dc_field(repr=False, compare=False)
    origin: tuple[int, ...] = ()        # column of the MDS generator each column was cut from
    groups: tuple = ()                  # ((level-1 columns), ((level-2 columns), ...)) per group

    construction = "pyramid"

    @property
    def n(self) -> int:
        return len(self.origin)

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def eval_points(self) -> tuple:
        return (None,) * self.n

    @property
    def locality_params(self) -> list[tuple[int, int]]:
        return self.spec.locality_params

    @property
    def designed_distance(self) -> int:
        return self.spec.d

    @cached_property
    def grouping(self) -> list[list[tuple[int, ...]]]:
        return [[outer for outer, _ in self.groups],
                [inner for _, inners in self.groups for inner in inners]]


def build_pyramid(field: Field, spec: PyramidSpec) -> PyramidCode:
    """Assemble [I_k | Q-hat] from the systematic MDS generator, dropping empty blocks."""
    k, d = spec.k, spec.d
    mds = systematic_mds(field, k, d)
    row_groups = _split(0, spec.alpha * spec.r_1, spec.r_1)
    if k > spec.alpha * spec.r_1:
        row_groups.append(range(spec.alpha * spec.r_1, k))
    cols = [[int(r == c) for r in range(k)] for c in range(k)]   # column vectors
    origin = list(range(k))
    groups = []
    for rows in row_groups:
        outer, inners = list(rows), []
        for sub in _split(rows.start, len(rows), spec.r_2):
            cols.append([mds[r][k] if r in sub else 0 for r in range(k)])
            origin.append(k)
            inners.append(tuple(sub) + (len(cols) - 1,))
            outer.append(len(cols) - 1)
        for j in range(1, spec.delta_1 - 1):
            cols.append([mds[r][k + j] if r in rows else 0 for r in range(k)])
            origin.append(k + j)
            outer.append(len(cols) - 1)
        groups.append((tuple(outer), tuple(inners)))
    for j in range(spec.delta_1 - 1, d - 1):
        cols.append([mds[r][k + j] for r in range(k)])
        origin.append(k + j)
    G = linalg.transpose(cols)
    return PyramidCode(field, spec, G, mds, tuple(origin), tuple(groups))


def collapse_to_mds(code: PyramidCode) -> list[list[int]]:
    """Sum the columns cut from each MDS column; recovers the MDS generator."""
    F = code.field
    width = code.spec.k + code.spec.d - 1
    out = linalg.zeros(code.k, width)
    for j, src in enumerate(code.origin):
        for r in range(code.k):
            out[r][src] = F.add(out[r][src], code.generator[r][j])
    return out
