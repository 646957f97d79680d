"""Subgroup chains of the multiplicative group and the tree of their cosets.

For a field GF(q) and nested lengths n_h | ... | n_1 | q - 1, the subgroups
H_i of order n_i form a chain inside H_0 = GF(q)*.  Node (i, t) of the tree
is the coset gamma_(i,t) * H_i with

    gamma_(i,t) = prod_{j < i} beta_j ** (t_{j+1} - 1)

where beta_0 = alpha and beta_i has order n_i.  Index tuples t = (t_0, ..., t_h)
are 1-based up to position i and zero-padded afterwards; t_0 is always 1.
Coset members are listed as gamma, gamma*beta_i, gamma*beta_i**2, ...
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .errors import ProfileError
from .gf import Field, check_divisibility_chain, element_of_order, FieldError


@dataclass(frozen=True)
class HierarchyProfile:
    """Parameters (n, k; (n_1, r_1), ..., (n_h, r_h)) of an all-symbol hierarchical code.

    Level 1 is the outermost (middle) level and level h the innermost local level.
    """

    n: int
    k: int
    levels: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple((int(a), int(b)) for a, b in self.levels))
        self.validate()

    @property
    def h(self) -> int:
        return len(self.levels)

    @property
    def lengths(self) -> list[int]:
        return [ni for ni, _ in self.levels]

    @property
    def localities(self) -> list[int]:
        return [ri for _, ri in self.levels]

    @property
    def mu_bar(self) -> int:
        """Number of level-1 cosets used, n / n_1."""
        return self.n // self.levels[0][0]

    def inner_mu(self, i: int) -> int:
        """mu_i = n_{i-1} / n_i for 2 <= i <= h (independent of the field)."""
        return self.levels[i - 2][0] // self.levels[i - 1][0]

    def validate(self):
        if not self.levels:
            raise ProfileError("a profile needs at least one level")
        if self.k < 1:
            raise ProfileError(f"dimension must be positive, got k={self.k}")
        try:
            check_divisibility_chain(self.lengths, self.n)
        except FieldError as exc:
            raise ProfileError(str(exc)) from None
        if any(r < 1 for r in self.localities):
            raise ProfileError("locality parameters must be positive")
        nh, rh = self.levels[-1]
        if rh >= nh:
            raise ProfileError(f"innermost locality r_h={rh} must be below n_h={nh}")
        for i in range(1, self.h):
            r_outer, r_inner = self.localities[i - 1], self.localities[i]
            if r_outer < r_inner:
                raise ProfileError(f"localities must be non-increasing inward: r_{i}={r_outer} < r_{i + 1}={r_inner}")
            if r_outer > self.inner_mu(i + 1) * r_inner:
                raise ProfileError(
                    f"r_{i}={r_outer} exceeds mu_{i + 1} * r_{i + 1} = {self.inner_mu(i + 1) * r_inner}")
        if self.k > self.mu_bar * self.localities[0]:
            raise ProfileError(f"k={self.k} exceeds (n/n_1) * r_1 = {self.mu_bar * self.localities[0]}")

    def check_field(self, field: Field):
        n1 = self.levels[0][0]
        if (field.q - 1) % n1:
            raise ProfileError(f"n_1={n1} does not divide q-1={field.q - 1}")
        if self.n > field.q - 1:
            raise ProfileError(f"length n={self.n} exceeds the {field.q - 1} nonzero elements of {field}")

    def mus(self, field: Field) -> list[int]:
        """[mu_0, mu_1, ..., mu_h] with n_0 = q - 1."""
        chain = [field.q - 1] + self.lengths
        return [1] + [a // b for a, b in zip(chain, chain[1:])]

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "levels": [{"n_i": a, "r_i": b} for a, b in self.levels]}


@dataclass(frozen=True)
class Node:
    gamma: int
    members: tuple[int, ...]


Key = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class CosetTree:
    """Coset tree of depth h over ``field``; ``branches`` level-1 subtrees are present.

    A tree built by :func:`build_coset_tree` keeps all mu_1 branches; the
    relevant subtree keeps only the first n / n_1 of them.
    """

    field: Field
    lengths: tuple[int, ...]            # (n_1, ..., n_h)
    branches: int
    betas: tuple[int, ...]              # (beta_0, beta_1, ..., beta_h)
    nodes: dict = dc_field(compare=False, repr=False)

    @property
    def h(self) -> int:
        return len(self.lengths)

    @cached_property
    def mus(self) -> tuple[int, ...]:
        chain = (self.field.q - 1,) + self.lengths
        return (1,) + tuple(a // b for a, b in zip(chain, chain[1:]))

    def n_at(self, i: int) -> int:
        return self.field.q - 1 if i == 0 else self.lengths[i - 1]

    @property
    def root(self) -> Key:
        return (0, (1,) + (0,) * self.h)

    def level(self, i: int) -> list[Key]:
        """Keys of the level-i nodes present in this tree, in lexicographic t order."""
        return sorted(k for k in self.nodes if k[0] == i)

    def node(self, i: int, t) -> Node:
        key = (i, tuple(t))
        if key not in self.nodes:
            raise KeyError(f"no node {key} in coset tree")
        return self.nodes[key]

    def parent(self, i: int, t) -> Key:
        if i == 0:
            raise KeyError("the root has no parent")
        t = list(t)
        t[i] = 0
        return (i - 1, tuple(t))

    def children(self, i: int, t) -> list[Key]:
        if i == self.h:
            return []
        t = list(t)
        top = self.branches if i == 0 else self.mus[i + 1]
        out = []
        for s in range(1, top + 1):
            t[i + 1] = s
            out.append((i + 1, tuple(t)))
        return out

    def siblings(self, i: int, t) -> list[Key]:
        key = (i, tuple(t))
        return [c for c in self.children(*self.parent(i, t)) if c != key]

    def points(self) -> list[int]:
        """Union of the level-1 cosets, coset by coset."""
        return [x for key in self.level(1) for x in self.nodes[key].members]

    def to_json(self) -> list[dict]:
        return [{"index": [i, *t], "gamma": node.gamma, "members": list(node.members)}
                for (i, t), node in sorted(self.nodes.items())]


RelevantTree = CosetTree


def _coset(field: Field, gamma: int, beta: int, size: int) -> tuple[int, ...]:
    out = []
    x = gamma
    for _ in range(size):
        out.append(x)
        x = field.mul(x, beta)
    return tuple(out)


def build_coset_tree(field: Field, profile: HierarchyProfile | list[int]) -> CosetTree:
    """Full coset tree for the subgroup chain given by the profile's level lengths."""
    lengths = tuple(profile.lengths if isinstance(profile, HierarchyProfile) else profile)
    try:
        check_divisibility_chain(lengths, field.q - 1)
    except FieldError as exc:
        raise ProfileError(str(exc)) from None
    betas = (field.alpha,) + tuple(element_of_order(field, ni).value for ni in lengths)
    h = len(lengths)
    tree = CosetTree(field, lengths, (field.q - 1) // lengths[0], betas, {})
    nodes = tree.nodes
    nodes[tree.root] = Node(1, _coset(field, 1, field.alpha, field.q - 1))
    frontier = [tree.root]
    for i in range(1, h + 1):
        nxt = []
        for key in frontier:
            for child in tree.children(*key):
                t = child[1]
                gamma = 1
                for j in range(i):
                    gamma = field.mul(gamma, field.pow(betas[j], t[j + 1] - 1))
                nodes[child] = Node(gamma, _coset(field, gamma, betas[i], lengths[i - 1]))
                nxt.append(child)
        frontier = nxt
    return tree


def relevant_subtree(tree: CosetTree, n: int) -> RelevantTree:
    """Keep the first n / n_1 level-1 branches, whose cosets give exactly n points."""
    n1 = tree.lengths[0]
    if n % n1:
        raise ProfileError(f"n_1={n1} does not divide n={n}")
    keep = n // n1
    if keep > tree.mus[1] or keep < 1:
        raise ProfileError(f"n/n_1 = {keep} must lie in [1, mu_1 = {tree.mus[1]}]")
    nodes = {k: v for k, v in tree.nodes.items() if k[0] == 0 or k[1][1] <= keep}
    return CosetTree(tree.field, tree.lengths, keep, tree.betas, nodes)
