"""All-symbol hierarchical codes from polynomial evaluation on a coset tree.

The code polynomial is assembled bottom-up: message polynomials sit on the
leaves, each parent combines its children's polynomials with indicator
polynomials of the child cosets, and at every node the highest-degree
coefficients are forced to zero so that the node polynomial has the target
number of monomials (r_i, or k at the root).  The surviving exponents are
given directly by the truncated-union recursion in :func:`exponent_sets`,
so the code is equally the evaluation of span{X^e : e in Exp(c)} on the
relevant cosets.  :func:`encode_monomial` uses that basis;
:func:`encode_constructive` runs the full assembly and is kept to
cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from . import linalg
from .coset_tree import (CosetTree, HierarchyProfile, RelevantTree, build_coset_tree,
                         relevant_subtree)
from .errors import ConstructionError, ProfileError
from .gf import Field, make_field, find_field
from .poly import Poly, product
from .shards import ShardSet


def annihilator(tree: CosetTree, i: int, t) -> Poly:
    """prod_{theta in A_(i,t)} (X - theta), which collapses to X^{n_i} - gamma^{n_i}."""
    node = tree.node(i, t)
    F = tree.field
    ni = tree.n_at(i)
    return Poly(F, [F.neg(F.pow(node.gamma, ni))] + [0] * (ni - 1) + [1])


def indicator_polynomial(tree: CosetTree, i: int, t) -> Poly:
    """Polynomial in X^{n_i} equal to 1 on A_(i,t) and 0 on its siblings' cosets.

    Siblings are those present in ``tree``: on a relevant subtree the level-1
    indicators interpolate over the kept branches only.
    """
    if i < 1:
        raise KeyError("indicator polynomials exist for levels >= 1 only")
    F = tree.field
    ni = tree.n_at(i)
    g_t = F.pow(tree.node(i, t).gamma, ni)
    factors = []
    for s in tree.siblings(i, t):
        g_s = F.pow(tree.nodes[s].gamma, ni)
        den = F.sub(g_t, g_s)
        if den == 0:
            raise ConstructionError(f"siblings {(i, tuple(t))} and {s} share gamma^n_i = {g_t}")
        inv = F.inv(den)
        factors.append(Poly(F, [F.mul(F.neg(g_s), inv)] + [0] * (ni - 1) + [inv]))
    return product(F, factors)


def check_indicator_properties(tree: CosetTree) -> list[str]:
    """Exhaustively check every indicator polynomial of ``tree``; returns violations.

    Per node (i, t): E is a polynomial in X^{n_i} of degree (siblings) * n_i;
    E is 1 on its coset and 0 on sibling cosets; sibling products vanish and
    E^2 = E modulo the parent annihilator; indicators of a sibling family sum
    to 1 on the parent; and the sibling annihilators divide E.  Modular
    identities at level 1 need the whole group and are skipped on a tree
    with pruned branches.
    """
    F = tree.field
    bad = []
    for i in range(1, tree.h + 1):
        ni, n_par = tree.n_at(i), tree.n_at(i - 1)
        for parent in tree.level(i - 1):
            family = tree.children(*parent)
            E = {key: indicator_polynomial(tree, *key) for key in family}
            complete = i > 1 or tree.branches == tree.mus[1]
            par_mod = annihilator(tree, *parent)
            g_par = F.pow(tree.nodes[parent].gamma, n_par)
            union = [x for key in family for x in tree.nodes[key].members]
            for key in family:
                e = E[key]
                sup = e.support()
                if any(x % ni for x in sup) or len(sup) > len(family) or e.degree != (len(family) - 1) * ni:
                    bad.append(f"{key}: support {sup} is not a degree-{len(family) - 1} polynomial in X^{ni}")
                own = set(tree.nodes[key].members)
                for x in union:
                    want = 1 if x in own else 0
                    if e(x) != want:
                        bad.append(f"{key}: E({x}) = {e(x)}, expected {want}")
                q = product(F, [annihilator(tree, *s) for s in tree.siblings(*key)])
                if e % q:
                    bad.append(f"{key}: sibling annihilators do not divide E")
                if complete:
                    if (e * e - e).mod_binomial(n_par, g_par):
                        bad.append(f"{key}: E^2 != E mod {par_mod}")
                    for s in family:
                        if s != key and (e * E[s]).mod_binomial(n_par, g_par):
                            bad.append(f"{key}: E * E{s} != 0 mod {par_mod}")
            total = Poly(F)
            for key in family:
                total = total + E[key]
            for x in union:
                if total(x) != 1:
                    bad.append(f"{parent}: indicators sum to {total(x)} at {x}")
            if complete and total.mod_binomial(n_par, g_par) != Poly(F, [1]):
                bad.append(f"{parent}: indicators do not sum to 1 mod {par_mod}")
    return bad


def trunc(s, r: int) -> tuple[int, ...]:
    """Last r elements of the descending ordered set s."""
    s = tuple(sorted(set(s), reverse=True))
    if not 0 < r <= len(s):
        raise ProfileError(f"cannot keep {r} of {len(s)} exponents")
    return s[len(s) - r:]


@dataclass(frozen=True)
class ExpSet:
    """Descending exponent sets; ``by_level[0]`` is Exp(c), ``by_level[i]`` is Exp(c_i)."""

    by_level: tuple[tuple[int, ...], ...]

    @property
    def code(self) -> tuple[int, ...]:
        return self.by_level[0]

    def level(self, i: int) -> tuple[int, ...]:
        return self.by_level[i]


def _spread(exps, block: int, copies: int) -> list[int]:
    return [j * block + e for j in range(copies) for e in exps]


def exponent_sets(profile: HierarchyProfile) -> ExpSet:
    """Exponent sets of the code polynomial at every level of the hierarchy."""
    profile.validate()
    h = profile.h
    levels = [None] * (h + 1)
    levels[h] = tuple(range(profile.levels[-1][1] - 1, -1, -1))
    for i in range(h - 1, 0, -1):
        n_inner = profile.levels[i][0]
        levels[i] = trunc(_spread(levels[i + 1], n_inner, profile.inner_mu(i + 1)), profile.levels[i - 1][1])
    levels[0] = trunc(_spread(levels[1], profile.levels[0][0], profile.mu_bar), profile.k)
    return ExpSet(tuple(levels))


@dataclass(frozen=True)
class HierarchicalCode:
    """A realized all-symbol code: field, relevant coset tree, exponents and generator."""

    profile: HierarchyProfile
    field: Field
    tree: RelevantTree
    exp: ExpSet
    eval_points: tuple[int, ...]
    generator: list = dc_field(repr=False, compare=False)

    construction = "all_symbol"

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def k(self) -> int:
        return self.profile.k

    @property
    def designed_distance(self) -> int:
        return self.n - max(self.exp.code)

    @property
    def level_distances(self) -> list[int]:
        """Designed distance n_i - max Exp(c_i) of the level-i codes, i = 1..h."""
        return [ni - max(self.exp.level(i)) for i, (ni, _) in enumerate(self.profile.levels, 1)]

    @property
    def locality_params(self) -> list[tuple[int, int]]:
        return list(zip(self.profile.localities, self.level_distances))

    @cached_property
    def grouping(self) -> list[list[tuple[int, ...]]]:
        """Column groups per level (outermost first), one per coset of the relevant tree."""
        where = {x: j for j, x in enumerate(self.eval_points)}
        return [[tuple(sorted(where[x] for x in self.tree.nodes[key].members))
                 for key in self.tree.level(i)]
                for i in range(1, self.profile.h + 1)]


def build_code(field: Field | None, profile: HierarchyProfile) -> HierarchicalCode:
    """Evaluate the monomial basis of Exp(c) on the relevant cosets.

    With ``field=None`` the smallest admissible field is chosen.
    """
    if field is None:
        field = make_field(*find_field(profile.lengths, profile.n))
    profile.check_field(field)
    tree = relevant_subtree(build_coset_tree(field, profile), profile.n)
    exp = exponent_sets(profile)
    points = tuple(tree.points())
    if len(points) != profile.n:
        raise ConstructionError(f"relevant tree has {len(points)} points, expected {profile.n}")
    G = [[field.pow(x, e) for x in points] for e in sorted(exp.code)]
    return HierarchicalCode(profile, field, tree, exp, points, G)


def _check_message(code, message) -> list[int]:
    msg = [int(x) for x in message]
    if len(msg) != code.k:
        raise ValueError(f"message has {len(msg)} symbols, the code needs k={code.k}")
    for x in msg:
        code.field.check(x)
    return msg


def code_polynomial(code: HierarchicalCode, message) -> Poly:
    """sum_j message_j X^{e_j} with e_j the ascending exponents of Exp(c)."""
    msg = _check_message(code, message)
    return Poly.from_terms(code.field, dict(zip(sorted(code.exp.code), msg)))


def encode_monomial(code: HierarchicalCode, message) -> ShardSet:
    msg = _check_message(code, message)
    values = linalg.vecmat(code.field, msg, code.generator)
    return ShardSet(code.eval_points, values)


# -- constructive assembly ----------------------------------------------------

@dataclass(frozen=True)
class ConstructiveAssembly:
    """Result of assembling the code polynomial through indicator polynomials.

    ``zeroed`` maps each internal node to the exponents its precoding forced
    to zero; ``generator`` has one row per kernel basis vector of the
    combined precoding constraints.
    """

    generator: list
    zeroed: dict
    free_symbols: int


def _lin_times(F: Field, lin: dict, e_poly: Poly) -> dict:
    out = {}
    for e1, vec in lin.items():
        for e2, c in enumerate(e_poly.coeffs):
            if c:
                acc = out.get(e1 + e2)
                scaled = [F.mul(c, x) for x in vec]
                out[e1 + e2] = scaled if acc is None else [F.add(a, b) for a, b in zip(acc, scaled)]
    return out


def _lin_add(F: Field, a: dict, b: dict) -> dict:
    out = dict(a)
    for e, vec in b.items():
        out[e] = vec if e not in out else [F.add(x, y) for x, y in zip(out[e], vec)]
    return out


def constructive_assembly(code: HierarchicalCode) -> ConstructiveAssembly:
    """Build c(X) from leaf message polynomials with indicator polynomials and precoding.

    Every node polynomial is tracked as a linear function of the leaf
    coefficients.  Precoding at a node zeroes its highest structural
    exponents; all such constraints are collected and the code is the image
    of their common kernel.

    Raises:
        ConstructionError: if the precoding leaves other than k free symbols
            or a node polynomial escapes its exponent set.
    """
    F, tree, prof, exp = code.field, code.tree, code.profile, code.exp
    h = prof.h
    leaves = tree.level(h)
    r_h = prof.levels[-1][1]
    N = len(leaves) * r_h
    lin = {}
    for idx, key in enumerate(leaves):
        lin[key] = {}
        for e in range(r_h):
            v = [0] * N
            v[idx * r_h + e] = 1
            lin[key][e] = v
    constraints = []
    zeroed = {}
    for i in range(h - 1, -1, -1):
        target = prof.k if i == 0 else prof.levels[i - 1][1]
        n_child = tree.n_at(i + 1)
        for key in tree.level(i):
            kids = tree.children(*key)
            d = {}
            for kid in kids:
                d = _lin_add(F, d, _lin_times(F, lin[kid], indicator_polynomial(tree, *kid)))
            structural = sorted(set(_spread(exp.level(i + 1), n_child, len(kids))), reverse=True)
            kill = structural[:len(structural) - target]
            zeroed[key] = kill
            constraints += [d[e] for e in kill if e in d]
            lin[key] = d
    kernel = linalg.nullspace(F, constraints, N)
    if len(kernel) != prof.k:
        raise ConstructionError(f"precoding leaves {len(kernel)} free symbols, expected k={prof.k}")
    for i in range(h + 1):
        allowed = set(exp.level(i))
        for key in tree.level(i):
            for e, vec in lin[key].items():
                if e not in allowed and any(F.dot(vec, x) for x in kernel):
                    raise ConstructionError(f"node {key} keeps X^{e} outside its exponent set")
    root = lin[tree.root]
    G = []
    for x in kernel:
        poly = Poly.from_terms(F, {e: F.dot(vec, x) for e, vec in root.items()})
        G.append(poly.evaluate(code.eval_points))
    if linalg.rank(F, G) != prof.k:
        raise ConstructionError("constructive generator is rank deficient")
    return ConstructiveAssembly(G, zeroed, N)


def encode_constructive(code: HierarchicalCode, message, assembly: ConstructiveAssembly | None = None) -> ShardSet:
    msg = _check_message(code, message)
    if assembly is None:
        assembly = constructive_assembly(code)
    return ShardSet(code.eval_points, linalg.vecmat(code.field, msg, assembly.generator))
