"""Blocks of dominant weights and the linking chains between them.

Weights are dominant coweights in fundamental-coweight coordinates; rho is
the all-ones vector.  ``ell`` acts through the dilated box action, and a
weight ``lam`` is handled through ``lam + rho`` and its representative in the
closure of ``a_ell``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from networkx.utils import UnionFind

from .affine_weyl import (
    AffineElement,
    AffineWeylGroup,
    Facet,
    affine_weyl_group,
    element_for_facet,
    facet_from_J,
    facet_J,
    facet_of,
    hat,
    in_rho_cone,
    is_point,
    is_special,
    orbit_representative,
    translate_alcove,
)
from .affine_weyl.geometry import dominant_weights, enumerate_g_elements
from .hecke import KLEngine, engine_for
from .root_data import RootSystem, build_root_system, decompose_irreducible


class TheoryConstraintError(ValueError):
    """Parameters outside the range where the block formula is known to hold."""


class DifferentBlocksError(ValueError):
    def __init__(self, rep1, rep2):
        self.representatives = (rep1, rep2)
        super().__init__(f"weights lie in different blocks (representatives {list(rep1)} and {list(rep2)})")


class InternalInvariantError(AssertionError):
    pass


# -- valuations ---------------------------------------------------------------


def r_of(lam: Sequence[int], ell: int) -> int:
    """Largest ``r`` with ``lam`` in ``ell^r`` times the coweight lattice."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    if not any(lam):
        raise ValueError("the valuation of the zero coweight is undefined")
    r = 0
    while all(c % ell ** (r + 1) == 0 for c in lam):
        r += 1
    return r


def delta_of(mu: Sequence[int], ell: int) -> int:
    return 1 if r_of(mu, ell) == 0 else 0


def _shift(lam, by=1):
    return tuple(c + by for c in lam)


def _height(lam) -> int:
    return sum(lam)


def check_quantum_ell(rs: RootSystem, ell: int) -> None:
    problems = []
    if ell % 2 == 0:
        problems.append("ell must be odd")
    for f, h in zip(rs.factors, rs.coxeter_numbers):
        if ell <= h:
            problems.append(f"ell must exceed the Coxeter number {h} of {f}")
        if f.letter == "G" and ell == 3:
            problems.append("ell = 3 is excluded for G2")
    if problems:
        raise TheoryConstraintError("; ".join(problems))


# -- blocks -------------------------------------------------------------------


@dataclass(frozen=True)
class BlockResult:
    weights: tuple[tuple[int, ...], ...]
    r: tuple[int, ...]
    contains_query: bool
    radius: int

    @property
    def certified(self) -> bool:
        return self.contains_query


def _factor_block(W: AffineWeylGroup, lam, ell: int, radius: int, mode: str):
    shifted = _shift(lam)
    r = r_of(shifted, ell)
    if mode == "modular":
        modulus = ell ** (r + 1)
    elif mode == "quantum":
        modulus = ell if r == 0 else None
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if modulus is None:
        return r, [tuple(lam)] if _height(lam) <= radius else []
    target, _ = orbit_representative(W, shifted, modulus)
    members = [mu for mu in dominant_weights(W, radius)
               if orbit_representative(W, _shift(mu), modulus)[0] == target]
    return r, members


def block_of(rs, lam, ell: int, radius: int, mode: str = "modular",
             allow_unsupported: bool = False) -> BlockResult:
    """Dominant weights of height at most ``radius`` in the block of ``lam``.

    Per irreducible factor the block is the orbit of ``lam_i`` under
    ``W0 x ell^r Z R^vee`` acting by the dot action (``r`` the valuation of
    ``lam_i + rho``); in quantum mode the group is the whole affine Weyl group
    when that valuation is 0 and trivial otherwise.
    """
    rs = build_root_system(rs)
    lam = tuple(int(c) for c in lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight has {len(lam)} coordinates, expected {rs.rank}")
    if any(c < 0 for c in lam):
        raise ValueError("weight is not dominant")
    if ell < 2:
        raise ValueError("ell must be at least 2")
    if mode == "quantum" and not allow_unsupported:
        check_quantum_ell(rs, ell)
    rs_list = []
    per_factor = []
    for frs, sl in decompose_irreducible(rs):
        W = affine_weyl_group(frs)
        r, members = _factor_block(W, lam[sl.start:sl.stop], ell, radius, mode)
        rs_list.append(r)
        per_factor.append(members)
    weights = sorted(tuple(c for part in combo for c in part) for combo in product(*per_factor)
                     if sum(sum(part) for part in combo) <= radius)
    return BlockResult(tuple(weights), tuple(rs_list), _height(lam) <= radius, radius)


def block_key(rs, lam, ell: int) -> tuple:
    """Invariant identifying the modular block of ``lam`` (no region needed)."""
    rs = build_root_system(rs)
    key = []
    for frs, sl in decompose_irreducible(rs):
        W = affine_weyl_group(frs)
        shifted = _shift(lam[sl.start:sl.stop])
        r = r_of(shifted, ell)
        rep, _ = orbit_representative(W, shifted, ell ** (r + 1))
        key.append((r, rep))
    return tuple(key)


def same_orbit(rs, lam, lam2, ell: int) -> bool:
    W = affine_weyl_group(rs)
    return orbit_representative(W, _shift(lam), ell)[0] == orbit_representative(W, _shift(lam2), ell)[0]


# -- facet contexts -------------------------------------------------------------


@dataclass(frozen=True)
class FacetContext:
    ell: int
    weight: tuple[int, ...]
    shifted: tuple[int, ...]
    rep: tuple
    unit_facet: Facet
    J: tuple[int, ...]
    w: AffineElement
    special: bool
    point: bool


def facet_context(rs, lam, ell: int) -> FacetContext:
    W = affine_weyl_group(rs)
    lam = tuple(int(c) for c in lam)
    shifted = _shift(lam)
    rep, _ = orbit_representative(W, shifted, ell)
    g = facet_of(W, tuple(Fraction(c) / ell for c in rep))
    J = facet_J(W, g)
    h = facet_of(W, tuple(Fraction(c) / ell for c in shifted))
    w = element_for_facet(W, h, J)
    if W.act(w, rep, ell) != shifted:
        raise InternalInvariantError("facet parametrisation does not send the representative to the weight")
    if not W.is_in_fWg(w, J):
        raise InternalInvariantError("parametrising element is not in fW^g")
    special = is_special(W, g)
    pt = is_point(W, g)
    if pt and any(shifted) and special != (r_of(shifted, ell) >= 1):
        raise InternalInvariantError("special facet classification disagrees with the valuation")
    return FacetContext(ell, lam, shifted, rep, g, J, w, special, pt)


def relation_edge(engine: KLEngine, w: AffineElement, w2: AffineElement, J: Sequence[int]) -> bool:
    W = engine.W
    for x in (w, w2):
        if not W.is_in_fWg(x, J):
            raise ValueError("relation_edge expects elements of fW^g")
    return engine.n_at_one(w2, w) != 0 or engine.n_at_one(w, w2) != 0


# -- chains ---------------------------------------------------------------------


@dataclass
class DescentPath:
    nodes: list[AffineElement]
    witnesses: list[AffineElement]
    hat_depth: int  # d(hat(A_w) - rho)


def _rho_alcove(W: AffineWeylGroup):
    return translate_alcove(W, W.fundamental_alcove, (1,) * W.rank)


def descent_path(engine: KLEngine, w: AffineElement, J: Sequence[int]) -> DescentPath:
    """Path in fW^g from ``w`` to the element whose facet lies in ``rho + closure(a_1)``.

    First step: ``w`` to the element of the hatted facet.  Then the hatted
    minimal alcove is walked down to ``rho + a_1`` through walls, staying in
    ``rho + C0+``; each wall crossing of a type outside ``J`` moves the facet
    and comes with a witness ``u`` in fW^g.  For non-point facets ``u`` is the
    maximal element of the coset of the wall-enlarged parabolic; for point
    facets it is the maximal element of ``x_v W_g`` where ``x_v`` is the
    alcove ``v + a_1`` at the special point ``v`` the two alcoves share.
    """
    W = engine.W
    J = tuple(sorted(J))
    pt = len(J) == W.rank and len(W.rs.factors) == 1
    Amin = W.alcove_of(W.min_in_coset(w, J))
    Ahat = hat(W, Amin)
    depth = W.d(translate_alcove(W, Ahat, (-1,) * W.rank))
    x = W.element_of(Ahat)
    what = W.max_in_coset(x, J)
    nodes, wit = [w], []
    if what != w:
        nodes.append(what)
        wit.append(what)
    goal = _rho_alcove(W)
    guard = 0
    while W.alcove_of(x) != goal:
        guard += 1
        if guard > 10 * (depth + W.nroots + 1):
            raise InternalInvariantError("descent did not terminate")
        lx = W.length(x)
        step = None
        for i in range(W.ngens):
            xs = W.rmul(x, i)
            if W.length(xs) < lx and in_rho_cone(W, W.alcove_of(xs)):
                step = i
                break
        if step is None:
            raise InternalInvariantError("no descent inside rho + C0+")
        xn = W.rmul(x, step)
        if step not in J:
            new = W.max_in_coset(xn, J)
            if new != nodes[-1]:
                if not pt:
                    u = W.max_in_coset(xn, tuple(sorted(set(J) | {step})))
                else:
                    v = xn.translation  # xn applied to the origin
                    xv = W.element_of(translate_alcove(W, W.fundamental_alcove, v))
                    u = W.max_in_coset(xv, J)
                nodes.append(new)
                wit.append(u)
        x = xn
    return DescentPath(nodes, wit, depth)


@dataclass
class ChainResult:
    weights: list[tuple[int, ...]]
    witnesses: list[dict]
    bound: int
    certified: bool
    elements: list[AffineElement] = field(default_factory=list, repr=False)

    @property
    def length(self) -> int:
        return len(self.weights) - 1


def _erase_loops(nodes, witnesses):
    """Drop the part of a walk between two visits of the same node."""
    out, wit, seen = [], [], {}
    for i, x in enumerate(nodes):
        if x in seen:
            k = seen[x]
            for y in out[k + 1:]:
                del seen[y]
            del out[k + 1:]
            del wit[k:]
        else:
            if out:
                wit.append(witnesses[i - 1])
            seen[x] = len(out)
            out.append(x)
    return out, wit


@dataclass
class _FactorChain:
    nodes: list[AffineElement]
    witnesses: list[AffineElement]
    bound: int
    to_weight: object  # callable element -> weight


def _factor_chain(frs: RootSystem, lam, lam2, ell: int) -> _FactorChain:
    W = affine_weyl_group(frs)
    E = engine_for(frs)
    s1, s2 = _shift(lam), _shift(lam2)
    r = r_of(s1, ell)
    scale = ell ** r
    red1 = tuple(c // scale - 1 for c in s1)
    red2 = tuple(c // scale - 1 for c in s2)
    c1 = facet_context(frs, red1, ell)
    c2 = facet_context(frs, red2, ell)
    if c1.rep != c2.rep:
        raise InternalInvariantError("reduced weights are not in one orbit")
    if c1.special:
        raise InternalInvariantError("reduced facet is special")
    J = c1.J

    def to_weight(u, rep=c1.rep):
        return tuple(scale * c - 1 for c in W.act(u, rep, ell))

    if c1.w == c2.w:
        return _FactorChain([c1.w], [], 0, to_weight)
    p1 = descent_path(E, c1.w, J)
    p2 = descent_path(E, c2.w, J)
    if p1.nodes[-1] != p2.nodes[-1]:
        raise InternalInvariantError("descent paths end at different base elements")
    nodes, wit = _erase_loops(p1.nodes + list(reversed(p2.nodes[:-1])),
                              p1.witnesses + list(reversed(p2.witnesses)))
    bound = 2 + p1.hat_depth + p2.hat_depth
    return _FactorChain(nodes, wit, bound, to_weight)


def _embed(rs: RootSystem, parts: Sequence[AffineElement]) -> AffineElement:
    n = rs.rank
    M = [[0] * n for _ in range(n)]
    t = [0] * n
    for (frs, sl), part in zip(decompose_irreducible(rs), parts):
        for a, i in enumerate(sl):
            t[i] = part.translation[a]
            for b, j in enumerate(sl):
                M[i][j] = part.linear[a][b]
    return AffineElement(tuple(tuple(r) for r in M), tuple(t))


def chain_between(rs, lam, lam2, ell: int) -> ChainResult:
    """A chain of dominant weights from ``lam`` to ``lam2`` with witnesses.

    Consecutive weights ``w_i, w_{i+1}`` (as elements of fW^g) come with
    ``u_i`` such that both ``n_{w_i,u_i}(1)`` and ``n_{w_{i+1},u_i}(1)`` are
    non-zero; every such value is recomputed before the chain is returned.
    """
    rs = build_root_system(rs)
    lam = tuple(int(c) for c in lam)
    lam2 = tuple(int(c) for c in lam2)
    for x in (lam, lam2):
        if len(x) != rs.rank or any(c < 0 for c in x):
            raise ValueError("weights must be dominant with one coordinate per simple root")
    k1, k2 = block_key(rs, lam, ell), block_key(rs, lam2, ell)
    if k1 != k2:
        rep1 = tuple(c - 1 for part in k1 for c in part[1])
        rep2 = tuple(c - 1 for part in k2 for c in part[1])
        raise DifferentBlocksError(rep1, rep2)
    if lam == lam2:
        return ChainResult([lam], [], 0, True)

    factors = decompose_irreducible(rs)
    chains = [_factor_chain(frs, lam[sl.start:sl.stop], lam2[sl.start:sl.stop], ell) for frs, sl in factors]
    steps = max(len(c.nodes) for c in chains) - 1

    def node(c, i):
        return c.nodes[min(i, len(c.nodes) - 1)]

    def witness(c, i):
        # a factor that already arrived stays put; its own element witnesses the step
        return c.witnesses[i] if i < len(c.witnesses) else c.nodes[-1]

    E = engine_for(rs)
    reduced_rs = rs
    elements, weights, witnesses = [], [], []
    for i in range(steps + 1):
        parts = [node(c, i) for c in chains]
        elements.append(_embed(reduced_rs, parts))
        weights.append(tuple(x for c, p in zip(chains, parts) for x in c.to_weight(p)))
    for i in range(steps):
        uparts = [witness(c, i) for c in chains]
        u = _embed(reduced_rs, uparts)
        left = E.n_at_one(elements[i], u)
        right = E.n_at_one(elements[i + 1], u)
        if left == 0 or right == 0:
            raise InternalInvariantError(f"witness check failed at step {i}")
        witnesses.append({
            "weight": tuple(x for c, p in zip(chains, uparts) for x in c.to_weight(p)),
            "n_left": left,
            "n_right": right,
        })
    bound = max(c.bound for c in chains)
    if weights[0] != lam or weights[-1] != lam2:
        raise InternalInvariantError("chain endpoints do not match the query")
    return ChainResult(weights, witnesses, bound, True, elements)


# -- closure of the generated relation -------------------------------------------


@dataclass
class ClosureResult:
    J: tuple[int, ...]
    special: bool
    members: list[AffineElement]
    partition: list[list[AffineElement]]
    formula_partition: list[list[AffineElement]]
    certified: bool

    @property
    def agrees(self) -> bool:
        return _canon(self.partition) == _canon(self.formula_partition)


def _canon(partition) -> list:
    return sorted(sorted(cls) for cls in partition)


def _n_closure(engine: KLEngine, J, members, with_paths: bool):
    """Union-find over the members (plus the descent paths leading from them)
    using the edges ``n_{x,y}(1) != 0``."""
    nodes = set(members)
    if with_paths:
        for w in members:
            path = descent_path(engine, w, J)
            nodes.update(path.nodes)
            nodes.update(path.witnesses)
    W = engine.W
    for x in nodes:
        if not W.is_in_fWg(x, J):
            raise InternalInvariantError("closure node outside fW^g")
    ordered = sorted(nodes, key=lambda x: (W.length(x), x))
    uf = UnionFind(ordered)
    for y in ordered:
        can = engine.canonical_N_raw(y)
        for x in ordered:
            p = can.get(x)
            if p and sum(p.values()) != 0:
                uf.union(x, y)
    groups: dict = {}
    for w in members:
        groups.setdefault(uf[w], []).append(w)
    return list(groups.values())


def closure_oracle(rs, J: Sequence[int], radius: int, ell: int | None = None,
                   mode: str = "modular") -> ClosureResult:
    """Partition of fW^g (length at most ``radius``) into classes of the
    relation generated by non-vanishing ``n(1)``, next to the coset formula.

    Non-special facets: closure over members and their descent paths (a
    saturated node set); formula = one class.

    Special facets, modular mode: a member ``w`` gives the weight
    ``lam = w g`` in the lattice; dividing by ``ell^r`` lands on a weight whose
    facet at level ``ell`` is non-special, where the closure is computed as
    above; formula = cosets of ``W0 x ell^(r+1) Z R^vee``.

    Special facets, characteristic zero (``mode='quantum'`` or no ``ell``):
    direct closure over the members; formula = singletons.
    """
    rs = build_root_system(rs)
    if len(rs.factors) != 1:
        raise ValueError("closure_oracle works factor by factor; pass an irreducible type")
    W = affine_weyl_group(rs)
    E = engine_for(rs)
    J = tuple(sorted(J))
    g = facet_from_J(W, J)
    members = sorted(enumerate_g_elements(W, J, radius), key=lambda x: (W.length(x), x))
    special = is_special(W, g)
    if not special:
        part = _n_closure(E, J, members, with_paths=True)
        return ClosureResult(J, False, members, part, [list(members)] if members else [], True)
    if mode == "quantum" or ell is None:
        part = _n_closure(E, J, members, with_paths=False)
        return ClosureResult(J, True, members, part, [[w] for w in members], False)

    formula: dict = {}
    buckets: dict = {}
    for w in members:
        lam = tuple(int(c) for c in W.act(w, g.sample))
        r = r_of(lam, ell)
        rep, _ = orbit_representative(W, lam, ell ** (r + 1))
        formula.setdefault((r, rep), []).append(w)
        reduced = tuple(c // ell ** r - 1 for c in lam)
        ctx = facet_context(rs, reduced, ell)
        buckets.setdefault((r, ctx.rep, ctx.J), []).append((w, ctx.w))
    partition = []
    for (r, rep, J2), pairs in sorted(buckets.items()):
        inner = [x for _, x in pairs]
        back = {x: w for w, x in pairs}
        for cls in _n_closure(E, J2, inner, with_paths=True):
            partition.append([back[x] for x in cls])
    return ClosureResult(J, True, members, partition, list(formula.values()), True)
