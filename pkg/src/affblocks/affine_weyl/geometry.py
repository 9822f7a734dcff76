"""Alcoves, boxes, facets and the periodic order.

Points of E are tuples of ``int``/``Fraction`` in coweight coordinates.
Facets are stored by their pattern on the positive roots: for each root the
pair ``(k, 0)`` means ``<p, a> = k`` and ``(n, 1)`` means ``n - 1 < <p, a> < n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .group import AffineElement, AffineWeylGroup, Alcove


def pair(point, root) -> Fraction | int:
    return sum(c * x for c, x in zip(root, point))


def _floor(x) -> int:
    return math.floor(x)


def _ceil(x) -> int:
    return math.ceil(x)


# -- alcoves ------------------------------------------------------------------


def alcove_containing(W: AffineWeylGroup, point, side: int = 0) -> Alcove:
    """Alcove containing ``point + side * eps * rho`` for small ``eps > 0``.

    With ``side = 0`` the point must be generic (off every hyperplane).
    """
    out = []
    for r in W.roots:
        val = pair(point, r)
        if side > 0:
            out.append(_floor(val) + 1)
        elif side < 0:
            out.append(_ceil(val))
        else:
            if Fraction(val).denominator == 1:
                raise ValueError(f"point {point} lies on a hyperplane")
            out.append(_floor(val) + 1)
    return tuple(out)


def translate_alcove(W: AffineWeylGroup, alcove: Alcove, lam: Sequence[int]) -> Alcove:
    return tuple(n + pair(lam, r) for n, r in zip(alcove, W.roots))


def interior_point(W: AffineWeylGroup, alcove: Alcove) -> tuple[Fraction, ...]:
    """An exact interior point: the image of ``rho / h`` under the alcove's element."""
    h = max(W.heights) + 1
    base = tuple(Fraction(1, h) for _ in range(W.rank))
    return W.act(W.element_of(alcove), base)


def is_dominant_alcove(alcove: Alcove) -> bool:
    return all(n >= 1 for n in alcove)


def in_shifted_cone(W: AffineWeylGroup, alcove: Alcove, lam: Sequence[int]) -> bool:
    """Whether the alcove lies in ``lam + C0+``."""
    return all(n - pair(lam, r) >= 1 for n, r in zip(alcove, W.roots))


def in_rho_cone(W: AffineWeylGroup, alcove: Alcove) -> bool:
    """Whether the alcove lies in ``rho + C0+``."""
    return all(n - h >= 1 for n, h in zip(alcove, W.heights))


def right_act_alcove(W: AffineWeylGroup, alcove: Alcove, i: int) -> Alcove:
    """``A s_i``: reflect ``A`` across its wall of type ``i``."""
    return W.alcove_of(W.rmul(W.element_of(alcove), i))


def crossed_root(W: AffineWeylGroup, A: Alcove, B: Alcove) -> int:
    """Index of the root whose hyperplane separates two adjacent alcoves."""
    diff = [a for a, (x, y) in enumerate(zip(A, B)) if x != y]
    if len(diff) != 1 or abs(A[diff[0]] - B[diff[0]]) != 1:
        raise ValueError("alcoves are not adjacent")
    return diff[0]


def periodic_less_adjacent(W: AffineWeylGroup, A: Alcove, B: Alcove) -> bool:
    """For adjacent alcoves: ``A < B`` in the periodic order, i.e. ``B`` is on the
    side of the separating hyperplane where the root pairing is larger."""
    a = crossed_root(W, A, B)
    return B[a] > A[a]


# -- boxes, hat and check -------------------------------------------------------


def special_point_of_box(W: AffineWeylGroup, alcove: Alcove) -> tuple[int, ...]:
    """The unique ``lam`` in the coweight lattice with ``alcove`` inside the box at ``lam``."""
    return tuple(alcove[W.rs.simple_index[i]] - 1 for i in range(W.rank))


def box_membership(point, lam) -> bool:
    return all(0 < p - l < 1 for p, l in zip(point, lam))


def _neg_w0_permutation(W: AffineWeylGroup) -> tuple[int, ...]:
    cached = getattr(W, "_negw0", None)
    if cached is None:
        perm = W.signed_permutation(W.w0().linear)
        assert all(sign < 0 for _, sign in perm)
        cached = tuple(b for b, _ in perm)
        W._negw0 = cached
    return cached


def w0_alcove(W: AffineWeylGroup, alcove: Alcove) -> Alcove:
    """``w0 A`` for the longest finite element."""
    perm = _neg_w0_permutation(W)
    return tuple(1 - alcove[perm[a]] for a in range(W.nroots))


def hat(W: AffineWeylGroup, alcove: Alcove) -> Alcove:
    """For ``A = lam + B`` with ``B`` in the box at 0: ``lam + 2 rho + w0 B``."""
    lam = special_point_of_box(W, alcove)
    B = translate_alcove(W, alcove, [-x for x in lam])
    shift = [x + 2 for x in lam]
    return translate_alcove(W, w0_alcove(W, B), shift)


def check(W: AffineWeylGroup, alcove: Alcove) -> Alcove:
    """For ``A = lam + B`` with ``B`` in the box at 0: ``lam + w0 B``."""
    lam = special_point_of_box(W, alcove)
    B = translate_alcove(W, alcove, [-x for x in lam])
    return translate_alcove(W, w0_alcove(W, B), lam)


def w_v(W: AffineWeylGroup, v: Sequence[int]) -> AffineElement:
    """``t_v w0 t_{-v}``, the longest element of the stabiliser of the point ``v``."""
    M = W.w0().linear
    Mv = W.act(AffineElement(M, (0,) * W.rank), v)
    return AffineElement(M, tuple(int(a - b) for a, b in zip(v, Mv)))


def conjugate_to_point(W: AffineWeylGroup, z: AffineElement, v: Sequence[int]) -> AffineElement:
    """``t_v z t_{-v}`` for a finite element ``z``."""
    zv = W.act(AffineElement(z.linear, (0,) * W.rank), v)
    return AffineElement(z.linear, tuple(int(a - b) for a, b in zip(v, zv)))


# -- facets -------------------------------------------------------------------


@dataclass(frozen=True)
class Facet:
    """A facet of the unit-scale arrangement, with an exact sample point."""

    pattern: tuple[tuple[int, int], ...]
    sample: tuple[Fraction, ...] = field(compare=False, hash=False)

    @property
    def equalities(self) -> dict[int, int]:
        return {a: k for a, (k, kind) in enumerate(self.pattern) if kind == 0}

    @property
    def open_part(self) -> dict[int, int]:
        return {a: n for a, (n, kind) in enumerate(self.pattern) if kind == 1}

    def is_alcove(self) -> bool:
        return all(kind == 1 for _, kind in self.pattern)

    def as_alcove(self) -> Alcove:
        if not self.is_alcove():
            raise ValueError("facet is not an alcove")
        return tuple(n for n, _ in self.pattern)


def facet_of(W: AffineWeylGroup, point) -> Facet:
    pattern = []
    for r in W.roots:
        val = Fraction(pair(point, r))
        if val.denominator == 1:
            pattern.append((int(val), 0))
        else:
            pattern.append((_floor(val) + 1, 1))
    return Facet(tuple(pattern), tuple(Fraction(x) for x in point))


def facet_dimension(W: AffineWeylGroup, h: Facet) -> int:
    rows = [list(map(Fraction, W.roots[a])) for a in h.equalities]
    rank = 0
    ncols = W.rank
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return W.rank - rank


def is_point(W: AffineWeylGroup, h: Facet) -> bool:
    return facet_dimension(W, h) == 0


def is_special(W: AffineWeylGroup, h: Facet) -> bool:
    """A point facet lying in the coweight lattice."""
    return is_point(W, h) and all(x.denominator == 1 for x in h.sample)


def facet_in_closure(h: Facet, alcove: Alcove) -> bool:
    for (k, kind), n in zip(h.pattern, alcove):
        if kind == 1:
            if k != n:
                return False
        elif k not in (n - 1, n):
            return False
    return True


def act_on_facet(W: AffineWeylGroup, w: AffineElement, h: Facet, n: int = 1) -> Facet:
    return facet_of(W, W.act(w, h.sample, n))


def in_fundamental_closure(W: AffineWeylGroup, h: Facet) -> bool:
    return facet_in_closure(h, W.fundamental_alcove)


def facet_J(W: AffineWeylGroup, h: Facet) -> tuple[int, ...]:
    """Generators fixing ``h`` (for ``h`` in the closure of the fundamental alcove
    these generate its stabiliser)."""
    return tuple(i for i, g in enumerate(W.generators) if W.act(g, h.sample) == h.sample)


def _fundamental_vertices(W: AffineWeylGroup, k: int) -> list[tuple[int, tuple[Fraction, ...]]]:
    """Vertices of the fundamental alcove of factor ``k``: (opposite generator, point)."""
    rs = W.rs
    sl = rs.factor_slice(k)
    theta = rs.highest_roots[k]
    verts = [(W.rank + k, tuple(Fraction(0) for _ in sl))]
    for i in sl:
        vec = tuple(Fraction(int(j == i), theta[i]) for j in sl)
        verts.append((i, vec))
    return verts


def facet_from_J(W: AffineWeylGroup, J: Iterable[int]) -> Facet:
    """The facet of the fundamental alcove's closure fixed exactly by ``J``."""
    J = set(J)
    coords = [Fraction(0)] * W.rank
    for k in range(len(W.rs.factors)):
        verts = [p for gen, p in _fundamental_vertices(W, k) if gen not in J]
        if not verts:
            raise ValueError("J contains every generator of a factor: the face is empty")
        for pos, i in enumerate(W.rs.factor_slice(k)):
            coords[i] = sum((p[pos] for p in verts), Fraction(0)) / len(verts)
    h = facet_of(W, tuple(coords))
    assert set(facet_J(W, h)) == J
    return h


def fundamental_facets(W: AffineWeylGroup) -> list[tuple[tuple[int, ...], Facet]]:
    """Every facet in the closure of the fundamental alcove, with its generator set."""
    per_factor = []
    for k in range(len(W.rs.factors)):
        gens = [g for g, _ in _fundamental_vertices(W, k)]
        subsets = []
        for mask in range(2 ** len(gens)):
            J = tuple(sorted(g for b, g in enumerate(gens) if mask >> b & 1))
            if len(J) < len(gens):
                subsets.append(J)
        per_factor.append(subsets)
    out = []
    for combo in product(*per_factor):
        J = tuple(sorted(g for part in combo for g in part))
        out.append((J, facet_from_J(W, J)))
    out.sort(key=lambda item: (len(item[0]), item[0]))
    return out


@dataclass(frozen=True)
class Stabilizer:
    generators: tuple[int, ...]
    elements: tuple[AffineElement, ...]
    longest: AffineElement


def stabilizer(W: AffineWeylGroup, h: Facet) -> Stabilizer:
    if not in_fundamental_closure(W, h):
        raise ValueError("facet is not in the closure of the fundamental alcove; reduce it first "
                         "with orbit_representative")
    J = facet_J(W, h)
    elems = tuple(W.parabolic_elements(J))
    return Stabilizer(J, elems, W.longest_element(J))


def orbit_representative(W: AffineWeylGroup, point, n: int = 1):
    """The unique point of ``W box_n point`` in the closure of ``a_n``, and ``x``
    with ``x box_n rep = point``."""
    p = tuple(Fraction(x) for x in point)
    word = []
    while True:
        step = None
        for i in range(W.rank):
            if p[i] < 0:
                step = i
                break
        if step is None:
            for k, theta in enumerate(W.rs.highest_roots):
                if pair(p, theta) > n:
                    step = W.rank + k
                    break
        if step is None:
            break
        p = W.act(W.generators[step], p, n)
        word.append(step)
    # rep = s_k ... s_1 point, so point = s_1 ... s_k rep
    x = W.from_word(word)
    rep = tuple(int(c) if c.denominator == 1 else c for c in p)
    return rep, x


def max_alcove_element(W: AffineWeylGroup, h: Facet) -> AffineElement:
    """Element whose alcove contains ``h`` and lies on the positive side of every
    hyperplane through ``h``."""
    return W.element_of(alcove_containing(W, h.sample, +1))


def min_alcove_element(W: AffineWeylGroup, h: Facet) -> AffineElement:
    return W.element_of(alcove_containing(W, h.sample, -1))


def facet_of_type(W: AffineWeylGroup, x: AffineElement, g: Facet) -> Facet:
    """The facet ``x g`` in the closure of ``x a_1``."""
    return act_on_facet(W, x, g)


def element_for_facet(W: AffineWeylGroup, h: Facet, J: Sequence[int]) -> AffineElement:
    """The maximal ``w`` with ``w g = h`` (``g`` of type ``J``); for dominant ``h``
    this is the element of fW^g parametrising ``h``."""
    return W.max_in_coset(min_alcove_element(W, h), J)


def hat_facet(W: AffineWeylGroup, h: Facet, g: Facet) -> Facet:
    """``h`` is a facet of type ``g``; take the periodic-minimal alcove ``A`` around
    ``h`` and return the facet of type ``g`` in the closure of ``hat(A)``."""
    A = alcove_containing(W, h.sample, -1)
    x = W.element_of(A)
    if facet_of_type(W, x, g) != h:
        raise AssertionError("minimal alcove does not carry the facet with the expected type")
    Ahat = hat(W, A)
    return facet_of_type(W, W.element_of(Ahat), g)


# -- regions ------------------------------------------------------------------


def enumerate_alcoves(W: AffineWeylGroup, radius: int, dominant: bool = False) -> list[Alcove]:
    seen = {W.identity}
    layer = [W.identity]
    while layer:
        nxt = []
        for w in layer:
            lw = W.length(w)
            if lw >= radius:
                continue
            for i in range(W.ngens):
                ws = W.rmul(w, i)
                if ws in seen or W.length(ws) != lw + 1:
                    continue
                if dominant and not W.in_fW(ws):
                    continue
                seen.add(ws)
                nxt.append(ws)
        layer = nxt
    return sorted(W.alcove_of(w) for w in seen)


def enumerate_g_elements(W: AffineWeylGroup, J: Sequence[int], radius: int) -> list[AffineElement]:
    """Elements of fW^g with length at most ``radius``."""
    out = []
    for A in enumerate_alcoves(W, radius, dominant=True):
        w = W.element_of(A)
        if W.is_max_in_coset(w, J):
            out.append(w)
    return out


def dominant_weights(W: AffineWeylGroup, radius: int) -> list[tuple[int, ...]]:
    """Dominant coweights with coordinate sum at most ``radius``."""
    out = []

    def rec(prefix, left):
        if len(prefix) == W.rank:
            out.append(tuple(prefix))
            return
        for c in range(left + 1):
            rec(prefix + [c], left - c)

    rec([], radius)
    return sorted(out)


def enumerate_region(W: AffineWeylGroup, radius: int, kind: str, J: Sequence[int] = ()) -> list:
    if kind == "alcoves":
        return enumerate_alcoves(W, radius)
    if kind == "dominant_alcoves":
        return enumerate_alcoves(W, radius, dominant=True)
    if kind == "g_facets":
        return enumerate_g_elements(W, J, radius)
    if kind == "dominant_weights":
        return dominant_weights(W, radius)
    raise ValueError(f"unknown region kind {kind!r}")


# -- periodic order -------------------------------------------------------------


def reflection(W: AffineWeylGroup, a: int, k: int) -> AffineElement:
    """Reflection in the hyperplane ``<p, alpha_a> = k``."""
    root = W.roots[a]
    cor = W.rs.coroots[a]
    M = tuple(tuple(int(i == j) - cor[i] * root[j] for j in range(W.rank)) for i in range(W.rank))
    return AffineElement(M, tuple(k * c for c in cor))


INDETERMINATE = "indeterminate"


def periodic_up_moves(W: AffineWeylGroup, A: Alcove, radius: int) -> list[Alcove]:
    """All ``s_H A`` with ``s_H A`` on the positive side of ``H`` and within radius."""
    out = []
    for a in range(W.nroots):
        n = A[a]
        # A lies below H_{a,k} iff n <= k; the image then has n' = 2k - n + 1
        k = n
        while 2 * k - n + 1 - 1 <= radius:
            B = W.left_act_alcove(reflection(W, a, k), A)
            if W.d(B) <= radius:
                out.append(B)
            k += 1
    return out


def periodic_leq(W: AffineWeylGroup, A: Alcove, B: Alcove, radius: int):
    """Order generated by ``C <= s_H C`` when ``s_H C`` is on the positive side of ``H``,
    explored inside the ball ``d <= radius``.

    Returns ``True`` when a chain is found.  Without a chain, ``False`` is only
    returned when the translation criterion certifies it (both alcoves shifted
    into the dominant cone and compared in the Bruhat order); otherwise the
    answer is ``INDETERMINATE``.
    """
    A, B = tuple(A), tuple(B)
    if W.d(A) > radius or W.d(B) > radius:
        raise ValueError("alcoves outside the region")
    if A == B:
        return True
    seen = {A}
    stack = [A]
    while stack:
        C = stack.pop()
        for D in periodic_up_moves(W, C, radius):
            if D == B:
                return True
            if D not in seen:
                seen.add(D)
                stack.append(D)
    if not periodic_leq_by_translation(W, A, B):
        return False
    return INDETERMINATE


def periodic_leq_by_translation(W: AffineWeylGroup, A: Alcove, B: Alcove) -> bool:
    """Decide the periodic order by translating both alcoves into the dominant
    cone, where it agrees with the Bruhat order."""
    shift = 0
    for a in W.rs.simple_index:
        shift = max(shift, 1 - A[a], 1 - B[a])
    # translating by m*rho raises every simple-root bound by m
    lam = (shift,) * W.rank
    A2 = translate_alcove(W, A, lam)
    B2 = translate_alcove(W, B, lam)
    assert is_dominant_alcove(A2) and is_dominant_alcove(B2)
    return W.bruhat_leq(W.element_of(A2), W.element_of(B2))
