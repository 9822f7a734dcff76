"""Brute-force oracles, written against the Cartan matrix only.

None of these call into the package's group, Hecke or block code; they are
the slow, obvious versions the fast code is checked against.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import floor

from affblocks.root_data import cartan_matrix, parse_cartan


def factor_cartans(type_string: str) -> list[list[list[int]]]:
    return [cartan_matrix(ct) for ct in parse_cartan(type_string)]


def valuation(vec, ell: int) -> int:
    r = 0
    while all(c % ell ** (r + 1) == 0 for c in vec):
        r += 1
    return r


def dot_orbit(A, start, step: int, bound: int) -> set:
    """Orbit of ``start`` (coordinates of ``lam + rho``) under the finite simple
    reflections and the translations by ``step * alpha_j^vee``, explored by
    breadth-first search inside the box ``|p_k| <= bound``."""
    n = len(A)
    moves = []
    for i in range(n):
        moves.append(("s", i))
    for j in range(n):
        moves.append(("t", j, 1))
        moves.append(("t", j, -1))
    seen = {tuple(start)}
    frontier = [tuple(start)]
    while frontier:
        nxt = []
        for p in frontier:
            for m in moves:
                if m[0] == "s":
                    i = m[1]
                    q = tuple(p[j] - p[i] * A[i][j] for j in range(n))
                else:
                    _, j, sign = m
                    q = tuple(p[k] + sign * step * A[j][k] for k in range(n))
                if max(abs(c) for c in q) > bound or q in seen:
                    continue
                seen.add(q)
                nxt.append(q)
        frontier = nxt
    return seen


def block_oracle(type_string: str, lam, ell: int, radius: int, mode: str = "modular") -> list:
    """Dominant weights of height at most ``radius`` linked to ``lam``."""
    parts = []
    pos = 0
    for A in factor_cartans(type_string):
        n = len(A)
        mu = lam[pos:pos + n]
        pos += n
        shifted = tuple(c + 1 for c in mu)
        r = valuation(shifted, ell)
        if mode == "modular":
            step = ell ** (r + 1)
        else:
            step = ell if r == 0 else None
        if step is None:
            members = [tuple(mu)] if sum(mu) <= radius else []
        else:
            bound = 4 * (radius + 1) + 4 * step * max(max(abs(x) for x in row) for row in A)
            orbit = dot_orbit(A, shifted, step, bound)
            members = sorted(tuple(c - 1 for c in p) for p in orbit
                             if all(c >= 1 for c in p) and sum(p) - n <= radius)
        parts.append(members)
    out = [tuple(x for part in combo for x in part) for combo in product(*parts)]
    return sorted(w for w in out if sum(w) <= radius)


def positive_roots_by_strings(A) -> list[tuple[int, ...]]:
    """Positive roots (simple-root coordinates) by closing under root strings."""
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                # <alpha_i^vee, r> with the Cartan convention A[i][j] = <alpha_i^vee, alpha_j>
                pairing = sum(A[i][j] * r[j] for j in range(n))
                # length of the i-string below r
                p = 0
                down = list(r)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                q = p - pairing
                if q > 0:
                    up = list(r)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        frontier = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


def separating_hyperplanes(roots, point) -> int:
    """Hyperplanes ``<p, alpha> = k`` between the fundamental alcove and the
    generic ``point``: ``|floor(<point, alpha>)|`` per positive root."""
    return sum(abs(floor(sum(Fraction(p) * c for p, c in zip(point, r)))) for r in roots)


def apply_word(A, theta, theta_check, word, point):
    """Apply the product of generators (finite reflections ``0..n-1``, then the
    affine reflection in ``<p, theta> = 1``) to ``point``, rightmost first."""
    n = len(A)
    p = [Fraction(c) for c in point]
    for g in reversed(word):
        if g < n:
            p = [p[j] - p[g] * A[g][j] for j in range(n)]
        else:
            t = sum(p[j] * theta[j] for j in range(n)) - 1
            p = [p[j] - t * theta_check[j] for j in range(n)]
    return tuple(p)


def a1_canonical_by_hand(k_max: int) -> dict:
    """Antispherical canonical basis of affine A1 in alcove labels ``A_k``:
    ``N_{A_k} + v N_{A_{k-1}}`` for ``k >= 1`` (the rank-one recursion)."""
    out = {0: {0: {0: 1}}}
    for k in range(1, k_max + 1):
        out[k] = {k: {0: 1}, k - 1: {1: 1}}
    return out
