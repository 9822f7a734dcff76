"""The affine Weyl group as a group of affine maps on coweight coordinates.

An element is a pair ``(M, t)`` acting on a point ``p`` at scale ``n`` by
``p -> M p + n t``.  ``M`` is an integer matrix in the finite Weyl group and
``t`` a coweight.  The element lies in the affine Weyl group proper when ``t``
is in the coroot lattice; otherwise it lies in the extended group.

Generators are indexed as follows: ``0..rank-1`` are the finite simple
reflections in Dynkin order, then one affine reflection per irreducible factor
(in factor order).  The affine reflection of a factor with highest root
``theta`` is the reflection in the hyperplane ``<p, theta> = 1``, i.e. a wall
of the fundamental alcove.

Alcoves are integer tuples ``n`` indexed like ``RootSystem.positive_roots``:
the alcove is ``{p : n_a - 1 < <p, a> < n_a}``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from ..root_data import RootSystem, build_root_system, in_coroot_lattice

Matrix = tuple[tuple[int, ...], ...]
Alcove = tuple[int, ...]


class AffineElement(NamedTuple):
    linear: Matrix
    translation: tuple[int, ...]


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(A[i], cols[j])) for j in range(n)) for i in range(n))


def _matvec(A: Matrix, x) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def _inverse(A: Matrix) -> Matrix:
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    out = []
    for i in range(n):
        row = M[i][n:]
        assert all(x.denominator == 1 for x in row)
        out.append(tuple(int(x) for x in row))
    return tuple(out)


class NotInAffineWeylGroup(ValueError):
    pass


class AffineWeylGroup:
    """Affine Weyl group of a root system, with memoised lengths and alcoves.

    Caches are plain dicts guarded by a lock on insert; reads are lock-free.
    All cached values are deterministic functions of their keys, so a racing
    duplicate computation can only ever store an identical value.
    """

    def __init__(self, rs: RootSystem | str):
        rs = build_root_system(rs)
        self.rs = rs
        self.rank = rs.rank
        self.roots = rs.positive_roots
        self.nroots = len(self.roots)
        self.root_index = rs.root_index
        self.heights = tuple(sum(r) for r in self.roots)
        self.identity = AffineElement(_identity(self.rank), (0,) * self.rank)
        self.fundamental_alcove: Alcove = (1,) * self.nroots
        self._lock = threading.Lock()

        gens = []
        self.generator_factor = []
        for i in range(self.rank):
            M = [list(r) for r in _identity(self.rank)]
            for j in range(self.rank):
                M[j][i] -= rs.cartan[i][j]
            gens.append(AffineElement(tuple(tuple(r) for r in M), (0,) * self.rank))
            self.generator_factor.append(rs.factor_of_index(i))
        self.theta_index = []
        for k, theta in enumerate(rs.highest_roots):
            tc = rs.coroot(theta)
            M = tuple(tuple(int(i == j) - tc[i] * theta[j] for j in range(self.rank)) for i in range(self.rank))
            gens.append(AffineElement(M, tc))
            self.generator_factor.append(k)
            self.theta_index.append(self.root_index[theta])
        self.generators: tuple[AffineElement, ...] = tuple(gens)
        self.ngens = len(gens)
        self.finite_generators = tuple(range(self.rank))
        self.affine_generators = tuple(range(self.rank, self.ngens))

        self._signed_perm: dict[Matrix, tuple[tuple[int, int], ...]] = {}
        self._alcove: dict[AffineElement, Alcove] = {}
        self._element: dict[Alcove, AffineElement] = {}
        self._rmul: dict[tuple[AffineElement, int], AffineElement] = {}
        self._word: dict[AffineElement, tuple[int, ...]] = {}
        self._inv: dict[Matrix, Matrix] = {}

    def __repr__(self):
        return f"AffineWeylGroup({self.rs.name})"

    # -- arithmetic -------------------------------------------------------

    def mul(self, a: AffineElement, b: AffineElement) -> AffineElement:
        M1, t1 = a
        M2, t2 = b
        t = tuple(x + y for x, y in zip(_matvec(M1, t2), t1))
        return AffineElement(_matmul(M1, M2), t)

    def rmul(self, w: AffineElement, i: int) -> AffineElement:
        """``w * s_i`` (memoised: this is the inner loop of every recursion)."""
        key = (w, i)
        out = self._rmul.get(key)
        if out is None:
            out = self.mul(w, self.generators[i])
            with self._lock:
                self._rmul[key] = out
        return out

    def lmul(self, i: int, w: AffineElement) -> AffineElement:
        return self.mul(self.generators[i], w)

    def linear_inverse(self, M: Matrix) -> Matrix:
        out = self._inv.get(M)
        if out is None:
            out = _inverse(M)
            with self._lock:
                self._inv[M] = out
        return out

    def inverse(self, w: AffineElement) -> AffineElement:
        Minv = self.linear_inverse(w.linear)
        return AffineElement(Minv, tuple(-x for x in _matvec(Minv, w.translation)))

    def from_word(self, word: Iterable[int]) -> AffineElement:
        w = self.identity
        for i in word:
            if not 0 <= i < self.ngens:
                raise ValueError(f"generator index {i} out of range 0..{self.ngens - 1}")
            w = self.rmul(w, i)
        return w

    def translation(self, lam: Sequence[int]) -> AffineElement:
        """The translation ``t_lam`` (in the extended group unless ``lam`` is a coroot-lattice point)."""
        return AffineElement(self.identity.linear, tuple(int(x) for x in lam))

    def in_W(self, w: AffineElement) -> bool:
        return in_coroot_lattice(self.rs, w.translation)

    def is_finite(self, w: AffineElement) -> bool:
        return not any(w.translation)

    # -- actions on points ------------------------------------------------

    def act(self, w: AffineElement, point, n: int = 1) -> tuple:
        """``w box_n point``: ``M point + n t``, exact on ints and Fractions."""
        return tuple(x + n * t for x, t in zip(_matvec(w.linear, point), w.translation))

    def act_dot(self, w: AffineElement, lam, ell: int) -> tuple:
        """Dot action ``w dot_ell lam = w box_ell (lam + rho) - rho``."""
        shifted = tuple(x + 1 for x in lam)
        return tuple(x - 1 for x in self.act(w, shifted, ell))

    # -- alcoves ----------------------------------------------------------

    def signed_permutation(self, M: Matrix) -> tuple[tuple[int, int], ...]:
        """For each positive root a, the pair (index of b, sign) with ``M^T a = sign * b``.

        ``M^T`` acting on root coefficients is the inverse of ``M`` acting on roots,
        so ``<M p, a> = sign * <p, b>``.
        """
        out = self._signed_perm.get(M)
        if out is not None:
            return out
        n = self.rank
        res = []
        for r in self.roots:
            image = tuple(sum(M[j][k] * r[j] for j in range(n)) for k in range(n))
            if image in self.root_index:
                res.append((self.root_index[image], 1))
            else:
                res.append((self.root_index[tuple(-c for c in image)], -1))
        out = tuple(res)
        with self._lock:
            self._signed_perm[M] = out
        return out

    def left_act_alcove(self, w: AffineElement, alcove: Alcove) -> Alcove:
        """Image of an alcove under any element of the extended group."""
        perm = self.signed_permutation(w.linear)
        t = w.translation
        out = []
        for a, (b, sign) in enumerate(perm):
            shift = sum(c * x for c, x in zip(self.roots[a], t))
            if sign > 0:
                out.append(alcove[b] + shift)
            else:
                out.append(1 - alcove[b] + shift)
        return tuple(out)

    def alcove_of(self, w: AffineElement) -> Alcove:
        out = self._alcove.get(w)
        if out is None:
            out = self.left_act_alcove(w, self.fundamental_alcove)
            with self._lock:
                self._alcove[w] = out
        return out

    def element_of(self, alcove: Alcove) -> AffineElement:
        """Unique ``w`` in W with ``w a_1 = alcove``, found by reflecting the
        alcove back through walls of ``a_1`` that separate it from ``a_1``."""
        alcove = tuple(alcove)
        out = self._element.get(alcove)
        if out is not None:
            return out
        if len(alcove) != self.nroots:
            raise ValueError("alcove has the wrong number of bounds")
        A = alcove
        word = []
        while A != self.fundamental_alcove:
            step = None
            for i in range(self.rank):
                if A[self.rs.simple_index[i]] <= 0:
                    step = i
                    break
            if step is None:
                for k, ti in enumerate(self.theta_index):
                    if A[ti] >= 2:
                        step = self.rank + k
                        break
            if step is None:
                raise ValueError(f"{alcove} does not describe an alcove")
            A = self.left_act_alcove(self.generators[step], A)
            word.append(step)
        w = self.from_word(word)
        if self.alcove_of(w) != alcove:
            raise ValueError(f"{alcove} does not describe an alcove")
        with self._lock:
            self._element[alcove] = w
        return w

    @staticmethod
    def d(alcove: Alcove) -> int:
        """Number of hyperplanes separating ``alcove`` from the fundamental alcove."""
        return sum(abs(n - 1) for n in alcove)

    def length(self, w: AffineElement) -> int:
        return sum(abs(n - 1) for n in self.alcove_of(w))

    def in_fW(self, w: AffineElement) -> bool:
        """``w`` minimal in ``W0 w``, i.e. its alcove is dominant."""
        return all(n >= 1 for n in self.alcove_of(w))

    # -- words and descents -----------------------------------------------

    def right_descents(self, w: AffineElement) -> list[int]:
        lw = self.length(w)
        return [i for i in range(self.ngens) if self.length(self.rmul(w, i)) < lw]

    def left_descents(self, w: AffineElement) -> list[int]:
        lw = self.length(w)
        return [i for i in range(self.ngens) if self.length(self.lmul(i, w)) < lw]

    def first_right_descent(self, w: AffineElement) -> int | None:
        lw = self.length(w)
        for i in range(self.ngens):
            if self.length(self.rmul(w, i)) < lw:
                return i
        return None

    def reduced_word(self, w: AffineElement) -> tuple[int, ...]:
        """Reduced word, stripping the lowest-indexed right descent each time."""
        cached = self._word.get(w)
        if cached is not None:
            return cached
        if not self.in_W(w):
            raise NotInAffineWeylGroup("translation part is not in the coroot lattice")
        rev = []
        x = w
        while True:
            i = self.first_right_descent(x)
            if i is None:
                break
            rev.append(i)
            x = self.rmul(x, i)
        word = tuple(reversed(rev))
        with self._lock:
            self._word[w] = word
        return word

    def is_min_in_W0w(self, w: AffineElement) -> bool:
        """Left-descent test: no finite simple reflection shortens ``w`` from the left."""
        lw = self.length(w)
        return all(self.length(self.lmul(i, w)) > lw for i in self.finite_generators)

    # -- Bruhat order -----------------------------------------------------

    def bruhat_leq(self, x: AffineElement, y: AffineElement) -> bool:
        """Bruhat order via the lifting property along right descents of ``y``."""
        while True:
            lx, ly = self.length(x), self.length(y)
            if lx >= ly:
                return x == y
            if lx == 0:
                return True
            s = self.first_right_descent(y)
            xs = self.rmul(x, s)
            if self.length(xs) < lx:
                x = xs
            y = self.rmul(y, s)

    def lower_interval(self, y: AffineElement) -> set[AffineElement]:
        """All ``x <= y``, as products of subwords of a reduced word of ``y``."""
        out = {self.identity}
        for i in self.reduced_word(y):
            out |= {self.rmul(x, i) for x in out}
        return out

    def bruhat_leq_subword(self, x: AffineElement, y: AffineElement) -> bool:
        return x in self.lower_interval(y)

    # -- parabolic subgroups and cosets -----------------------------------

    def parabolic_elements(self, J: Iterable[int]) -> list[AffineElement]:
        J = sorted(J)
        seen = {self.identity}
        layer = [self.identity]
        while layer:
            nxt = []
            for w in layer:
                for i in J:
                    ws = self.rmul(w, i)
                    if ws not in seen:
                        seen.add(ws)
                        nxt.append(ws)
            layer = nxt
            if len(seen) > 2_000_000:
                raise ValueError("parabolic subgroup is not finite")
        return sorted(seen, key=lambda u: (self.length(u), self.reduced_word(u)))

    def longest_element(self, J: Iterable[int]) -> AffineElement:
        return self.max_in_coset(self.identity, J)

    def max_in_coset(self, w: AffineElement, J: Iterable[int]) -> AffineElement:
        """Maximal element of ``w W_J`` (``W_J`` finite), by greedy ascent."""
        J = sorted(J)
        changed = True
        while changed:
            changed = False
            lw = self.length(w)
            for i in J:
                ws = self.rmul(w, i)
                if self.length(ws) > lw:
                    w = ws
                    changed = True
                    break
        return w

    def min_in_coset(self, w: AffineElement, J: Iterable[int]) -> AffineElement:
        J = sorted(J)
        changed = True
        while changed:
            changed = False
            lw = self.length(w)
            for i in J:
                ws = self.rmul(w, i)
                if self.length(ws) < lw:
                    w = ws
                    changed = True
                    break
        return w

    def is_max_in_coset(self, w: AffineElement, J: Iterable[int]) -> bool:
        lw = self.length(w)
        return all(self.length(self.rmul(w, i)) < lw for i in J)

    def is_in_fWg(self, w: AffineElement, J: Iterable[int]) -> bool:
        """``w`` maximal in ``w W_J`` and minimal in ``W0 w``."""
        J = list(J)
        return self.is_max_in_coset(w, J) and self.in_fW(w)

    def is_in_fWg_by_coset(self, w: AffineElement, J: Iterable[int]) -> bool:
        """Equivalent criterion: ``w`` maximal in its coset and ``w r`` in fW for every r in W_J."""
        J = list(J)
        return self.is_max_in_coset(w, J) and all(self.in_fW(self.mul(w, r)) for r in self.parabolic_elements(J))

    # -- the finite Weyl group --------------------------------------------

    def finite_weyl_group(self) -> list[AffineElement]:
        return self.parabolic_elements(self.finite_generators)

    def w0(self) -> AffineElement:
        return self.longest_element(self.finite_generators)

    def finite_linear(self, M: Matrix) -> AffineElement:
        return AffineElement(M, (0,) * self.rank)


_GROUPS: dict[str, AffineWeylGroup] = {}
_GROUPS_LOCK = threading.Lock()


def affine_weyl_group(rs) -> AffineWeylGroup:
    """Shared group instance per root system (caches are per instance)."""
    rs = build_root_system(rs)
    key = rs.name
    with _GROUPS_LOCK:
        g = _GROUPS.get(key)
        if g is None:
            g = AffineWeylGroup(rs)
            _GROUPS[key] = g
        return g


def reset_groups() -> None:
    with _GROUPS_LOCK:
        _GROUPS.clear()
