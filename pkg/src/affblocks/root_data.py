"""Root data generated from Cartan matrices.

Coordinates
-----------
A coweight ``lam`` is an integer tuple in the basis of fundamental coweights,
so ``lam[i]`` is the pairing of ``lam`` with the simple root ``alpha_i``.  A
root is a tuple of simple-root coefficients, and pairing is a dot product.
In these coordinates rho-check is the all-ones vector and the coroot of a
root is the vector of its pairings with the simple roots.

The Cartan matrix follows the convention ``A[i][j] = <alpha_i^vee, alpha_j>``
with Bourbaki numbering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

_ALLOWED = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# classical counts, used as a sanity check after root generation
_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True, order=True)
class CartanType:
    letter: str
    rank: int

    def __post_init__(self):
        if self.letter not in _ALLOWED or not _ALLOWED[self.letter](self.rank):
            raise ValueError(f"invalid Cartan type factor {self.letter}{self.rank}")

    def __str__(self):
        return f"{self.letter}{self.rank}"


def parse_cartan(text: str) -> list[CartanType]:
    """Parse ``"A1xC2"`` style strings (case-insensitive, ``x`` separated)."""
    if not isinstance(text, str) or not text.strip():
        raise ValueError("empty Cartan type string")
    factors = []
    for piece in re.split(r"[xX×]", text.strip()):
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", piece)
        if not m:
            raise ValueError(f"invalid Cartan type factor {piece!r}")
        factors.append(CartanType(m.group(1).upper(), int(m.group(2))))
    return factors


def cartan_matrix(ct: CartanType) -> list[list[int]]:
    n, t = ct.rank, ct.letter
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a_ij=-1, a_ji=-1):
        A[i][j] = a_ij
        A[j][i] = a_ji

    if t in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if t == "B":
            # alpha_n short
            A[n - 1][n - 2] = -2
        elif t == "C":
            # alpha_n long
            A[n - 2][n - 1] = -2
    elif t == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif t == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif t == "F":
        link(0, 1)
        link(2, 3)
        link(1, 2, -1, -2)
    elif t == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return A


def _symmetrizer(A: list[list[int]]) -> list[Fraction]:
    """Squared simple root lengths, normalised so the shortest has length 1."""
    n = len(A)
    lengths: list[Fraction | None] = [None] * n
    for start in range(n):
        if lengths[start] is not None:
            continue
        lengths[start] = Fraction(1)
        stack = [start]
        comp = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and A[i][j] and lengths[j] is None:
                    # A[i][j] |alpha_i|^2 = A[j][i] |alpha_j|^2
                    lengths[j] = lengths[i] * A[i][j] / A[j][i]
                    stack.append(j)
                    comp.append(j)
        low = min(lengths[i] for i in comp)
        for i in comp:
            lengths[i] = lengths[i] / low
    return lengths  # type: ignore[return-value]


def _positive_roots(A: list[list[int]]) -> list[tuple[int, ...]]:
    """Generate positive roots by extending root strings from the simple roots."""
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                if beta == simple[i]:
                    continue
                # p = how far the alpha_i string extends below beta
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * A[i][j] for j in range(n))
                q = p - pairing
                if q > 0:
                    gamma = list(beta)
                    gamma[i] += 1
                    gamma = tuple(gamma)
                    if gamma not in roots:
                        roots.add(gamma)
                        nxt.append(gamma)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), tuple(-c for c in r)))


@dataclass(frozen=True)
class RootSystem:
    """Root data for a product of irreducible Cartan types.

    Coordinates of the factors are concatenated in factor order.
    """

    factors: tuple[CartanType, ...]
    cartan: tuple[tuple[int, ...], ...] = field(repr=False)
    factor_offsets: tuple[int, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def name(self) -> str:
        return "x".join(str(f) for f in self.factors)

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        # pairing of alpha_i with the fundamental coweights is the identity
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    def factor_slice(self, k: int) -> range:
        start = self.factor_offsets[k]
        return range(start, start + self.factors[k].rank)

    def factor_of_index(self, i: int) -> int:
        for k in range(len(self.factors)):
            if i in self.factor_slice(k):
                return k
        raise IndexError(i)

    @cached_property
    def root_lengths(self) -> tuple[Fraction, ...]:
        return tuple(_symmetrizer([list(r) for r in self.cartan]))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        roots = []
        for k, ct in enumerate(self.factors):
            sub = [row[self.factor_offsets[k]: self.factor_offsets[k] + ct.rank]
                   for row in self.cartan[self.factor_offsets[k]: self.factor_offsets[k] + ct.rank]]
            for r in _positive_roots(sub):
                full = [0] * self.rank
                for j, c in enumerate(r):
                    full[self.factor_offsets[k] + j] = c
                roots.append(tuple(full))
        return tuple(sorted(roots, key=lambda r: (sum(r), tuple(-c for c in r))))

    @cached_property
    def root_index(self) -> dict[tuple[int, ...], int]:
        return {r: i for i, r in enumerate(self.positive_roots)}

    @cached_property
    def simple_index(self) -> tuple[int, ...]:
        """Position of each simple root inside ``positive_roots``."""
        return tuple(self.root_index[s] for s in self.simple_roots)

    def height(self, root) -> int:
        return sum(root)

    def squared_length(self, root) -> Fraction:
        L = self.root_lengths
        total = Fraction(0)
        for i, ci in enumerate(root):
            if not ci:
                continue
            for j, cj in enumerate(root):
                if cj:
                    total += ci * cj * self.cartan[i][j] * L[i] / 2
        return total

    def coroot(self, root) -> tuple[int, ...]:
        """Coweight coordinates of the coroot: ``<alpha^vee, alpha_j>`` for each j."""
        L = self.root_lengths
        norm = self.squared_length(root)
        out = []
        for j in range(self.rank):
            # (alpha, alpha_j) = sum_i c_i A[i][j] |alpha_i|^2 / 2
            inner = sum(Fraction(root[i] * self.cartan[i][j]) * L[i] / 2 for i in range(self.rank))
            val = 2 * inner / norm
            assert val.denominator == 1
            out.append(int(val))
        return tuple(out)

    def coroot_in_simple_coroots(self, root) -> tuple[int, ...]:
        """Coefficients of ``alpha^vee`` in the basis of simple coroots."""
        L = self.root_lengths
        norm = self.squared_length(root)
        out = []
        for i, c in enumerate(root):
            val = Fraction(c) * L[i] / norm
            assert val.denominator == 1
            out.append(int(val))
        return tuple(out)

    @cached_property
    def coroots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.coroot(r) for r in self.positive_roots)

    @cached_property
    def highest_roots(self) -> tuple[tuple[int, ...], ...]:
        """Highest root of each irreducible factor, in factor order."""
        out = []
        for k in range(len(self.factors)):
            sl = self.factor_slice(k)
            cands = [r for r in self.positive_roots if any(r[i] for i in sl)]
            out.append(max(cands, key=sum))
        return tuple(out)

    @cached_property
    def coxeter_numbers(self) -> tuple[int, ...]:
        return tuple(sum(theta) + 1 for theta in self.highest_roots)

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        """A W0-invariant integer form on coweights: sum over positive roots of
        ``<x, alpha><y, alpha>``."""
        n = self.rank
        G = [[0] * n for _ in range(n)]
        for r in self.positive_roots:
            for i in range(n):
                if r[i]:
                    for j in range(n):
                        G[i][j] += r[i] * r[j]
        return tuple(tuple(row) for row in G)

    def norm2(self, lam) -> Fraction:
        G = self.gram
        return sum(Fraction(lam[i]) * G[i][j] * lam[j] for i in range(self.rank) for j in range(self.rank))


def build_root_system(kind) -> RootSystem:
    """Build a root system from ``"A1xC2"`` or a list of ``(letter, rank)`` pairs."""
    if isinstance(kind, RootSystem):
        return kind
    if isinstance(kind, str):
        factors = parse_cartan(kind)
    else:
        factors = []
        for item in kind:
            if isinstance(item, CartanType):
                factors.append(item)
            else:
                letter, rank = item
                factors.append(CartanType(str(letter).upper(), int(rank)))
    if not factors:
        raise ValueError("a root system needs at least one factor")
    n = sum(f.rank for f in factors)
    cartan = [[0] * n for _ in range(n)]
    offsets = []
    pos = 0
    for f in factors:
        offsets.append(pos)
        block = cartan_matrix(f)
        for i in range(f.rank):
            for j in range(f.rank):
                cartan[pos + i][pos + j] = block[i][j]
        pos += f.rank
    rs = RootSystem(tuple(factors), tuple(tuple(r) for r in cartan), tuple(offsets))
    for k, f in enumerate(factors):
        count = sum(1 for r in rs.positive_roots if any(r[i] for i in rs.factor_slice(k)))
        if count != _POSITIVE_COUNT[f.letter](f.rank):
            raise AssertionError(f"root generation failed for {f}")
    return rs


def pairing(lam, root) -> int | Fraction:
    """``<lam, alpha>`` for ``alpha`` given by simple-root coefficients."""
    return sum(c * x for c, x in zip(root, lam))


def rho_check(rs: RootSystem) -> tuple[int, ...]:
    return (1,) * rs.rank


def highest_short_coroots(rs: RootSystem) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """For each factor, the highest root ``theta`` of R together with its coroot.

    ``theta^vee`` is the largest short root of the dual root system, which is
    what seeds the affine simple reflection of that factor.
    """
    return [(theta, rs.coroot(theta)) for theta in rs.highest_roots]


def decompose_irreducible(rs: RootSystem) -> list[tuple[RootSystem, range]]:
    """Irreducible factors with the coordinate range each occupies.

    Factors are found from the connectivity of the Dynkin diagram, so a
    Cartan matrix assembled by hand would be split the same way.
    """
    n = rs.rank
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and (rs.cartan[i][j] or rs.cartan[j][i]):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        k = rs.factor_of_index(comp[0])
        sl = rs.factor_slice(k)
        if list(sl) != comp:
            raise AssertionError("factor bookkeeping disagrees with the Dynkin diagram")
        out.append((build_root_system([rs.factors[k]]), sl))
    return out


def in_coroot_lattice(rs: RootSystem, lam) -> bool:
    """Whether ``lam`` (coweight coordinates) is an integer combination of simple coroots."""
    coeffs = solve_in_simple_coroots(rs, lam)
    return all(c.denominator == 1 for c in coeffs)


def solve_in_simple_coroots(rs: RootSystem, lam) -> list[Fraction]:
    """Rational coefficients ``x`` with ``sum_i x_i alpha_i^vee = lam``.

    The coweight coordinates of ``alpha_i^vee`` form row ``i`` of the Cartan
    matrix, so we solve ``x A = lam`` by exact elimination.
    """
    n = rs.rank
    # transpose system: A^T x = lam
    M = [[Fraction(rs.cartan[j][i]) for j in range(n)] + [Fraction(lam[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def is_dominant(lam) -> bool:
    return all(x >= 0 for x in lam)


def is_strictly_dominant(lam) -> bool:
    return all(x > 0 for x in lam)
