"""Sparse Laurent polynomials in one variable ``v`` with integer coefficients.

A polynomial is stored as a dict ``{exponent: coefficient}`` with no zero
coefficients.  Instances are treated as immutable values; the hot loops of the
canonical-basis code work on plain dicts and only wrap results at the API
boundary (see ``LaurentPolynomial.from_dict``).
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPolynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | int = 0):
        if isinstance(terms, int):
            data = {0: terms} if terms else {}
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            data: dict[int, int] = {}
            for e, c in items:
                if c:
                    data[int(e)] = data.get(int(e), 0) + int(c)
            data = {e: c for e, c in data.items() if c}
        self._terms = data
        self._hash = None

    @classmethod
    def from_dict(cls, data: dict[int, int]) -> "LaurentPolynomial":
        """Wrap ``data`` without copying.  The caller gives up ownership."""
        p = cls.__new__(cls)
        p._terms = {e: c for e, c in data.items() if c}
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        return cls({exponent: coefficient})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """Sorted ``(exponent, coefficient)`` pairs."""
        return tuple(sorted(self._terms.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def min_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    def max_degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def at_one(self) -> int:
        return sum(self._terms.values())

    def evaluate(self, value):
        return sum(c * value**e for e, c in self._terms.items())

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial.from_dict(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial.from_dict({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial.from_dict(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentPolynomial({-e * (-n): c ** (-n)})
        result = LaurentPolynomial(1)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``v**k``."""
        return LaurentPolynomial.from_dict({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPolynomial":
        """The ring involution ``v -> v^{-1}``."""
        return LaurentPolynomial.from_dict({-e: c for e, c in self._terms.items()})

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPolynomial":
        return cls((int(e), int(c)) for e, c in data)

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                power = "v" if e == 1 else f"v^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            text += f" {sign} {mono}"
        return text


def _coerce(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial(x)
    raise TypeError(f"cannot combine LaurentPolynomial with {type(x).__name__}")


v = LaurentPolynomial({1: 1})
ONE = LaurentPolynomial(1)
ZERO = LaurentPolynomial(0)
