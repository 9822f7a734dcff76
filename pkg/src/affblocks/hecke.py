"""Hecke algebra, Kazhdan-Lusztig basis and the antispherical module.

Normalisation: ``C_s = H_s + v`` and ``H_s^2 = 1 + (v^-1 - v) H_s``.  The
canonical basis element of ``y`` lies in ``H_y + sum_x v Z[v] H_x``.

The antispherical module has standard basis ``N_w`` for ``w`` in fW (minimal
in ``W0 w``, i.e. dominant alcove) with right action

    N_w C_s = N_ws + v N_w      if ws in fW and ws > w
    N_w C_s = N_ws + v^-1 N_w   if ws in fW and ws < w
    N_w C_s = 0                 if ws not in fW

Canonical elements are computed by the usual induction: take the lowest
right descent ``s`` of ``w``, form ``N_ws C_s`` and subtract multiples of
lower canonical elements until every off-diagonal coefficient lies in
``v Z[v]``.  Internally polynomials are plain ``{exponent: coeff}`` dicts.
"""

from __future__ import annotations

import heapq
import threading
from collections.abc import Mapping
from typing import Callable, Iterator

from .affine_weyl import AffineElement, AffineWeylGroup, affine_weyl_group
from .laurent import LaurentPolynomial
from .root_data import build_root_system

Poly = dict[int, int]
Elem = dict


class ModuleElement(Mapping):
    """Finite sparse combination ``key -> LaurentPolynomial`` (zero terms dropped)."""

    __slots__ = ("_data",)

    def __init__(self, data=None):
        self._data = {}
        if data:
            for k, p in dict(data).items():
                p = p if isinstance(p, LaurentPolynomial) else LaurentPolynomial(p)
                if p:
                    self._data[k] = p

    @classmethod
    def from_raw(cls, raw: Elem) -> "ModuleElement":
        out = cls()
        out._data = {k: LaurentPolynomial(p) for k, p in raw.items() if p}
        return out

    def __getitem__(self, key) -> LaurentPolynomial:
        return self._data.get(key, LaurentPolynomial(0))

    def __contains__(self, key):
        return key in self._data

    def __iter__(self) -> Iterator:
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        if isinstance(other, ModuleElement):
            return self._data == other._data
        if isinstance(other, Mapping):
            return self == ModuleElement(other)
        return NotImplemented

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        out = dict(self._data)
        for k, p in other.items():
            out[k] = out.get(k, LaurentPolynomial(0)) + p
        return ModuleElement(out)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + other.scale(LaurentPolynomial(-1))

    def scale(self, p) -> "ModuleElement":
        p = p if isinstance(p, LaurentPolynomial) else LaurentPolynomial(p)
        return ModuleElement({k: q * p for k, q in self._data.items()})

    def raw(self) -> Elem:
        return {k: p.as_dict() for k, p in self._data.items()}

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {p!r}" for k, p in self._data.items())
        return f"ModuleElement({{{inner}}})"


def _axpy(target: Elem, key, poly: Poly, coeff: int = 1, shift: int = 0) -> None:
    """``target[key] += coeff * v^shift * poly`` in place, dropping zeros."""
    t = target.get(key)
    if t is None:
        t = target[key] = {}
    for e, c in poly.items():
        e2 = e + shift
        val = t.get(e2, 0) + coeff * c
        if val:
            t[e2] = val
        else:
            t.pop(e2, None)
    if not t:
        del target[key]


class _Memo:
    """Memo table with concurrent reads and single-writer computation per key.

    A thread asking for a key that another thread is computing waits for it
    instead of duplicating the work.  Dependencies always go to strictly
    shorter elements, so waiting cannot deadlock.
    """

    def __init__(self):
        self.data: dict = {}
        self._pending: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self.data.get(key)

    def get_or_compute(self, key, fn: Callable):
        val = self.data.get(key)
        if val is not None:
            return val
        with self._lock:
            val = self.data.get(key)
            if val is not None:
                return val
            event = self._pending.get(key)
            owner = event is None
            if owner:
                event = self._pending[key] = threading.Event()
        if not owner:
            event.wait()
            return self.data[key]
        try:
            val = fn()
            with self._lock:
                self.data[key] = val
        finally:
            with self._lock:
                self._pending.pop(key, None)
            event.set()
        return val

    def put(self, key, val) -> None:
        with self._lock:
            self.data[key] = val

    def clear(self) -> None:
        with self._lock:
            self.data.clear()


class KLEngine:
    """Canonical bases of the Hecke algebra and the antispherical module of one
    affine Weyl group."""

    def __init__(self, W: AffineWeylGroup):
        self.W = W
        self.memo_H = _Memo()
        self.memo_N = _Memo()
        self._bar_H = _Memo()
        self._bar_N = _Memo()

    @property
    def name(self) -> str:
        return self.W.rs.name

    # -- right action of C_s ------------------------------------------------

    def _act(self, elem: Elem, i: int, antispherical: bool) -> Elem:
        W = self.W
        out: Elem = {}
        for x, p in elem.items():
            xs = W.rmul(x, i)
            if antispherical and not W.in_fW(xs):
                continue
            _axpy(out, xs, p)
            _axpy(out, x, p, shift=1 if W.length(xs) > W.length(x) else -1)
        return out

    def mul_Cs_hecke(self, elem, i: int) -> ModuleElement:
        return ModuleElement.from_raw(self._act(_raw(elem), i, False))

    def asph_act_Cs(self, elem, i: int) -> ModuleElement:
        W = self.W
        raw = _raw(elem)
        for x in raw:
            if not W.in_fW(x):
                raise ValueError("antispherical elements are supported on fW")
        return ModuleElement.from_raw(self._act(raw, i, True))

    # -- canonical bases ------------------------------------------------------

    def _reduce(self, res: Elem, top: AffineElement, canonical: Callable) -> Elem:
        W = self.W
        heap = [(-W.length(x), x) for x in res if x != top]
        heapq.heapify(heap)
        done = set()
        while heap:
            _, x = heapq.heappop(heap)
            if x in done:
                continue
            done.add(x)
            p = res.get(x)
            if not p:
                continue
            c = p.get(0, 0)
            if not c:
                continue
            for x2, q in canonical(x).items():
                _axpy(res, x2, q, coeff=-c)
                if x2 != x and x2 not in done:
                    heapq.heappush(heap, (-W.length(x2), x2))
        for x, p in res.items():
            if x == top:
                if p != {0: 1}:
                    raise AssertionError("leading coefficient of a canonical element is not 1")
            elif min(p) < 1:
                raise AssertionError("canonical element has a coefficient outside v Z[v]")
        return res

    def _canonical(self, w: AffineElement, antispherical: bool) -> Elem:
        memo = self.memo_N if antispherical else self.memo_H
        cached = memo.get(w)
        if cached is not None:
            return cached
        return memo.get_or_compute(w, lambda: self._compute(w, antispherical))

    def _compute(self, w: AffineElement, antispherical: bool) -> Elem:
        W = self.W
        if w == W.identity:
            return {w: {0: 1}}
        i = W.first_right_descent(w)
        y = W.rmul(w, i)
        res = self._act(self._canonical(y, antispherical), i, antispherical)
        return self._reduce(res, w, lambda x: self._canonical(x, antispherical))

    def _check_fW(self, w: AffineElement) -> None:
        if not self.W.in_fW(w):
            raise ValueError("element is not in fW (its alcove is not dominant)")

    def canonical_N_raw(self, w: AffineElement) -> Elem:
        self._check_fW(w)
        return self._canonical(w, True)

    def canonical_N(self, w: AffineElement) -> ModuleElement:
        return ModuleElement.from_raw(self.canonical_N_raw(w))

    def kl_basis_H_raw(self, w: AffineElement) -> Elem:
        return self._canonical(w, False)

    def kl_basis_H(self, w: AffineElement) -> ModuleElement:
        return ModuleElement.from_raw(self.kl_basis_H_raw(w))

    def n_poly(self, x: AffineElement, y: AffineElement) -> LaurentPolynomial:
        """Coefficient of ``N_x`` in the canonical element of ``y``; zero off fW."""
        W = self.W
        if not (W.in_fW(x) and W.in_fW(y)):
            return LaurentPolynomial(0)
        return LaurentPolynomial(self._canonical(y, True).get(x, {}))

    def n_at_one(self, x: AffineElement, y: AffineElement) -> int:
        W = self.W
        if not (W.in_fW(x) and W.in_fW(y)):
            return 0
        return sum(self._canonical(y, True).get(x, {}).values())

    def h_poly(self, x: AffineElement, y: AffineElement) -> LaurentPolynomial:
        return LaurentPolynomial(self._canonical(y, False).get(x, {}))

    def h_at_one(self, x: AffineElement, y: AffineElement) -> int:
        return sum(self._canonical(y, False).get(x, {}).values())

    # -- bar involution (used to certify the canonical bases) -------------------

    def _bar_standard(self, w: AffineElement, antispherical: bool) -> Elem:
        memo = self._bar_N if antispherical else self._bar_H

        def compute():
            W = self.W
            if w == W.identity:
                return {w: {0: 1}}
            i = W.first_right_descent(w)
            y = W.rmul(w, i)
            b = self._bar_standard(y, antispherical)
            # bar(H_s) = H_s^{-1} = C_s - v^{-1}
            out = self._act(b, i, antispherical)
            for x, p in b.items():
                _axpy(out, x, p, coeff=-1, shift=-1)
            return out

        return memo.get_or_compute(w, compute)

    def bar(self, elem, antispherical: bool = True) -> ModuleElement:
        out: Elem = {}
        for x, p in _raw(elem).items():
            pb = {-e: c for e, c in p.items()}
            for x2, q in self._bar_standard(x, antispherical).items():
                for e, c in pb.items():
                    _axpy(out, x2, q, coeff=c, shift=e)
        return ModuleElement.from_raw(out)

    # -- the alternating-sum identity between h and n ------------------------

    def h_vs_n_sides(self, u: AffineElement, v: AffineElement) -> tuple[int, int]:
        """``(sum_z (-1)^l(z) h_{vz,u}(1), n_{v^-1,u^-1}(1))`` for u, v minimal in ``u W0``, ``v W0``."""
        W = self.W
        lhs = 0
        for z in W.finite_weyl_group():
            lhs += (-1) ** W.length(z) * self.h_at_one(W.mul(v, z), u)
        rhs = self.n_at_one(W.inverse(v), W.inverse(u))
        return lhs, rhs

    def h_vs_n_crosscheck(self, u: AffineElement, v: AffineElement) -> bool:
        W = self.W
        for x in (u, v):
            if not W.in_fW(W.inverse(x)):
                raise ValueError("arguments must be minimal in their left W0-coset")
        lhs, rhs = self.h_vs_n_sides(u, v)
        return lhs == rhs

    def clear(self) -> None:
        self.memo_H.clear()
        self.memo_N.clear()
        self._bar_H.clear()
        self._bar_N.clear()


def _raw(elem) -> Elem:
    if isinstance(elem, ModuleElement):
        return elem.raw()
    out = {}
    for k, p in dict(elem).items():
        if isinstance(p, LaurentPolynomial):
            d = p.as_dict()
        elif isinstance(p, int):
            d = {0: p} if p else {}
        else:
            d = {e: c for e, c in dict(p).items() if c}
        if d:
            out[k] = d
    return out


_ENGINES: dict[str, KLEngine] = {}
_ENGINES_LOCK = threading.Lock()


def engine_for(rs) -> KLEngine:
    """Shared engine (and caches) per root system."""
    rs = build_root_system(rs)
    with _ENGINES_LOCK:
        eng = _ENGINES.get(rs.name)
        if eng is None:
            eng = KLEngine(affine_weyl_group(rs))
            _ENGINES[rs.name] = eng
        return eng


def all_engines() -> list[KLEngine]:
    with _ENGINES_LOCK:
        return [ _ENGINES[k] for k in sorted(_ENGINES)]


def reset_engines() -> None:
    """Drop every cached polynomial (a cold start)."""
    with _ENGINES_LOCK:
        _ENGINES.clear()
