"""The periodic module: all alcoves, a right Hecke action oriented by the
periodic order, and periodic polynomials obtained by deep translation.

Periodic elements are dicts ``alcove -> LaurentPolynomial`` wrapped in
``ModuleElement``; ``res`` turns them into antispherical elements keyed by
group elements.
"""

from __future__ import annotations

from .affine_weyl import (
    conjugate_to_point,
    in_rho_cone,
    is_dominant_alcove,
    periodic_leq,
    special_point_of_box,
    translate_alcove,
    INDETERMINATE,
)
from .affine_weyl.geometry import enumerate_alcoves, periodic_less_adjacent
from .hecke import KLEngine, ModuleElement, _Memo, _axpy, _raw
from .laurent import LaurentPolynomial

STABILIZATION_BUDGET = 8


class StabilizationError(RuntimeError):
    """Translated antispherical coefficients did not settle within the budget."""


def _periodic_memo(engine: KLEngine) -> _Memo:
    memo = getattr(engine, "memo_P", None)
    if memo is None:
        memo = engine.memo_P = _Memo()
    return memo


def periodic_act_Cs(engine: KLEngine, elem, i: int) -> ModuleElement:
    """``A C_s = As + v A`` if ``A < As`` in the periodic order, else ``As + v^-1 A``."""
    W = engine.W
    out: dict = {}
    for A, p in _raw(elem).items():
        As = W.alcove_of(W.rmul(W.element_of(A), i))
        _axpy(out, As, p)
        _axpy(out, A, p, shift=1 if periodic_less_adjacent(W, A, As) else -1)
    return ModuleElement.from_raw(out)


def E_lambda(engine: KLEngine, lam) -> ModuleElement:
    """``sum_z v^l(z) (lam + z a_1)`` over the finite Weyl group."""
    W = engine.W
    out = {}
    for z in W.finite_weyl_group():
        A = translate_alcove(W, W.alcove_of(z), lam)
        out[A] = LaurentPolynomial({W.length(z): 1})
    return ModuleElement(out)


def star_act(engine: KLEngine, x, A):
    """``x * (lam + B) = x lam + B`` for ``B`` in the box at the origin."""
    W = engine.W
    lam = special_point_of_box(W, A)
    B = translate_alcove(W, A, [-c for c in lam])
    xlam = W.act(W.finite_linear(x.linear), lam)
    return translate_alcove(W, B, xlam)


def alt(engine: KLEngine, A) -> list[tuple[tuple[int, ...], int]]:
    """Signed list ``(x * A, (-1)^l(x))`` over the finite Weyl group."""
    W = engine.W
    return [(star_act(engine, x, A), (-1) ** W.length(x)) for x in W.finite_weyl_group()]


def res(engine: KLEngine, elem) -> ModuleElement:
    """Keep dominant alcoves, relabelled by their group elements."""
    W = engine.W
    out = {}
    for A, p in _raw(elem).items():
        if is_dominant_alcove(A):
            out[W.element_of(A)] = p
    return ModuleElement.from_raw(out)


def support_S_A(engine: KLEngine, A) -> set:
    """``{w C : w in W_v, C <= A, C in v + C0+}`` with ``v`` the box point of ``A``.

    After translating by ``-v`` both ``C`` and ``A`` are dominant, where the
    periodic order is the Bruhat order, so the lower set is a Bruhat interval.
    """
    W = engine.W
    v = special_point_of_box(W, A)
    top = W.element_of(translate_alcove(W, A, [-c for c in v]))
    lower = [translate_alcove(W, W.alcove_of(x), v) for x in W.lower_interval(top) if W.in_fW(x)]
    out = set()
    for z in W.finite_weyl_group():
        g = conjugate_to_point(W, z, v)
        for C in lower:
            out.add(W.left_act_alcove(g, C))
    return out


def support_by_definition(engine: KLEngine, A, radius: int):
    """``{C : w C <= A for all w in W_v}`` inside the ball ``d <= radius``, using
    the order explored by wall crossings.  Returns ``(members, indeterminate)``."""
    W = engine.W
    v = special_point_of_box(W, A)
    Wv = [conjugate_to_point(W, z, v) for z in W.finite_weyl_group()]
    members, unknown = set(), set()
    for C in enumerate_alcoves(W, radius):
        verdicts = []
        for g in Wv:
            D = W.left_act_alcove(g, C)
            if W.d(D) > radius:
                verdicts.append(INDETERMINATE)
                continue
            verdicts.append(periodic_leq(W, D, A, radius))
        if all(x is True for x in verdicts):
            members.add(C)
        elif not any(x is False for x in verdicts):
            unknown.add(C)
    return members, unknown


def _stable_offset(engine: KLEngine, alcoves) -> int:
    W = engine.W
    m = 0
    nu = (2,) * W.rank
    while True:
        shift = [m * c for c in nu]
        if all(in_rho_cone(W, translate_alcove(W, C, shift)) for C in alcoves):
            return m
        m += 1


def periodic_canonical(engine: KLEngine, A) -> dict:
    """Raw periodic canonical element of ``A``: ``{alcove: {exp: coeff}}``.

    Its coefficients are the stable values of ``n_{C + m nu, A + m nu}`` with
    ``nu = 2 rho``.  Starting at the first ``m`` that puts ``A`` and its support
    into ``rho + C0+``, the translated canonical element is recomputed for
    increasing ``m`` until two consecutive offsets agree.
    """
    A = tuple(A)
    memo = _periodic_memo(engine)

    def compute():
        W = engine.W
        support = support_S_A(engine, A)
        m0 = _stable_offset(engine, support | {A})
        prev = None
        for m in range(m0, m0 + STABILIZATION_BUDGET + 1):
            shift = (2 * m,) * W.rank
            back = tuple(-c for c in shift)
            top = W.element_of(translate_alcove(W, A, shift))
            cur = {translate_alcove(W, W.alcove_of(x), back): p
                   for x, p in engine.canonical_N_raw(top).items()}
            if cur == prev:
                return cur
            prev = cur
        raise StabilizationError(f"periodic polynomials of {A} did not stabilise "
                                 f"within {STABILIZATION_BUDGET} translation steps")

    return memo.get_or_compute(A, compute)


def periodic_canonical_element(engine: KLEngine, A) -> ModuleElement:
    return ModuleElement.from_raw(periodic_canonical(engine, A))


def p_poly(engine: KLEngine, B, A) -> LaurentPolynomial:
    return LaurentPolynomial(periodic_canonical(engine, A).get(tuple(B), {}))


def p_at_one(engine: KLEngine, B, A) -> int:
    return sum(periodic_canonical(engine, A).get(tuple(B), {}).values())


def res_alt(engine: KLEngine, A) -> ModuleElement:
    """``res(sum_x (-1)^l(x) P_{x * A})``."""
    out: dict = {}
    for C, sign in alt(engine, A):
        for B, p in periodic_canonical(engine, C).items():
            _axpy(out, B, p, coeff=sign)
    return res(engine, ModuleElement.from_raw(out))
