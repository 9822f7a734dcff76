"""Property suites over finite regions, producing integer-only JSON reports.

Every suite returns a dict with one entry per checked instance.  Instances
are evaluated in a thread pool but reported in enumeration order, so the
report does not depend on scheduling or on what the caches already hold.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable

from .affine_weyl import (
    affine_weyl_group,
    fundamental_facets,
    hat,
    in_rho_cone,
    is_dominant_alcove,
    special_point_of_box,
    w_v,
)
from .affine_weyl.geometry import conjugate_to_point, enumerate_alcoves, enumerate_g_elements
from .blocks import block_of, chain_between, closure_oracle
from .hecke import engine_for
from .periodic import StabilizationError, periodic_canonical, res_alt, support_S_A
from .root_data import build_root_system

SUITES = ("hat", "soergel", "coset", "periodic-inv", "closure", "chain", "reverse-order", "h-vs-n")


def _run(items: list, fn: Callable, workers: int) -> list[dict]:
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _report(suite: str, rs, params: dict, instances: list[dict]) -> dict:
    failed = sum(1 for x in instances if not x["pass"])
    return {
        "suite": suite,
        "type": rs.name,
        "params": params,
        "instances": instances,
        "total": len(instances),
        "failed": failed,
        "pass": failed == 0,
    }


def _poly_json(p: dict) -> list:
    return [[e, p[e]] for e in sorted(p)]


def _elem_json(raw: dict, key=list) -> list:
    return sorted([key(k), _poly_json(p)] for k, p in raw.items())


# -- suites -------------------------------------------------------------------


def suite_hat(rs, radius: int, workers: int = 1) -> dict:
    """``n_{A, hat A}(1) = 1`` for every dominant alcove with ``d(A) <= radius``."""
    rs = build_root_system(rs)
    W = affine_weyl_group(rs)
    E = engine_for(rs)

    def check(A):
        H = hat(W, A)
        n = E.n_at_one(W.element_of(A), W.element_of(H))
        return {"alcove": list(A), "hat": list(H), "n": n, "pass": n == 1}

    return _report("hat", rs, {"radius": radius},
                   _run(enumerate_alcoves(W, radius, dominant=True), check, workers))


def suite_soergel(rs, radius: int, workers: int = 1) -> dict:
    """Antispherical canonical element of ``A`` equals ``res alt`` of the periodic one,
    for alcoves in ``rho + C0+`` with ``d(A) <= radius``."""
    rs = build_root_system(rs)
    W = affine_weyl_group(rs)
    E = engine_for(rs)
    alcoves = [A for A in enumerate_alcoves(W, radius, dominant=True) if in_rho_cone(W, A)]

    def check(A):
        try:
            lhs = E.canonical_N(W.element_of(A))
            rhs = res_alt(E, A)
        except StabilizationError as exc:
            return {"alcove": list(A), "pass": False, "error": str(exc)}
        out = {"alcove": list(A), "terms": len(lhs), "pass": lhs == rhs}
        if lhs != rhs:
            out["antispherical"] = _elem_json(lhs.raw(), key=lambda x: list(W.alcove_of(x)))
            out["periodic"] = _elem_json(rhs.raw(), key=lambda x: list(W.alcove_of(x)))
        return out

    return _report("soergel", rs, {"radius": radius}, _run(alcoves, check, workers))


def suite_coset(rs, radius: int, workers: int = 1) -> dict:
    """For each wall or vertex facet ``q`` of ``a_1`` and ``w`` in fW^q:
    ``n_{w'r, w}(1)`` does not depend on ``r`` in ``W_q``, and vanishes when
    the maximal element of ``w' W_q`` is not in fW."""
    rs = build_root_system(rs)
    W = affine_weyl_group(rs)
    E = engine_for(rs)
    others = [W.element_of(A) for A in enumerate_alcoves(W, radius)]
    items = []
    for J, _ in fundamental_facets(W):
        if not J:
            continue
        group = W.parabolic_elements(J)
        for w in enumerate_g_elements(W, J, radius):
            items.append((J, group, w))

    def check(item):
        J, group, w = item
        bad = []
        for x in others:
            vals = {E.n_at_one(W.mul(x, r), w) for r in group}
            top_in = W.in_fW(W.max_in_coset(x, J))
            if len(vals) != 1 or (not top_in and vals != {0}):
                bad.append(list(W.reduced_word(x)))
        out = {"J": list(J), "w": list(W.reduced_word(w)), "checked": len(others), "pass": not bad}
        if bad:
            out["counterexamples"] = bad[:10]
        return out

    return _report("coset", rs, {"radius": radius}, _run(items, check, workers))


def suite_periodic_inv(rs, radius: int, workers: int = 1) -> dict:
    """``p_{zC,A}(1) = p_{C,A}(1)`` for ``z`` in the finite stabiliser of the box
    point of ``A``, and every ``B`` with ``p_{B,A} != 0`` lies in ``S_A``."""
    rs = build_root_system(rs)
    W = affine_weyl_group(rs)
    E = engine_for(rs)
    alcoves = [A for A in enumerate_alcoves(W, radius, dominant=True) if in_rho_cone(W, A)]
    finite = W.finite_weyl_group()

    def check(A):
        try:
            P = periodic_canonical(E, A)
        except StabilizationError as exc:
            return {"alcove": list(A), "pass": False, "error": str(exc)}
        S = support_S_A(E, A)
        v = special_point_of_box(W, A)
        Wv = [conjugate_to_point(W, z, v) for z in finite]
        outside = sorted(list(B) for B in P if B not in S)
        broken = []
        for C in sorted(S | set(P)):
            val = sum(P.get(C, {}).values())
            for g in Wv:
                D = W.left_act_alcove(g, C)
                if sum(P.get(D, {}).values()) != val:
                    broken.append([list(C), list(D)])
        out = {"alcove": list(A), "support": len(S), "terms": len(P),
               "pass": not outside and not broken}
        if outside:
            out["outside_support"] = outside[:10]
        if broken:
            out["not_invariant"] = broken[:10]
        return out

    return _report("periodic-inv", rs, {"radius": radius}, _run(alcoves, check, workers))


def suite_closure(rs, radius: int, ells: Iterable[int], workers: int = 1) -> dict:
    """Closure of the n-generated relation against the coset formula, for every facet of ``a_1``."""
    rs = build_root_system(rs)
    W = affine_weyl_group(rs)
    items = [(ell, J) for ell in ells for J, _ in fundamental_facets(W)]

    def words(part):
        return sorted(sorted(list(W.reduced_word(w)) for w in cls) for cls in part)

    def check(item):
        ell, J = item
        res = closure_oracle(rs, J, radius, ell)
        ok = res.agrees and res.certified and (res.special or len(res.partition) <= 1)
        out = {"ell": ell, "J": list(J), "special": res.special, "members": len(res.members),
               "classes": len(res.partition), "formula_classes": len(res.formula_partition),
               "certified": res.certified, "pass": ok}
        if not ok:
            out["partition"] = words(res.partition)
            out["formula_partition"] = words(res.formula_partition)
        return out

    return _report("closure", rs, {"radius": radius, "ell": sorted(set(ells))}, _run(items, check, workers))


def chain_pairs(rs, ell: int, radius: int, samples: int, seed: int) -> list[tuple]:
    """Deterministic sample of distinct same-block pairs of weights of height at most ``radius``."""
    rs = build_root_system(rs)
    rng = random.Random(seed)
    W = affine_weyl_group(rs)
    from .affine_weyl.geometry import dominant_weights
    weights = dominant_weights(W, radius)
    pool = []
    for lam in weights:
        for mu in block_of(rs, lam, ell, radius).weights:
            if mu > lam:
                pool.append((lam, mu))
    # keep dilated (r >= 1) pairs represented
    dilated = [p for p in pool if all((c + 1) % ell == 0 for c in p[0])]
    dilated_set = set(dilated)
    plain = [p for p in pool if p not in dilated_set]
    k = min(len(dilated), samples // 3)
    chosen = rng.sample(dilated, k) + rng.sample(plain, min(len(plain), samples - k))
    return sorted(chosen)


def suite_chain(rs, radius: int, ell: int, samples: int = 30, seed: int = 0, workers: int = 1) -> dict:
    """Chains between sampled same-block pairs, witnesses re-evaluated, length within bound."""
    rs = build_root_system(rs)
    pairs = chain_pairs(rs, ell, radius, samples, seed)

    def check(pair):
        lam, mu = pair
        ch = chain_between(rs, lam, mu, ell)
        ok = ch.certified and ch.length <= ch.bound and all(
            w["n_left"] != 0 and w["n_right"] != 0 for w in ch.witnesses)
        return {"lambda": list(lam), "mu": list(mu), "length": ch.length, "bound": ch.bound,
                "chain": [list(x) for x in ch.weights], "pass": ok}

    return _report("chain", rs, {"radius": radius, "ell": ell, "samples": samples, "seed": seed},
                   _run(pairs, check, workers))


def suite_reverse_order(rs, radius: int, workers: int = 1) -> dict:
    """For dominant ``A, As`` and special points ``v`` with ``w_v A, w_v As`` dominant:
    ``A < As`` iff ``w_v As < w_v A``."""
    rs = build_root_system(rs)
    W = affine_weyl_group(rs)
    alcoves = enumerate_alcoves(W, radius, dominant=True)
    points = _box(W.rank, radius + 1)

    def check(A):
        x = W.element_of(A)
        lx = W.length(x)
        count, bad = 0, []
        for i in range(W.ngens):
            xs = W.rmul(x, i)
            if not W.in_fW(xs):
                continue
            As = W.alcove_of(xs)
            up = W.length(xs) > lx
            for v in points:
                g = w_v(W, v)
                B, Bs = W.left_act_alcove(g, A), W.left_act_alcove(g, As)
                if not (is_dominant_alcove(B) and is_dominant_alcove(Bs)):
                    continue
                count += 1
                down = W.length(W.element_of(Bs)) < W.length(W.element_of(B))
                if up != down:
                    bad.append([i, list(v)])
        out = {"alcove": list(A), "checked": count, "pass": not bad}
        if bad:
            out["counterexamples"] = bad[:10]
        return out

    return _report("reverse-order", rs, {"radius": radius}, _run(alcoves, check, workers))


def _box(rank: int, top: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(rank):
        out = [p + (c,) for p in out for c in range(top + 1)]
    return out


def suite_h_vs_n(rs, radius: int, workers: int = 1) -> dict:
    """``sum_z (-1)^l(z) h_{vz,u}(1) = n_{v^-1,u^-1}(1)`` for ``u, v`` minimal in
    their left W0-cosets with ``d <= radius``."""
    rs = build_root_system(rs)
    W = affine_weyl_group(rs)
    E = engine_for(rs)
    mins = [W.inverse(W.element_of(A)) for A in enumerate_alcoves(W, radius, dominant=True)]
    items = [(u, v) for u in mins for v in mins]

    def check(item):
        u, v = item
        lhs, rhs = E.h_vs_n_sides(u, v)
        return {"u": list(W.reduced_word(u)), "v": list(W.reduced_word(v)),
                "h_side": lhs, "n_side": rhs, "pass": lhs == rhs}

    return _report("h-vs-n", rs, {"radius": radius}, _run(items, check, workers))


def run_suite(name: str, rs, radius: int, ell=None, workers: int = 1, samples: int = 30, seed: int = 0) -> dict:
    if name == "hat":
        return suite_hat(rs, radius, workers)
    if name == "soergel":
        return suite_soergel(rs, radius, workers)
    if name == "coset":
        return suite_coset(rs, radius, workers)
    if name == "periodic-inv":
        return suite_periodic_inv(rs, radius, workers)
    if name == "closure":
        ells = ell if isinstance(ell, (list, tuple)) else [ell or 2]
        return suite_closure(rs, radius, ells, workers)
    if name == "chain":
        return suite_chain(rs, radius, ell or 2, samples, seed, workers)
    if name == "reverse-order":
        return suite_reverse_order(rs, radius, workers)
    if name == "h-vs-n":
        return suite_h_vs_n(rs, radius, workers)
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
