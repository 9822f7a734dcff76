"""Command-line interface.

Weights are comma-separated integers in the fundamental-coweight basis: the
i-th coordinate is the pairing with the i-th simple root.  For A1 the single
coordinate is the usual highest weight, so ``--lambda 4`` is the weight 4.
Elements are reduced words, comma-separated generator indices (the finite
simple reflections first, then one affine generator per factor; ``e`` is the
identity).  Alcoves are the integers ``n_alpha`` over the positive roots
sorted by height, where the alcove lies between ``n - 1`` and ``n``.

Exit codes: 0 ok, 2 usage, 3 theory constraint, 4 different blocks, 5 cache.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path

from . import cache as cache_mod
from .affine_weyl import NotInAffineWeylGroup, affine_weyl_group
from .blocks import DifferentBlocksError, TheoryConstraintError, block_of, chain_between
from .hecke import engine_for
from .periodic import StabilizationError, p_poly, periodic_canonical
from .plotting import PlotError, plot_arrangement, plot_report
from .root_data import build_root_system
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_THEORY, EXIT_BLOCKS, EXIT_CACHE = 0, 2, 3, 4, 5


class UsageError(ValueError):
    pass


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _weight_list(text: str) -> list[tuple[int, ...]]:
    return [_ints(part) for part in text.split(";") if part.strip()]


def _pair(text: str):
    if ":" not in text:
        raise argparse.ArgumentTypeError("expected FROM:TO")
    a, b = text.split(":", 1)
    return _ints(a), _ints(b)


def _poly_json(p: dict) -> list:
    return [[e, p[e]] for e in sorted(p)]


def emit(doc, out=None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _rs(name: str):
    try:
        return build_root_system(name)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad root system {name!r}: {exc}") from None


def _check_weight(rs, lam, what="weight"):
    if len(lam) != rs.rank:
        raise UsageError(f"{what} needs {rs.rank} coordinates, got {len(lam)}")
    if any(c < 0 for c in lam):
        raise UsageError(f"{what} is not dominant")


def _element(W, word):
    if any(i < 0 or i >= W.ngens for i in word):
        raise UsageError(f"generator index out of range 0..{W.ngens - 1}")
    return W.from_word(word)


# -- commands --------------------------------------------------------------------


def cmd_block(args) -> int:
    rs = _rs(args.type)
    _check_weight(rs, args.weight)
    res = block_of(rs, args.weight, args.ell, args.radius, args.mode, args.allow_unsupported)
    emit({
        "type": rs.name, "ell": args.ell, "mode": args.mode, "lambda": list(args.weight),
        "r": list(res.r), "block": [list(w) for w in res.weights],
        "region": {"kind": "height", "radius": args.radius},
        "certified": res.certified, "unsupported_by_theory": bool(args.allow_unsupported),
    }, args.out)
    return EXIT_OK


def _chain_doc(rs, ell, ch) -> dict:
    return {
        "type": rs.name, "ell": ell,
        "chain": [list(w) for w in ch.weights],
        "witnesses": [{"weight": list(w["weight"]), "n_left": w["n_left"], "n_right": w["n_right"]}
                      for w in ch.witnesses],
        "bound": ch.bound, "length": ch.length, "certified": ch.certified,
    }


def cmd_chain(args) -> int:
    rs = _rs(args.type)
    _check_weight(rs, args.source, "source weight")
    _check_weight(rs, args.target, "target weight")
    ch = chain_between(rs, args.source, args.target, args.ell)
    emit(_chain_doc(rs, args.ell, ch), args.out)
    return EXIT_OK


def _canonical_doc(W, raw, y, x, kind, rs) -> dict:
    doc = {"type": rs.name, "basis": kind, "y": list(W.reduced_word(y))}
    if x is not None:
        doc["x"] = list(W.reduced_word(x))
        doc["polynomial"] = _poly_json(raw.get(x, {}))
        doc["at_one"] = sum(raw.get(x, {}).values())
    else:
        entries = sorted(([list(W.reduced_word(z)), _poly_json(p)] for z, p in raw.items()),
                         key=lambda e: (len(e[0]), e[0]))
        doc["entries"] = entries
    return doc


def cmd_askl(args) -> int:
    rs = _rs(args.type)
    W = affine_weyl_group(rs)
    E = engine_for(rs)
    y = W.element_of(args.alcove) if args.alcove is not None else _element(W, args.y)
    if not W.in_fW(y):
        raise UsageError("y is not in fW (its alcove is not dominant)")
    x = None if args.x is None else _element(W, args.x)
    emit(_canonical_doc(W, E.canonical_N_raw(y), y, x, "antispherical", rs), args.out)
    return EXIT_OK


def cmd_kl(args) -> int:
    rs = _rs(args.type)
    W = affine_weyl_group(rs)
    E = engine_for(rs)
    y = _element(W, args.y)
    x = None if args.x is None else _element(W, args.x)
    emit(_canonical_doc(W, E.kl_basis_H_raw(y), y, x, "hecke", rs), args.out)
    return EXIT_OK


def cmd_periodic(args) -> int:
    rs = _rs(args.type)
    W = affine_weyl_group(rs)
    E = engine_for(rs)
    A = args.alcove
    if len(A) != W.nroots:
        raise UsageError(f"an alcove of {rs.name} has {W.nroots} coordinates")
    doc = {"type": rs.name, "alcove": list(A)}
    if args.other is not None:
        p = p_poly(E, args.other, A)
        doc["other"] = list(args.other)
        doc["polynomial"] = _poly_json(p.as_dict())
        doc["at_one"] = p.at_one()
    else:
        raw = periodic_canonical(E, A)
        doc["entries"] = sorted([list(B), _poly_json(q)] for B, q in raw.items())
    emit(doc, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    rs = _rs(args.type)
    ell = args.ell if args.ell else None
    if ell is not None and args.suite != "closure":
        ell = ell[0]
    report = run_suite(args.suite, rs, args.radius, ell, args.workers, args.samples, args.seed)
    emit(report, args.out)
    if args.figure:
        plot_report(report, args.figure)
    return EXIT_OK if report["pass"] else 1


def cmd_plot(args) -> int:
    rs = _rs(args.type)
    chain = None
    if args.chain is not None:
        a, b = args.chain
        _check_weight(rs, a, "chain source")
        _check_weight(rs, b, "chain target")
        chain = chain_between(rs, a, b, args.ell).weights
    elif args.weights is not None:
        chain = args.weights
        for w in chain:
            _check_weight(rs, w)
    extent = args.extent
    if extent is None:
        top = max((max(w) for w in chain), default=0) if chain else 0
        extent = max(3 * args.ell, top + 1 + args.ell)
    plot_arrangement(rs, args.out, args.ell, extent, chain, not args.no_facets, args.point,
                     not args.no_cones, args.title)
    return EXIT_OK


def cmd_cache(args) -> int:
    path = args.cache_path
    if args.action == "validate":
        n = cache_mod.validate(args.file)
        emit({"action": "validate", "records": n, "valid": True})
        return EXIT_OK
    if args.action == "export":
        if path is not None:
            cache_mod.load(path, missing_ok=True)
        n = cache_mod.save(args.file)
        emit({"action": "export", "records": n})
        return EXIT_OK
    # import: validate the incoming file completely, merge, then rewrite the store
    if path is None:
        raise UsageError(f"cache import needs a cache location (--cache or ${cache_mod.ENV_VAR})")
    cache_mod.validate(args.file)
    cache_mod.load(path, missing_ok=True)
    n = cache_mod.load(args.file)
    cache_mod.save(path)
    emit({"action": "import", "records": n})
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affblocks", description=__doc__.split("\n\n")[0])
    p.add_argument("--cache", help=f"polynomial cache file (default: ${cache_mod.ENV_VAR})")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("block", help="dominant weights in the block of a weight")
    b.add_argument("type")
    b.add_argument("--ell", type=int, required=True)
    b.add_argument("--lambda", dest="weight", type=_ints, required=True)
    b.add_argument("--radius", type=int, default=20, help="maximal height (coordinate sum)")
    b.add_argument("--mode", choices=["modular", "quantum"], default="modular")
    b.add_argument("--allow-unsupported", action="store_true",
                   help="skip the quantum-mode checks on ell (results are not backed by theory)")
    b.add_argument("--out")
    b.set_defaults(func=cmd_block)

    c = sub.add_parser("chain", help="linking chain between two weights of one block")
    c.add_argument("type")
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--from", dest="source", type=_ints, required=True)
    c.add_argument("--to", dest="target", type=_ints, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_chain)

    for name, func, help_ in (("askl", cmd_askl, "antispherical canonical basis / polynomials n"),
                              ("kl", cmd_kl, "Kazhdan-Lusztig basis / polynomials h")):
        k = sub.add_parser(name, help=help_)
        k.add_argument("type")
        k.add_argument("--y", type=_ints, default=())
        k.add_argument("--x", type=_ints)
        if name == "askl":
            k.add_argument("--alcove", type=_ints, help="give y by its (dominant) alcove")
        k.add_argument("--out")
        k.set_defaults(func=func)

    q = sub.add_parser("periodic", help="periodic canonical element / polynomials p")
    q.add_argument("type")
    q.add_argument("--alcove", type=_ints, required=True)
    q.add_argument("--other", type=_ints, help="the alcove B of p_{B,A}")
    q.add_argument("--out")
    q.set_defaults(func=cmd_periodic)

    v = sub.add_parser("verify", help="run a property suite over a finite region")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("type")
    v.add_argument("--radius", type=int, default=5)
    v.add_argument("--ell", type=int, action="append", help="repeat for several values (closure)")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--samples", type=int, default=30)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", help="JSON report path (default: stdout)")
    v.add_argument("--figure", help="SVG figure to write next to the report")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("plot", help="SVG of a rank-2 arrangement")
    g.add_argument("type")
    g.add_argument("--ell", type=int, default=1)
    g.add_argument("--extent", type=int)
    g.add_argument("--chain", type=_pair, help="FROM:TO, draws the computed chain")
    g.add_argument("--weights", type=_weight_list, help="explicit weights 'a,b;c,d;...'")
    g.add_argument("--point", type=_ints, help="special point whose walls are drawn")
    g.add_argument("--no-facets", action="store_true")
    g.add_argument("--no-cones", action="store_true")
    g.add_argument("--title")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_plot)

    k = sub.add_parser("cache", help="export, import or validate the polynomial cache")
    k.add_argument("action", choices=["export", "import", "validate"])
    k.add_argument("file")
    k.set_defaults(func=cmd_cache)
    return p


def canonical_args(ns: argparse.Namespace) -> str:
    """Canonical command line for a parsed request (parses back to the same namespace)."""
    skip = {"func", "command", "cache"}
    parts = []
    if ns.cache:
        parts += ["--cache", ns.cache]
    parts.append(ns.command)
    positional = {"type", "suite", "action", "file"}
    for key in ("suite", "type", "action", "file"):
        if key in vars(ns) and getattr(ns, key) is not None:
            parts.append(str(getattr(ns, key)))
    flag = {"weight": "--lambda", "source": "--from", "target": "--to"}
    for key in sorted(vars(ns)):
        if key in skip or key in positional:
            continue
        val = getattr(ns, key)
        name = flag.get(key, "--" + key.replace("_", "-"))
        if val is None or val is False:
            continue
        if val is True:
            parts.append(name)
        elif key == "ell" and isinstance(val, list):
            for e in val:
                parts += [name, str(e)]
        elif key == "chain":
            parts += [name, ",".join(map(str, val[0])) + ":" + ",".join(map(str, val[1]))]
        elif key == "weights":
            parts += [name, ";".join(",".join(map(str, w)) for w in val)]
        elif isinstance(val, tuple):
            parts += [name, ",".join(map(str, val)) or "e"]
        else:
            parts += [name, str(val)]
    return shlex.join(parts)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    path = args.cache or (str(cache_mod.default_path()) if cache_mod.default_path() else None)
    args.cache_path = path
    try:
        if path is not None and args.command != "cache":
            cache_mod.load(path, missing_ok=True)
        code = args.func(args)
        if path is not None and args.command != "cache":
            cache_mod.save(path)
        return code
    except cache_mod.CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except TheoryConstraintError as exc:
        print(f"theory constraint: {exc}", file=sys.stderr)
        return EXIT_THEORY
    except DifferentBlocksError as exc:
        print(f"different blocks: {exc}", file=sys.stderr)
        return EXIT_BLOCKS
    except (UsageError, PlotError, NotInAffineWeylGroup, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
