"""Command-line front end: JSON in, JSON out, deterministic for a fixed seed.

Subcommands: graphs, schottky, algebra, kz, selftest.  Any module error is
reported as machine-readable JSON on stdout with exit code 1; argparse
handles unknown subcommands with usage text and exit code 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import freenc, graphs, kz, schottky, selftest
from .qseries import series_text


def _emit(payload: dict, args) -> None:
    payload.setdefault("config", {})
    payload["config"].update({
        k: getattr(args, k)
        for k in ("order", "nc_length", "weight", "epsilon", "tol", "seed")
        if getattr(args, k, None) is not None
    })
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _complex_matrix_json(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def _parse_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, float)):
        return Fraction(x).limit_denominator(10 ** 12)
    raise ValueError("not a rational: %r" % (x,))


def _rational_matrix(data) -> list:
    return [[_parse_fraction(x) for x in row] for row in data]


# -- graphs ------------------------------------------------------------------


def _parse_type(text: str) -> tuple:
    g, n = text.split(",")
    return int(g), int(n)


def _cmd_graphs(args) -> int:
    if args.action == "validate":
        gr = graphs.StableGraph.from_json(_load_json(args.input))
        rep = graphs.validate(gr)
        _emit({"ok": rep.ok,
               "structural_errors": rep.structural_errors,
               "stability_violations": rep.stability_violations}, args)
        return 0
    if args.action == "enumerate":
        g, n = _parse_type(args.type)
        cache_dir = os.environ.get("TEICH_DATA_DIR")
        cache = None
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)
            cache = os.path.join(cache_dir, "trivalent-%d-%d.json" % (g, n))
        if cache and os.path.exists(cache):
            payload = _load_json(cache)
        else:
            found = graphs.enumerate_trivalent(g, n)
            payload = {"type": [g, n], "count": len(found),
                       "graphs": [eg.graph.to_json() for eg in found]}
            if cache:
                with open(cache, "w") as fh:
                    json.dump(payload, fh, sort_keys=True)
        _emit(payload, args)
        return 0
    if args.action == "rigidify":
        gr = graphs.StableGraph.from_json(_load_json(args.input))
        rig = graphs.find_rigidification(gr)
        e_tau, q_edges = graphs.coordinate_system(gr, rig)
        _emit({"assignment": {v: [list(b) for b in triple]
                              for v, triple in sorted(rig.assignment.items())},
               "alpha_branches": [list(b) for b in e_tau],
               "q_edges": q_edges}, args)
        return 0
    if args.action == "fuse":
        gr = graphs.StableGraph.from_json(_load_json(args.input))
        results = graphs.fusing_rewrite(gr, args.edge)
        _emit({"edge": args.edge,
               "alternatives": [
                   {"graph": r.graph.to_json(), "new_edge": r.new_edge}
                   for r in results
               ]}, args)
        return 0
    raise ValueError("unknown graphs action %r" % args.action)


# -- schottky ----------------------------------------------------------------


def _parse_alpha(text: str) -> dict:
    """Comma-separated tokens edge+=p/q or edge-=p/q; omitted branches are at infinity."""
    out = {}
    if not text:
        return out
    for tok in text.split(","):
        head, _, val = tok.partition("=")
        head = head.strip()
        if head.endswith("+"):
            h = (head[:-1], +1)
        elif head.endswith("-"):
            h = (head[:-1], -1)
        else:
            raise ValueError("alpha token %r needs an edge orientation suffix + or -" % tok)
        out[h] = Fraction(val.strip())
    return out


def _parse_word(text: str) -> list:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok.endswith("+"):
            out.append((tok[:-1], +1))
        elif tok.endswith("-"):
            out.append((tok[:-1], -1))
        else:
            raise ValueError("word token %r needs + or - suffix" % tok)
    return out


def _projmat_json(M: schottky.ProjMat) -> list:
    return [[str(x) for x in row] for row in M.entries]


def _cmd_schottky(args) -> int:
    gr = graphs.StableGraph.from_json(_load_json(args.graph))
    ctx = schottky.SchottkyContext(graph=gr, alpha=_parse_alpha(args.alpha or ""),
                                   N=args.order or 6)
    if args.action == "gens":
        gens = schottky.free_generators(ctx)
        _emit({"generators": [
            {"path": ["%s%s" % (e, "+" if s > 0 else "-") for e, s in p],
             "matrix": _projmat_json(schottky.word_to_element(ctx, p))}
            for p in gens
        ]}, args)
        return 0
    if args.action == "element":
        word = _parse_word(args.word)
        _emit({"word": args.word,
               "matrix": _projmat_json(schottky.word_to_element(ctx, word))}, args)
        return 0
    if args.action == "fixed-points":
        word = _parse_word(args.word)
        M = schottky.word_to_element(ctx, word)
        fp = schottky.fixed_point_data(ctx, M)
        _emit({"word": args.word,
               "attractive": series_text(fp.attractive),
               "repulsive": series_text(fp.repulsive),
               "multiplier": series_text(fp.multiplier),
               "cross_ratio_exact": schottky.verify_cross_ratio(M, fp)}, args)
        return 0
    raise ValueError("unknown schottky action %r" % args.action)


# -- algebra -----------------------------------------------------------------


def _cmd_algebra(args) -> int:
    if args.action == "witt":
        r = args.r if args.r is not None else 2 * args.g + args.n - 1
        _emit({"r": r, "dims": {str(k): freenc.witt_dim(r, k)
                                for k in range(1, args.degree + 1)}}, args)
        return 0
    if args.action == "ideal-dims":
        r = args.r if args.r is not None else 2 * args.g + args.n - 1
        _emit({"r": r, "dims": {str(m): freenc.ideal_graded_dims(r, m)
                                for m in range(0, args.degree + 1)}}, args)
        return 0
    if args.action == "polylog-dims":
        out = {}
        for k in range(1, args.degree + 1):
            log_k, pol_k = freenc.polylog_dims(args.g, args.n, k, r=args.r)
            out[str(k)] = {"log": log_k, "pol": pol_k}
        _emit({"g": args.g, "n": args.n, "dims": out}, args)
        return 0
    if args.action == "weights":
        out = {str(m): {str(w): c for w, c in
                        sorted(freenc.weight_graded_dims(args.g, args.n, m).items())}
               for m in range(1, args.degree + 1)}
        _emit({"g": args.g, "n": args.n, "weights": out}, args)
        return 0
    raise ValueError("unknown algebra action %r" % args.action)


# -- kz ----------------------------------------------------------------------


def _segments_from_json(data) -> tuple:
    segs = []
    for rec in data:
        if rec["type"] == "line":
            segs.append(kz.LineSegment(complex(*rec["start"]), complex(*rec["end"])))
        elif rec["type"] == "arc":
            segs.append(kz.ArcSegment(complex(*rec["center"]), rec["radius"],
                                      rec["angle0"], rec["angle1"]))
        else:
            raise ValueError("unknown segment type %r" % rec["type"])
    return tuple(segs)


def _forms_from_json(data) -> tuple:
    return tuple(
        kz.OneForm(tuple((complex(*pole), complex(*res)) for pole, res in rec))
        for rec in data
    )


def _cmd_kz(args) -> int:
    if args.action == "associator":
        U = kz.universal_associator(args.weight or 6,
                                    eps=args.epsilon or 1e-4)
        _emit({"weight": U.weight,
               "coefficients": {w: c for w, c in sorted(U.coeffs.items())},
               "error_estimate": U.error_estimate}, args)
        return 0
    if args.action == "phi":
        data = _load_json(args.pair)
        pair = kz.NilpotentPair(np.array(data["A"], dtype=float),
                                np.array(data["B"], dtype=float))
        cm = kz.ode_connection_matrix(pair, eps=args.epsilon or 1e-6)
        _emit({"matrix": _complex_matrix_json(cm.matrix),
               "method": cm.method,
               "error_estimate": cm.error_estimate}, args)
        return 0
    if args.action == "dehn":
        res = _rational_matrix(_load_json(args.res))
        hd = kz.half_dehn_monodromy(res)
        _emit({"pi_polynomial": {str(k): [[str(x) for x in row] for row in mat]
                                 for k, mat in sorted(hd.pi_coeffs.items())},
               "numeric": _complex_matrix_json(hd.numeric),
               "error_estimate": 0.0}, args)
        return 0
    if args.action == "transport":
        fp = kz.FormPath(segments=_segments_from_json(_load_json(args.path)),
                         forms=_forms_from_json(_load_json(args.forms)),
                         margin=args.tol or 1e-3)
        T = kz.nilpotent_transport(fp)
        _emit({"matrix": _complex_matrix_json(T), "error_estimate": 1e-10}, args)
        return 0
    if args.action == "groupoid":
        word_data = _load_json(args.word)
        moves = []
        for rec in word_data:
            if rec["move"] == "halfdehn":
                moves.append(graphs.HalfDehn(edge=rec["edge"], graph=None))
            elif rec["move"] == "fusing":
                moves.append(graphs.Fusing(edge=rec["edge"], new_edge=rec["new_edge"],
                                           source=None, target=None))
            else:
                raise kz.UnsupportedMove("unknown move %r" % rec["move"])
        word = graphs.GroupoidWord(moves=tuple(moves), source=None, target=None)
        residues = {e: _rational_matrix(m)
                    for e, m in _load_json(args.residues).items()}
        U = kz.universal_associator(args.weight or 6)
        M = kz.evaluate_groupoid_word(word, residues, U)
        _emit({"matrix": _complex_matrix_json(M),
               "error_estimate": U.error_estimate * len(U.coeffs) * len(moves)}, args)
        return 0
    raise ValueError("unknown kz action %r" % args.action)


# -- selftest ----------------------------------------------------------------


def _cmd_selftest(args) -> int:
    results = selftest.run_all(quick=bool(args.quick))
    print(selftest.format_table(results))
    return 0 if all(r.passed for r in results) else 1


# -- dispatch ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--order", type=int, help="q-series truncation order N")
    p.add_argument("--nc-length", dest="nc_length", type=int, help="NC series truncation")
    p.add_argument("--weight", type=int, help="associator weight")
    p.add_argument("--epsilon", type=float, help="endpoint regularization parameter")
    p.add_argument("--tol", type=float, help="tolerance / pole margin")
    p.add_argument("--seed", type=int, help="random seed recorded in outputs")
    p.add_argument("--input", help="input JSON file")
    p.add_argument("--output", help="output JSON file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="teich")
    sub = top.add_subparsers(dest="command", required=True)

    pg = sub.add_parser("graphs", help="stable graph operations")
    pg.add_argument("action", choices=["validate", "enumerate", "rigidify", "fuse"])
    pg.add_argument("--type", help="g,n")
    pg.add_argument("--edge", help="edge id for fuse")
    _add_common(pg)
    pg.set_defaults(func=_cmd_graphs)

    ps = sub.add_parser("schottky", help="universal Schottky group")
    ps.add_argument("action", choices=["gens", "element", "fixed-points"])
    ps.add_argument("--graph", required=True, help="graph JSON file")
    ps.add_argument("--alpha", help="comma list edge+=p/q; omitted = infinity")
    ps.add_argument("--word", help="comma list of oriented edges, e.g. e1+,e2-")
    _add_common(ps)
    ps.set_defaults(func=_cmd_schottky)

    pa = sub.add_parser("algebra", help="free Lie algebra dimensions")
    pa.add_argument("action", choices=["witt", "ideal-dims", "polylog-dims", "weights"])
    pa.add_argument("--g", type=int, default=0)
    pa.add_argument("--n", type=int, default=3)
    pa.add_argument("--r", type=int, help="override alphabet size")
    pa.add_argument("--degree", type=int, default=6)
    _add_common(pa)
    pa.set_defaults(func=_cmd_algebra)

    pk = sub.add_parser("kz", help="monodromy engine")
    pk.add_argument("action", choices=["associator", "phi", "dehn", "transport", "groupoid"])
    pk.add_argument("--pair", help="JSON file with A, B matrices")
    pk.add_argument("--res", help="JSON file with one rational matrix")
    pk.add_argument("--path", help="JSON file with path segments")
    pk.add_argument("--forms", help="JSON file with one-forms")
    pk.add_argument("--word", help="JSON file with groupoid moves")
    pk.add_argument("--residues", help="JSON file mapping edge -> rational matrix")
    _add_common(pk)
    pk.set_defaults(func=_cmd_kz)

    pt = sub.add_parser("selftest", help="run the acceptance suite")
    pt.add_argument("--quick", action="store_true")
    _add_common(pt)
    pt.set_defaults(func=_cmd_selftest)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
