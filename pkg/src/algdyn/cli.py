"""Command-line front end.

Every subcommand reads one JSON document (inline argument or ``--input``
file), writes one JSON report (stdout or ``--output``) and exits with

    0  success
    1  malformed input
    2  a verified invariant came out false (a bug)
    3  the cyclic semigroup exceeded ``--budget``

Errors are reported as a JSON object on stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import platform
import sys
from fractions import Fraction

from . import __version__, cones, elliptic, finite, matrix, semigroup, shift, verification
from .linalg import Matrix, to_json_scalar

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- parsing -------------------------------------------------------------------

def parse_field(obj):
    if obj in (None, "Q"):
        return None
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        p = int(obj["Fp"])
        if not finite.is_prime(p):
            raise InputError("field modulus %d is not prime" % p)
        return p
    raise InputError('field must be "Q" or {"Fp": prime}')


def parse_scalar(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError("numbers must be integers or 'p/q' strings, got %r" % (x,))
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError("cannot read %r as a rational number" % (x,))


def parse_matrix(obj):
    try:
        entries = obj["entries"]
        n = int(obj.get("n", len(entries)))
    except (KeyError, TypeError):
        raise InputError('matrix needs "entries" (and optionally "n", "field")')
    field = parse_field(obj.get("field", "Q"))
    if len(entries) != n or any(len(r) != n for r in entries):
        raise InputError("entries do not form an %dx%d matrix" % (n, n))
    return Matrix([[parse_scalar(x) for x in r] for r in entries], field)


def parse_cone(obj):
    try:
        d = int(obj["d"])
        gens = [[parse_scalar(x) for x in g] for g in obj["generators"]]
    except (KeyError, TypeError):
        raise InputError('cone needs "d" and "generators"')
    return cones.Cone(d, gens)


def parse_curve(obj):
    field = parse_field(obj.get("field", "Q"))
    a, b = parse_scalar(obj["a"]), parse_scalar(obj["b"])
    if field is None:
        return elliptic.CurveQ(a, b)
    return elliptic.CurveFp(field, a, b)


def parse_point(obj):
    if obj == "O":
        return elliptic.INFINITY
    if not isinstance(obj, list) or len(obj) != 2:
        raise InputError('points are ["x", "y"] or "O", got %r' % (obj,))
    return (parse_scalar(obj[0]), parse_scalar(obj[1]))


def canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def read_input(args):
    sources = [s for s in (args.json, args.input) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one input: inline JSON or --input PATH")
    if args.input is not None:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(str(exc))
    else:
        text = args.json
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON: %s" % exc)


# -- commands ------------------------------------------------------------------

def _all_true(d):
    return all(v for v in d.values() if isinstance(v, bool))


def cmd_analyze_map(data, args):
    labels = None
    if "table" in data:
        f = finite.FiniteMap(data["table"])
        if "N" in data and int(data["N"]) != f.size:
            raise InputError("N = %s does not match the table length %d" % (data["N"], f.size))
    elif "polys" in data:
        pm = finite.from_polynomial_map(int(data["p"]), int(data["n"]), data["polys"],
                                        data.get("space", "affine"))
        f = pm.fmap
        labels = [list(pt) for pt in pm.points]
    else:
        raise InputError('map needs {"N", "table"} or {"p", "n", "polys", "space"}')
    report, checks = finite.verify_fny(f, args.budget)
    out = {"N": f.size, "table": list(f.table), "iteration": report.as_dict(), "checks": checks}
    out["index_at_least_N_image"] = report.orbit.index >= report.n_image
    if labels is not None:
        out["points"] = labels
    if args.emit_dot:
        out["dot"] = finite.to_dot(f, None if labels is None else [tuple(p) for p in labels])
    return out, _all_true(checks) and out["index_at_least_N_image"]


def cmd_analyze_matrix(data, args):
    f = parse_matrix(data)
    fd = matrix.fitting(f)
    checks = matrix.check_fitting(f, fd)
    out = {"n": f.n, "field": "Q" if f.field is None else {"Fp": f.field},
           "fitting": fd.as_dict(), "checks": checks}
    order = matrix.is_torsion(fd.g)
    out["group_part_order"] = "infinite" if order is None else order
    if order is not None:
        rep = matrix.decomposition_report(f, args.budget)
        out["decomposition"] = rep.as_dict()
        checks = dict(checks, **rep.checks)
    return out, _all_true(checks)


def cmd_cone(data, args):
    verb = args.verb
    if verb == "span":
        c = parse_cone(data)
        sp = cones.span(c)
        decomp = []
        for v in sp.basis:
            x, y = cones.as_difference(c, v)
            decomp.append({"v": list(v), "x": [to_json_scalar(t) for t in x],
                           "y": [to_json_scalar(t) for t in y],
                           "x_in_C": x in c, "y_in_C": y in c})
        ok = all(e["x_in_C"] and e["y_in_C"] for e in decomp)
        return {"span": sp.as_dict(), "differences": decomp}, ok
    if verb == "extremal":
        c, t = parse_cone(data["cone"]), parse_cone(data["subcone"])
        res = cones.is_extremal(t, c)
        out = res.as_dict()
        ok = True
        if res.witness is not None:
            ok = verification.valid_witness(t, c, res.witness)
        elif res.lemma_identity is False:
            ok = False
        return out, ok
    if verb == "chain":
        c = parse_cone(data["cone"])
        chain = [parse_cone(x) for x in data["chain"]]
        n = cones.chain_stabilization(chain, c)
        return {"stabilizes_at": n, "span_dims": [cones.span(t).dim for t in chain]}, True
    if verb == "relative-chain":
        c = parse_cone(data["cone"])
        m = parse_matrix(data["matrix"])
        if m.field is not None:
            raise InputError("relative cone chains need a matrix over Q")
        nmax = args.nmax or data.get("nmax") or c.d
        res = cones.relative_cone_chain(c, m, int(nmax))
        ok = res.increasing and res.kernel_stable_at <= c.d and res.cone_stable_at <= res.kernel_stable_at
        return res.as_dict(), ok
    raise InputError("unknown cone verb %r" % verb)


def _decision_json(dec):
    if dec.found:
        return {"answer": "yes", "n": dec.n,
                "subgroup_generators": [elliptic.point_to_json(P) for P in dec.generators],
                "subgroup": [elliptic.point_to_json(P) for P in dec.subgroup],
                "representatives": [elliptic.point_to_json(P) for P in dec.representatives]}
    return {"answer": "no", "fiber_index": dec.fiber_index,
            "witness_difference": elliptic.point_to_json(dec.witness_difference)}


def cmd_elliptic(data, args):
    verb = args.verb
    E = parse_curve(data)
    if verb == "order":
        P = parse_point(data["point"])
        k = E.order(P)
        return {"curve": E.as_dict(), "point": elliptic.point_to_json(E.point(P)),
                "order": "infinite" if k is None else k}, True
    if verb == "decide":
        fibers = [[parse_point(P) for P in fib] for fib in data["fibers"]]
        dec = elliptic.decide_translate_subgroup(E, fibers)
        ok = True
        if not dec.found:
            w = dec.witness_difference
            ok = all(E.mul(k, w) is not elliptic.INFINITY for k in range(1, elliptic.MAZUR_BOUND + 1))
        return {"curve": E.as_dict(), "decision": _decision_json(dec)}, ok
    if not isinstance(E, elliptic.CurveFp):
        raise InputError("elliptic %s needs a curve over F_p" % verb)
    if verb == "fixed-point":
        k = int(data["k"])
        z0 = parse_point(data.get("z0", "O"))
        y = elliptic.fixed_point_of_translated_isogeny(E, k, z0)
        ok = True
        if y is not None:
            ok = E.add(E.mul(k, y), z0) == y
        return {"curve": E.as_dict(), "k": k, "fixed_point": None if y is None else elliptic.point_to_json(y),
                "verified": ok}, ok
    if verb == "degree-check":
        rep = elliptic.multiplication_degree_check(E, int(data["n"]))
        return {"curve": E.as_dict(), "n": int(data["n"]), **rep}, _all_true(rep)
    raise InputError("unknown elliptic verb %r" % verb)


def cmd_construct_shift(data, args):
    base = int(data.get("base_size", 2))
    if "h" in data:
        model = shift.MonotheticModel(int(data["p"]), data["h"], base)
    else:
        model = shift.MonotheticModel.cyclic(int(data["p"]), int(data["h_order"]), base)
    report = shift.verify_theorem(model, args.budget)
    if args.emit_dot:
        f, states = shift.build(model)
        report["dot"] = finite.to_dot(f, states)
    return report, _all_true(report["checks"])


def cmd_construct_product(data, args):
    f, psi_y, checks = finite.product_construction(data["nu"], data["h"], data["j"], int(data["base_size"]))
    out = {"table": list(f.table), "psi_image": psi_y, "iteration": finite.iterated_image(f, args.budget).as_dict(),
           "checks": checks}
    if args.emit_dot:
        out["dot"] = finite.to_dot(f)
    return out, _all_true(checks)


def cmd_witness_gl2(data, args):
    nmax = args.nmax if args.nmax is not None else 100
    f, g, fg, powers, checks = matrix.unbounded_product_witness(nmax)
    return {"f": f.tolist(), "g": g.tolist(), "f_squared": (f @ f).tolist(), "g_squared": (g @ g).tolist(),
            "fg": fg.tolist(), "fg_power_nmax": powers[nmax].tolist(), "nmax": nmax, "checks": checks}, _all_true(checks)


def cmd_verify_all(data, args):
    results = verification.run_all(args.seed)
    _print_table(results)
    # timings go to the table only so the JSON report stays reproducible
    rows = [{k: v for k, v in r.as_dict().items() if k != "seconds"} for r in results]
    return {"seed": args.seed, "sweeps": rows}, all(r.passed for r in results)


COMMANDS = {
    "analyze-map": cmd_analyze_map,
    "analyze-matrix": cmd_analyze_matrix,
    "cone": cmd_cone,
    "elliptic": cmd_elliptic,
    "construct-shift": cmd_construct_shift,
    "construct-product": cmd_construct_product,
    "witness-gl2": cmd_witness_gl2,
    "verify-all": cmd_verify_all,
}
NO_INPUT = {"witness-gl2", "verify-all"}


def build_parser():
    parser = argparse.ArgumentParser(prog="algdyn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="algdyn " + __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="read the JSON input from this file")
    common.add_argument("--budget", type=int, default=10**6, help="max distinct powers (default 10^6)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--emit-dot", action="store_true", help="include a DOT functional graph")
    common.add_argument("--nmax", type=int)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "cone":
            sp.add_argument("verb", choices=["span", "extremal", "chain", "relative-chain"])
        elif name == "elliptic":
            sp.add_argument("verb", choices=["order", "decide", "fixed-point", "degree-check"])
        if name not in NO_INPUT:
            sp.add_argument("json", nargs="?", help="inline JSON input")
    return parser


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind, message, code):
    sys.stderr.write(canonical({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget < 1:
        return _error("InputError", "--budget must be >= 1", EXIT_INPUT)
    try:
        if args.command in NO_INPUT:
            data = {"nmax": args.nmax, "seed": args.seed}
        else:
            data = read_input(args)
        result, ok = COMMANDS[args.command](data, args)
    except semigroup.OrderExceedsBudget as exc:
        return _error("OrderExceedsBudget", str(exc), EXIT_BUDGET)
    except (semigroup.ClosureViolation, AssertionError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_INVARIANT)
    except (InputError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_INPUT)

    report = {
        "command": args.command + (" " + args.verb if hasattr(args, "verb") else ""),
        "input_sha256": hashlib.sha256(canonical(data).encode()).hexdigest(),
        "versions": {"algdyn": __version__, "python": platform.python_version()},
        "result": result,
        "ok": ok,
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)
    if not ok:
        return _error("InvariantFailure", "a verified invariant is false; see the report", EXIT_INVARIANT)
    return EXIT_OK


def _print_table(results):
    width = max(len(r.name) for r in results)
    for r in results:
        sys.stderr.write("%-4s  %-*s %7d cases %7.2fs (limit %gs)\n" % (
            "PASS" if r.passed else "FAIL", width, r.name, r.cases, r.seconds, r.limit))


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
