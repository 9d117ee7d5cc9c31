"""Command-line interface: ``mcop <command> [options]``.

Every command except ``points`` prints one JSON report
``{"command", "inputs", "results", "timing"}``.  ``points`` streams one JSON
object per lattice point.  Exit codes: 0 success, 1 a checked property does
not hold, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import io
from .decomposition import (
    admissibility_witness,
    Decomposition,
    enumerate_admissible,
    equivalence_classes,
    star_signature,
    u2_chains,
)
from .errors import InputError, InvalidMarking, McopError, NotAPartition, SignatureMismatch
from .faces import (
    enumerate_vertices,
    f_vector,
    facet_count_formula,
    facet_vertex_sets,
    test_f_conjecture,
)
from .gt import GTSpec, build_gt_poset, count_signature_classes, gt_star_elements, weyl_dimension
from .hrep import _require_admissible, build_chain_order, build_marked_order
from .lattice import (
    check_decomposition_property,
    check_ehrhart_equivalence,
    count_lattice_points,
    ehrhart_polynomial,
    iter_lattice_points,
    verify_minkowski,
    verify_normality,
)
from .poset import check_regular, star_elements
from .transfer import chain_order_transfer, compose_equivalence, verify_unimodular_equivalence


class PropertyFailed(Exception):
    """Carries a finished report whose checked property is false."""

    def __init__(self, results):
        super().__init__("property does not hold")
        self.results = results


def exact(v):
    """JSON-safe exact number: int, or a "p/q" string."""
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [exact(x) for x in v]
    if isinstance(v, dict):
        return {str(k): exact(x) for k, x in v.items()}
    return v


def _list(text):
    if text is None:
        return None
    return [t.strip() for t in text.split(",") if t.strip()]


def _ints(text):
    try:
        return [int(t) for t in _list(text)]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _names(m, elems):
    return [str(e) for e in m.unmarked if e in elems]


def _dec_json(m, d):
    return {"U1": _names(m, d.u1), "U2": _names(m, d.u2)}


# --------------------------------------------------------------------------
# input handling


def _load(args):
    if args.poset in (None, "-"):
        m, dec = io.loads(sys.stdin.read())
    else:
        try:
            m, dec = io.load(args.poset)
        except OSError as exc:
            raise InputError(f"cannot read {args.poset}: {exc}") from exc
    if getattr(args, "lam", None) is not None:
        lam = _ints(args.lam)
        if len(lam) != len(m.marked_order):
            raise InvalidMarking(f"--lambda needs {len(m.marked_order)} values ({', '.join(map(str, m.marked_order))})")
        m = m.with_marking(dict(zip(m.marked_order, lam)))
    return m, dec


def _decomposition(args, m, dec, required=True):
    u1, u2 = _list(getattr(args, "u1", None)), _list(getattr(args, "u2", None))
    if u1 is not None or u2 is not None:
        if u1 is not None and u2 is not None:
            raise NotAPartition("give only one of --u1 / --u2; the other side is inferred")
        return Decomposition.of(m, u1=u1, u2=u2)
    if dec is not None or not required:
        return dec
    raise NotAPartition("this command needs a decomposition: pass --u1 or --u2 (or include one in the poset file)")


def _admissible(m, d):
    _require_admissible(m, d)
    return d


def _inputs(args, m=None, d=None):
    out = {}
    if getattr(args, "poset", None) not in (None, "-"):
        out["poset"] = args.poset
    if m is not None:
        out["marking"] = {str(a): v for a, v in m.marking.items()}
    if d is not None:
        out["decomposition"] = _dec_json(m, d)
    if getattr(args, "dilate", 1) != 1:
        out["dilate"] = args.dilate
    return out


# --------------------------------------------------------------------------
# commands; each returns (inputs, results) or raises PropertyFailed


def cmd_validate(args):
    m, dec = _load(args)
    P = m.poset
    rep = check_regular(m)
    res = {
        "elements": [str(e) for e in P.elements],
        "covers": [[str(q), str(p)] for q, p in sorted(P.covers, key=lambda c: (P.index(c[0]), P.index(c[1])))],
        "marked": [str(a) for a in m.marked_order],
        "unmarked": [str(e) for e in m.unmarked],
        "regular": rep.regular,
        "violations": [{"condition": c, "witnesses": [str(w) for w in wit]} for c, wit in rep.violations],
        "star_elements": _names(m, star_elements(m)),
    }
    d = _decomposition(args, m, dec, required=False)
    if d is not None:
        res["admissible"] = _admissible_flag(m, d)
    return _inputs(args, m, d), res


def _admissible_flag(m, d):
    w = admissibility_witness(m, d)
    return True if w is None else {"admissible": False, "witness": [str(w[0]), str(w[1])]}


def cmd_star(args):
    m, _ = _load(args)
    P = m.poset
    st = star_elements(m)
    rows = [
        {
            "element": str(p),
            "covering": len(P.covering_elements(p)),
            "chains_ending": P.count_maximal_chains_ending(p),
            "marked_chains_ending": m.count_marked_chains_ending(p),
            "star": p in st,
        }
        for p in m.unmarked
    ]
    return _inputs(args), {"star_elements": _names(m, st), "elements": rows}


def cmd_decomps(args):
    m, _ = _load(args)
    decs = enumerate_admissible(m)
    classes = equivalence_classes(m)
    res = {
        "count": len(decs),
        "classes": len(classes),
        "decompositions": [
            dict(_dec_json(m, d), signature=_names(m, star_signature(m, d)), u2_chains=len(u2_chains(m, d))) for d in decs
        ],
    }
    return _inputs(args, m), res


def _polytope(args):
    m, dec = _load(args)
    d = _admissible(m, _decomposition(args, m, dec))
    if args.dilate < 1:
        raise InputError("--dilate must be a positive integer")
    return m, d, build_chain_order(m.scaled(args.dilate), d)


def cmd_hrep(args):
    m, d, h = _polytope(args)
    res = h.as_dict()
    if args.plain:
        res["lines"] = h.format()
    return _inputs(args, m, d), res


def cmd_count(args):
    m, d, h = _polytope(args)
    return _inputs(args, m, d), {"count": count_lattice_points(h)}


def cmd_points(args):
    m, d, h = _polytope(args)
    coords = [str(c) for c in h.coordinates]
    out = sys.stdout
    for x in iter_lattice_points(h):
        if args.plain:
            out.write(" ".join(map(str, x)) + "\n")
        else:
            out.write(json.dumps(dict(zip(coords, x))) + "\n")
    return None


def cmd_ehrhart(args):
    m, dec = _load(args)
    d = _admissible(m, _decomposition(args, m, dec))
    poly = ehrhart_polynomial(m, d)
    res = {
        "coefficients": exact(list(poly.coefficients)),
        "polynomial": str(poly),
        "values": [exact(poly(k)) for k in range(len(m.unmarked) + 2)],
    }
    return _inputs(args, m, d), res


def _vertex_json(vs):
    return [exact(list(v)) for v in vs.vertices]


def cmd_vertices(args):
    m, d, h = _polytope(args)
    vs = enumerate_vertices(h)
    res = {"dim": vs.dim, "count": len(vs.vertices), "integral": vs.is_integral(), "vertices": _vertex_json(vs)}
    return _inputs(args, m, d), res


def cmd_fvector(args):
    m, d, h = _polytope(args)
    f = f_vector(h)
    return _inputs(args, m, d), {"dim": f.dim, "f": list(f.counts), "euler": f.euler_holds()}


def cmd_facets(args):
    m, d, h = _polytope(args)
    vs = enumerate_vertices(h)
    facets = facet_vertex_sets(vs, h)
    geometric = len(facets)
    try:
        formula = facet_count_formula(m.scaled(args.dilate), d)
    except McopError:
        formula = None
    res = {
        "geometric": geometric,
        "formula": formula,
        "regular": formula is not None,
        "facets": [
            {"inequalities": [h.as_dict()["inequalities"][k] for k in ks], "vertices": len(vset)}
            for vset, ks in sorted(facets.items(), key=lambda kv: kv[1])
        ],
    }
    if formula is not None and formula != geometric:
        raise PropertyFailed((_inputs(args, m, d), res))
    return _inputs(args, m, d), res


def _parse_point(text, coords):
    if "=" in text:
        vals = {}
        for part in _list(text):
            k, _, v = part.partition("=")
            vals[k.strip()] = int(v)
        return vals
    return dict(zip(coords, _ints(text)))


def cmd_transfer(args):
    m, dec = _load(args)
    d = _decomposition(args, m, dec, required=False) or Decomposition.chain(m)
    d = _admissible(m, d)
    coords = [str(c) for c in m.unmarked]
    if args.point is not None:
        x = _parse_point(args.point, coords)
        y = chain_order_transfer(m, d, x)
        return _inputs(args, m, d), {"coordinates": coords, "image": list(y)}
    src = sorted(iter_lattice_points(build_marked_order(m)))
    dst = set(iter_lattice_points(build_chain_order(m, d)))
    image = [chain_order_transfer(m, d, x) for x in src]
    bijective = len(set(image)) == len(src) and set(image) == dst
    res = {
        "coordinates": coords,
        "size_domain": len(src),
        "size_codomain": len(dst),
        "bijective": bijective,
        "pairs": [[list(x), list(y)] for x, y in zip(src, image)],
    }
    if not bijective:
        raise PropertyFailed((_inputs(args, m, d), res))
    return _inputs(args, m, d), res


def cmd_equiv(args):
    m, dec = _load(args)
    d1 = _admissible(m, _decomposition(args, m, dec))
    to_u1, to_u2 = _list(args.to_u1), _list(args.to_u2)
    if (to_u1 is None) == (to_u2 is None):
        raise NotAPartition("give exactly one of --to-u1 / --to-u2")
    d2 = _admissible(m, Decomposition.of(m, u1=to_u1, u2=to_u2))
    inputs = _inputs(args, m, d1)
    inputs["target"] = _dec_json(m, d2)
    try:
        f = compose_equivalence(m, d1, d2)
    except SignatureMismatch as exc:
        raise PropertyFailed((inputs, {"equivalent": False, "reason": str(exc)}))
    ok = verify_unimodular_equivalence(m, d1, d2, f)
    res = {"equivalent": ok, "det": f.det(), "map": f.as_dict()}
    if not ok:
        raise PropertyFailed((inputs, res))
    return inputs, res


def cmd_verify(args):
    m, dec = _load(args)
    what = args.property
    if what == "ehrhart-equiv":
        rep = check_ehrhart_equivalence(m)
        res = {
            "holds": rep.equivalent,
            "polynomial": exact(list(rep.polynomial.coefficients)) if rep.polynomial else None,
            "polynomials": [
                dict(_dec_json(m, d), coefficients=exact(list(p.coefficients))) for d, p in rep.polynomials
            ],
        }
        inputs = _inputs(args, m)
    else:
        d = _admissible(m, _decomposition(args, m, dec))
        inputs = _inputs(args, m, d)
        if what == "normality":
            r = verify_normality(m, d, args.n)
            res = {
                "holds": r.holds,
                "n": r.n,
                "size_base": r.size_base,
                "size_dilated": r.size_dilated,
                "minkowski_equal": r.minkowski_equal,
                "failures": [list(s) for s in r.failures],
            }
        elif what == "minkowski":
            if args.mu is None:
                raise InputError("verify minkowski needs --mu")
            mu = _ints(args.mu)
            r = verify_minkowski(m, d, [m.marking[a] for a in m.marked_order], mu)
            inputs["mu"] = mu
            res = {
                "holds": r.holds,
                "linearly_ordered": r.linearly_ordered,
                "size_lambda": r.size_lambda,
                "size_mu": r.size_mu,
                "size_sum": r.size_sum,
                "missing": [list(x) for x in r.missing],
                "extra": [list(x) for x in r.extra],
            }
        else:  # decomposition-property
            target = Decomposition.order(m) if args.of == "order" else Decomposition.chain(m)
            r = check_decomposition_property(m, target, d, fixed=args.fixed)
            inputs["polytope"] = args.of
            inputs["fixed"] = args.fixed
            res = {
                "holds": r.holds,
                "counterexample": exact(r.counterexample),
                "source": exact(r.source),
                "violations": len(r.violations),
                "missing": len(r.missing),
            }
    if not res["holds"]:
        raise PropertyFailed((inputs, res))
    return inputs, res


def cmd_conjecture(args):
    m, _ = _load(args)
    rep = test_f_conjecture(m)
    res = rep.as_dict(m)
    res["violation_count"] = len(rep.violations)
    res["facet_violation_count"] = len(rep.facet_violations)
    return _inputs(args, m), res


def _gt_spec(args):
    lam = _ints(args.lam) if args.lam else None
    if lam is None:
        raise InputError("gt needs --lambda")
    n = args.n if args.n is not None else len(lam) - 1
    return GTSpec(n, tuple(lam))


def cmd_gt(args):
    spec = _gt_spec(args)
    m = build_gt_poset(spec)
    if args.action != "verify":
        sys.stdout.write(io.dumps(m) + "\n")
        return None
    checks = {}
    weyl = weyl_dimension(spec)
    counts = {}
    for d in enumerate_admissible(m):
        counts[";".join(_names(m, d.u1))] = count_lattice_points(build_chain_order(m, d))
    checks["weyl_equals_counts"] = all(c == weyl for c in counts.values())
    checks["star_elements_closed_form"] = star_elements(m) == gt_star_elements(spec.n)
    strict = all(a > b for a, b in zip(spec.lam, spec.lam[1:]))
    if strict:
        checks["regular"] = check_regular(m).regular
    if spec.n >= 2:
        checks["signature_classes"] = count_signature_classes(spec.n) == 2 ** (spec.n - 2)
    ee = check_ehrhart_equivalence(m)
    checks["ehrhart_equivalent"] = ee.equivalent
    res = {
        "holds": all(checks.values()),
        "checks": checks,
        "weyl_dimension": weyl,
        "counts": counts,
        "ehrhart": exact(list(ee.polynomial.coefficients)) if ee.polynomial else None,
    }
    inputs = {"n": spec.n, "lambda": list(spec.lam)}
    if not res["holds"]:
        raise PropertyFailed((inputs, res))
    return inputs, res


# --------------------------------------------------------------------------
# parser


def _common(p, decomposition=True, dilate=False):
    p.add_argument("--poset", metavar="FILE", help="poset JSON file (default: standard input)")
    p.add_argument("--lambda", dest="lam", metavar="LIST", help="override the marking, in file order of marked elements")
    if decomposition:
        p.add_argument("--u1", metavar="LIST", help="U1 elements; U2 is the complement")
        p.add_argument("--u2", metavar="LIST", help="U2 elements; U1 is the complement")
    if dilate:
        p.add_argument("--dilate", type=int, default=1, metavar="INT", help="use the marking scaled by INT")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--plain", action="store_true", help="human-readable output")
    p.add_argument("--no-timing", action="store_true", help="omit timing for byte-stable output")


COMMANDS = {
    "validate": (cmd_validate, "check a poset file, regularity and star elements", dict(decomposition=True)),
    "star": (cmd_star, "list star elements", dict(decomposition=False)),
    "decomps": (cmd_decomps, "enumerate admissible decompositions", dict(decomposition=False)),
    "hrep": (cmd_hrep, "print the inequality system", dict(dilate=True)),
    "points": (cmd_points, "stream lattice points, one JSON object per line", dict(dilate=True)),
    "count": (cmd_count, "count lattice points", dict(dilate=True)),
    "ehrhart": (cmd_ehrhart, "Ehrhart polynomial by interpolation", {}),
    "vertices": (cmd_vertices, "enumerate vertices", dict(dilate=True)),
    "fvector": (cmd_fvector, "f-vector from the face lattice", dict(dilate=True)),
    "facets": (cmd_facets, "geometric facets against the closed-form count", dict(dilate=True)),
    "transfer": (cmd_transfer, "apply the transfer map to a point or all points", {}),
    "equiv": (cmd_equiv, "compose and verify a unimodular equivalence", {}),
    "conjecture": (cmd_conjecture, "compare f-vectors of nested decompositions", dict(decomposition=False)),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcop", description="Marked chain-order polytopes in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (fn, help_, opts) in COMMANDS.items():
        p = sub.add_parser(name, help=help_, description=help_)
        _common(p, **opts)
        p.set_defaults(func=fn)
        if name == "transfer":
            p.add_argument("--point", metavar="POINT", help="x1=5,x2=3 or values in coordinate order")
        if name == "equiv":
            p.add_argument("--to-u1", metavar="LIST")
            p.add_argument("--to-u2", metavar="LIST")
    v = sub.add_parser("verify", help="verify a property", description="verify a property")
    v.add_argument("property", choices=["normality", "minkowski", "ehrhart-equiv", "decomposition-property"])
    _common(v)
    v.add_argument("--n", type=int, default=2, metavar="INT", help="dilation factor for normality (default 2)")
    v.add_argument("--mu", metavar="LIST", help="second marking for minkowski")
    v.add_argument("--fixed", choices=["u1", "u2"], default="u1", help="side kept fixed for decomposition-property")
    v.add_argument("--of", choices=["chain", "order"], default="chain", help="polytope tested by decomposition-property")
    v.set_defaults(func=cmd_verify)
    g = sub.add_parser("gt", help="Gelfand-Tsetlin poset file, or 'gt verify' for the cross-checks")
    g.add_argument("action", nargs="?", choices=["build", "verify"], default="build")
    g.add_argument("--n", type=int, metavar="INT")
    g.add_argument("--lambda", dest="lam", metavar="LIST", required=True)
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--plain", action="store_true")
    g.add_argument("--no-timing", action="store_true")
    g.set_defaults(func=cmd_gt)
    return parser


def _emit(args, inputs, results, ms):
    report = {"command": args.command if args.command != "verify" else f"verify {args.property}", "inputs": inputs, "results": exact(results)}
    if not args.no_timing:
        report["timing"] = {"ms": round(ms, 3)}
    if args.plain:
        for k, v in report["results"].items():
            if isinstance(v, list) and v and isinstance(v[0], str) and k == "lines":
                print("\n".join(v))
            else:
                print(f"{k}: {json.dumps(v)}")
    else:
        print(json.dumps(report, indent=2))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    code = 0
    try:
        out = args.func(args)
    except PropertyFailed as exc:
        out = exc.results
        code = 1
    except (McopError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if out is not None:
        inputs, results = out
        _emit(args, inputs, results, (time.perf_counter() - start) * 1000)
    return code


if __name__ == "__main__":
    sys.exit(main())
