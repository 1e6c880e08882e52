"""Command-line interface.

Exit codes: 0 ok, 1 input error, 2 verification or agreement failure,
3 resource cap.  Data goes to stdout, progress to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__, exact
from .apolarity import DegreeVector, LinearFormConfig, as_degree, degree_grid, psi_direct
from .errors import CoxSagbiError, ParseError

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3


class VerificationFailed(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _matrix_from(data):
    if isinstance(data, dict):
        for key in ("A", "B", "C", "matrix"):
            if key in data:
                return data[key]
        raise ParseError("matrix JSON needs one of the keys A, B, C or matrix")
    return data


def load_config(args) -> tuple[LinearFormConfig, str]:
    from . import presets

    if getattr(args, "preset", None):
        try:
            return presets.config(args.preset, seed=args.seed), args.preset
        except KeyError as exc:
            raise ParseError(str(exc)) from exc
    if getattr(args, "matrix", None):
        return LinearFormConfig(_matrix_from(_read_json(args.matrix))), None
    raise ParseError("give --preset or --matrix")


def parse_grid(text: str):
    """``r<=R,u<=U`` -> (R, U)."""
    out = {}
    for part in text.replace(" ", "").split(","):
        key, sep, val = part.partition("<=")
        if not sep or key not in ("r", "u"):
            raise ParseError(f"bad grid spec {text!r}; expected r<=R,u<=U")
        out[key] = int(val)
    if set(out) != {"r", "u"}:
        raise ParseError(f"bad grid spec {text!r}; expected r<=R,u<=U")
    return out["r"], out["u"]


def _degrees(args, n):
    degs = [DegreeVector.parse(d) for d in (args.degree or [])]
    if getattr(args, "grid", None):
        R, U = parse_grid(args.grid)
        degs.extend(degree_grid(n, R, U))
    if not degs:
        raise ParseError("give --degree or --grid")
    for d in degs:
        if len(d.u) != n:
            raise ParseError(f"degree {d} has {len(d.u)} entries in u, configuration has n = {n}")
    return degs


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def _emit(args, data, text_lines):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _progress(msg):
    print(msg, file=sys.stderr, flush=True)


# ---------------------------------------------------------------------------
# psi and cross-check


def _cone_backend(preset):
    from . import presets
    from .polyhedral import FiberCounter, cone_of_monomials

    try:
        mons, dmap = presets.sagbi_table(preset)
    except KeyError:
        return None
    if preset == "type7":
        return None  # not sagbi: the monomial cone undercounts
    counter = FiberCounter(cone_of_monomials(mons, dmap), dmap)
    return lambda degs: [int(x) for x in counter.count(degs)]


def _psi_chunk(payload):
    cfg_json, degs = payload
    cfg = LinearFormConfig.from_json(cfg_json)
    return [psi_direct(cfg, d) for d in degs]


def _oracle_values(cfg, degs, workers):
    if workers <= 1 or len(degs) < 64:
        return [psi_direct(cfg, d) for d in degs]
    size = -(-len(degs) // (workers * 4))
    chunks = [degs[i:i + size] for i in range(0, len(degs), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_psi_chunk, [(cfg.to_json(), c) for c in chunks]))
    return [v for part in parts for v in part]


def _backend_values(name, cfg, preset, degs, workers):
    from .formulas import psi_formula

    if name == "oracle":
        return _oracle_values(cfg, degs, workers)
    if name == "formula":
        return [psi_formula(cfg, d) for d in degs]
    if name == "cone":
        fn = _cone_backend(preset) if preset else None
        if fn is None:
            raise ParseError("the cone backend needs a preset with a sagbi monomial table")
        return fn(degs)
    raise ParseError(f"unknown backend {name!r}")


def _available_backends(cfg, preset):
    from .formulas import applicable

    names = ["oracle"]
    if applicable(cfg):
        names.append("formula")
    if preset and _cone_backend(preset) is not None:
        names.append("cone")
    return names


def run_report(args, cfg, preset, degs, backends):
    results, timing = {}, {}
    for b in backends:
        t0 = time.time()
        results[b] = _backend_values(b, cfg, preset, degs, args.workers)
        timing[b] = round(time.time() - t0, 4)
    witness = None
    for i, d in enumerate(degs):
        vals = {results[b][i] for b in backends}
        if len(vals) > 1:
            witness = d
            break
    report = {
        "command": args.command,
        "inputs": _digest({"A": cfg.to_json()["A"], "degrees": [str(d) for d in degs]}),
        "backends": backends,
        "results": [{"degree": str(d), **{b: results[b][i] for b in backends}}
                    for i, d in enumerate(degs)],
        "agreement": "ok" if witness is None else "mismatch",
    }
    if witness is not None:
        report["witness"] = str(witness)
    if args.timing:
        report["timing"] = timing
    return report


def _report_lines(report):
    backends = report["backends"]
    lines = []
    if len(report["results"]) == 1 and len(backends) == 1:
        lines.append(str(report["results"][0][backends[0]]))
    else:
        lines.append("degree".ljust(24) + "".join(b.rjust(10) for b in backends))
        for row in report["results"]:
            lines.append(row["degree"].ljust(24) + "".join(str(row[b]).rjust(10) for b in backends))
    if len(backends) > 1:
        lines.append(f"agreement: {report['agreement']}"
                     + (f" (witness {report['witness']})" if "witness" in report else ""))
    return lines


def cmd_psi(args):
    cfg, preset = load_config(args)
    degs = _degrees(args, cfg.n)
    if args.all_backends:
        backends = _available_backends(cfg, preset)
    else:
        backends = [args.backend]
    report = run_report(args, cfg, preset, degs, backends)
    _emit(args, report, _report_lines(report))
    return EXIT_OK if report["agreement"] == "ok" else EXIT_VERIFY


def cmd_cross_check(args):
    cfg, preset = load_config(args)
    if not args.grid and not args.degree:
        args.grid = "r<=3,u<=2"
    degs = _degrees(args, cfg.n)
    backends = _available_backends(cfg, preset)
    _progress(f"cross-checking {len(degs)} degrees on {', '.join(backends)}")
    report = run_report(args, cfg, preset, degs, backends)
    summary = {k: v for k, v in report.items() if k != "results"}
    summary["degrees"] = len(degs)
    lines = [f"{len(degs)} degrees, backends {', '.join(backends)}: {report['agreement']}"]
    if "witness" in report:
        lines.append(f"witness degree {report['witness']}")
    _emit(args, summary, lines)
    return EXIT_OK if report["agreement"] == "ok" else EXIT_VERIFY


# ---------------------------------------------------------------------------
# polyhedral commands


def _cone_input(args):
    from . import presets
    from .cox import parse_monomial
    from .polyhedral import DegreeMap, cone_of_monomials, dd_facets, support_polytope

    if args.generators:
        data = _read_json(args.generators)
        gens = data.get("generators") if isinstance(data, dict) else data
        if not gens:
            raise ParseError('generator JSON needs {"generators": [[...], ...]}')
        return dd_facets([tuple(int(x) for x in g) for g in gens])
    if args.monomials:
        data = _read_json(args.monomials)
        n = int(data["n"])
        mons = [parse_monomial(m, n) for m in data["monomials"]]
        dmap = DegreeMap(n, tuple(data["free"])) if "free" in data else DegreeMap.for_monomials(mons, n)
        return cone_of_monomials(mons, dmap)
    if not args.preset:
        raise ParseError("give --preset, --generators or --monomials")
    try:
        mons, dmap = presets.sagbi_table(args.preset)
    except KeyError as exc:
        raise ParseError(str(exc)) from exc
    if args.support:
        return support_polytope([m.degree() for m in mons])
    return cone_of_monomials(mons, dmap)


def cmd_facets(args):
    from .polyhedral import f_vector

    cone = _cone_input(args).ensure_facets()
    fv = f_vector(cone)
    data = {"ambient_dim": cone.ambient_dim, "dim": cone.dim,
            "facets": [list(f) for f in cone.facets],
            "equations": [list(e) for e in cone.equations], "f_vector": fv}
    lines = [f"{len(cone.facets)} facets in ambient dimension {cone.ambient_dim} (dim {cone.dim})",
             f"inequality matrix M ({cone.ambient_dim} x {len(cone.facets)}), v . M >= 0:"]
    lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in cone.facet_matrix()]
    if cone.equations:
        lines.append("equations e . v = 0:")
        lines += ["  " + " ".join(f"{x:>3}" for x in e) for e in cone.equations]
    lines.append("f-vector: (" + ",".join(map(str, fv)) + ")")
    _emit(args, data, lines)
    return EXIT_OK


def cmd_f_vector(args):
    from .polyhedral import f_vector

    fv = f_vector(_cone_input(args))
    _emit(args, {"f_vector": fv}, ["(" + ",".join(map(str, fv)) + ")"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# Gr(2,5)


def _metric_arg(text):
    try:
        m = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise ParseError(f"bad metric {text!r}") from exc
    if len(m) != 10:
        raise ParseError("a metric has ten entries d12,d13,d14,d15,d23,d24,d25,d34,d35,d45")
    return m


def cmd_classify(args):
    from .sagbi import classify_moneric

    cls = classify_moneric(_metric_arg(args.metric), seed=args.seed)
    data = cls.to_json()
    lines = [f"type {cls.type_id} ({'sagbi' if cls.sagbi else 'not sagbi'})",
             "in(F) = {" + ", ".join(data["in_F"]) + "}"]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_sweep(args):
    from .sagbi import enumerate_moneric_classes

    _progress(f"sweeping metrics with entries <= {args.bound}")
    rep = enumerate_moneric_classes(args.bound, verify_symbolic=args.verify, workers=args.workers)
    data = rep.to_json()
    lines = [f"moneric classes: {data['classes']} ({data['types']} up to S5)",
             "tallies: " + " ".join(f"T{k}={v}" for k, v in rep.tallies.items()),
             f"sagbi classes: {data['sagbi_classes']}",
             f"tropical metrics: {data['tropical_metrics']}, non-moneric: {data['non_moneric_metrics']}"]
    if args.verify:
        lines.append(f"symbolically re-classified: {rep.symbolic_checked}")
    _emit(args, data, lines)
    return EXIT_OK


def _generators_for(n, B):
    from .cox import castravet_tevelev_generators, grassmann5_generators

    if n == 5:
        return grassmann5_generators(B)
    return castravet_tevelev_generators(B)


def cmd_sagbi_check(args):
    from . import presets
    from .cox import NotMoneric
    from .errors import NotMonericError
    from .sagbi import initial_set, markov_basis, sagbi_check

    if args.matrix:
        B = [[exact.as_scalar(x) for x in row] for row in _matrix_from(_read_json(args.matrix))]
        if len(B) != 2:
            raise ParseError("sagbi-check --matrix expects the 2 x n matrix B")
        if args.n and args.n != len(B[0]):
            raise ParseError(f"--n {args.n} does not match the {len(B[0])} columns of B")
        n = len(B[0])
        if n == 5:
            in_F = initial_set(B)
        else:
            gs = _generators_for(n, B)
            in_F = []
            for lab, inm in zip(gs.labels, gs.initial_monomials()):
                if isinstance(inm, NotMoneric):
                    raise NotMonericError(f"{lab} is not moneric")
                in_F.append(inm)
        target = B
    elif args.preset:
        target = presets.config(args.preset, seed=args.seed)
        in_F, _ = presets.sagbi_table(args.preset)
    else:
        raise ParseError("give --matrix or --preset")
    mb = markov_basis(in_F) if args.enable_markov else None  # fails fast on oversized input
    result = sagbi_check(target, in_F=in_F)
    lines = [f"{result['generators']} generators, {result['binomials']} quadratic binomials "
             f"in {len(result['degrees'])} degrees"]
    for row in result["degrees"]:
        lines.append(f"  {row['degree']:<24} products {row['products']:>3}  images {row['images']:>3}"
                     f"  psi {row['psi']:>3}  {'lifts' if row['lifts'] else 'FAILS'}")
    lines.append("sagbi (all quadratic binomials lift)" if result["all_lift"] else "not sagbi")
    if mb is not None:
        result["markov"] = {"binomials": len(mb), "status": mb.status,
                            "by_degree": {str(k): v for k, v in sorted(mb.degrees().items())}}
        lines.append(f"markov basis: {len(mb)} binomials ({mb.status})")
    _emit(args, result, lines)
    return EXIT_OK if result["all_lift"] or args.allow_failure else EXIT_VERIFY


# ---------------------------------------------------------------------------
# trees, Verlinde, zonotopal


def cmd_tree_psi(args):
    from .phylo import decoration_count, parse_tree

    T = parse_tree(args.tree)
    deg = as_degree(args.degree)
    val = decoration_count(T, deg)
    _emit(args, {"tree": T.to_json(), "degree": str(deg), "psi": val}, [str(val)])
    return EXIT_OK


def cmd_verlinde(args):
    from .phylo import verlinde

    try:
        l = Fraction(args.l)
    except ValueError as exc:
        raise ParseError(f"bad level {args.l!r}") from exc
    val = verlinde(args.d, l)
    _emit(args, {"d": args.d, "l": str(l), "value": val}, [str(val)])
    return EXIT_OK


def cmd_zonotopal(args):
    from . import presets
    from .zonotopal import arrangement_from_C, independent_set_polynomial, psi_zonotopal

    if args.C:
        C = _matrix_from(_read_json(args.C))
    else:
        C = presets.ZONO_EX_C
    zc = arrangement_from_C(C)
    try:
        v = tuple(int(x) for x in args.v.replace(" ", "").split(","))
    except ValueError as exc:
        raise ParseError(f"bad vector {args.v!r}") from exc
    if len(v) != zc.m:
        raise ParseError(f"v needs {zc.m} entries")
    data = {"n": zc.n, "u": list(zc.degree(v))}
    lines = []
    if args.r is not None:
        val = psi_zonotopal(zc, args.r, v)
        data["psi"] = val
        lines.append(str(val))
    if args.sum:
        total = sum(psi_zonotopal(zc, r, v) for r in range(sum(v) + 1))
        poly = independent_set_polynomial(zc, v)
        data.update({"sum_over_r": total, "independent_set_sum": poly})
        lines.append(f"sum over r: {total}   independent-set polynomial: {poly}")
        if total != poly:
            _emit(args, data, lines)
            return EXIT_VERIFY
    if args.r is None and not args.sum:
        raise ParseError("give --r or --sum")
    _emit(args, data, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common(sub_parser):
    g = sub_parser.add_argument_group("global options")
    g.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    g.add_argument("--enable-markov", action="store_true", default=argparse.SUPPRESS)
    g.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)


def _config_args(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", help="named configuration")
    src.add_argument("--matrix", help="JSON file with the d x n matrix A")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coxsagbi", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--seed", type=int, default=0, help="seed for random generic presets")
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--enable-markov", action="store_true", help="allow Markov basis runs")
    ap.add_argument("--timing", action="store_true", help="include backend timings")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("psi", help="evaluate psi(r, u)")
    _config_args(p)
    p.add_argument("--degree", action="append", help="r,u1,...,un (repeatable)")
    p.add_argument("--grid", help="r<=R,u<=U")
    p.add_argument("--backend", default="oracle", choices=["oracle", "formula", "cone"])
    p.add_argument("--all-backends", action="store_true")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("cross-check", help="compare all applicable backends on a grid")
    _config_args(p)
    p.add_argument("--degree", action="append")
    p.add_argument("--grid")
    p.set_defaults(func=cmd_cross_check)

    for name, func, helptext in (("facets", cmd_facets, "facets of a monomial cone"),
                                 ("f-vector", cmd_f_vector, "f-vector of a monomial cone")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--preset")
        p.add_argument("--generators", help='JSON {"generators": [[...], ...]}')
        p.add_argument("--monomials", help='JSON {"n": 5, "monomials": [...], "free": [...]}')
        p.add_argument("--support", action="store_true",
                       help="cone over the generator degrees instead")
        p.set_defaults(func=func)

    p = sub.add_parser("classify-gr25", help="moneric class of a metric on five points")
    p.add_argument("--metric", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep-gr25", help="all moneric classes in a metric box")
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--verify", action="store_true", help="re-classify each class symbolically")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sagbi-check", help="quadratic lifting report")
    p.add_argument("--matrix", help="JSON file with the 2 x n matrix B")
    p.add_argument("--preset")
    p.add_argument("--n", type=int, choices=[5, 6, 7])
    p.add_argument("--allow-failure", action="store_true", help="exit 0 even when a lift fails")
    p.set_defaults(func=cmd_sagbi_check)

    p = sub.add_parser("tree-psi", help="T-decoration count")
    p.add_argument("--tree", required=True, help='"caterpillar:N", "snowflake" or JSON splits')
    p.add_argument("--degree", required=True)
    p.set_defaults(func=cmd_tree_psi)

    p = sub.add_parser("verlinde", help="Verlinde sum with certified rounding")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", required=True, help="level, e.g. 1 or 1/2")
    p.set_defaults(func=cmd_verlinde)

    p = sub.add_parser("zonotopal", help="matroid formula for psi(r, C^T v)")
    p.add_argument("--C", help="JSON file with the d x m matrix C (default: the 3 x 4 example)")
    p.add_argument("--v", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--sum", action="store_true")
    p.set_defaults(func=cmd_zonotopal)

    for sp in sub.choices.values():
        _common(sp)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CoxSagbiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
