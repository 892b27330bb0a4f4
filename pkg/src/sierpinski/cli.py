"""Command-line entry point.

Exit codes: 0 verified, 1 failure (including budget and I/O errors),
2 usage error, 3 finding (an open statement disagreed with numerics).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from decimal import Decimal, InvalidOperation

from . import __version__
from . import cayley as cy
from . import numtheory as nt
from .claims import CLAIMS, EXIT_CODES, FAILURE, FINDING, QUICK_VERTEX_CAP, VERIFIED, Options, Verdict
from .config import vertex_budget
from .errors import InvalidParameter, ResourceLimit
from .graph import complete_graph, cycle_graph, path_graph, sierpinski, sierpinski_pp
from .graphio import to_edge_list, to_json_obj
from .laplacian import conjectured_laplacian_spectrum, s2k_laplacian_spectrum
from .linalg import adjacency_matrix, laplacian_matrix, multiset_match, sym_eigenvalues
from .spectra import closed_form_spectrum_pp

EXIT_OK, EXIT_FAILURE, EXIT_USAGE, EXIT_FINDING = 0, 1, 2, 3
_SEVERITY = {EXIT_OK: 0, EXIT_FINDING: 1, EXIT_FAILURE: 2, EXIT_USAGE: 3}


def int_like(text: str) -> int:
    """Integers written plainly or in scientific notation, e.g. ``1e8``."""
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def worst_exit(codes) -> int:
    return max(codes, key=_SEVERITY.__getitem__, default=EXIT_OK)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _options(args, **extra) -> Options:
    return Options(
        n=getattr(args, "n", None),
        k=getattr(args, "k", None),
        q=getattr(args, "q", None),
        tol=args.tol,
        seed=args.seed,
        max_vertices=args.budget_vertices,
        **extra,
    )


def _report(command: list[str], params: dict, verdicts: list[Verdict], timings: dict) -> dict:
    return {
        "tool": "sierpinski",
        "version": __version__,
        "command": command,
        "parameters": params,
        "verdicts": [v.as_dict() | {"statement": CLAIMS[v.claim].statement} for v in verdicts],
        "timings": timings,
        "exit_code": worst_exit(v.exit_code for v in verdicts),
    }


def _report_text(report: dict) -> str:
    lines = [f"{v['claim']}: {v['status']}  ({v['statement']})" for v in report["verdicts"]]
    lines.append(f"exit code {report['exit_code']}")
    return "\n".join(lines)


def _write_report(args, report: dict) -> int:
    _emit(_report_text(report) if args.format == "text" else _dump(report), args.out)
    return report["exit_code"]


def cmd_construct(args) -> int:
    build = sierpinski if args.family == "s" else sierpinski_pp
    g = build(args.n, args.k, vertex_budget(args.budget_vertices))
    if args.format == "json":
        text = _dump(to_json_obj(g))
    elif args.format == "csv":
        text = "u,v\n" + "\n".join(f"{u},{v}" for u, v in g.edges)
    else:
        text = to_edge_list(g)
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args, argv) -> int:
    if args.claim not in CLAIMS:
        print(f"unknown claim {args.claim!r}; known: {', '.join(CLAIMS)}", file=sys.stderr)
        return EXIT_USAGE
    t = time.perf_counter()
    v = CLAIMS[args.claim].run(_options(args))
    report = _report(argv, _params(args), [v], {args.claim: round(time.perf_counter() - t, 3)})
    return _write_report(args, report)


def cmd_report_all(args, argv) -> int:
    quick = args.profile == "quick"
    cap = min(QUICK_VERTEX_CAP, vertex_budget(args.budget_vertices)) if quick else args.budget_vertices
    opts = Options(tol=args.tol, seed=args.seed, max_vertices=cap, full=not quick)
    verdicts, timings = [], {}
    for cid, claim in CLAIMS.items():
        t = time.perf_counter()
        verdicts.append(claim.run(opts))
        timings[cid] = round(time.perf_counter() - t, 3)
    return _write_report(args, _report(argv, _params(args), verdicts, timings))


def cmd_list_claims(args) -> int:
    rows = [{"id": c.id, "statement": c.statement, "provenance": c.provenance, "expected": c.expected}
            for c in CLAIMS.values()]
    if args.format == "json":
        _emit(_dump(rows), args.out)
    else:
        _emit("\n".join(f"{r['id']}: {r['statement']}" for r in rows), args.out)
    return EXIT_OK


def cmd_nc_family(args) -> int:
    fam = nt.nc_family(args.limit, strict=args.strict)
    rows = [c.as_row() for c in fam]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["k", "n", "squarefree", "k1_prime"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    elif args.format == "json":
        text = _dump({"limit": args.limit, "strict": args.strict, "count": len(rows), "members": rows})
    else:
        text = f"{len(rows)} accepted k(k+1) <= {args.limit}\n" + "\n".join(str(r["n"]) for r in rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_density(args) -> int:
    emp = nt.squarefree_pair_density(args.empirical)
    prod = nt.feller_tornier_product(args.product)
    obj = {
        "empirical": emp,
        "product": prod,
        "gap": abs(emp - prod),
        "empirical_limit": args.empirical,
        "prime_bound": args.product,
        "tail_bound": nt.feller_tornier_tail_bound(args.product),
    }
    _emit(_dump(obj) if args.format != "text" else f"empirical {emp:.7f}  product {prod:.10f}", args.out)
    return EXIT_OK


def parse_delta(name: str):
    """``k4``, ``c4``, ``p3``: complete graph, cycle or path on that many vertices."""
    kinds = {"k": complete_graph, "c": cycle_graph, "p": path_graph}
    name = name.strip().lower()
    if len(name) < 2 or name[0] not in kinds or not name[1:].isdigit():
        raise InvalidParameter(f"unknown graph {name!r}; use k<m>, c<m> or p<m>")
    return kinds[name[0]](int(name[1:]))


def cmd_sp1(args) -> int:
    classes = cy.sp1_enumerate(parse_delta(args.delta), strict=args.strict)
    rows = [c.as_dict() for c in classes]
    if args.format == "text":
        text = "\n".join(f"{r['fingerprint'][:16]}  order {r['order']}  cayley {r['cayley']}" for r in rows)
    else:
        text = _dump(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_cayley_present(args) -> int:
    pres = cy.spp2_presentation(args.q)
    _emit(_dump(pres.as_dict()), args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    n, k = args.n, args.k
    if args.family == "spp":
        spec, mat = closed_form_spectrum_pp(n, k), lambda: adjacency_matrix(sierpinski_pp(n, k, args.budget_vertices))
    elif args.family == "s-laplacian" and n == 2:
        spec, mat = s2k_laplacian_spectrum(k), lambda: laplacian_matrix(sierpinski(2, k, args.budget_vertices))
    else:
        spec = conjectured_laplacian_spectrum(n, k)
        mat = lambda: laplacian_matrix(sierpinski(n, k, args.budget_vertices))  # noqa: E731
    obj = spec.as_dict()
    code = EXIT_OK
    if args.numeric:
        rep = multiset_match(spec.expand(), sym_eigenvalues(mat()), args.tol)
        obj["numeric"] = rep.as_dict()
        if not rep.match:
            code = EXIT_FINDING if args.family == "s-laplacian" and n > 2 else EXIT_FAILURE
    _emit(_dump(obj), args.out)
    return code


def _params(args) -> dict:
    skip = {"func", "out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--budget-vertices", type=int_like, default=None, help="vertex budget for constructions")
    common.add_argument("--tol", type=float, default=1e-8, help="multiset match tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="sierpinski", description="Sierpinski graph spectra and symmetry checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", parents=[common], help="write S(n,k) or S++(n,k)")
    s.add_argument("--family", choices=["s", "spp"], required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=lambda a, argv: cmd_construct(a))

    s = sub.add_parser("verify", parents=[common], help="run one registered claim")
    s.add_argument("claim")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--q", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report-all", parents=[common], help="run every registered claim")
    s.add_argument("--profile", choices=["quick", "full"], default="quick")
    s.set_defaults(func=cmd_report_all)

    s = sub.add_parser("list-claims", parents=[common], help="show registered claim ids")
    s.set_defaults(func=lambda a, argv: cmd_list_claims(a))

    s = sub.add_parser("nc-family", parents=[common], help="square-free k(k+1) with k+1 composite")
    s.add_argument("--limit", type=int_like, default=10**8)
    s.add_argument("--strict", action="store_true", help="use k(k+1) < limit")
    s.set_defaults(func=lambda a, argv: cmd_nc_family(a))

    s = sub.add_parser("density", parents=[common], help="empirical density versus the prime product")
    s.add_argument("--empirical", type=int_like, default=10**7)
    s.add_argument("--product", type=int_like, default=10**6)
    s.set_defaults(func=lambda a, argv: cmd_density(a))

    s = sub.add_parser("sp1", parents=[common], help="regular SP_1(delta) classes")
    s.add_argument("--delta", default="c4", help="k<m>, c<m> or p<m>")
    s.add_argument("--strict", action="store_true", help="also require no stray copies of delta")
    s.set_defaults(func=lambda a, argv: cmd_sp1(a))

    s = sub.add_parser("cayley-present", parents=[common], help="affine-group presentation of S++(2,q-1)")
    s.add_argument("--q", type=int, required=True)
    s.set_defaults(func=lambda a, argv: cmd_cayley_present(a))

    s = sub.add_parser("spectrum", parents=[common], help="closed-form spectrum, optionally checked numerically")
    s.add_argument("--family", choices=["spp", "s-laplacian"], default="spp")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--numeric", action="store_true")
    s.set_defaults(func=lambda a, argv: cmd_spectrum(a))
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args, argv)
    except InvalidParameter as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimit, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


__all__ = ["main", "build_parser", "int_like", "worst_exit", "EXIT_CODES", "VERIFIED", "FINDING", "FAILURE"]
