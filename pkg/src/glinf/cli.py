"""Command-line entry point.

Exit status: 0 yes / success, 1 a decided negative or failed verification,
2 bad input or usage, 3 undecided within budget.
"""
from __future__ import annotations

import argparse
import sys

from . import records
from .cosets import (CosetEnumerator, DoubleCoset, coset_dist, coset_eq,
                     normalize_to_window)
from .errors import BudgetExceeded, PreconditionError, RecordError
from .factor import generator_factorization, verify_factorization
from .matrix import in_gl_m, is_permutation, mat_mul, product
from .orbits import orbit_stabilization
from .residue import Modulus
from .search import Outcome, SearchBudget
from .selftest import run as run_selftest
from .train import associativity_check, stabilization_limit, train_product

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise RecordError(f"{path}: {e.strerror}") from None
    try:
        return records.loads(text)
    except RecordError as e:
        raise RecordError(f"{path}: {e}") from None


def _emit(report: dict, fmt: str):
    if fmt == "json":
        print(records.dumps(report))
        return
    for key in sorted(report):
        print(f"{key}: {records.dumps(report[key]) if isinstance(report[key], (dict, list)) else report[key]}")


def _search_budget(args) -> SearchBudget:
    return SearchBudget(exhaustive=args.budget, samples=args.samples, seed=args.seed)


def _verdict_report(res, a_rec, b_rec) -> tuple[dict, int]:
    report = {"outcome": res.outcome.value, "reason": res.reason, "a": a_rec, "b": b_rec}
    if res.outcome is Outcome.YES:
        report["left"] = records.matrix_to_record(res.left)
        report["right"] = records.matrix_to_record(res.right)
    code = {Outcome.YES: EXIT_OK, Outcome.NO: EXIT_NO, Outcome.UNDECIDED: EXIT_UNDECIDED}[res.outcome]
    return report, code


def cmd_canon(args):
    g = records.matrix_from_record(_read(args.input), args.input)
    cert = normalize_to_window(g, args.m)
    return records.certificate_to_record(cert), EXIT_OK


def cmd_coset_eq(args):
    a_rec, b_rec = _read(args.a), _read(args.b)
    a, b = records.coset_from_record(a_rec), records.coset_from_record(b_rec)
    res = coset_eq(a, b, window=args.window, budget=_search_budget(args))
    return _verdict_report(res, a_rec, b_rec)


def cmd_coset_dist(args):
    a, b = records.coset_from_record(_read(args.a)), records.coset_from_record(_read(args.b))
    if a.m != b.m:
        raise PreconditionError("cosets must use the same depth m")
    enum = CosetEnumerator(a.m, 3 * a.m, a.modulus, budget=args.enum_budget) if a.m else None
    d = coset_dist(a, b, args.method, enumerator=enum)
    return {"method": args.method, "distance": str(d), "m": a.m}, EXIT_OK


def cmd_train_prod(args):
    a, b = records.train_from_record(_read(args.a)), records.train_from_record(_read(args.b))
    prod = train_product(a, b, interleave=args.interleave)
    return records.train_to_record(prod), EXIT_OK


def cmd_stabilize(args):
    a, b = records.train_from_record(_read(args.a)), records.train_from_record(_read(args.b))
    res = stabilization_limit(a, b, j_max=args.j_max, window=args.window, budget=_search_budget(args))
    report = {"conclusive": res.conclusive, "j_star": res.j_star, "reason": res.reason,
              "certified_from": res.stable_from}
    if res.coset is not None:
        report["coset"] = records.train_to_record(res.coset)
    return report, EXIT_OK if res.conclusive else EXIT_UNDECIDED


def cmd_assoc_check(args):
    recs = [_read(x) for x in (args.a, args.b, args.c)]
    a, b, c = (records.train_from_record(r) for r in recs)
    res = associativity_check(a, b, c, window=args.window, budget=_search_budget(args))
    report = {"outcome": res.outcome.value, "reason": res.reason}
    if res.outcome is Outcome.YES:
        report["left"] = records.matrix_to_record(res.left)
        report["right"] = records.matrix_to_record(res.right)
    code = {Outcome.YES: EXIT_OK, Outcome.NO: EXIT_NO, Outcome.UNDECIDED: EXIT_UNDECIDED}[res.outcome]
    return report, code


def cmd_factor(args):
    g = records.matrix_from_record(_read(args.input), args.input)
    factors = generator_factorization(g, args.m)
    ok = verify_factorization(g, factors, args.m)
    report = {"m": args.m, "g": records.matrix_to_record(g), "verified": ok,
              "factors": [{"tag": f.tag, "element": records.matrix_to_record(f.element)} for f in factors]}
    return report, EXIT_OK if ok else EXIT_NO


def cmd_orbits(args):
    mod = Modulus(args.p, args.k)
    rows, point, conclusive = orbit_stabilization(args.n, range(args.n_min, args.n_max + 1), mod,
                                                  states=args.states, budget=args.enum_budget)
    if args.format == "csv":
        sys.stdout.write(records.orbit_rows_to_csv(rows))
        return None, EXIT_OK if conclusive else EXIT_UNDECIDED
    report = {"stabilization_point": point, "conclusive": conclusive,
              "rows": [vars(r) for r in rows]}
    return report, EXIT_OK if conclusive else EXIT_UNDECIDED


def cmd_selftest(args):
    results = run_selftest(args.p, args.k, seed=args.seed, samples=args.samples)
    report = {"p": args.p, "k": args.k, "seed": args.seed,
              "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]}
    return report, EXIT_OK if all(r.passed for r in results) else EXIT_NO


def _verify_one(obj) -> bool:
    if not isinstance(obj, dict):
        raise RecordError("expected a JSON object")
    if "out" in obj:  # reduction certificate
        return records.verify_certificate_record(obj)
    if "factors" in obj:
        g = records.matrix_from_record(obj.get("g"), "g")
        m = obj.get("m")
        elems = []
        for i, f in enumerate(obj["factors"]):
            e = records.matrix_from_record(f.get("element") if isinstance(f, dict) else None, f"factors[{i}]")
            tag = f.get("tag")
            ok = is_permutation(e) if tag == "permutation" else (tag == "GL_m" and in_gl_m(e, m))
            if not ok:
                return False
            elems.append(e)
        return product(elems, g.modulus) == g
    if "left" in obj and "a" in obj:  # coset equality witness
        a, b = records.coset_from_record(obj["a"]), records.coset_from_record(obj["b"])
        left = records.matrix_from_record(obj["left"], "left")
        right = records.matrix_from_record(obj["right"], "right")
        return (in_gl_m(left, a.m) and in_gl_m(right, a.m)
                and mat_mul(mat_mul(left, a.rep), right) == b.rep)
    raise RecordError("unrecognised certificate")


def cmd_verify(args):
    ok = _verify_one(_read(args.input))
    return {"verified": ok}, EXIT_OK if ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2)
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--m", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=4096,
                        help="largest mod-p solution space searched exhaustively")
    common.add_argument("--samples", type=int, default=512,
                        help="random points tried beyond the exhaustive budget")
    common.add_argument("--window", type=int, default=None, help="search window override")
    common.add_argument("--format", choices=("json", "text", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="glinf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *positionals):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for pos in positionals:
            sp.add_argument(pos, help="JSON record file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    add("canon", cmd_canon, "reduce a matrix to the 3m window with a certificate", "input")
    add("coset-eq", cmd_coset_eq, "decide equality of two double cosets", "a", "b")
    sp = add("coset-dist", cmd_coset_dist, "distance between two double cosets", "a", "b")
    sp.add_argument("--method", choices=("inf", "hausdorff"), default="inf")
    sp.add_argument("--enum-budget", type=int, default=200_000)
    sp = add("train-prod", cmd_train_prod, "product of two train cosets", "a", "b")
    sp.add_argument("--interleave", choices=("stack", "riffle"), default="stack")
    sp = add("stabilize", cmd_stabilize, "stabilization index of the theta sequence", "a", "b")
    sp.add_argument("--j-max", type=int, default=None)
    add("assoc-check", cmd_assoc_check, "compare (AB)C with A(BC)", "a", "b", "c")
    add("factor", cmd_factor, "factor into permutations and GL^[m] elements", "input")
    sp = add("orbits", cmd_orbits, "orbit counts over increasing windows")
    sp.add_argument("--n", type=int, default=1, help="number of vectors (and covectors)")
    sp.add_argument("--n-min", type=int, default=1, help="smallest window")
    sp.add_argument("--n-max", type=int, default=4, help="largest window")
    sp.add_argument("--states", choices=("vectors", "full"), default="vectors")
    sp.add_argument("--enum-budget", type=int, default=2_000_000)
    add("selftest", cmd_selftest, "run the property sweep for one modulus")
    add("verify", cmd_verify, "re-check a certificate using only products and membership", "input")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except (RecordError, PreconditionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_UNDECIDED
    if report is not None:
        _emit(report, "text" if args.format == "text" else "json")
    return code


if __name__ == "__main__":
    sys.exit(main())
