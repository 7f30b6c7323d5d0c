"""Command-line front end: eval, prove, check, countermodel, axioms, sketch.

Output is line-oriented; every command is deterministic given its inputs
and seed.  Exit codes: 0 success, 1 check failed, 2 unknown or not found,
64 usage error.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

from . import filters, samplers
from .foleq import foleq_axiom_suite, interpret
from .nominal import Atom, FinCofinAtomSet, atoms, support
from .report import AxiomResult, SuiteReport
from .sequent import (ProverBudget, check_proof, find_countermodel,
                      format_proof, parse_proof, parse_sequent, prove)
from .sigma import amgis_axiom_suite, pow_amgis, sigma_axiom_suite
from .syntax import (Signature, SyntaxError_, default_signature,
                     parse_formula, parse_signature)
from .tarski import lift_interpretation, parse_model

USAGE_ERROR = 64

SUITES = ("sigma-terms", "sigma-tarski", "amgis-pow", "foleq-tarski",
          "precedent", "eq-laws")


def _load_signature(path: str | None) -> Signature:
    if path is None:
        return default_signature()
    with open(path) as fh:
        return parse_signature(fh.read())


def _print_report(rep: SuiteReport, out) -> int:
    for line in rep.lines():
        print(line, file=out)
    return 0 if rep.ok else 1


def cmd_eval(args, out) -> int:
    sig = _load_signature(args.sig)
    with open(args.model) as fh:
        model = parse_model(fh.read(), sig)
    phi = parse_formula(args.formula, sig)
    table = interpret(phi, lift_interpretation(model))
    deps = " ".join(a.name for a in table.deps)
    rows = " ".join(str(int(v)) for v in table.table)
    supp = " ".join(a.name for a in sorted(support(table)))
    if args.machine:
        print(f"DEPS {deps}".rstrip(), file=out)
        print(f"TABLE {rows}".rstrip(), file=out)
        print(f"SUPPORT {supp}".rstrip(), file=out)
    else:
        print(f"deps: [{deps}]", file=out)
        print(f"table: [{rows}]", file=out)
        print("support: {" + supp + "}", file=out)
    return 0


def cmd_prove(args, out) -> int:
    sig = _load_signature(args.sig)
    s = parse_sequent(args.sequent, sig)
    budget = ProverBudget(max_depth=args.depth)
    proof = prove(s, budget, sig)
    if proof is None:
        print("UNKNOWN", file=out)
        return 2
    print(format_proof(proof), file=out)
    return 0


def cmd_check(args, out) -> int:
    sig = _load_signature(args.sig)
    with open(args.proof) as fh:
        text = fh.read()
    try:
        proof = parse_proof(text, sig)
    except SyntaxError_ as e:
        print(f"PARSE-ERROR {e}", file=out)
        return 1
    ok, diag = check_proof(proof)
    print("OK" if ok else f"INVALID {diag}", file=out)
    return 0 if ok else 1


def cmd_countermodel(args, out) -> int:
    sig = _load_signature(args.sig)
    s = parse_sequent(args.sequent, sig)
    found = find_countermodel(s, sig, args.max_k)
    if found is None:
        print("UNKNOWN", file=out)
        return 2
    model, vs = found
    print(model.format(), end="", file=out)
    ov = " ".join(f"{a.name}={v}" for a, v in sorted(vs.overrides.items()))
    print(f"# valuation {ov} default={vs.default}".rstrip(), file=out)
    return 0


def _suite_jobs(args) -> list:
    sig = default_signature()
    n, seed = args.n, args.seed
    if args.suite == "sigma-terms":
        return [lambda: sigma_axiom_suite(samplers.term_carrier(sig),
                                          samplers.term_sampler(sig), n, seed)]
    if args.suite == "sigma-tarski":
        from .tarski import tarski_termlike
        return [
            (lambda k=k: sigma_axiom_suite(tarski_termlike(k),
                                           samplers.tarski_sampler(k), n, seed))
            for k in (2, 3)
        ]
    if args.suite == "amgis-pow":
        probes = samplers.probe_terms(sig)[:100]
        return [lambda: amgis_axiom_suite(pow_amgis(samplers.term_carrier(sig)),
                                          samplers.charset_sampler(sig), n,
                                          probes, seed)]
    if args.suite == "foleq-tarski":
        from .tarski import tarski_algebra
        return [
            (lambda k=k: foleq_axiom_suite(tarski_algebra(k),
                                           samplers.tarski_foleq_sampler(k), n, seed))
            for k in (1, 2, 3)
        ]
    if args.suite == "eq-laws":
        from .tarski import tarski_algebra

        def eq_only(k):
            rep = foleq_axiom_suite(tarski_algebra(k),
                                    samplers.tarski_foleq_sampler(k), n, seed)
            keep = ("eq-refl", "eq-subst", "sub-eq")
            rep.results = [r for r in rep.results if r.name in keep]
            return rep
        return [(lambda k=k: eq_only(k)) for k in (2, 3)]
    if args.suite == "precedent":
        return [lambda: precedent_suite()]
    raise ValueError(f"unknown suite {args.suite!r}")


def precedent_suite(universe: int = 4) -> SuiteReport:
    """Exhaustive check that removing a fresh atom's members reflects equality.

    Runs over every finite and cofinite atom set supported inside the
    universe, with the witness atom fresh for all of them.
    """
    import itertools
    base = atoms(*range(universe))
    a = Atom(universe)
    sets = []
    for r in range(universe + 1):
        for combo in itertools.combinations(base, r):
            sets.append(FinCofinAtomSet(frozenset(combo), False))
            sets.append(FinCofinAtomSet(frozenset(combo), True))
    rep = SuiteReport("precedent")
    result = AxiomResult("precedent")
    for x in sets:
        for y in sets:
            if (x == y) != (x.remove(a) == y.remove(a)):
                result.counterexample = f"{x!r} vs {y!r}"
                break
            result.passed += 1
        if result.counterexample:
            break
    rep.add(result)
    return rep


def cmd_axioms(args, out) -> int:
    jobs = _suite_jobs(args)
    if args.jobs > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(lambda j: j(), jobs))
    else:
        reports = [j() for j in jobs]
    code = 0
    for rep in reports:
        if _print_report(rep, out) != 0:
            code = 1
    return code


def cmd_sketch(args, out) -> int:
    sig = _load_signature(args.sig)
    phi = parse_formula(args.formula, sig)
    budget = ProverBudget(max_depth=args.depth)
    sk = filters.point_sketch(phi, args.steps, budget, sig)
    for line in sk.transcript:
        print(line, file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nomfol", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="denotation of a formula in a finite model")
    p.add_argument("formula")
    p.add_argument("--sig")
    p.add_argument("--model", required=True)
    p.add_argument("--machine", action="store_true")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("prove", help="bounded backward proof search")
    p.add_argument("sequent")
    p.add_argument("--sig")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--machine", action="store_true")
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("check", help="validate a proof file")
    p.add_argument("proof")
    p.add_argument("--sig")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("countermodel", help="exhaustive finite countermodel search")
    p.add_argument("sequent")
    p.add_argument("--sig")
    p.add_argument("--max-k", type=int, default=2, dest="max_k")
    p.set_defaults(fn=cmd_countermodel)

    p = sub.add_parser("axioms", help="run an axiom suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("sketch", help="bounded filter-ideal point sketch")
    p.add_argument("formula")
    p.add_argument("--sig")
    p.add_argument("--steps", type=int, default=4)
    p.add_argument("--depth", type=int, default=5)
    p.set_defaults(fn=cmd_sketch)
    return ap


def run(argv, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else USAGE_ERROR
    try:
        return args.fn(args, out)
    except (SyntaxError_, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=out)
        return USAGE_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
