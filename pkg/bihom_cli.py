#!/usr/bin/env python3
"""
Command-line front end for the BiHom toolkit.

Loads structure files, runs validators and constructions, and prints the
resulting reports. Exit codes: 0 when every check passes, 1 when a
mathematical check fails or a construction's contract is violated, 2 on
malformed input.

Usage:
    python bihom_cli.py validate algebra fixtures/E1.json
    python bihom_cli.py dualize algebra fixtures/E1.json -o E1-dual.json
    python bihom_cli.py poly delta fixtures/poly-r1.json --n 2
    python bihom_cli.py suite yau --seed 0
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from checks.property_suites import SUITES, tensor_kernel_suite
from checks.report import ValidationReport
from modules import serialization as ser
from modules.algebra import (
    intersect_ideals, intersection_bookkeeping, ideal_closure, preimage_ideal, quotient_algebra,
    validate_algebra, validate_morphism,
)
from modules.bihom_modules import (
    coaction_pairing_report, comodule_pairing_report, dual_comodule, dual_module_morphism,
    dual_module_morphism_compatibility, module_sweedler_add, module_sweedler_coaction,
    validate_comodule, validate_comodule_morphism, validate_module, validate_module_morphism,
)
from modules.coalgebra import validate_coalgebra, validate_coalgebra_morphism
from modules.config_loader import get_config
from modules.duality import (
    delta_pairing_report, delta_tensor, dual_algebra_morphism, dual_coalgebra, dual_morphism_compatibility,
    pairing_report, sweedler_add, sweedler_delta, sweedler_dual_morphism, sweedler_twist,
    tensor_quotient_kernel,
)
from modules.linalg import kernel_basis
from modules.poly_family import (
    coassoc_check, delta_dual, dual_tensor, ideal_absorption_check, pairing_check, twist_apply,
    twisted_product, poly_terms,
)
from utils.errors import ContractError, InputError
from utils.logger import get_logger
from utils.rationals import format_rational

logger = get_logger('bihom.cli')


@dataclass
class Outcome:
    """Reports, printable result data and an optional primary artifact of one command."""
    reports: List[ValidationReport] = field(default_factory=list)
    data: Optional[Dict[str, Any]] = None
    artifact: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


def _base(path: str) -> str:
    return os.path.dirname(os.path.abspath(path))


def _load(path: str) -> Dict[str, Any]:
    data = ser.load_json(path)
    logger.info(f"Loaded {path}")
    return data


# ---- validate ---------------------------------------------------------------

def cmd_validate(args) -> Outcome:
    data = _load(args.file)
    base = _base(args.file)
    if args.kind == 'algebra':
        return Outcome([validate_algebra(ser.algebra_from_dict(data, args.file))])
    if args.kind == 'coalgebra':
        return Outcome([validate_coalgebra(ser.coalgebra_from_dict(data, args.file))])
    if args.kind == 'module':
        return Outcome([validate_module(ser.module_from_dict(data, base, args.file))])
    if args.kind == 'comodule':
        return Outcome([validate_comodule(ser.comodule_from_dict(data, base, args.file))])
    if args.morphism_of == 'coalgebra':
        return Outcome([validate_coalgebra_morphism(ser.coalgebra_morphism_from_dict(data, base, args.file))])
    if args.morphism_of == 'module':
        sigma, m, n = ser.module_map_from_dict(data, base, args.file)
        return Outcome([validate_module_morphism(sigma, m, n)])
    if args.morphism_of == 'comodule':
        f, a, b = ser.comodule_map_from_dict(data, base, args.file)
        return Outcome([validate_comodule_morphism(f, a, b)])
    return Outcome([validate_morphism(ser.morphism_from_dict(data, base, args.file))])


# ---- dualize ----------------------------------------------------------------

def cmd_dualize(args) -> Outcome:
    data = _load(args.file)
    base = _base(args.file)
    if args.kind == 'algebra':
        a = ser.algebra_from_dict(data, args.file)
        c = dual_coalgebra(a)
        return Outcome([validate_coalgebra(c), pairing_report(a, c)], artifact=ser.coalgebra_to_dict(c))
    if args.kind == 'morphism':
        f = ser.morphism_from_dict(data, base, args.file)
        g = dual_algebra_morphism(f)
        report = validate_coalgebra_morphism(g)
        source_verdict = validate_morphism(f)
        agree = ValidationReport("morphism duality")
        agree.add("verdicts agree", source_verdict.passed == report.passed,
                  None if source_verdict.passed == report.passed else
                  {"morphism": source_verdict.passed, "dual morphism": report.passed})
        return Outcome([report, agree], artifact=ser.coalgebra_morphism_to_dict(g))
    m = ser.module_from_dict(data, base, args.file)
    c = dual_comodule(m)
    return Outcome([validate_comodule(c), comodule_pairing_report(m, c)], artifact=ser.comodule_to_dict(c))


# ---- ideals and quotients ---------------------------------------------------

def cmd_ideal(args) -> Outcome:
    if args.action == 'preimage':
        f = ser.morphism_from_dict(_load(args.algebra), _base(args.algebra), args.algebra)
        j = ser.ideal_from_dict(_load(args.ideals[0]), _base(args.ideals[0]), args.ideals[0], f.target)
        k = preimage_ideal(f, j)
        report = ValidationReport("preimage codimension")
        report.add("codim(f^-1(J)) <= codim(J)", k.codim <= j.codim,
                   None if k.codim <= j.codim else {"source codim": k.codim, "target codim": j.codim})
        return Outcome([k.report, report], artifact=ser.ideal_to_dict(k))
    a = ser.load_algebra(args.algebra)
    handles = [ser.ideal_from_dict(_load(p), _base(p), p, a) for p in args.ideals]
    if args.action == 'check':
        if len(handles) != 1:
            raise InputError("ideal check: expected exactly one subspace file")
        return Outcome([handles[0].report], data={"codim": handles[0].codim})
    if args.action == 'closure':
        generators = [v for h in handles for v in h.subspace.vectors()]
        j = ideal_closure(a, generators)
        return Outcome([j.report], artifact=ser.ideal_to_dict(j))
    if len(handles) != 2:
        raise InputError("ideal intersect: expected two subspace files")
    j, h = handles
    k = intersect_ideals(j, h)
    return Outcome([intersection_bookkeeping(j, h, k)], artifact=ser.ideal_to_dict(k))


def cmd_quotient(args) -> Outcome:
    a = ser.load_algebra(args.algebra)
    j = ser.ideal_from_dict(_load(args.ideal), _base(args.ideal), args.ideal, a)
    quot, pi = quotient_algebra(a, j)
    kernel = ValidationReport("projection kernel")
    kernel.add("ker(pi) equals J", kernel_basis(pi.map) == j.subspace)
    return Outcome([validate_algebra(quot), validate_morphism(pi), kernel],
                   data={"projection": ser.format_matrix(pi.map)}, artifact=ser.algebra_to_dict(quot))


# ---- Sweedler duals ---------------------------------------------------------

def _functional(path: str):
    return ser.functional_from_dict(_load(path), _base(path), path)


def cmd_sweedler(args) -> Outcome:
    if args.action == 'delta':
        f = _functional(args.files[0])
        pairs = sweedler_delta(f)
        t = delta_tensor(pairs, f.algebra.dim)
        tensor = [[format_rational(x) for x in t.row(i)] for i in range(t.rows)]
        return Outcome([delta_pairing_report(f, pairs)],
                       data={"pairs": ser.pairs_to_list(pairs), "tensor": tensor})
    if args.action == 'add':
        if len(args.files) != 2:
            raise InputError("sweedler add: expected two functional files")
        total = sweedler_add(_functional(args.files[0]), _functional(args.files[1]))
        return Outcome(artifact=ser.functional_to_dict(total))
    if args.action == 'twist':
        twisted = sweedler_twist(_functional(args.files[0]), args.which)
        return Outcome(artifact=ser.functional_to_dict(twisted))
    if len(args.files) != 2:
        raise InputError("sweedler morphism: expected a morphism file and a functional file")
    morphism_path, functional_path = args.files
    f = ser.morphism_from_dict(_load(morphism_path), _base(morphism_path), morphism_path)
    b = ser.functional_from_dict(_load(functional_path), _base(functional_path), functional_path, f.target)
    image = sweedler_dual_morphism(f, b)
    return Outcome([dual_morphism_compatibility(f, b)], artifact=ser.functional_to_dict(image))


def _module_functional(path: str, module=None):
    return ser.module_functional_from_dict(_load(path), _base(path), path, module)


def cmd_module_sweedler(args) -> Outcome:
    if args.action == 'coaction':
        xi = _module_functional(args.files[0])
        pairs = module_sweedler_coaction(xi)
        return Outcome([coaction_pairing_report(xi, pairs)],
                       data={"pairs": ser.pairs_to_list(pairs, "module", "algebra")})
    if args.action == 'add':
        if len(args.files) != 2:
            raise InputError("module-sweedler add: expected two functional files")
        total = module_sweedler_add(_module_functional(args.files[0]), _module_functional(args.files[1]))
        return Outcome(artifact=ser.module_functional_to_dict(total))
    if len(args.files) != 2:
        raise InputError("module-sweedler morphism: expected a module morphism file and a functional file")
    map_path, functional_path = args.files
    sigma, m, n = ser.module_map_from_dict(_load(map_path), _base(map_path), map_path)
    xi = _module_functional(functional_path, n)
    image = dual_module_morphism(sigma, m, n, xi)
    comodule_check = validate_comodule_morphism(sigma.T, dual_comodule(n), dual_comodule(m))
    return Outcome([dual_module_morphism_compatibility(sigma, m, n, xi), comodule_check],
                   artifact=ser.module_functional_to_dict(image))


# ---- polynomial family ------------------------------------------------------

def _poly_text(p) -> List[List]:
    return [[list(k), format_rational(v)] for k, v in sorted(poly_terms(p).items())]


def cmd_poly(args) -> Outcome:
    alg = ser.load_poly_algebra(args.algebra)
    bound = args.degree_bound if args.degree_bound is not None else get_config().get_default('degree_bound', 6)
    if args.action == 'product':
        m = ser.parse_multi_index(args.m, alg.r, "--m")
        n = ser.parse_multi_index(args.n, alg.r, "--n")
        return Outcome(data={"terms": _poly_text(twisted_product(alg, m, n))})
    if args.action == 'twist':
        m = ser.parse_multi_index(args.m, alg.r, "--m")
        return Outcome(data={"terms": _poly_text(twist_apply(alg, args.which, m))})
    if args.action == 'ideal-check':
        if args.total_degree is not None:
            ideal = ser.monomial_ideal_from_dict({"total_degree": args.total_degree}, alg.r)
        elif args.staircase is not None:
            ideal = ser.monomial_ideal_from_dict({"staircase": args.staircase}, alg.r)
        else:
            raise InputError("poly ideal-check: give --total-degree or --staircase")
        ideal_bound = args.bound if args.bound is not None else get_config().get_default('ideal_bound', 6)
        return Outcome([ideal_absorption_check(alg, ideal, ideal_bound)])
    n = ser.parse_multi_index(args.n, alg.r, "--n")
    if args.action == 'delta':
        pairs = delta_dual(alg, n)
        tensor = [[list(i), list(j), format_rational(c)] for (i, j), c in dual_tensor(pairs).items()]
        return Outcome([pairing_check(alg, n, bound)],
                       data={"pairs": [{"left": ser.dual_functional_to_dict(l), "right": ser.dual_functional_to_dict(r)}
                                       for l, r in pairs],
                             "tensor": tensor})
    if args.action == 'pairing-check':
        return Outcome([pairing_check(alg, n, bound)])
    return Outcome([coassoc_check(alg, n, bound)])


# ---- tensor quotient kernel and suites --------------------------------------

def cmd_tensor_kernel(args) -> Outcome:
    if args.files:
        if len(args.files) != 2:
            raise InputError("tensor-kernel: expected two subspace files")
        i = ser.subspace_from_dict(_load(args.files[0]), where=args.files[0])
        j = ser.subspace_from_dict(_load(args.files[1]), where=args.files[1])
        kernel, report = tensor_quotient_kernel(i.ambient_dim, j.ambient_dim, i, j)
        return Outcome([report], data={"kernel": ser.subspace_to_dict(kernel)})
    seed = args.seed if args.seed is not None else get_config().get_default('seed', 0)
    return Outcome([tensor_kernel_suite(seed, args.count)])


def cmd_suite(args) -> Outcome:
    seed = args.seed if args.seed is not None else get_config().get_default('seed', 0)
    return Outcome([SUITES[args.name](seed, args.count, args.max_dim)])


# ---- rendering --------------------------------------------------------------

def render(outcome: Outcome, argv: List[str], fmt: str, artifacts: List[str]) -> str:
    if fmt == 'json':
        envelope = {
            "command": argv,
            "passed": outcome.passed,
            "reports": [r.to_dict() for r in outcome.reports],
            "artifacts": artifacts,
        }
        if outcome.data is not None:
            envelope["result"] = outcome.data
        if outcome.artifact is not None and not artifacts:
            envelope["artifact"] = outcome.artifact
        return ser.dumps(envelope)
    color = get_config().color_enabled() and sys.stdout.isatty()
    lines = [r.render_text(color) for r in outcome.reports]
    if outcome.data is not None:
        lines.append(json.dumps(outcome.data, sort_keys=True))
    if outcome.artifact is not None and not artifacts:
        lines.append(ser.dumps(outcome.artifact).rstrip("\n"))
    for path in artifacts:
        lines.append(f"wrote {path}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-o', '--output', default=None, help='Write the primary artifact (or the report) to this path')
    common.add_argument('--format', choices=['json', 'text'], default=None,
                        help='Report format (default from config.json)')

    parser = argparse.ArgumentParser(
        description='Validate and dualize finite-dimensional BiHom-algebras, modules and their Sweedler duals',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python bihom_cli.py validate algebra fixtures/E1.json
  python bihom_cli.py dualize algebra fixtures/E1.json -o E1-dual.json
  python bihom_cli.py validate coalgebra E1-dual.json
  python bihom_cli.py sweedler delta fixtures/E1-e1star.json
  python bihom_cli.py poly coassoc-check fixtures/poly-r2.json --n 1 1 --degree-bound 5
  python bihom_cli.py suite yau --seed 7 --count 20
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('validate', parents=[common], help='Run the axiom checks on a structure file')
    p.add_argument('kind', choices=['algebra', 'coalgebra', 'module', 'comodule', 'morphism'])
    p.add_argument('file')
    p.add_argument('--of', dest='morphism_of', choices=['algebra', 'coalgebra', 'module', 'comodule'],
                   default='algebra', help='Structure the morphism file maps between (default: algebra)')
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser('dualize', parents=[common], help='Dual coalgebra, dual morphism or dual comodule')
    p.add_argument('kind', choices=['algebra', 'morphism', 'module'])
    p.add_argument('file')
    p.set_defaults(handler=cmd_dualize)

    p = sub.add_parser('ideal', parents=[common], help='Ideal checks and constructions')
    p.add_argument('action', choices=['check', 'closure', 'intersect', 'preimage'])
    p.add_argument('algebra', help='Algebra file (morphism file for preimage)')
    p.add_argument('ideals', nargs='+', help='Subspace files')
    p.set_defaults(handler=cmd_ideal)

    p = sub.add_parser('quotient', parents=[common], help='Quotient algebra G/J')
    p.add_argument('algebra')
    p.add_argument('ideal')
    p.set_defaults(handler=cmd_quotient)

    p = sub.add_parser('sweedler', parents=[common], help='Sweedler dual of an algebra')
    p.add_argument('action', choices=['delta', 'add', 'twist', 'morphism'])
    p.add_argument('files', nargs='+')
    p.add_argument('--which', choices=['alpha', 'beta'], default='alpha')
    p.set_defaults(handler=cmd_sweedler)

    p = sub.add_parser('module-sweedler', parents=[common], help='Sweedler dual of a module')
    p.add_argument('action', choices=['coaction', 'add', 'morphism'])
    p.add_argument('files', nargs='+')
    p.set_defaults(handler=cmd_module_sweedler)

    p = sub.add_parser('poly', parents=[common], help='Polynomial BiHom-algebra computations')
    p.add_argument('action', choices=['product', 'twist', 'delta', 'pairing-check', 'coassoc-check', 'ideal-check'])
    p.add_argument('algebra')
    p.add_argument('--m', nargs='+', type=int, default=None)
    p.add_argument('--n', nargs='+', type=int, default=None)
    p.add_argument('--which', choices=['A', 'B'], default='A')
    p.add_argument('--degree-bound', type=int, default=None)
    p.add_argument('--bound', type=int, default=None, help='Degree bound for ideal checks')
    p.add_argument('--total-degree', type=int, default=None)
    p.add_argument('--staircase', nargs='+', type=int, default=None)
    p.set_defaults(handler=cmd_poly)

    p = sub.add_parser('tensor-kernel', aliases=['lemma-zz'], parents=[common],
                       help='Kernel of a tensor product of quotient maps')
    p.add_argument('files', nargs='*', help='Two subspace files; omit for a seeded random run')
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--count', type=int, default=None)
    p.set_defaults(handler=cmd_tensor_kernel)

    p = sub.add_parser('suite', parents=[common], help='Seeded randomized property suites')
    p.add_argument('name', choices=sorted(SUITES))
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--count', type=int, default=None)
    p.add_argument('--max-dim', type=int, default=None)
    p.set_defaults(handler=cmd_suite)
    return parser


def _check_required(args) -> None:
    if args.command != 'poly':
        return
    if args.action in ('product', 'twist') and args.m is None:
        raise InputError(f"poly {args.action}: --m is required")
    if args.action == 'product' and args.n is None:
        raise InputError("poly product: --n is required")
    if args.action in ('delta', 'pairing-check', 'coassoc-check') and args.n is None:
        raise InputError(f"poly {args.action}: --n is required")


def run(argv: List[str]) -> int:
    """Parse argv, run the command, print its report. Returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    fmt = args.format or get_config().get_default('format', 'text')
    try:
        _check_required(args)
        outcome = args.handler(args)
    except InputError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return 2
    except ContractError as e:
        outcome = Outcome([e.report] if e.report is not None else [])
        failure = ValidationReport(f"{args.command} contract")
        failure.add(type(e).__name__, False, None, str(e))
        outcome.reports.append(failure)

    artifacts = []
    if args.output:
        payload = outcome.artifact if outcome.artifact is not None else {
            "command": argv, "passed": outcome.passed, "reports": [r.to_dict() for r in outcome.reports]}
        ser.write_json(args.output, payload)
        artifacts.append(args.output)
    sys.stdout.write(render(outcome, argv, fmt, artifacts))
    return 0 if outcome.passed else 1


def main():
    """Main entry point."""
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
