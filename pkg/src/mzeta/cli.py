"""Command line interface.

    mzeta <command> [options] CONFIG.json

Exit status is 0 on success, 1 on a domain error (invalid blow-up, failed
invariance, higher-order pole, missing symbol values) and 2 when the input
cannot be read, parsed, or fails the document schema.
"""

from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .algebra import format_series, series_limit
from .blowup import BlowupError, apply_blowup, apply_script, random_case, validate_blowup, verify_invariance
from .errors import ParseError, SchemaError, ZetaError
from .io import ConfigDocument, format_config, read_config
from .model import validate
from .zeta import (
    candidate_s_poles, check_limit_relation, compute_micc, compute_naive, compute_zeta, hodge_zeta,
    pole_candidates, stringy_residue, topological_zeta, twisted_topological_zeta,
)

COMMANDS = ("zeta", "micc", "naive", "hodge", "topzeta", "twisted", "stringy",
            "blowup", "verify", "poles", "limit", "validate")

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


@dataclass
class Result:
    code: int
    stdout: str
    stderr: str = ""


class _Failure(Exception):
    def __init__(self, code, message, stdout=""):
        super().__init__(message)
        self.code = code
        self.stdout = stdout


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mzeta",
        description="Exact motivic infinite cyclic zeta functions of SNC divisor data.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "zeta": "print the zeta function Z^A(T) as a rational series",
        "micc": "print the motivic infinite cyclic cover S^A",
        "naive": "print the naive zeta function",
        "hodge": "print the Hodge specialization (needs hodge_table)",
        "topzeta": "print the topological zeta function in s (needs chi_table)",
        "twisted": "print the twisted topological zeta function for --order e",
        "stringy": "print the stringy residue in u, v (needs hodge_table)",
        "blowup": "apply the document's blow-up script and print the result",
        "verify": "check invariance under the blow-up script, or a random campaign",
        "poles": "list candidate poles (a, b) of Z^A after free-ring cancellation",
        "limit": "check S^A = -lim_{T->oo} Z^A(T)",
        "validate": "report every violated rule of a document",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("config", nargs="?" if name == "verify" else None,
                       help="JSON configuration document")
        p.add_argument("--selection", help="comma separated component ids overriding the selection")
        p.add_argument("--output", help="write the result to this file instead of stdout")
        if name == "twisted":
            p.add_argument("--order", type=int, required=True, help="order e of the character")
        if name == "verify":
            p.add_argument("--random", type=int, metavar="N", help="run N random cases")
            p.add_argument("--seed", type=int, default=0, help="seed of the random campaign")
            p.add_argument("--jobs", type=int, default=1, help="worker processes for --random")
    return parser


def _load(args) -> ConfigDocument:
    try:
        doc = read_config(args.config)
    except OSError as exc:
        raise _Failure(EXIT_INPUT, f"cannot read {args.config}: {exc.strerror or exc}") from None
    except ParseError as exc:
        raise _Failure(EXIT_INPUT, f"{args.config}: {exc}") from None
    if args.selection is not None:
        ids = [x.strip() for x in args.selection.split(",") if x.strip()]
        config = doc.config.replace(selection=ids)
        problems = validate(config)
        if problems:
            raise _Failure(EXIT_INPUT, "--selection: " + "; ".join(problems))
        doc = ConfigDocument(config, doc.blowups, doc.hodge_table, doc.chi_table)
    return doc


def _lines(*items) -> str:
    return "".join(f"{x}\n" for x in items)


def _cmd_verify(args) -> tuple:
    if args.random is not None:
        return _campaign(args.random, args.seed, args.jobs)
    if args.config is None:
        raise _Failure(EXIT_INPUT, "verify needs a CONFIG file or --random N")
    doc = _load(args)
    if not doc.blowups:
        raise _Failure(EXIT_DOMAIN, "the document has no blowups to verify")
    config = doc.config
    out = []
    ok = True
    for n, spec in enumerate(doc.blowups):
        problems = validate_blowup(config, spec)
        if problems:
            raise BlowupError(problems, index=n)
        result = verify_invariance(config, spec)
        out.append(f"blow-up #{n}: zeta {'equal' if result.equal else 'DIFFERENT'}, "
                   f"naive {'equal' if result.naive_equal else 'DIFFERENT'}")
        if not result.holds:
            ok = False
            if not result.equal:
                out.append(f"  witness: {result.witness}")
            if not result.naive_equal:
                out.append(f"  naive witness: {result.naive_witness}")
        config = apply_blowup(config, spec)
    out.append("INVARIANT: equal" if ok else "INVARIANT: NOT equal")
    return (EXIT_OK if ok else EXIT_DOMAIN), _lines(*out)


def campaign_case(seed: int, index: int) -> tuple:
    """Run one random case; returns (invariant, corrupted_detected, limit_ok)."""
    rng = random.Random(f"{seed}:{index}")
    config, spec = random_case(rng, relevant=True)
    good = verify_invariance(config, spec).holds
    nu_star = sum(config.component(i).nu for i in spec.center_in) + spec.codim
    corrupted = verify_invariance(config, spec, nu_star=nu_star + 1)
    return good, not corrupted.holds, check_limit_relation(config)


def _campaign(n: int, seed: int, jobs: int) -> tuple:
    if n < 1:
        raise _Failure(EXIT_INPUT, "--random needs a positive number of cases")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(campaign_case, [seed] * n, range(n)))
    else:
        results = [campaign_case(seed, i) for i in range(n)]
    invariant = sum(r[0] for r in results)
    detected = sum(r[1] for r in results)
    limits = sum(r[2] for r in results)
    out = [f"random campaign: seed {seed}, {n} cases",
           f"invariance (zeta and naive): {invariant}/{n}",
           f"corrupted nu_* detected: {detected}/{n}",
           f"limit relation: {limits}/{n}"]
    failed = [i for i, r in enumerate(results) if not all(r)]
    if failed:
        out.append("failing cases: " + ", ".join(map(str, failed)))
    ok = not failed
    out.append("INVARIANT: equal" if ok else "INVARIANT: NOT equal")
    return (EXIT_OK if ok else EXIT_DOMAIN), _lines(*out)


def _cmd_validate(args) -> tuple:
    try:
        doc = read_config(args.config)
    except OSError as exc:
        raise _Failure(EXIT_INPUT, f"cannot read {args.config}: {exc.strerror or exc}") from None
    except SchemaError as exc:
        where = f" ({exc.location})" if exc.location else ""
        return EXIT_INPUT, _lines(*(f"violation{where}: {v}" for v in exc.violations))
    except ParseError as exc:
        return EXIT_INPUT, _lines(f"violation: {exc}")
    config = doc.config
    for n, spec in enumerate(doc.blowups):
        problems = validate_blowup(config, spec)
        if problems:
            return EXIT_DOMAIN, _lines(*(f"violation (blow-up #{n}): {v}" for v in problems))
        config = apply_blowup(config, spec)
    return EXIT_OK, "valid\n"


def _dispatch(args) -> tuple:
    cmd = args.command
    if cmd == "verify":
        return _cmd_verify(args)
    if cmd == "validate":
        return _cmd_validate(args)
    doc = _load(args)
    config = doc.config
    if cmd == "zeta":
        return EXIT_OK, format_series(compute_zeta(config)) + "\n"
    if cmd == "naive":
        return EXIT_OK, format_series(compute_naive(config)) + "\n"
    if cmd == "micc":
        return EXIT_OK, f"{compute_micc(config)}\n"
    if cmd == "hodge":
        return EXIT_OK, f"{hodge_zeta(config, doc.hodge_table)}\n"
    if cmd == "topzeta":
        return EXIT_OK, f"{topological_zeta(config, doc.chi_table)}\n"
    if cmd == "twisted":
        return EXIT_OK, f"{twisted_topological_zeta(config, args.order, doc.chi_table)}\n"
    if cmd == "stringy":
        return EXIT_OK, f"{stringy_residue(config, doc.hodge_table)}\n"
    if cmd == "blowup":
        after = apply_script(config, doc.blowups)
        return EXIT_OK, format_config(ConfigDocument(after, (), doc.hodge_table, doc.chi_table))
    if cmd == "poles":
        pairs = pole_candidates(compute_zeta(config))
        out = [f"({a}, {b})  s = {Fraction(-a, b)}" for a, b in pairs]
        s_values = sorted(candidate_s_poles(pairs))
        out.append("s-poles: {" + ", ".join(str(s) for s in s_values) + "}")
        return EXIT_OK, _lines(*out)
    if cmd == "limit":
        z = compute_zeta(config)
        lhs, rhs = compute_micc(config), -series_limit(z)
        ok = lhs == rhs
        out = [f"S^A = {lhs}", f"-lim Z^A = {rhs}",
               "LIMIT RELATION: holds" if ok else "LIMIT RELATION: FAILS"]
        return (EXIT_OK if ok else EXIT_DOMAIN), _lines(*out)
    raise AssertionError(cmd)


def run(command: str, args: list) -> Result:
    """Execute ``command`` with command line ``args``; never raises for user errors."""
    parser = build_parser()
    try:
        ns = parser.parse_args([command, *args])
    except SystemExit as exc:
        return Result(EXIT_INPUT if exc.code else EXIT_OK, "", "usage error\n")
    try:
        code, text = _dispatch(ns)
    except _Failure as exc:
        return Result(exc.code, exc.stdout, f"error: {exc}\n")
    except ParseError as exc:
        return Result(EXIT_INPUT, "", f"error: {exc}\n")
    except (ZetaError, ZeroDivisionError) as exc:
        return Result(EXIT_DOMAIN, "", f"error: {exc}\n")
    if ns.output:
        try:
            with open(ns.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            return Result(EXIT_INPUT, "", f"error: cannot write {ns.output}: {exc.strerror}\n")
        text = ""
    return Result(code, text)


def main(argv: list | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] not in COMMANDS:
        # let argparse print usage / help
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return EXIT_INPUT if exc.code else EXIT_OK
        return EXIT_INPUT
    result = run(argv[0], argv[1:])
    sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
