"""Command-line front end.

Every command prints one JSON document (or a plain table) and exits with
0 on success, 1 on bad input, 2 when the working precision runs out and 3
when a certified identity fails.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .errors import InputError, PrecisionExhausted, RamforgeError, VerificationFailure
from .localram import (
    EisensteinDatum,
    check_solid,
    classify,
    fiber_restatement,
    localize,
    thm_equiv_rows,
    triple_fiber_check,
    verify_L2,
    verify_mainlemma,
)
from .numberfield import (
    NumberRing,
    dedekind_maximal,
    default_precision,
    factor_prime,
    inverse_different,
    kaehler_global,
    local_kaehler,
    non_maximal_primes,
    parse_poly,
    poly_str,
)
from .thh import (
    hochschild_direct,
    hochschild_groups,
    les_assembly_check,
    pcompletion_coherence,
    ram_groups,
    thh_groups,
)

SCHEMA = "ramforge/1"
PRECISION_ENV = "RAMFORGE_PRECISION"
DEFAULT_MAX_DEGREE = 7

EXIT_OK, EXIT_INPUT, EXIT_PRECISION, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; that code means precision here
    def error(self, message):
        raise InputError(message)


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", help="defining polynomial, coefficients constant term first, e.g. 1,0,1")
    common.add_argument("--prime", type=int)
    common.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    common.add_argument("--precision", type=int, help=f"p-adic precision N (default: ${PRECISION_ENV} or automatic)")
    common.add_argument("--eisenstein", help="Eisenstein datum, e.g. p=2,e=2,g=0,u=1")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", help="also write the output to this file")

    ap = _Parser(prog="ramforge", description="Ramification invariants of monogenic rings of integers.")
    ap.add_argument("--version", action="version", version=f"ramforge {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("factor", parents=[common], help="factor a prime in Z[theta]")
    sub.add_parser("classify", parents=[common], help="ramification type with derived witnesses")
    sub.add_parser("omega1", parents=[common], help="Kaehler differentials, global and local")
    sub.add_parser("different", parents=[common], help="inverse different as a fractional ideal")
    sub.add_parser("thh", parents=[common], help="THH groups")
    hh = sub.add_parser("hh", parents=[common], help="Hochschild homology over Z")
    hh.add_argument("--direct", action="store_true", help="also compute Tor over A (x) A (degree <= 5)")
    sub.add_parser("ram", parents=[common], help="Ram groups")
    sub.add_parser("verify-mainlemma", parents=[common], help="chain-level weak equivalence I ~ Omega^1")
    sub.add_parser("verify-l2", parents=[common], help="homology of Omega^1 (x) k and k (x) I (x) k")
    tri = sub.add_parser("verify-triple", parents=[common], help="fiber sequence for a tower Z < B < C")
    tri.add_argument("--top", default="-2,0,0,0,1", help="defining polynomial of C")
    tri.add_argument("--embed", default="0,0,1", help="image of the generator of B in C")
    tri.add_argument("--depth", type=int, default=4)
    sol = sub.add_parser("check-solid", parents=[common], help="solidity of Z -> A for A in Z, Z[1/n], Z/n")
    sol.add_argument("--algebra", required=True)
    sol.add_argument("--depth", type=int, default=3)
    sub.add_parser("report", parents=[common], help="full dossier for a field")
    return ap


# -- input helpers ----------------------------------------------------------------


def _field(args, required=True):
    if args.field is None:
        if required:
            raise InputError("--field is required")
        return None
    return NumberRing(parse_poly(args.field))


def _precision(args):
    if args.precision is not None:
        N = args.precision
    elif os.environ.get(PRECISION_ENV):
        try:
            N = int(os.environ[PRECISION_ENV])
        except ValueError:
            raise InputError(f"${PRECISION_ENV} must be an integer") from None
    else:
        return None
    if N < 1:
        raise InputError("precision must be positive")
    return N


def _prime(args, required=True):
    if args.prime is None and required:
        raise InputError("--prime is required")
    return args.prime


def _data(args):
    """Eisenstein data named on the command line, directly or through a field and prime."""
    N = _precision(args)
    if args.eisenstein:
        E = EisensteinDatum.parse(args.eisenstein, N)
        return [E], E.N
    A = _field(args)
    p = _prime(args)
    rep = localize(A, p, N=N)
    out = [q.datum for q in rep.factors if q.datum is not None]
    if not out:
        raise InputError(f"no prime above {p} has residue degree 1, so there is no Eisenstein datum")
    return out, rep.N


def _table(T):
    return T.to_json()["groups"]


# -- commands -------------------------------------------------------------------


def cmd_factor(args):
    A = _field(args)
    p = _prime(args)
    fac = factor_prime(A, p)
    return {"factorization": fac.to_json(), "maximal": dedekind_maximal(A, p)}, None, []


def cmd_classify(args):
    A = _field(args)
    N = _precision(args)
    primes = [args.prime] if args.prime is not None else A.ramified_primes()
    out, warnings, used = [], [], {}
    for p in primes:
        if not dedekind_maximal(A, p):
            warnings.append({"reason": "not_maximal", "p": p})
            continue
        rep = classify(A, p, N)
        used[str(p)] = rep.N
        out.append({**rep.to_json(), "classification": rep.classification})
    return {"primes": out}, used or N, warnings


def cmd_omega1(args):
    A = _field(args)
    N = _precision(args)
    res = {"global": kaehler_global(A).to_json(), "local": {}}
    warnings = [{"reason": "not_maximal", "p": p} for p in non_maximal_primes(A)]
    primes = [args.prime] if args.prime is not None else A.ramified_primes()
    for p in primes:
        if dedekind_maximal(A, p):
            res["local"][str(p)] = local_kaehler(A, p, N).to_json()
    return res, N, warnings


def cmd_different(args):
    A = _field(args)
    rep = inverse_different(A)
    return {"inverse_different": rep.to_json()}, None, [{"reason": "not_maximal", "detail": w} for w in rep.warnings]


def cmd_thh(args):
    A = _field(args)
    return {"thh": _table(thh_groups(A, args.max_degree))}, None, []


def cmd_hh(args):
    A = _field(args)
    res = {"hh": _table(hochschild_groups(A, args.max_degree))}
    if args.direct:
        D = hochschild_direct(A, min(args.max_degree, 5))
        res["hh_direct"] = _table(D)
        res["agree"] = D.same_groups(hochschild_groups(A, D.degrees[-1]))
    return res, None, []


def cmd_ram(args):
    A = _field(args)
    return {"ram": _table(ram_groups(A, args.max_degree))}, None, []


def cmd_verify_mainlemma(args):
    data, N = _data(args)
    return {"reports": [verify_mainlemma(E).to_json() for E in data]}, N, []


def cmd_verify_l2(args):
    data, N = _data(args)
    out = []
    for E in data:
        res = verify_L2(E).to_json()
        fib, om = fiber_restatement(E)
        res["datum"] = E.to_json()
        res["fiber_restatement"] = {"fiber": {str(k): v for k, v in fib.items()},
                                    "omega": {str(k): v for k, v in om.items()}, "ok": fib == om}
        out.append(res)
    return {"reports": out}, N, []


def cmd_verify_triple(args):
    fB = parse_poly(args.field) if args.field else [-2, 0, 1]
    p = args.prime if args.prime is not None else 2
    rep = triple_fiber_check(fB, parse_poly(args.top), parse_poly(args.embed), p, args.depth, raise_on_failure=True)
    return {"tower": {"B": poly_str(fB), "C": poly_str(parse_poly(args.top)), "embed": args.embed}, "report": rep.to_json()}, None, []


def cmd_check_solid(args):
    return {"solid": check_solid(args.algebra, args.depth).to_json()}, None, []


def _section(fn):
    try:
        return {"status": "ok", "data": fn()}
    except PrecisionExhausted as exc:
        return {"status": "error", "reason": exc.reason, "message": str(exc)}
    except VerificationFailure:
        raise
    except RamforgeError as exc:
        return {"status": "skipped", "reason": exc.reason, "message": str(exc)}


def cmd_report(args):
    A = _field(args)
    N = _precision(args)
    top = args.max_degree
    bad = non_maximal_primes(A)
    warnings = [{"reason": "not_maximal", "p": p} for p in bad]
    ramified = A.ramified_primes()
    doc = {
        "field": poly_str(A.f),
        "degree": A.d,
        "discriminant": A.disc,
        "ramified_primes": ramified,
        "maximal": not bad,
    }
    primes = {}
    used = {}
    for p in ramified:
        if p in bad:
            primes[str(p)] = {"status": "skipped", "reason": "not_maximal"}
            continue
        used[str(p)] = N or default_precision(A, p)

        def local(p=p):
            rep = classify(A, p, N)
            out = {**rep.to_json(), "classification": rep.classification}
            out["thm_equiv"] = thm_equiv_rows(A, p, N)
            out["l2"] = [verify_L2(q.datum).to_json() for q in rep.factors if q.datum is not None]
            return out

        primes[str(p)] = _section(local)
    doc["primes"] = primes
    doc["omega1"] = _section(lambda: kaehler_global(A).to_json())
    doc["inverse_different"] = _section(lambda: inverse_different(A).to_json())
    doc["thh"] = _section(lambda: _table(thh_groups(A, top)))
    doc["hh"] = _section(lambda: _table(hochschild_groups(A, top)))
    doc["ram"] = _section(lambda: _table(ram_groups(A, top)))
    checks = {}
    checks["les_assembly"] = _section(lambda: [s.to_json() for s in les_assembly_check(A, (top + 1) // 2)])
    if not bad:
        checks["p_completion"] = _section(lambda: all(r["ok"] for r in pcompletion_coherence(A, top)))
        checks["thm_equiv"] = _section(
            lambda: all(r["agree"] for p in (2, 3, 5, 7) for r in thm_equiv_rows(A, p, N))
        )
    doc["checks"] = checks
    return doc, used or N, warnings


COMMANDS = {
    "factor": cmd_factor,
    "classify": cmd_classify,
    "omega1": cmd_omega1,
    "different": cmd_different,
    "thh": cmd_thh,
    "hh": cmd_hh,
    "ram": cmd_ram,
    "verify-mainlemma": cmd_verify_mainlemma,
    "verify-l2": cmd_verify_l2,
    "verify-triple": cmd_verify_triple,
    "check-solid": cmd_check_solid,
    "report": cmd_report,
}


# -- output ---------------------------------------------------------------------


def _request(args):
    keys = ("field", "prime", "max_degree", "precision", "eisenstein")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _render_table(doc) -> str:
    lines = []

    def walk(prefix, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(f"{prefix}.{k}" if prefix else str(k), x[k])
        elif isinstance(x, list) and x and all(isinstance(r, dict) and "degree" in r for r in x):
            lines.append(f"{prefix}:")
            for r in x:
                grp = " + ".join([f"Z^{r['free_rank']}"] * bool(r["free_rank"]) + [f"Z/{t}" for t in r["invariant_factors"]]) or "0"
                lines.append(f"  {r['degree']:>3}  {grp}")
        elif isinstance(x, list) and any(isinstance(r, (dict, list)) for r in x):
            for i, r in enumerate(x):
                walk(f"{prefix}[{i}]", r)
        else:
            lines.append(f"{prefix}: {x}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def render(doc, fmt="json") -> str:
    if fmt == "table":
        return _render_table(doc)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


_POLY_FLAGS = ("--field", "--top", "--embed")


def _glue_negative(argv):
    """Let '--field -2,0,1' through: argparse would read -2,0,1 as an option."""
    out = []
    it = iter(argv)
    for a in it:
        if a in _POLY_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(a)
    return out


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns (exit code, document)."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = _glue_negative(sys.argv[1:] if argv is None else list(argv))
    fmt, out_path, command = "json", None, None
    try:
        args = _parser().parse_args(argv)
        fmt, out_path, command = args.format, args.out, args.command
        results, precision, warnings = COMMANDS[command](args)
        doc = {
            "schema": SCHEMA,
            "version": __version__,
            "command": command,
            "request": _request(args),
            "precision": precision,
            "results": results,
            "warnings": warnings,
        }
        code = EXIT_OK
    except RamforgeError as exc:
        code = EXIT_PRECISION if isinstance(exc, PrecisionExhausted) else EXIT_VERIFY if isinstance(exc, VerificationFailure) else EXIT_INPUT
        doc = {
            "schema": SCHEMA,
            "version": __version__,
            "command": command,
            "error": {"reason": exc.reason, "message": str(exc)},
        }
        print(f"ramforge: {exc.reason}: {exc}", file=stderr)
    text = render(doc, fmt)
    stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code, doc


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
