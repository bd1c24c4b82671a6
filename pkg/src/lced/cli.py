"""Command-line front end.

Exit codes
----------
check, cyclic : 0 LCED, 1 not LCED, 3 inconclusive
sweep, pik    : 0 verified, 2 counterexample/violation, 3 budget exceeded
identities    : 0 all identities hold, 2 some identity failed
any command   : 4 bad input (parse error, rank deficiency, non-divisor, ...)
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .codes import CyclicSpec, NotADivisor, cyclic
from .conjectures import (
    BudgetExceeded,
    default_budget,
    identity_suite,
    sweep_guess,
    verify_pi_k,
)
from .engine import (
    ORDERS,
    SearchStrategy,
    Status,
    WrongCharacteristic,
    BadShape,
    constacyclic_sufficient,
    decide,
    gpg_det,
    reciprocal_construction,
)
from .fields import FieldError, parse_field
from .matrix import Matrix
from .polynomial import Polynomial
from .textio import ParseError, format_matrix, read_matrix

SCHEMA_VERSION = 1

EXIT_LCED, EXIT_NOT_LCED, EXIT_INCONCLUSIVE = 0, 1, 3
EXIT_VERIFIED, EXIT_COUNTEREXAMPLE, EXIT_BUDGET = 0, 2, 3
EXIT_INPUT = 4


class InputError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"2..5"`` or ``"2,4,6"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = (int(t) for t in part.split(".."))
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def _range_arg(text: str) -> list[int]:
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from exc


def _field_arg(text: str):
    try:
        return parse_field(text)
    except (FieldError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lced", description="Decide LCED codes and run conjecture sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "structured"), default="text")
        p.add_argument("--out", help="write the report here instead of stdout")

    p = sub.add_parser("check", help="decide one generator matrix")
    p.add_argument("--matrix", required=True, help="matrix file (text format)")
    p.add_argument("--field", type=_field_arg, help="expected field literal")
    p.add_argument("--order", choices=ORDERS, default="identity-first")
    p.add_argument("--limit", type=int, help="max determinant evaluations in the search")
    p.add_argument("--certify", action="store_true", help="require an unlimited, certifying search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--probes", type=int, default=0, help="random permutations to probe before exhaustion")
    p.add_argument("--allow-deficient", action="store_true")
    p.add_argument("--no-shortcuts", action="store_true", help="search only (rank check excepted)")
    common(p)

    p = sub.add_parser("sweep", help="exhaustive conjecture sweep over standard-form matrices")
    p.add_argument("--field", type=_field_arg, required=True)
    p.add_argument("--k", type=_range_arg, required=True)
    p.add_argument("--n", type=_range_arg, required=True)
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int)
    p.add_argument("--timing", action="store_true", help="include wall time in structured output")
    common(p)

    p = sub.add_parser("pik", help="enumerate matrices with -1 an eigenvalue of every P M")
    p.add_argument("--field", type=_field_arg, required=True)
    p.add_argument("--k", type=_range_arg, required=True)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int)
    p.add_argument("--timing", action="store_true")
    common(p)

    p = sub.add_parser("identities", help="permutation-sum identity suite")
    p.add_argument("--field", required=True, help="prime field literal, or Z for the integers")
    p.add_argument("--k", type=_range_arg, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("cyclic", help="cyclic/constacyclic code pathway")
    p.add_argument("--field", type=_field_arg, required=True)
    p.add_argument("--poly", required=True, help="generator coefficients low-to-high, e.g. 1,0,1,0,1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="1", help="constacyclic constant")
    common(p)
    return parser


# ------------------------------------------------------------------ commands


def cmd_check(args) -> tuple[int, dict, str]:
    if args.certify and args.limit is not None:
        raise InputError("--certify requires an unlimited search; drop --limit")
    try:
        G = read_matrix(args.matrix, args.field)
    except OSError as exc:
        raise InputError(f"cannot read {args.matrix}: {exc}") from exc
    rank = G.rank
    if rank < G.nrows and not args.allow_deficient:
        raise InputError(f"matrix has rank {rank} < {G.nrows} rows (use --allow-deficient)")
    strategy = SearchStrategy(order=args.order, limit=args.limit, seed=args.seed, random_probes=args.probes)
    if args.no_shortcuts:
        from .engine import witness_search

        v = witness_search(G, strategy)
    else:
        v = decide(G, strategy)
    code = {Status.LCED: EXIT_LCED, Status.NOT_LCED: EXIT_NOT_LCED, Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}[v.status]
    det = gpg_det(G, v.witness) if v.witness is not None else None
    result = {
        "matrix": format_matrix(G),
        "field": G.field.literal(),
        "k": G.nrows,
        "n": G.ncols,
        "rank": rank,
        "verdict": v.as_dict(),
        "witness_det": None if det is None else G.field.format_element(det.value),
    }
    lines = [
        f"field        {G.field.literal()}",
        f"shape        {G.nrows} x {G.ncols} (rank {rank})",
        f"status       {v.status.value}",
        f"certificate  {v.certificate.value}" + (f" ({v.detail})" if v.detail else ""),
        f"witness      {v.witness.notation() if v.witness else '-'}",
    ]
    if det is not None:
        lines.append(f"det(GPG^t)   {det}")
    lines.append(f"perms        {v.perms_examined}")
    return code, {"results": [result]}, "\n".join(lines)


def cmd_sweep(args) -> tuple[int, dict, str]:
    budget = args.budget if args.budget is not None else default_budget()
    reports = []
    lines = []
    code = EXIT_VERIFIED
    for k in args.k:
        for n in args.n:
            if n < k:
                continue
            try:
                r = sweep_guess(args.field, k, n, args.canonical, jobs=args.jobs, budget=budget)
            except BudgetExceeded as exc:
                reports.append({"kind": "sweep", "field": args.field.literal(), "k": k, "n": n,
                                "budget": budget, "budget_exceeded": True, "error": str(exc), "verified": False})
                lines.append(f"F={args.field} k={k} n={n}: budget exceeded ({exc})")
                if code != EXIT_COUNTEREXAMPLE:
                    code = EXIT_BUDGET
                continue
            reports.append(r.as_dict(include_timing=args.timing))
            if r.counterexamples:
                code = EXIT_COUNTEREXAMPLE
            elif r.budget_exceeded and code != EXIT_COUNTEREXAMPLE:
                code = EXIT_BUDGET
            status = "verified" if r.verified else ("COUNTEREXAMPLE" if r.counterexamples else "budget exceeded")
            lines.append(
                f"F={r.field} k={k} n={n}: {r.candidates_total} candidates"
                f" ({r.candidates_after_canonicalization} decided), LCED {r.lced_count},"
                f" not LCED {r.notlced_count}, predicate {r.predicate_count},"
                f" counterexamples {len(r.counterexamples)}, dets {r.det_evaluations},"
                f" {r.wall_time:.2f}s -> {status}"
            )
            for A, direction in r.counterexamples:
                lines.append(f"  {direction}:\n" + "\n".join("    " + l for l in format_matrix(A).splitlines()))
    return code, {"results": reports}, "\n".join(lines)


def cmd_pik(args) -> tuple[int, dict, str]:
    budget = args.budget if args.budget is not None else default_budget()
    reports, lines = [], []
    code = EXIT_VERIFIED
    for k in args.k:
        try:
            r = verify_pi_k(args.field, k, args.symmetric, jobs=args.jobs, budget=budget)
        except BudgetExceeded as exc:
            reports.append({"kind": "pik", "field": args.field.literal(), "k": k, "budget": budget,
                            "budget_exceeded": True, "error": str(exc), "verified": False})
            lines.append(f"F={args.field} k={k}: budget exceeded ({exc})")
            if code != EXIT_COUNTEREXAMPLE:
                code = EXIT_BUDGET
            continue
        reports.append(r.as_dict(include_timing=args.timing))
        if r.entry_sum_violations or r.stronger_violations or r.trace_violations:
            code = EXIT_COUNTEREXAMPLE
        elif r.budget_exceeded and code != EXIT_COUNTEREXAMPLE:
            code = EXIT_BUDGET
        tv = "" if r.trace_violations is None else f", trace violations {len(r.trace_violations)}"
        lines.append(
            f"F={r.field} k={k} {'symmetric' if r.symmetric_only else 'all'}: {r.candidates_total} candidates,"
            f" {r.qualifying_count} qualify, entry-sum violations {len(r.entry_sum_violations)},"
            f" stronger-property violations {len(r.stronger_violations)}{tv}"
            f" -> {'verified' if r.verified else 'NOT verified'}"
        )
    return code, {"results": reports}, "\n".join(lines)


def cmd_identities(args) -> tuple[int, dict, str]:
    if args.field.strip().upper() == "Z":
        F = None
    else:
        try:
            F = parse_field(args.field)
        except (FieldError, ValueError) as exc:
            raise InputError(str(exc)) from exc
    reports, lines = [], []
    code = EXIT_VERIFIED
    for k in args.k:
        try:
            r = identity_suite(F, k, args.trials, args.seed)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        reports.append(r.as_dict())
        if not r.passed:
            code = EXIT_COUNTEREXAMPLE
        checked = sum(c for c, _ in r.checks.values())
        failed = sum(f for _, f in r.checks.values())
        lines.append(f"{r.field} k={k}: {checked} checks, {failed} failed -> {'pass' if r.passed else 'FAIL'}")
        lines.extend("  " + f for f in r.failures)
    return code, {"results": reports}, "\n".join(lines)


def cmd_cyclic(args) -> tuple[int, dict, str]:
    F = args.field
    try:
        g = Polynomial.parse(F, args.poly)
        lam = F.parse_element(args.lam)
    except ValueError as exc:
        raise InputError(f"bad polynomial or lambda: {exc}") from exc
    spec = CyclicSpec(g, args.n, lam)
    try:
        gcd_ok = constacyclic_sufficient(spec)
        C = cyclic(spec)
    except NotADivisor as exc:
        raise InputError(str(exc)) from exc
    recip = None
    recip_note = "not applicable"
    if F.p == 2 and g.degree >= 1 and args.n == 3 * g.degree and F.encode(lam) == 1:
        try:
            recip = reciprocal_construction(g, args.n)
            recip_note = "witness found" if recip is not None else "condition fails (inconclusive)"
        except (WrongCharacteristic, BadShape, NotADivisor) as exc:
            recip_note = f"not applicable: {exc}"
    v = decide(C.gen)
    code = {Status.LCED: EXIT_LCED, Status.NOT_LCED: EXIT_NOT_LCED, Status.INCONCLUSIVE: EXIT_INCONCLUSIVE}[v.status]
    result = {
        "field": F.literal(),
        "poly": [F.format_element(c) for c in g.coeffs],
        "n": args.n,
        "k": C.k,
        "lambda": F.format_element(F.encode(lam)),
        "gcd_criterion": gcd_ok,
        "reciprocal_construction": None if recip is None else recip.notation(),
        "reciprocal_note": recip_note,
        "reciprocal_det": None if recip is None else F.format_element(gpg_det(C.gen, recip).value),
        "generator": format_matrix(C.gen),
        "verdict": v.as_dict(),
    }
    lines = [
        f"code         [{args.n}, {C.k}] over {F.literal()}, g = {g}",
        f"gcd test     {'coprime -> LCED' if gcd_ok else 'not coprime (inconclusive)'}",
        f"reciprocal   {recip_note}" + (f" {recip.notation()}" if recip is not None else ""),
        f"status       {v.status.value} ({v.certificate.value})",
        f"witness      {v.witness.notation() if v.witness else '-'}",
    ]
    return code, {"results": [result]}, "\n".join(lines)


COMMANDS = {
    "check": cmd_check,
    "sweep": cmd_sweep,
    "pik": cmd_pik,
    "identities": cmd_identities,
    "cyclic": cmd_cyclic,
}


def _config(args) -> dict:
    cfg = {}
    for key, value in sorted(vars(args).items()):
        if key in ("format", "out", "timing", "jobs", "command"):
            continue
        if hasattr(value, "literal"):
            value = value.literal()
        cfg[key] = value
    return cfg


def render(command: str, args, code: int, payload: dict, text: str) -> str:
    if args.format == "structured":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "config": _config(args),
            "exit_code": code,
            **payload,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return text + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        code, payload, text = COMMANDS[args.command](args)
    except (InputError, ParseError, FieldError) as exc:
        print(f"lced {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = render(args.command, args, code, payload, text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
