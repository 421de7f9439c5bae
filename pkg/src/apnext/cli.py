"""Command-line entry point: ``apnext <command> [options]``.

Every command prints one JSON object on stdout::

    {"schema": 1, "command": ..., "status": "ok" | "error", "payload": ..., "elapsed_ms": ...}

except ``reproduce`` without ``--json``, which prints the pass/fail matrix.
Progress and diagnostics go to stderr.  Exit codes: 0 success, 1 error or a
violated ``--expect``, 2 usage error (bad flags or invalid inputs).
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .catalog import FAMILIES, FunctionSpec, SpecError, instantiate, parse_mu
from .extend import ExtensionSpec, LinearizedPoly, build_extension, is_zero_extendable
from .field import FieldError, field_new
from .lemmas import LEMMAS, verify_weight_lemma
from .ortho import NotAPNError, NotQuadraticError, ortho_derivative
from .relations import RELATIONS, RelationError, verify_relation
from .reproduce import format_matrix, run_battery
from .tableio import SCHEMA_VERSION, TableFormatError, dumps, format_table, read_table, write_table
from .vecfun import VectorialFunction, analyze

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    command: str
    status: str
    payload: dict
    elapsed_ms: float
    exit_code: int = EXIT_OK

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _eprint(*args):
    print(*args, file=sys.stderr, flush=True)


def _hex_int(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hexadecimal number: {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _hex_list(text: str) -> list[int]:
    return [_hex_int(tok) for tok in text.split(",") if tok.strip()]


# --- parser ----------------------------------------------------------------------


def _add_field(p):
    p.add_argument("--n", type=int, help="field degree (2..16)")
    p.add_argument("--modulus", type=_hex_int, help="irreducible modulus in hex, e.g. 25 for x^5+x^2+1")


def _add_function(p):
    _add_field(p)
    p.add_argument("--in", dest="infile", help="truth-table file")
    p.add_argument("--family", choices=[f for f in FAMILIES if f != "file"], help="built-in family")
    p.add_argument("--t", type=int, help="Gold parameter: x^(2^t+1)")
    p.add_argument("--d", type=int, help="monomial exponent")
    p.add_argument("--mu", help="switched-cube terms c:e,... (c hex); default 1:9")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="apnext", description="Quadratic APN functions and their (0,L,a)-extensions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="DDT, Walsh and degree summary")
    _add_function(p)

    p = sub.add_parser("ortho", help="compute the ortho-derivative")
    _add_function(p)
    p.add_argument("--out", help="write the ortho-derivative truth table here")

    p = sub.add_parser("extend-search", help="decide 0-extendability")
    _add_function(p)
    p.add_argument("--all-a", action="store_true", help="solve every a and report feasibility per a")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--frobenius-pruning", action="store_true", help="solve one a per Frobenius orbit, with an orbit check")
    p.add_argument("--expect", choices=("none", "witness"), help="exit 1 unless the outcome matches")

    p = sub.add_parser("extend-build", help="write the truth table of a (0,L,a)-extension")
    _add_function(p)
    p.add_argument("--L", dest="L", required=True, type=_hex_list, help="n comma-separated hex coefficients of X^(2^j)")
    p.add_argument("--a", required=True, type=_hex_int)
    p.add_argument("--out", help="output file; default puts the table in the JSON payload")

    p = sub.add_parser("verify-lemmas", help="exhaustively sweep the 2-weight lemmas")
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--lemma", choices=sorted(LEMMAS), action="append", help="restrict to these lemmas")
    p.add_argument("--jobs", type=_positive, default=1)

    p = sub.add_parser("verify-relations", help="check the coefficient relations on random (L, a)")
    _add_field(p)
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--relation", choices=sorted(RELATIONS), action="append", help="restrict to these relations")
    p.add_argument("--jobs", type=_positive, default=1)

    p = sub.add_parser("reproduce", help="run the full acceptance battery")
    p.add_argument("--quick", action="store_true", help="skip relation checks at n >= 11")
    p.add_argument("--json", action="store_true", help="emit the matrix as JSON")
    p.add_argument("--seed", type=int, default=0)

    return parser


# --- input resolution --------------------------------------------------------------


def _field(args, n=None):
    n = args.n if n is None else n
    if n is None:
        raise UsageError("--n is required")
    try:
        return field_new(n, args.modulus)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


def _function(args):
    """Resolve (ctx, F, description) from --in or the family flags."""
    if args.infile and args.family:
        raise UsageError("give either --in or --family, not both")
    if args.infile:
        try:
            F = read_table(args.infile)
        except (OSError, TableFormatError) as exc:
            raise UsageError(f"cannot read {args.infile}: {exc}") from None
        if args.n is not None and args.n != F.n_in:
            raise UsageError(f"--n {args.n} disagrees with the table's n={F.n_in}")
        ctx = _field(args, F.n_in)
        if F.n_out != ctx.n:
            raise UsageError(f"expected an n-to-n table, got n={F.n_in} m={F.n_out}")
        return ctx, F, f"file {args.infile}"
    if not args.family:
        raise UsageError("give --in <file> or --family")
    ctx = _field(args)
    try:
        mu = parse_mu(args.mu) if args.mu else ()
        spec = FunctionSpec(args.family, t=args.t, d=args.d, mu=mu)
        F = instantiate(ctx, spec)
    except (SpecError, FieldError) as exc:
        raise UsageError(str(exc)) from None
    return ctx, F, spec.describe()


# --- commands ------------------------------------------------------------------------


def cmd_analyze(args):
    ctx, F, desc = _function(args)
    return {"n": ctx.n, "modulus": format(ctx.modulus, "x"), "function": desc, **analyze(F).to_json()}, EXIT_OK


def cmd_ortho(args):
    ctx, F, desc = _function(args)
    pi = ortho_derivative(ctx, F)
    payload = {"n": ctx.n, "modulus": format(ctx.modulus, "x"), "function": desc}
    table = VectorialFunction(ctx.n, ctx.n, pi.pi.table)
    if args.out:
        write_table(args.out, table)
        payload["out"] = args.out
    else:
        payload["table"] = format_table(table)
    return payload, EXIT_OK


def cmd_extend_search(args):
    ctx, F, desc = _function(args)
    last = [0.0]

    def progress(tried, total):
        now = time.perf_counter()
        if now - last[0] >= 1.0 or tried == total:
            last[0] = now
            _eprint(f"extend-search: {tried}/{total} values of a tried")

    res = is_zero_extendable(ctx, F, all_a=args.all_a, jobs=args.jobs,
                             frobenius_pruning=args.frobenius_pruning, progress=progress)
    payload = {"modulus": format(ctx.modulus, "x"), "function": desc, **res.to_json()}
    code = EXIT_OK
    if args.expect is not None:
        met = (args.expect == "none") != res.extendable
        payload["expect"] = args.expect
        payload["expectation_met"] = met
        if not met:
            _eprint(f"extend-search: expected {args.expect!r} but extendable={res.extendable}")
            code = EXIT_FAIL
    return payload, code


def cmd_extend_build(args):
    ctx, F, desc = _function(args)
    try:
        L = LinearizedPoly(tuple(args.L)).validate(ctx)
        ctx.check(args.a)
        spec = ExtensionSpec(L, args.a)
    except (ValueError, FieldError) as exc:
        raise UsageError(str(exc)) from None
    T = build_extension(ctx, F, spec)
    payload = {"n": ctx.n, "function": desc, **spec.to_json(), "n_out": T.n_out}
    if args.out:
        write_table(args.out, T)
        payload["out"] = args.out
    else:
        payload["table"] = format_table(T)
    return payload, EXIT_OK


def _pool_map(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _lemma_job(item):
    name, lo, hi = item
    return verify_weight_lemma(name, (lo, hi)).to_json()


def cmd_verify_lemmas(args):
    if not 2 <= args.n_min <= args.n_max:
        raise UsageError("need 2 <= --n-min <= --n-max")
    names = args.lemma or list(LEMMAS)
    reports = _pool_map(_lemma_job, [(name, args.n_min, args.n_max) for name in names], args.jobs)
    ok = all(r["passed"] for r in reports)
    return {"n_range": [args.n_min, args.n_max], "passed": ok, "lemmas": reports}, EXIT_OK if ok else EXIT_FAIL


def _relation_job(item):
    name, n, modulus, trials, seed = item
    try:
        return [r.to_json() for r in verify_relation(name, field_new(n, modulus), trials, seed)]
    except RelationError as exc:
        return [{"relation": name, "n": n, "skipped": str(exc)}]


def cmd_verify_relations(args):
    ctx = _field(args)
    names = args.relation or list(RELATIONS)
    items = [(name, ctx.n, ctx.modulus, args.trials, args.seed) for name in names]
    reports = [r for group in _pool_map(_relation_job, items, args.jobs) for r in group]
    checked = [r for r in reports if "skipped" not in r]
    if args.relation and not checked:
        raise UsageError(f"none of the requested relations applies at n={ctx.n}")
    ok = all(r["passed"] for r in checked)
    payload = {"n": ctx.n, "trials": args.trials, "seed": args.seed, "passed": ok, "reports": reports}
    return payload, EXIT_OK if ok else EXIT_FAIL


def cmd_reproduce(args):
    def progress(row):
        _eprint(f"reproduce: {row.key} {'ok' if row.ok else 'FAILED'} in {row.seconds:.2f}s")

    rows = run_battery(quick=args.quick, seed=args.seed, progress=progress)
    ok = all(r.ok for r in rows)
    payload = {"quick": args.quick, "seed": args.seed, "passed": ok, "rows": [r.to_json() for r in rows]}
    if not args.json:
        payload["_matrix"] = format_matrix(rows)
    return payload, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "analyze": cmd_analyze,
    "ortho": cmd_ortho,
    "extend-search": cmd_extend_search,
    "extend-build": cmd_extend_build,
    "verify-lemmas": cmd_verify_lemmas,
    "verify-relations": cmd_verify_relations,
    "reproduce": cmd_reproduce,
}


def run(argv=None) -> CommandResult:
    """Parse and execute; raises SystemExit(2) on usage errors."""
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        payload, code = COMMANDS[args.command](args)
        status = "ok" if code == EXIT_OK or args.command == "extend-search" else "error"
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"{parser.prog} {args.command}: error: {exc}\n")
    except (NotAPNError, NotQuadraticError, ValueError, RuntimeError, OSError) as exc:
        _eprint(f"{parser.prog} {args.command}: {exc}")
        payload, code, status = {"error": str(exc), "type": type(exc).__name__}, EXIT_FAIL, "error"
    elapsed = (time.perf_counter() - start) * 1000
    return CommandResult(args.command, status, payload, elapsed, code)


def main(argv=None) -> int:
    result = run(argv)
    matrix = result.payload.pop("_matrix", None)
    if matrix is not None:
        print(matrix)
        print(f"{'all rows passed' if result.status == 'ok' else 'some rows FAILED'} "
              f"({result.elapsed_ms / 1000:.1f}s)")
    else:
        print(dumps(result.to_json()))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
