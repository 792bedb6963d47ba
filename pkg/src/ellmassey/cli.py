"""Command-line surface: curve search, analysis reports, verification sweeps,
and the abstract Galois checkers.

Subcommands and exit codes:

  search        scan primes and coefficients for curves whose mod-l Frobenius
                has a requested shape; exit 3 when nothing matches in bounds
  analyze       full closed-form report for one curve (JSON or CSV table)
  verify        closed-form verdicts against the lifting oracle; exit 1 on
                any mismatch
  galois-check  run an abstract-data checker on a JSON input file

  0 success / no mismatch, 1 verification mismatch, 2 input error,
  3 search exhausted.

All output is deterministic for fixed flags except the meta.elapsed_ms
timing field.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time

from . import ec, ff, galois, massey, oracle
from .errors import EllmasseyError, InputError, SearchExhausted
from .ff import DEFAULT_SEED

CASE_FLAGS = ("full3", "split", "unipotent")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_NO_MATCH = 3

NO_FIXED_POINTS_REPORT_DEGREE_CAP = 24


def _emit(payload, fmt="json", csv_rows=None, csv_header=None):
    if fmt == "csv" and csv_rows is not None:
        print(",".join(csv_header))
        for row in csv_rows:
            print(",".join(str(v) for v in row))
    else:
        print(json.dumps(payload, sort_keys=True))


def _error(message, detail=None):
    obj = {"error": {"message": message}}
    if detail:
        obj["error"]["detail"] = detail
    print(json.dumps(obj, sort_keys=True))


def _field_to_json(x: ff.FieldElement):
    return list(x.coeffs)


def _matrix_to_json(action):
    if action is None:
        return None
    return [list(row) for row in action.entries]


# ---------------------------------------------------------------------------
# search

def _iter_primes(lo, hi):
    for n in range(lo, hi + 1):
        if ff.is_prime(n):
            yield n


def cmd_search(args) -> int:
    ell = args.ell
    if ell not in (3, 5, 7):
        raise InputError("--ell must be 3, 5 or 7")
    if args.case not in CASE_FLAGS:
        raise InputError(f"--case must be one of {CASE_FLAGS}")
    if args.case == "full3" and ell != 3:
        raise InputError("--case full3 requires --ell 3")
    if args.max_p > ec.POINT_COUNT_CAP:
        raise InputError(f"--max-p capped at {ec.POINT_COUNT_CAP}")
    limit = args.limit if args.limit is not None else 5
    rows = []
    for p in _iter_primes(5, args.max_p):
        if p == ell or (6 * ell) % p == 0:
            continue
        if args.case in ("full3", "unipotent") and p % ell != 1:
            continue
        if args.case == "split" and p % ell == 1:
            continue
        base = ff.make_field(p, 1)
        for a, b in itertools.product(range(p), repeat=2):
            try:
                curve = ec.curve_new(base, a, b)
            except EllmasseyError:
                continue
            rank = ec.rational_torsion_rank(curve, ell, seed=args.seed)
            want = 2 if args.case == "full3" else 1
            if rank != want:
                continue
            basis = ec.torsion_basis(curve, ell, seed=args.seed)
            action = ec.frobenius_matrix(basis)
            case = galois.classify_case(action)
            expected = {
                "full3": galois.GaloisCase.FULL_TORSION,
                "split": galois.GaloisCase.SPLIT_LINE,
                "unipotent": galois.GaloisCase.UNIPOTENT_LINE,
            }[args.case]
            assert case is expected
            rows.append(
                {
                    "p": p,
                    "a": a,
                    "b": b,
                    "frobenius_matrix": _matrix_to_json(action),
                    "points": ec.count_points(curve),
                }
            )
            if len(rows) >= limit:
                break
        if len(rows) >= limit:
            break
    if not rows:
        raise SearchExhausted(f"no {args.case} curve found for ell={ell} with p <= {args.max_p}")
    payload = {
        "command": "search",
        "ell": ell,
        "case": args.case,
        "max_p": args.max_p,
        "rows": rows,
        "meta": {"seed": args.seed},
    }
    csv_rows = [
        (r["p"], r["a"], r["b"], "|".join(str(v) for row in r["frobenius_matrix"] for v in row), r["points"])
        for r in rows
    ]
    _emit(payload, args.format, csv_rows, ("p", "a", "b", "frobenius_matrix", "points"))
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze / verify

def _parse_coeffs(text: str):
    try:
        if "," in text:
            return tuple(int(v) for v in text.split(","))
        return int(text)
    except ValueError as exc:
        raise InputError(f"coefficient {text!r} is not an integer or comma list") from exc


def _build_curve(args) -> ec.Curve:
    base = ff.make_field(args.p, args.k0)
    return ec.curve_new(base, base.element(_parse_coeffs(args.a)), base.element(_parse_coeffs(args.b)))


def _select_triples(chars, spec_parts, seed):
    mode = spec_parts[0]
    if mode == "all":
        return list(itertools.product(chars, repeat=3)), "all"
    if mode == "same-char":
        return [(chi, chi, chi) for chi in chars], "same-char"
    if mode == "sample":
        count = int(spec_parts[1]) if len(spec_parts) > 1 else 200
        rng = random.Random(seed)
        pool = [tuple(rng.choice(chars) for _ in range(3)) for _ in range(count)]
        return pool, f"sample {count}"
    raise InputError("--triples must be all, same-char, or sample [N]")


def _report_matrices(curve, group, seed):
    """Frobenius matrices at both levels in the group's normalized basis.

    The degenerate case has no torsion part; its level-l matrix is computed
    directly when the torsion field is small enough, else reported as null.
    """
    if group.case is not galois.GaloisCase.NO_FIXED_POINTS:
        normalized = group.context["normalized_action"]
        return normalized.reduce(group.ell), normalized
    psi = ec.division_polynomial(curve, group.ell)
    factors = ff.factor_monic_squarefree(curve.base, [c.coeffs for c in psi], seed=seed)
    degree = 1
    for d, _ in factors:
        degree = degree * d // _gcd(degree, d)
    if 2 * degree > NO_FIXED_POINTS_REPORT_DEGREE_CAP:
        return None, None
    basis = ec.torsion_basis(curve, group.ell, seed=seed)
    action = ec.frobenius_matrix(basis)
    return action, action if group.ell == group.ell_prime else None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _constants_json(group):
    keys = ("alpha", "beta", "gamma", "delta", "c")
    if group.constants is None:
        return {k: None for k in keys}
    return {k: group.constants.get(k) for k in keys}


def cmd_analyze(args) -> int:
    t0 = time.monotonic()
    curve = _build_curve(args)
    group = galois.build_gbar(curve, args.ell, seed=args.seed)
    chars = group.characters()
    triples, mode = _select_triples(chars, args.triples, args.seed)
    verdicts = []
    for c1, c2, c3 in triples:
        v = massey.triple_verdict(c1, c2, c3, group)
        verdicts.append(
            {
                "chi1": list(c1.values),
                "chi2": list(c2.values),
                "chi3": list(c3.values),
                "status": v.status.value,
                "reason": v.reason,
                "witness": v.witness,
            }
        )
    mat_l, mat_lp = _report_matrices(curve, group, args.seed)
    payload = {
        "curve": {
            "p": curve.base.p,
            "k0": curve.base.k,
            "a": _field_to_json(curve.a),
            "b": _field_to_json(curve.b),
            "j": _field_to_json(curve.j),
        },
        "ell": group.ell,
        "ell_prime": group.ell_prime,
        "case": group.case.value,
        "frobenius_matrix_l": _matrix_to_json(mat_l),
        "frobenius_matrix_lprime": _matrix_to_json(mat_lp),
        "constants": _constants_json(group),
        "characters": len(chars),
        "verdicts": verdicts,
        "meta": {
            "seed": args.seed,
            "mode": mode,
            "elapsed_ms": int((time.monotonic() - t0) * 1000),
        },
    }
    csv_rows = [
        (
            "|".join(map(str, v["chi1"])),
            "|".join(map(str, v["chi2"])),
            "|".join(map(str, v["chi3"])),
            v["status"],
            v["reason"],
        )
        for v in verdicts
    ]
    _emit(payload, args.format, csv_rows, ("chi1", "chi2", "chi3", "status", "reason"))
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.monotonic()
    curve = _build_curve(args)
    group = galois.build_gbar(curve, args.ell, seed=args.seed)
    chars = group.characters()
    mode_parts = args.mode
    if mode_parts[0] == "exhaustive":
        allowed = group.ell == 3 or (
            group.case in (galois.GaloisCase.SPLIT_LINE, galois.GaloisCase.UNIPOTENT_LINE)
            and group.ell <= 5
        )
        if not allowed:
            raise InputError(
                "exhaustive verification is permitted for ell = 3, or for the "
                "split/unipotent cases with ell <= 5"
            )
        triples, mode = list(itertools.product(chars, repeat=3)), "exhaustive"
    elif mode_parts[0] == "sample":
        count = int(mode_parts[1]) if len(mode_parts) > 1 else 200
        rng = random.Random(args.seed)
        triples = [tuple(rng.choice(chars) for _ in range(3)) for _ in range(count)]
        mode = f"sample {count}"
    else:
        raise InputError("--mode must be exhaustive or sample [N]")
    mismatches = []
    for c1, c2, c3 in triples:
        v = massey.triple_verdict(c1, c2, c3, group)
        nonempty = oracle.oracle_nonempty(c1, c2, c3, group)
        contains_zero = oracle.oracle_contains_zero(c1, c2, c3, group) if nonempty else False
        expected = (
            "Empty" if not nonempty else ("ContainsZero" if contains_zero else "NonVanishing")
        )
        if v.status.value != expected:
            mismatches.append(
                {
                    "chi1": list(c1.values),
                    "chi2": list(c2.values),
                    "chi3": list(c3.values),
                    "engine": v.status.value,
                    "oracle": expected,
                }
            )
    payload = {
        "command": "verify",
        "case": group.case.value,
        "ell": group.ell,
        "checked": len(triples),
        "mismatches": mismatches,
        "meta": {
            "seed": args.seed,
            "mode": mode,
            "elapsed_ms": int((time.monotonic() - t0) * 1000),
        },
    }
    _emit(payload, "json")
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def cmd_galois_check(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    abstract = galois.load_abstract(data)
    if args.theorem == "52":
        verdict = massey.thm52_check(abstract)
        payload = {"theorem": "52", **verdict.to_json()}
    else:
        payload = {"theorem": "11", **massey.thm11_check(abstract)}
    _emit(payload, "json")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellmassey",
        description="Triple Massey product verdicts for elliptic curves over finite fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_search = sub.add_parser("search", help="scan for curves with a requested Frobenius shape")
    p_search.add_argument("--ell", type=int, required=True)
    p_search.add_argument("--case", required=True, choices=CASE_FLAGS)
    p_search.add_argument("--max-p", dest="max_p", type=int, required=True)
    p_search.add_argument("--limit", type=int, default=None)
    p_search.add_argument("--format", choices=("json", "csv"), default="json")
    p_search.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p_search.set_defaults(func=cmd_search)

    for name, func in (("analyze", cmd_analyze), ("verify", cmd_verify)):
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--a", required=True)
        sp.add_argument("--b", required=True)
        sp.add_argument("--ell", type=int, required=True)
        sp.add_argument("--k0", type=int, default=1)
        sp.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
        if name == "analyze":
            sp.add_argument("--triples", nargs="+", default=["all"])
            sp.add_argument("--format", choices=("json", "csv"), default="json")
        else:
            sp.add_argument("--mode", nargs="+", default=["exhaustive"])
        sp.set_defaults(func=func)

    p_gal = sub.add_parser("galois-check", help="run an abstract Galois-data checker")
    p_gal.add_argument("--input", required=True)
    p_gal.add_argument("--theorem", required=True, choices=("52", "11"))
    p_gal.set_defaults(func=cmd_galois_check)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SearchExhausted as exc:
        _error(str(exc))
        return EXIT_NO_MATCH
    except InputError as exc:
        _error(str(exc))
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as exc:
        _error(str(exc))
        return EXIT_INPUT
    except EllmasseyError as exc:
        _error(f"{type(exc).__name__}: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
