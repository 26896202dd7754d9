"""Command-line front end.

Subcommands: betti (graded Betti table), pfunc (vanishing-bound table),
basis (standard monomial basis by degree), straighten (normal form of a
product), witness (build and verify a non-vanishing certificate), bott
(twisted-bundle cohomology), report (table plus rendered heatmap and CSV),
selftest (golden tables and property suites).

Exit codes: 0 success, 1 computation refusal (budget) or selftest failure,
2 usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys

from .bott import bwb_cohomology, dotted_sort, schur_dim
from .koszul import (
    BudgetExceeded,
    betti_table,
    format_json,
    format_m2,
    hilbert_consistency,
    kpq_dim,
    regularity,
)
from .lattice import normalize_dims, standard_basis_indices
from .linalg import rank
from .pfunc import INFINITY, is_infinite, p_closed_equal, p_function, vanishing_bound
from .straighten import monomial, straighten
from .witness import make_cycle_spec, verify_witness

# Expected renderings of every table small enough to recompute on demand.
GOLDEN_M2 = {
    (1, 1): (
        "       0 1\n"
        "total: 1 1\n"
        "    0: 1 .\n"
        "    1: . 1"
    ),
    (1, 1, 1): (
        "       0 1  2 3 4\n"
        "total: 1 9 16 9 1\n"
        "    0: 1 .  . . .\n"
        "    1: . 9 16 9 .\n"
        "    2: . .  . . 1"
    ),
    (2, 1, 1): (
        "       0  1  2   3  4  5  6 7\n"
        "total: 1 24 84 126 94 46 21 4\n"
        "    0: 1  .  .   .  .  .  . .\n"
        "    1: . 24 84 126 84 10  . .\n"
        "    2: .  .  .   . 10 36 21 4"
    ),
    (1, 1, 1, 1): (
        "       0  1   2   3    4    5    6    7   8   9 10 11\n"
        "total: 1 55 320 891 1436 1375 1375 1436 891 320 55  1\n"
        "    0: 1  .   .   .    .    .    .    .   .   .  .  .\n"
        "    1: . 55 320 891 1408 1183  192   28   .   .  .  .\n"
        "    2: .  .   .   .   28  192 1183 1408 891 320 55  .\n"
        "    3: .  .   .   .    .    .    .    .   .   .  .  1"
    ),
    (2, 2, 1): (
        "       0  1   2    3    4    5    6    7    8    9  10 11 12\n"
        "total: 1 63 394 1179 2087 2692 3726 4383 3275 1530 407 45  2\n"
        "    0: 1  .   .    .    .    .    .    .    .    .   .  .  .\n"
        "    1: . 63 394 1179 1980 1702  396   63    8    .   .  .  .\n"
        "    2: .  .   .    .  107  990 3330 4320 3267 1530 407 36  .\n"
        "    3: .  .   .    .    .    .    .    .    .    .   .  9  2"
    ),
}


def _parse_dims(text: str) -> tuple:
    try:
        raw = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse dimension vector {text!r}") from None
    dims = normalize_dims(raw)
    if tuple(x for x in raw if x) != dims:
        print(f"note: dimension vector {raw} normalized to {dims}", file=sys.stderr)
    return dims


def _parse_factor(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse index tuple {text!r}") from None


def _render_factor(v) -> str:
    return "z[" + ",".join(str(x) for x in v) + "]"


def _render_monomial(m) -> str:
    if not m:
        return "1"
    return "·".join(_render_factor(v) for v in m)


def _render_terms(terms: dict) -> str:
    if not terms:
        return "0"
    lines = []
    for m, c in sorted(terms.items()):
        lines.append(f"{c:+d} · {_render_monomial(m)}")
    return "\n".join(lines)


def _fmt_bound(x) -> str:
    return "∞" if is_infinite(x) else str(x)


def _cmd_betti(args) -> int:
    dims = _parse_dims(args.dims)
    table = betti_table(
        dims,
        pmax=args.pmax,
        qmax=args.qmax,
        rank_backend=args.rank_backend,
        budget=args.budget,
        threads=args.threads,
    )
    if args.format == "json":
        print(format_json(table))
    else:
        print(format_m2(table))
    return 0


def _cmd_pfunc(args) -> int:
    dims = _parse_dims(args.dims)
    qs = list(range(regularity(dims) + 2))
    ps = [p_function(dims, q) for q in qs]
    bounds = [vanishing_bound(dims, q) for q in qs]
    if args.format == "json":
        as_json = lambda xs: [None if is_infinite(x) else x for x in xs]
        print(json.dumps({"q": qs, "P": as_json(ps), "P_minus_q": as_json(bounds)}))
    else:
        print("q:   " + " ".join(str(q) for q in qs))
        print("P:   " + " ".join(_fmt_bound(x) for x in ps))
        print("P-q: " + " ".join(_fmt_bound(x) for x in bounds))
    return 0


def _cmd_basis(args) -> int:
    dims = _parse_dims(args.dims)
    by_degree = standard_basis_indices(dims)
    for d in sorted(by_degree):
        if args.degree is not None and d != args.degree:
            continue
        entries = by_degree[d]
        print(f"degree {d}: {len(entries)}")
        for _, support in entries:
            print("  " + _render_monomial(monomial(support)))
    return 0


def _cmd_straighten(args) -> int:
    dims = _parse_dims(args.dims)
    factors = [_parse_factor(part) for part in args.monomial.split()]
    if not factors:
        raise ValueError("empty monomial")
    print(_render_terms(straighten(dims, factors)))
    return 0


def _cmd_witness(args) -> int:
    dims = _parse_dims(args.dims)
    spec = make_cycle_spec(dims, args.p, args.q)
    print(spec)
    result = verify_witness(spec, budget=args.budget)
    print(f"is_cycle: {result['is_cycle']}")
    print(f"is_boundary: {result['is_boundary']}")
    try:
        dim = kpq_dim(dims, spec.p, spec.q, rank_backend=args.rank_backend, budget=args.budget)
        print(f"kpq_dim: {dim}")
    except BudgetExceeded:
        print("kpq_dim: skipped (budget exceeded)")
    return 0


def _cmd_bott(args) -> int:
    alpha = tuple(int(x) for x in args.alpha.split(",")) if args.alpha else ()
    result = bwb_cohomology(args.d, alpha, args.m)
    if result.singular:
        print("SINGULAR")
    else:
        beta = ",".join(str(x) for x in result.dominant)
        print(f"H^{result.degree} = S_({beta}), dim = {schur_dim(result.dominant, args.m)}")
    return 0


def _cmd_report(args) -> int:
    from . import report

    dims = _parse_dims(args.dims)
    table = betti_table(
        dims,
        pmax=args.pmax,
        qmax=args.qmax,
        rank_backend=args.rank_backend,
        budget=args.budget,
        threads=args.threads,
    )
    if args.format == "json":
        print(format_json(table))
    else:
        print(format_m2(table))
    csv_path, png_path = report.write_report(table, args.out_dir)
    print(f"wrote {csv_path}", file=sys.stderr)
    print(f"wrote {png_path}", file=sys.stderr)
    return 0


# --- selftest ---------------------------------------------------------------


def _check_table(dims, args):
    table = betti_table(dims, rank_backend=args.rank_backend, threads=args.threads)
    got = format_m2(table)
    want = GOLDEN_M2[dims]
    assert got == want, f"table mismatch for {dims}:\n{got}\nexpected:\n{want}"
    assert hilbert_consistency(dims, table), f"Euler identity fails for {dims}"
    for (p, q), d in table.dims.items():
        assert d > 0 and p >= vanishing_bound(dims, q), f"vanishing bound violated at {(p, q)}"
    if all(x == 1 for x in dims):
        n = len(dims)
        for q in range(n):
            for p in range(table.pmax + 1):
                expected = 2 ** (q + 1) - 2 - q <= p <= 2**n - 2 ** (n - q) - q
                assert (table.dim(p, q) > 0) == expected, f"non-vanishing window fails at {(p, q)}"


def _check_straightening(args):
    got = straighten((1, 1, 1, 1), [(0, 0, 0, 1), (0, 1, 0, 1), (1, 1, 0, 1)])
    want = {monomial([(0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 1, 1)]): 1}
    assert got == want, f"straightening example came out as {got}"


def _check_pfunc(args):
    assert [p_function((2, 2, 1), q) for q in range(5)] == [0, 2, 6, 14, INFINITY]
    assert [vanishing_bound((2, 2, 1), q) for q in range(5)] == [0, 1, 4, 11, INFINITY]
    assert p_function((2, 2, 2), 3) == 12
    for a in range(1, 4):
        for n in range(1, 7):
            for q in range(13):
                assert p_function((a,) * n, q) == p_closed_equal(a, n, q), (a, n, q)


def _check_witnesses(args):
    for dims, p, q in [((2, 2, 1), 8, 1), ((1, 1, 1, 1), 6, 2)]:
        result = verify_witness(make_cycle_spec(dims, p, q))
        assert result == {"is_cycle": True, "is_boundary": False}, (dims, p, q, result)


def _check_bott(args):
    rng = random.Random(20260816)
    for _ in range(200):
        m = rng.randint(1, 4)
        v = tuple(rng.randint(-6, 6) for _ in range(m))
        rho = tuple(range(m - 1, -1, -1))
        dotted = []
        for sigma in itertools.permutations(range(m)):
            inverse = [0] * m
            for i, s in enumerate(sigma):
                inverse[s] = i
            shifted = tuple(v[inverse[i]] + rho[inverse[i]] for i in range(m))
            image = tuple(x - r for x, r in zip(shifted, rho))
            length = sum(
                1 for i in range(m) for j in range(i + 1, m) if sigma[i] > sigma[j]
            )
            dotted.append((sigma, image, length))
        fixed = any(image == v for sigma, image, _ in dotted if any(sigma[i] != i for i in range(m)))
        result = dotted_sort(v)
        assert result.singular == fixed, v
        if not result.singular:
            sorted_images = [
                (length, image)
                for _, image, length in dotted
                if all(image[i] >= image[i + 1] for i in range(m - 1))
            ]
            assert sorted_images == [(result.degree, result.dominant)], v
    for d in range(-10, 11):
        result = bwb_cohomology(d, (0,), 2)
        if d >= 0:
            assert (result.degree, schur_dim(result.dominant, 2)) == (0, d + 1), d
        elif d == -1:
            assert result.singular, d
        else:
            assert (result.degree, schur_dim(result.dominant, 2)) == (1, -d - 1), d
    assert schur_dim((8, 1), 2) == 8
    assert schur_dim((3, 3, 2), 3) * schur_dim((3, 3, 2), 3) * schur_dim((7, 1), 2) == 63


def _check_backends(args):
    from .koszul import differential

    d = differential((1, 1, 1), 2, 1)
    assert rank(d, "exact") == rank(d, "modular")


def _cmd_selftest(args) -> int:
    items = [
        ("table (1,1)", lambda: _check_table((1, 1), args)),
        ("table (1,1,1)", lambda: _check_table((1, 1, 1), args)),
        ("table (2,1,1)", lambda: _check_table((2, 1, 1), args)),
        ("straightening example", lambda: _check_straightening(args)),
        ("pfunc golden values + closed form", lambda: _check_pfunc(args)),
        ("witness cycles", lambda: _check_witnesses(args)),
        ("bott dichotomy + duality + dims", lambda: _check_bott(args)),
        ("rank backends agree", lambda: _check_backends(args)),
    ]
    if not args.quick:
        items[3:3] = [
            ("table (1,1,1,1)", lambda: _check_table((1, 1, 1, 1), args)),
            ("table (2,2,1)", lambda: _check_table((2, 2, 1), args)),
        ]
    failed = 0
    for name, check in items:
        try:
            check()
        except Exception as exc:  # noqa: BLE001 - report and keep going
            failed += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"ok   {name}")
    print(f"{len(items) - failed} passed, {failed} failed")
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="segsyz")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_table_flags(p):
        p.add_argument("--pmax", type=int, default=None)
        p.add_argument("--qmax", type=int, default=None)
        p.add_argument("--rank-backend", choices=["exact", "modular"], default="modular")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("betti", help="graded Betti table of a Segre embedding")
    p.add_argument("dims", help="comma-separated dimension vector, e.g. 2,2,1")
    p.add_argument("--format", choices=["m2", "json"], default="m2")
    add_table_flags(p)
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("pfunc", help="vanishing-bound table P and P-q")
    p.add_argument("dims")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=_cmd_pfunc)

    p = sub.add_parser("basis", help="standard monomial basis by degree")
    p.add_argument("dims")
    p.add_argument("--degree", type=int, default=None)
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("straighten", help="normal form of a product of variables")
    p.add_argument("monomial", help='factors like "0,0,0,1 0,1,0,1 1,1,0,1"')
    p.add_argument("--dims", required=True)
    p.set_defaults(func=_cmd_straighten)

    p = sub.add_parser("witness", help="build and verify a non-vanishing certificate")
    p.add_argument("dims")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--rank-backend", choices=["exact", "modular"], default="modular")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("bott", help="cohomology of Q^d (x) S_alpha(R) on P^(m-1)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", default="", help="comma-separated, may be empty")
    p.set_defaults(func=_cmd_bott)

    p = sub.add_parser("report", help="betti table plus CSV and heatmap files")
    p.add_argument("dims")
    p.add_argument("--format", choices=["m2", "json"], default="m2")
    p.add_argument("--out-dir", default=".")
    add_table_flags(p)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("selftest", help="recompute golden tables and property suites")
    p.add_argument("--quick", action="store_true", help="skip the two larger tables")
    p.add_argument("--rank-backend", choices=["exact", "modular"], default="modular")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_selftest)

    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
