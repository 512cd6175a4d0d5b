"""Command-line front end: ``cubal {size,build,verify,check,export}``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import counting, free, generation
from .cubic import CubicTable, TableFormatError, check_cubic_axioms, check_mr_axiom, hasse_dot

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))


def _atoms(e) -> list[int]:
    return sorted(e)


def cmd_size(args: argparse.Namespace) -> int:
    if args.generators is None and args.table is None:
        raise UsageError("size: give --generators M and/or --table N")
    payload: dict = {}
    lines = []
    if args.generators is not None:
        m = args.generators
        if m < 1:
            raise UsageError(
                "size: --generators must be at least 1; the construction assumes a "
                "non-empty generating set X = {a_0, ..., a_k}"
            )
        size = counting.free_algebra_size(m)
        payload.update(generators=m, size=size)
        lines.append(str(size))
    if args.table is not None:
        if args.table < 1:
            raise UsageError("size: --table must be at least 1")
        rows = counting.size_table(args.table)
        payload["table"] = [
            {
                "m": r["m"],
                "atoms": r["atoms"],
                "size": r["size"],
                "upper_bound": {"base": 3, "exponent": 2 ** (2 * r["m"])},
            }
            for r in rows
        ]
        cells = [("m", "atoms", "|Fr(m)|", "upper bound")]
        cells += [(str(r["m"]), str(r["atoms"]), str(r["size"]), f"3^{2 ** (2 * r['m'])}") for r in rows]
        widths = [max(len(c[i]) for c in cells) for i in range(4)]
        lines += ["  ".join(c[i].rjust(widths[i]) for i in range(4)) for c in cells]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _check_k(k: int, limit: int, what: str) -> None:
    if k < 0:
        raise UsageError(f"{what}: --k must be non-negative")
    if k > limit:
        raise UsageError(f"{what}: --k {k} is infeasible here (limit {limit})")


def cmd_build(args: argparse.Namespace) -> int:
    k = args.k
    _check_k(k, free.LIMIT, "build")
    if args.enumerate:
        _check_k(k, free.ENUMERATION_LIMIT, "build --enumerate")
    inst = free.build(k)
    sigma, tau = free.sigma_tau(inst)[-1]
    ok = not sigma and not tau
    lx_size = len(free.lx_codes(inst)) if args.enumerate else None
    lines = [f"k: {k}", f"atoms: {inst.B.atom_count}"]
    for i, I in enumerate(inst.gens):
        lines.append(f"I_{i} = [{_atoms(I.lo)}, {_atoms(I.hi)}]")
    lines.append(f"σ_{k} = τ_{k} = 0: {'OK' if ok else 'FAILED'}")
    if lx_size is not None:
        lines.append(f"|L(X)| = {lx_size}")
    payload = inst.to_json(lx_size)
    payload["sigma_tau_zero"] = ok
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        lines.append(f"wrote {args.out}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    k = args.k
    _check_k(k, 2 if args.long else 1, "verify" + (" --long" if args.long else " (use --long for k = 2)"))
    inst = free.build(k)
    started = time.monotonic()

    def progress(wave: int, size: int) -> None:
        print(f"  closure wave {wave}: {size} elements ({time.monotonic() - started:.1f}s)", file=sys.stderr)

    gen = generation.verify_generation(
        inst, progress=progress if args.long else None, progress_every=args.progress_every
    )
    checks = generation.lemma_checks(inst)
    eq = free.relations_equivalence_check(k)
    results = [(c.name, c.passed, c.line()) for c in checks]
    results.append(
        (
            "sigma_k = tau_k = 0 iff Z, R_j, Q_k",
            eq.passed,
            f"[{'PASS' if eq.passed else 'FAIL'}] sigma_k = tau_k = 0 iff Z, R_j, Q_k ({len(eq.cases)} cases)",
        )
    )
    size_ok = gen.lx_size == counting.free_algebra_size(k + 1)
    results.append(
        (
            "|L(X)| = size formula",
            size_ok,
            f"[{'PASS' if size_ok else 'FAIL'}] |L(X)| = size formula ({gen.lx_size})",
        )
    )
    if k <= 1:
        table = CubicTable.from_intervals(inst.LX)
        rep = check_cubic_axioms(table)
        results.append(
            ("L(X) cubic axioms", rep.passed, f"[{'PASS' if rep.passed else 'FAIL'}] L(X) cubic axioms ({rep.coverage})")
        )
    gen_line = (
        f"[{'PASS' if gen.equal else 'FAIL'}] closure of I_0..I_{k} = L(X) "
        f"({gen.closure_size} vs {gen.lx_size})"
    )
    if gen.witness is not None:
        gen_line += f" witness={gen.witness!r}"
    results.insert(0, ("generation", gen.equal, gen_line))
    passed = all(ok for _, ok, _ in results)
    payload = {
        "generation": gen.to_json(),
        "checks": [{"name": n, "passed": ok} for n, ok, _ in results],
        "passed": passed,
    }
    _emit(args, payload, "\n".join(line for _, _, line in results) + f"\n{'all checks passed' if passed else 'FAILURES'}")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_check(args: argparse.Namespace) -> int:
    path = Path(args.input)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"check: cannot read {path}: {exc.strerror}") from None
    try:
        table = CubicTable.loads(text)
    except TableFormatError as exc:
        raise UsageError(f"check: {path}: {exc}") from None
    cubic = check_cubic_axioms(table, samples=args.samples, seed=args.seed)
    mr = check_mr_axiom(table, samples=args.samples, seed=args.seed)
    passed = cubic.passed and mr.passed
    lines = [f"cubic: {'pass' if cubic.passed else 'FAIL'}"]
    lines += ["  " + r.line() for r in cubic.results]
    lines.append(f"MR: {'pass' if mr.passed else 'FAIL'}")
    lines += ["  " + r.line() for r in mr.results]
    payload = {"cubic": cubic.to_json(), "mr": mr.to_json(), "passed": passed}
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if passed else EXIT_FAIL


def _lx_hasse(inst: free.FreeInstance) -> str:
    elems = inst.LX
    index = {w.key: i for i, w in enumerate(elems)}
    covers = []
    for i, w in enumerate(elems):
        for c in generation.covers_above(w):
            j = index.get(c.key)
            if j is not None:
                covers.append((i, j))
    return hasse_dot([repr(w) for w in elems], covers, f"L_k{inst.k}")


def cmd_export(args: argparse.Namespace) -> int:
    k = args.k
    if args.what == "table":
        # 3**13 carrier at k = 2 would need a 56943 x 56943 join table
        _check_k(k, 1, "export --what table")
        inst = free.build(k)
        body = CubicTable.from_intervals(inst.LX).dumps() + "\n"
        summary = f"table: {len(inst.LX)} elements"
    elif args.what == "hasse":
        _check_k(k, free.ENUMERATION_LIMIT, "export --what hasse")
        inst = free.build(k)
        body = _lx_hasse(inst)
        summary = f"hasse: {len(inst.LX)} nodes"
    else:
        _check_k(k, free.LIMIT, "export --what atoms")
        inst = free.build(k)
        body = inst.B.dumps() + "\n"
        summary = f"atoms: {inst.B.atom_count} sign vectors"
    Path(args.out).write_text(body, encoding="utf-8")
    _emit(args, {"what": args.what, "k": k, "out": args.out}, f"{summary} -> {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubal", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("size", help="size of the free cubic algebra on m generators")
    p.add_argument("--generators", type=int, metavar="M")
    p.add_argument("--table", type=int, metavar="N", help="rows for m = 1..N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("build", help="build B_k and the generator intervals")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="also enumerate L(X) (k <= 2)")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="generation theorem and lemma checks")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--long", action="store_true", help="allow k = 2 (minutes)")
    p.add_argument("--progress-every", type=int, default=1, metavar="N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="check a cubic table file against the axioms")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", help="write L(X) as a table, a Hasse diagram, or the atoms")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--what", choices=("table", "hasse", "atoms"), required=True)
    p.add_argument("--out", required=True, metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cubal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
