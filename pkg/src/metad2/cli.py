"""Command-line entry point.

    metad2 verify-fixtures [--p 7] [--fixtures DIR]
    metad2 verify-m7 [--eq7-only] [--mutate C4=0] [--basis-perm FILE] [--seed N]
    metad2 hom-table [--p 7]
    metad2 units bezout --p 7 --slot 2 --residues 3,1,1,1,1
    metad2 units aut --p 7 --target 0,1,3,1,1,1 [--strict]
    metad2 units diag --p 7 --residues 1,2,1,1,1,1
    metad2 fullness [--p 7]

Every command prints a table and can write a JSON report with --json.
Exit status: 0 when no check fails, 1 when some check fails, 2 on usage
or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .exactlin import IntMatrix, det
from .fixtures import FixtureError, FixtureSet
from .m7pipeline import M7Pipeline, parse_mutation
from .metacyclic import GroupParams, is_prime
from .modrep import (
    CHAR_TABLE,
    ModuleError,
    Representation,
    check_sigma_condition,
    fullness_automorphism_check,
    is_isomorphic_to_row,
    lattice_from_rep,
)
from .report import Report
from .trimat import (
    LambdaFixture,
    TriMatrix,
    aut_k_map,
    aut_shape_ok,
    bezout_unit,
    diag_residue_obstruction,
    hom_der_order,
    hom_generator,
    lambda_fixture,
    tri_shape_ok,
    unit_for_target,
    unit_with_diagonal,
)

P7_SHAPES = {
    "lambda_x": (6, 6),
    "lambda_y": (6, 6),
    **{f"theta_{k}_{g}": (6, 6) for k in range(1, 7) for g in "xy"},
    "Lprime_x": (6, 6),
    "Lprime_y": (6, 6),
    "h": (18, 18),
    "f": (6, 6),
    "pibar": (6, 24),
    "rho_x": (6, 6),
    "rho_y": (6, 6),
    **{f"{b}_{i}": (6, 6) for b in "CD" for i in (1, 3, 4, 5, 6)},
    "char_vectors": (6, 6),
}


class UsageError(Exception):
    pass


# commands ------------------------------------------------------------------------


def cmd_verify_fixtures(p: int = 7, fixtures_dir: str | Path | None = None) -> Report:
    """Load every fixture for p and check its invariants."""
    rep = Report("verify-fixtures")
    fx = FixtureSet(p, fixtures_dir)
    names = P7_SHAPES if p == 7 else {"lambda_x": (p - 1, p - 1), "lambda_y": (p - 1, p - 1)}
    loaded = {}
    for name, shape in names.items():
        try:
            M = fx[name]
        except FixtureError as exc:
            rep.add(f"load.{name}", f"{name} loads", "fail", str(exc))
            continue
        ok = M.shape == shape
        rep.add(f"load.{name}", f"{name} loads with shape {shape}", ok, "" if ok else f"{fx.path(name)}: shape {M.shape}")
        if ok:
            loaded[name] = M
    params = GroupParams.for_prime(p)

    if "lambda_x" in loaded and "lambda_y" in loaded:
        lx, ly = loaded["lambda_x"], loaded["lambda_y"]
        shape_ok = tri_shape_ok(p, lx) and tri_shape_ok(p, ly)
        rep.add("lambda.shape", "lambda matrices lie in the triangular order", shape_ok)
        if shape_ok:
            lam = LambdaFixture(p, TriMatrix(p, lx), TriMatrix(p, ly), params)
            bad = lam.failures()
            eye = IntMatrix.identity(p - 1)
            rep.add("lambda.x_order", f"lambda(x^-1)^{p} = I", lx ** p == eye)
            rep.add("lambda.y_order", f"lambda(y^-1)^{p - 1} = I", ly ** (p - 1) == eye)
            rep.add("lambda.relation", f"lambda_y lambda_x = lambda_x^{params.m} lambda_y", ly @ lx == lx ** params.m @ ly)
            rep.add("lambda.units", "lambda matrices are units of the triangular order",
                    not any("unit" in b for b in bad))
            if p == 7:
                _check_char_vectors(rep, lam, loaded.get("char_vectors"))
    if p != 7:
        return rep

    for k in range(1, 7):
        X, Y = loaded.get(f"theta_{k}_x"), loaded.get(f"theta_{k}_y")
        if X is None or Y is None:
            rep.add(f"theta.{k}", f"theta_{k} relations", "skip", "fixture missing")
            continue
        try:
            th = Representation(params, X, Y)
        except ModuleError as exc:
            rep.add(f"theta.{k}.relations", f"theta_{k} satisfies the group relations", "fail", str(exc))
            continue
        rep.add(f"theta.{k}.relations", f"theta_{k} satisfies the group relations", "pass")
        rep.add(f"theta.{k}.sigma", f"theta_{k}: 1 + x + ... + x^6 acts as 0", check_sigma_condition(th))
        rep.add(f"theta.{k}.row", f"theta_{k} is the action on row module {k}", is_isomorphic_to_row(lattice_from_rep(th), k))
    for name in ("h", "f"):
        if name in loaded:
            d = det(loaded[name])
            rep.add(f"{name}.det", f"det {name} = 1", d == 1, f"det {d}")
    if "rho_x" in loaded and "rho_y" in loaded:
        try:
            Representation(params, loaded["rho_x"], loaded["rho_y"])
            rep.add("rho.relations", "rho satisfies the group relations", "pass")
        except ModuleError as exc:
            rep.add("rho.relations", "rho satisfies the group relations", "fail", str(exc))
    return rep


def _check_char_vectors(rep: Report, lam: LambdaFixture, vecs: IntMatrix | None) -> None:
    if vecs is None:
        rep.add("char", "characteristic vectors", "skip", "fixture missing")
        return
    from .modrep import CharCertificate

    for k in range(1, 7):
        sign, power = CHAR_TABLE[k]
        cert = CharCertificate(k, vecs.row(k - 1), sign, power)
        lat = lam.row_lattice(k)
        rep.add(f"char.v{k}.member", f"v_{k} lies in row module {k}", lat.contains(cert.v))
        rep.add(f"char.v{k}.equation", f"v_{k} y = {'-' if sign < 0 else ''}v_{k} (1+x)^{power}",
                cert.check_equation(lam.lx.entries, lam.ly.entries))
        rep.add(f"char.v{k}.generates", f"v_{k} generates row module {k}", lat.generated_by(cert.v))


def cmd_verify_m7(
    fixtures_dir: str | Path | None = None,
    x_equation_only: bool = False,
    mutate: dict[str, int] | None = None,
    basis_perm: list[int] | None = None,
    seed: int = 0,
    rebase_trials: int = 20,
) -> Report:
    pipeline = M7Pipeline(
        fixtures=FixtureSet(7, fixtures_dir),
        mutate=dict(mutate or {}),
        basis_perm=basis_perm,
        x_equation_only=x_equation_only,
        rebase_trials=rebase_trials,
        seed=seed,
    )
    return pipeline.run()


def cmd_hom_table(p: int = 7, fixtures_dir: str | Path | None = None) -> Report:
    rep = Report("hom-table")
    try:
        lam = lambda_fixture(p, fixtures_dir)
    except (FixtureError, ValueError) as exc:
        for i in range(1, p):
            for j in range(1, p):
                rep.add(f"hom.{i}.{j}", f"Hom(R({i}), R({j}))", "skip", f"no lambda fixture for p={p}: {exc}")
        return rep
    eye = IntMatrix.identity(p - 1)
    for i in range(1, p):
        for j in range(1, p):
            gen = hom_generator(p, i, j, lam)
            want = eye if i >= j else eye * p
            label = "I" if i >= j else f"{p}I"
            rep.add(f"hom.{i}.{j}", f"Hom(R({i}), R({j})) is generated by {label}", gen == want,
                    "" if gen == want else f"generator {gen.tolist()}")
    for i in range(1, p):
        for j in range(1, p):
            order = hom_der_order(p, i, j, lam)
            want = p if i == j else 1
            rep.add(f"homder.{i}.{j}", f"derived Hom(R({i}), R({j})) has order {want}", order == want, f"order {order}")
    return rep


def hom_table_text(rep: Report, p: int) -> str:
    lines = ["generators (rows i, columns j):"]
    for i in range(1, p):
        cells = []
        for j in range(1, p):
            c = rep.get(f"hom.{i}.{j}")
            cells.append("-" if c is None or c.status == "skip" else ("I" if i >= j else f"{p}I"))
        lines.append(" ".join(f"{c:>3}" for c in cells))
    lines.append("derived orders:")
    for i in range(1, p):
        cells = []
        for j in range(1, p):
            c = rep.get(f"homder.{i}.{j}")
            cells.append("-" if c is None else c.detail.replace("order ", ""))
        lines.append(" ".join(f"{c:>3}" for c in cells))
    return "\n".join(lines)


def cmd_units(p: int, kind: str, residues: Sequence[int] = (), slot: int | None = None,
              target: Sequence[int] = (), strict: bool = False) -> tuple[Report, IntMatrix | None]:
    """Construct and verify one unit.  Returns the report and the matrix (if any)."""
    rep = Report("units")
    if not (is_prime(p) and p % 2):
        raise UsageError(f"p must be an odd prime, got {p}")
    if kind == "bezout":
        if slot is None:
            raise UsageError("--slot is required for bezout units")
        try:
            u = bezout_unit(p, slot, residues)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        M = u.entries
        others = [k for k in range(p - 1) if k != slot - 1]
        rep.add("units.det", "determinant is +-1", abs(det(M)) == 1, f"det {det(M)}")
        rep.add("units.shape", "lies in the triangular order", tri_shape_ok(p, M))
        ok = all(M[k, k] % p == c % p for k, c in zip(others, residues))
        rep.add("units.residues", "diagonal matches the residues away from the free slot", ok)
        return rep, M
    if kind == "aut":
        if len(target) != p - 1:
            raise UsageError(f"--target needs {p - 1} entries (a12, a22, a33, ...)")
        try:
            M = unit_for_target(p, target[0], target[1], target[2:], strict=strict)
        except ValueError as exc:
            if strict and "power of 2" in str(exc):
                rep.add("units.construct", "generator recipe realises the target", "fail", str(exc))
                return rep, None
            raise UsageError(str(exc)) from None
        rep.add("units.det", "determinant is +-1", abs(det(M)) == 1, f"det {det(M)}")
        rep.add("units.shape", "has the endomorphism shape", aut_shape_ok(p, M))
        k = aut_k_map(p, M)
        want = tuple(t % p for t in target)
        rep.add("units.k_map", f"k-value equals {want}", k == want, f"k-value {k}")
        return rep, M
    if kind == "diag":
        if len(residues) != p - 1:
            raise UsageError(f"--residues needs {p - 1} entries")
        try:
            admitted = diag_residue_obstruction(p, residues)
            u = unit_with_diagonal(p, residues)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        prod = 1
        for c in residues:
            prod = prod * c % p
        if not admitted:
            rep.add("units.obstruction",
                    f"no unit possible: product of residues is {prod} mod {p}, not +-1", "pass")
            return rep, None
        M = u.entries
        rep.add("units.obstruction", f"product of residues is {prod} = +-1 mod {p}: a unit may exist", "pass")
        rep.add("units.det", "determinant is +-1", abs(det(M)) == 1)
        rep.add("units.residues", "diagonal matches the residues", all(M[k, k] % p == c % p for k, c in enumerate(residues)))
        return rep, M
    raise UsageError(f"unknown unit kind {kind!r}")


def cmd_fullness(p: int = 7) -> Report:
    from math import gcd

    if not (is_prime(p) and p % 2):
        raise UsageError(f"p must be an odd prime, got {p}")
    rep = Report("fullness")
    for r in range(1, max(2, p - 1)):
        if gcd(r, p - 1) != 1:
            continue
        rep.add(f"fullness.r{r}", f"1 + y + ... + y^{r - 1} is an automorphism of the augmentation ideal",
                fullness_automorphism_check(p, r))
    for n in range(1, p):
        residues = [1, n] + [1] * (p - 3)
        admitted = diag_residue_obstruction(p, residues)
        expected = n in (1, p - 1)
        rep.add(f"obstruction.n{n}", f"n = {n} admitted iff n = +-1 mod {p}", admitted == expected,
                "admitted" if admitted else "obstructed")
    return rep


# argument handling -------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _read_perm(path: str) -> list[int]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read basis permutation {path}: {exc}") from None
    try:
        perm = [int(t) for t in text.split()]
    except ValueError:
        raise UsageError(f"{path}: basis permutation must be whitespace-separated integers") from None
    if sorted(perm) != list(range(24)):
        raise UsageError(f"{path}: expected a permutation of 0..23")
    return perm


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixtures", metavar="DIR", help="fixture base directory (contains p7/...)")
    common.add_argument("--json", metavar="PATH", help="write the machine-readable report here")
    common.add_argument("--p", type=int, default=7, help="odd prime (default 7)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks (default 0)")

    parser = argparse.ArgumentParser(prog="metad2", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify-fixtures", parents=[common], help="validate the shipped fixtures")

    m7 = sub.add_parser("verify-m7", parents=[common], help="run the full M(7) verification chain")
    m7.add_argument("--eq7-only", action="store_true",
                    help="decide only C = (theta(x^-1) - I) X, without the y-equation")
    m7.add_argument("--mutate", action="append", default=[], metavar="BLOCK=0",
                    help="zero a block (C4, D1, ...) or a fixture (h, f, ...) before checking; repeatable")
    m7.add_argument("--basis-perm", metavar="FILE", help="column permutation (24 integers) for the 6x24 comparison")
    m7.add_argument("--rebase-trials", type=int, default=20, help="random re-basings of the lifts (default 20)")

    sub.add_parser("hom-table", parents=[common], help="hom generators and derived orders between row modules")

    units = sub.add_parser("units", parents=[common], help="construct and verify explicit units")
    units.add_argument("kind", choices=["bezout", "aut", "diag"])
    units.add_argument("--residues", type=_int_list, default=[], help="comma-separated residues")
    units.add_argument("--slot", type=int, help="free diagonal slot for bezout units (1-based)")
    units.add_argument("--target", type=_int_list, default=[], help="k-value a12,a22,a33,... for aut units")
    units.add_argument("--strict", action="store_true", help="use only the powers-of-2 generator recipe")

    sub.add_parser("fullness", parents=[common], help="automorphisms of the augmentation ideal and the residue obstruction")
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    matrix = None
    try:
        if args.command == "verify-fixtures":
            if args.fixtures and not Path(args.fixtures).is_dir():
                raise UsageError(f"fixture directory {args.fixtures} does not exist")
            report = cmd_verify_fixtures(args.p, args.fixtures)
        elif args.command == "verify-m7":
            if args.p != 7:
                raise UsageError("verify-m7 is only defined for p = 7")
            if args.fixtures and not Path(args.fixtures).is_dir():
                raise UsageError(f"fixture directory {args.fixtures} does not exist")
            mutate = {}
            for m in args.mutate:
                try:
                    name, value = parse_mutation(m)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
                mutate[name] = value
            perm = _read_perm(args.basis_perm) if args.basis_perm else None
            try:
                report = cmd_verify_m7(args.fixtures, args.eq7_only, mutate, perm, args.seed, args.rebase_trials)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        elif args.command == "hom-table":
            report = cmd_hom_table(args.p, args.fixtures)
        elif args.command == "units":
            report, matrix = cmd_units(args.p, args.kind, args.residues, args.slot, args.target, args.strict)
        else:
            report = cmd_fullness(args.p)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(report.to_table(), file=out)
    if args.command == "hom-table":
        print(hom_table_text(report, args.p), file=out)
    if matrix is not None:
        print(matrix.to_text(), end="", file=out)
    if args.json:
        try:
            Path(args.json).write_text(report.to_json())
        except OSError as exc:
            print(f"error: cannot write {args.json}: {exc}", file=sys.stderr)
            return 2
    return report.exit_code()


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
