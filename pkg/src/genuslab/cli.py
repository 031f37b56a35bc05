"""Command-line front end: ``genuslab <command> ...``.

Exit codes: 0 success, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import census
from .genus import TABLE1_READING, build_L_set, calibrate_table1, sieve_constants
from .grouptheory import FiniteAbelianGroup, classify_theorem1
from .qforms import ClassGroup, QuadForm, as_discriminant

EXIT_USAGE = 2
EXIT_RESOURCE = 3
MAX_GROUP = 1 << 16

EXPERIMENTS = ("exceptional", "shifted", "corollary4", "primes-by-class", "kfactor", "lemma3", "lemma4", "lemma5", "ideals", "u_f")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _discriminant(s: str) -> int:
    try:
        D = int(s)
        as_discriminant(D)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid discriminant {s!r}: {e}")
    return D


def _int_list(s: str) -> list[int]:
    try:
        return [int(t) for t in s.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _common(p, need_D=True):
    p.add_argument("-D", type=_discriminant, required=need_D, help="negative discriminant, D = 0 or 1 mod 4")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out", default=None, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="genuslab", description="Class groups, genus theory and counting experiments for imaginary quadratic discriminants.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classgroup", help="summarize the class group of D")
    _common(c)
    c.add_argument("--cayley", action="store_true", help="include the Cayley table in JSON")

    c = sub.add_parser("census", help="run a counting experiment")
    c.add_argument("experiment", choices=EXPERIMENTS)
    _common(c, need_D=False)
    c.add_argument("-X", type=int, required=True, help="range limit (Y or xi for the prime experiments)")
    c.add_argument("-a", type=int, default=1, help="shift a (shifted, corollary4)")
    c.add_argument("-k", type=int, default=None, help="bucket cap (kfactor)")
    c.add_argument("-r", type=int, default=2, help="factor cap r (lemma3)")
    c.add_argument("--form", type=_int_list, default=None, help="A,B,C of the form (corollary4, lemma5, u_f)")
    c.add_argument("--eps", type=float, default=0.1)
    c.add_argument("--families", type=int, default=100, help="random residue families (lemma4)")
    c.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--segmented", action="store_true", help="process [1, X] in windows")

    c = sub.add_parser("theorem1", help="classify a subset A of a finite abelian group")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--group", type=_int_list, help="cyclic orders, e.g. 4,2")
    g.add_argument("--classgroup", type=_discriminant, metavar="D", help="use the class group of D")
    a = c.add_mutually_exclusive_group()
    a.add_argument("--set", type=_int_list, help="elements of A as mixed-radix codes")
    a.add_argument("--squares", action="store_true", help="A = {C^2} (with --classgroup)")
    a.add_argument("--n", type=int, help="random A of this size")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--eps", type=float, default=0.1)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--out", default=None)

    c = sub.add_parser("constants", help="half-dimensional sieve constants for D = -4m")
    _common(c)
    c.add_argument("-a", type=int, default=1)
    c.add_argument("-T", type=int, default=10**6, help="Euler product truncation")

    c = sub.add_parser("genus-check", help="calibrate the local criteria against brute force")
    c.add_argument("-X", type=int, default=3000, help="range of m checked")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--out", default=None)
    return p


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_classgroup(args) -> str:
    G = ClassGroup(args.D)
    if args.format == "json":
        return json.dumps(G.to_dict(with_cayley=args.cayley), indent=2)
    cyc = " x ".join(f"C{d}" for _, d in G.cyclic_decomposition) or "trivial"
    lines = [
        f"D = {G.D}" + ("" if G.discriminant.fundamental else f" (conductor {G.discriminant.conductor})"),
        f"h = {G.h}",
        f"g = {G.genera_count}",
        f"structure = {cyc}",
        "generators = " + ", ".join(f"{G.forms[i]} of order {d}" for i, d in G.cyclic_decomposition),
        "forms = " + ", ".join(str(f) for f in G.forms),
        "ambiguous = " + ", ".join(str(G.forms[i]) for i in sorted(G.ambiguous)),
    ]
    return "\n".join(lines)


def _form(args, G=None) -> QuadForm:
    if args.form is None:
        if G is None:
            G = ClassGroup(args.D)
        return G.forms[0]
    if len(args.form) != 3:
        raise UsageError("--form needs three integers A,B,C")
    f = QuadForm(*args.form)
    if args.D is not None and f.discriminant != args.D:
        raise UsageError(f"form {f} has discriminant {f.discriminant}, not {args.D}")
    return f


def cmd_census(args) -> str:
    e, X = args.experiment, args.X
    if X < 2:
        raise UsageError("-X must be >= 2")
    if e not in ("lemma4", "corollary4", "u_f") and args.D is None:
        raise UsageError(f"census {e} needs -D")
    if e == "exceptional":
        rep = census.exceptional_count(args.D, X, args.threads, args.segmented)
    elif e == "shifted":
        rep = census.shifted_prime_exceptional_count(args.D, X, args.a, args.threads, args.segmented)
    elif e == "corollary4":
        if args.form is None and args.D is None:
            raise UsageError("census corollary4 needs -D or --form")
        rep = census.corollary4_count(_form(args), X, args.a, args.threads, args.segmented)
    elif e == "primes-by-class":
        rep = census.prime_class_report(args.D, X)
    elif e == "kfactor":
        rep = census.k_factor_histogram(args.D, X, kmax=args.k or 12)
    elif e == "lemma3":
        if not 0 <= args.r <= 12:
            raise UsageError("-r must lie in [0, 12]")
        rep = census.lemma3_count(args.D, X, args.r, args.eps)
    elif e == "lemma4":
        rep = census.lemma4_report(X, args.families, args.seed)
    elif e == "lemma5":
        G = ClassGroup(args.D)
        f = _form(args, G)
        rep = census.lemma5_count(G, X, G.class_of(f), census.generic_lemma5_family(X, args.seed))
        rep.params["seed"] = args.seed
    elif e == "ideals":
        if not as_discriminant(args.D).is_fundamental:
            raise UsageError("census ideals needs a fundamental discriminant")
        rep = census.ideal_count(args.D, X)
    else:  # u_f
        if args.form is not None:
            f = _form(args)
            rep = census.CensusReport("u_f", f.discriminant, X)
            for prim in (False, True):
                rep.rows.append(census.CensusRow("u_f", f.discriminant, X, "primitive" if prim else "all", census.u_f(f, X, prim), C=str(f)))
        else:
            rep = census.u_f_report(args.D, X)
    rep.params.setdefault("seed", args.seed)
    return rep.to_json() if args.format == "json" else rep.to_csv()


def cmd_theorem1(args) -> str:
    rng = np.random.default_rng(args.seed)
    if args.classgroup is not None:
        CG = ClassGroup(args.classgroup)
        G = CG.abstract
        if args.squares:
            A = sorted({int(CG.codes[int(CG.square(i))]) for i in range(CG.h)})
        elif args.set is not None:
            A = [int(CG.codes[i]) for i in args.set]
        else:
            A = None
    else:
        if args.squares:
            raise UsageError("--squares needs --classgroup")
        if any(d < 1 for d in args.group):
            raise UsageError("cyclic orders must be positive")
        G = FiniteAbelianGroup(args.group)
        A = args.set
    if G.size > MAX_GROUP:
        raise UsageError(f"group of size {G.size} exceeds the bound {MAX_GROUP}")
    if A is None:
        n = args.n if args.n is not None else max(1, G.size // 8)
        if not 1 <= n <= G.size:
            raise UsageError("--n must lie in [1, |G|]")
        A = sorted(rng.choice(G.size, size=n, replace=False).tolist())
    if not A or any(not 0 <= x < G.size for x in A):
        raise UsageError("A must be a non-empty set of codes in [0, |G|)")
    try:
        rep = classify_theorem1(A, G, args.eps)
    except ValueError as e:
        raise UsageError(str(e))
    ok, problems = rep.verify()
    d = rep.to_dict()
    d["verified"] = ok
    d["problems"] = problems
    d["seed"] = args.seed
    if args.format == "json":
        return json.dumps(d, indent=2)
    lines = [f"group = {list(G.orders)} (|G| = {G.size})", f"A = {A}", f"alternative = {rep.alternative.value}"]
    for key in ("index", "subgroup_size", "exceptional", "k", "chosen", "omega_size", "omega_rule"):
        if key in d:
            lines.append(f"{key} = {d[key]}")
    if "densities" in d:
        lines.append("densities = " + ", ".join(f"{x:.6g}" for x in d["densities"]))
    lines.append(f"witness verified = {ok}")
    lines += [f"  problem: {p}" for p in problems]
    return "\n".join(lines)


def cmd_constants(args) -> str:
    D_pos = -args.D
    if D_pos % 4:
        raise UsageError("constants needs D = -4m (principal form x^2 + m y^2)")
    sc = sieve_constants(D_pos, args.a, args.T)
    d = sc.to_dict()
    if args.format == "json":
        return json.dumps({"schema": census.SCHEMA, **d}, indent=2)
    lines = [
        f"D = {args.D}, a = {args.a}",
        f"C0 = {sc.C0.value:.10f} (truncation {sc.C0.truncation}; half truncation {sc.C0.value_half:.10f}; delta {sc.C0.delta:.2e})",
        f"   plain truncated product {sc.C0.direct:.10f}; L(1, psi) = {sc.C0.L1:.12f}",
        f"theta = {sc.theta.theta:.12f} at s = {sc.theta.s_star:.10f} (golden section {sc.theta.theta_golden:.12f})",
        f"Omega_D = {sc.omega.value:.10g} (c = {sc.omega.c}, placeholder constant)",
        "half-dimensional residuals (z, prime sum, residual):",
    ]
    lines += [f"  {r.z:>9d}  {r.prime_sum:.8f}  {r.residual:+.8f}" for r in sc.residuals]
    return "\n".join(lines)


def cmd_genus_check(args) -> str:
    res = calibrate_table1(limit=args.X)
    best = min(res.values())
    chosen = [k for k, v in res.items() if v == best]
    L = build_L_set(QuadForm(1, 0, 1))
    if args.format == "json":
        return json.dumps({
            "schema": census.SCHEMA,
            "limit": args.X,
            "mismatches": [{"d2_sign": s, "row4": r, "count": v} for (s, r), v in res.items()],
            "resolved": [{"d2_sign": s, "row4": r} for s, r in chosen],
            "frozen": TABLE1_READING,
            "L_x2_plus_y2": {"Q": L.Q, "residues": sorted(L.L)},
        }, indent=2)
    lines = [f"Table 1 calibration over admissible squarefree m <= {args.X}:"]
    for (s, r), v in res.items():
        mark = " <- resolved" if (s, r) in chosen else ""
        lines.append(f"  d2_sign={s:+d} row4={r:<14s} mismatches={v}{mark}")
    lines.append(f"frozen reading: {TABLE1_READING}")
    lines.append(f"L(x^2+y^2) = {sorted(L.L)} mod {L.Q}")
    return "\n".join(lines)


COMMANDS = {
    "classgroup": cmd_classgroup,
    "census": cmd_census,
    "theorem1": cmd_theorem1,
    "constants": cmd_constants,
    "genus-check": cmd_genus_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"genuslab: error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        print("genuslab: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = COMMANDS[args.command](args)
        _emit(text, args.out)
    except UsageError as e:
        print(f"genuslab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (census.MemoryBudgetError, MemoryError) as e:
        print(f"genuslab: resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as e:
        print(f"genuslab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
