"""Command-line front end.

Subcommands: census, green, pairing, bound, weyl, global, verify.  Tables
are written as CSV or TSV to stdout or ``--out``.  Exit status is 0 on
success, 1 when a verify suite fails, 2 for invalid input and 3 when an
enumeration would exceed the budget.
"""
from __future__ import annotations

import argparse
import cmath
import csv
import io
import math
import sys
from fractions import Fraction
from itertools import product

from . import __version__
from .acceptance import run as run_suites, suite_names
from .archweyl import dominant_weights, regular_bound, schur_trace, weyl_dim, weyl_polynomial
from .globalbound import c1, lower_bound, load_config, positivity_scan, type_dimension
from .greenchar import character_table
from .localring import format_matrix, parse_matrix
from .projcensus import BudgetExceeded, census, census_formula, census_induced, default_budget
from .simpletypes import make_type, theta_pairing, type_trace_bound
from .towerfield import cyc_abs

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _int_list(text: str) -> list[int]:
    """"2,3" -> [2, 3]; "1-3" -> [1, 2, 3]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty list {text!r}")
    return out


def _budget(text: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid budget {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return f"{v:.6f}"
    if isinstance(v, complex):
        return f"{v.real:.6f}{v.imag:+.6f}j"
    return str(v)


class Table:
    def __init__(self, header):
        self.header = list(header)
        self.rows: list[list] = []

    def add(self, *row):
        self.rows.append([_fmt(v) for v in row])

    def render(self, fmt: str) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return buf.getvalue()


# --- subcommands --------------------------------------------------------------------

def cmd_census(args) -> Table:
    if not args.matrix:
        raise ValueError("census needs --matrix")
    t = Table(["model", "q", "n", "k", "count", "route", "flags", "matrix"])
    for q, n, k in product(args.q, args.n, args.k):
        g = parse_matrix(args.matrix, n)
        if args.route == "induced":
            rep = census_induced(g, q, n, k, "brute", args.budget)
        elif args.route == "formula":
            rep = census_formula(g, args.model, q, n, k)
        else:
            rep = census(g, args.model, q, n, k, args.budget, args.workers)
        t.add(*rep.row(), format_matrix(g))
    return t


def cmd_green(args) -> Table:
    (q,), (n,) = args.q, args.n
    classes, chars, values = character_table(q, n, args.budget)
    header = ["class", "size", "charpoly", "rep"]
    for chi in chars:
        header += [f"tau_{chi.k}", f"|tau_{chi.k}|"]
    t = Table(header)
    for i, c in enumerate(classes):
        row = [i, c.size, " ".join(map(str, c.charpoly)), format_matrix(tuple(tuple((x,) for x in r) for r in c.rep))]
        for v in values[i]:
            row += [str(v), cyc_abs(v)]
        t.add(*row)
    return t


def cmd_pairing(args) -> Table:
    t = Table(["case", "q", "n", "m", "dim_W", "rank", "alternating", "extension_independent", "gram"])
    for q, n, m in product(args.q, args.n, args.m):
        d = make_type(args.model, q, n, m)
        P = theta_pairing(d)
        same = (theta_pairing(d, twist=1).gram == P.gram
                and theta_pairing(d, unit_factors=True).gram == P.gram)
        gram = ";".join(" ".join(map(str, row)) for row in P.gram)
        t.add(d.case, q, n, m, P.dim, P.rank, P.is_alternating(), same, gram)
    return t


def cmd_bound(args) -> Table:
    if not args.matrix:
        raise ValueError("bound needs --matrix")
    t = Table(["case", "q", "n", "m", "matrix", "count", "per_point", "bound",
               "closed_form", "lemma", "flags"])
    for q, n, m in product(args.q, args.n, args.m):
        d = make_type(args.model, q, n, m)
        g = parse_matrix(args.matrix, n)
        b = type_trace_bound(g, d, args.route, args.budget)
        t.add(d.case, q, n, m, format_matrix(g), b.count, b.per_point, b.bound,
              b.closed_form, b.lemma_applies, "|".join(sorted(b.flags)))
    return t


def _eigenvalues(text: str):
    """Angles as fractions of a full turn; 0 and 1/2 give exact +-1."""
    out = []
    for a in text.split(","):
        f = Fraction(a.strip())
        r = f - math.floor(f)
        if r == 0:
            out.append(1)
        elif r == Fraction(1, 2):
            out.append(-1)
        else:
            out.append(cmath.exp(2j * math.pi * float(r)))
    return out


def cmd_weyl(args) -> Table:
    if args.poly:
        (n,) = args.n
        t = Table(["exponents", "coefficient"])
        for e, c in weyl_polynomial(n).coefficients():
            t.add(" ".join(map(str, e)), c)
        return t
    x = _eigenvalues(args.angles) if args.angles else None
    if args.weight:
        weights = [tuple(int(a) for a in args.weight.split(","))]
    else:
        (n,) = args.n
        weights = list(dominant_weights(n, args.box))
    header = ["weight", "weyl_dim"]
    if x is not None:
        header += ["trace", "abs_trace"]
        distinct = len({complex(v) for v in x}) == len(x)
        if distinct:
            header.append("regular_bound")
    t = Table(header)
    for w in weights:
        row = [" ".join(map(str, w)), weyl_dim(w)]
        if x is not None:
            if len(x) != len(w):
                raise ValueError("--angles needs one angle per weight entry")
            s = schur_trace(w, x)
            row += [s, abs(s)]
            if distinct:
                row.append(regular_bound(x))
        t.add(*row)
    return t


def cmd_global(args) -> Table:
    if not args.config:
        raise ValueError("global needs --config")
    cfg = load_config(args.config)
    scan = positivity_scan(cfg, box=args.box)
    t = Table(["kind", "places", "weights", "dimension", "value"])
    C2, _ = cfg.aggregated()
    t.add("c1", "", "", "", c1(cfg))
    t.add("C_2", "", "", "", C2)
    for desc in scan.exceptional:
        places = " ".join(str(q) for q, _ in desc.finite)
        weights = ";".join(" ".join(map(str, w)) for w in desc.weights)
        t.add("exceptional", places, weights, type_dimension(desc, cfg.n), lower_bound(cfg, desc))
    t.add("certified", "", "", "", scan.certified)
    return t


def cmd_verify(args) -> int:
    results = run_suites(args.suite, args.budget)
    text = "".join(r.line() + "\n" for r in results)
    failed = sum(not r.passed for r in results)
    text += f"{len(results) - failed}/{len(results)} criteria passed\n"
    _emit(text, args.out)
    return EXIT_FAIL if failed else 0


COMMANDS = {
    "census": cmd_census, "green": cmd_green, "pairing": cmd_pairing,
    "bound": cmd_bound, "weyl": cmd_weyl, "global": cmd_global,
}


# --- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=_int_list, default=[2], help="residue field size(s), e.g. 2,3")
    common.add_argument("--n", type=_int_list, default=[2], help="prime degree(s)")
    common.add_argument("--k", type=_int_list, default=[1], help="level(s) of X_k")
    common.add_argument("--m", type=_int_list, default=[2], help="type level(s)")
    common.add_argument("--model", default="unram", choices=["unram", "ram", "unramified", "ramified"])
    common.add_argument("--matrix", help="row-major entries; an entry is c0 or c0:c1:... in t")
    common.add_argument("--budget", type=_budget, default=None,
                        help="enumeration budget (default: TYPECOUNT_BUDGET or 1e8)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", default=None, choices=["csv", "tsv"],
                        help="table format (default: tsv for green, csv otherwise)")

    p = argparse.ArgumentParser(prog="typecount", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", parents=[common], help="fixed points of g on X_k")
    c.add_argument("--route", default="brute", choices=["brute", "formula", "induced"])
    c.add_argument("--workers", type=int, default=1)

    sub.add_parser("green", parents=[common], help="cuspidal character table of GL_n(F_q)")

    sub.add_parser("pairing", parents=[common], help="commutator pairing on W")

    b = sub.add_parser("bound", parents=[common], help="trace bound for a type at g")
    b.add_argument("--route", default="brute", choices=["brute", "formula"])

    w = sub.add_parser("weyl", parents=[common], help="Weyl dimensions and Schur traces")
    w.add_argument("--weight", help="dominant weight a_1,...,a_n")
    w.add_argument("--angles", help="eigenvalue angles as fractions of a turn, e.g. 0,0,1/2")
    w.add_argument("--box", type=int, default=4, help="a_1 - a_n bound for the table")
    w.add_argument("--poly", action="store_true", help="print the Weyl polynomial coefficients")

    gl = sub.add_parser("global", parents=[common], help="global lower bound and exceptional set")
    gl.add_argument("--config", help="JSON config file")
    gl.add_argument("--box", type=int, default=10, help="weight box for the scan")

    v = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    v.add_argument("--suite", default="all", choices=["all"] + suite_names() + [str(i) for i in range(1, 11)])
    return p


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is None:
        args.budget = default_budget()
    if args.format is None:
        args.format = "tsv" if args.command == "green" else "csv"
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "green" and (len(args.q) != 1 or len(args.n) != 1):
            raise ValueError("green takes a single --q and --n")
        table = COMMANDS[args.command](args)
        _emit(table.render(args.format), args.out)
    except BudgetExceeded as e:
        print(f"typecount: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, KeyError, OSError) as e:
        print(f"typecount: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
