"""Command-line front end: exact counts, laws, moments and limit curves as CSV or JSON."""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import counting, gauss, limits, oracle
from .counting import MelonConfig, StripBound
from .errors import CapacityError, MelonError

EXIT_OK, EXIT_VALIDATION, EXIT_CAPACITY = 0, 2, 3


def fmt_decimal(x) -> str:
    return format(float(x), ".12g")


def fmt_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class Table:
    """Rows of typed cells; renders identically-valued CSV and JSON."""

    def __init__(self, columns):
        self.columns = [name for name, _ in columns]
        self.kinds = [kind for _, kind in columns]
        self.rows: list = []

    def add(self, *cells):
        out = []
        for kind, cell in zip(self.kinds, cells):
            if kind == "int":
                out.append(str(int(cell)))
            elif kind == "frac":
                out.append(fmt_fraction(Fraction(cell)))
            elif kind == "dec":
                out.append(fmt_decimal(cell))
            else:
                out.append(str(cell))
        self.rows.append(out)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> str:
        def typed(kind, cell):
            if kind == "int":
                return int(cell)
            if kind == "dec":
                return float(cell)
            return cell

        records = [{c: typed(k, v) for c, k, v in zip(self.columns, self.kinds, row)}
                   for row in self.rows]
        return json.dumps({"columns": self.columns, "rows": records}, indent=1) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def _grid(t_min: float, t_max: float, steps: int) -> list:
    if steps < 1:
        raise MelonError("--steps must be >= 1")
    if not 0 < t_min <= t_max:
        raise MelonError("need 0 < t-min <= t-max")
    if steps == 1:
        return [t_min]
    # round to 12 digits so the grid prints the same everywhere
    return [round(t_min + (t_max - t_min) * k / (steps - 1), 12) for k in range(steps)]


def cmd_count(args) -> str:
    cfg = MelonConfig(args.p, args.n)
    if args.height_lt is None and args.depth_gt is None:
        value = counting.count_total(cfg)
    elif args.depth_gt is None:
        value = counting.count_height_lt(cfg, args.height_lt)
    else:
        h = args.height_lt if args.height_lt is not None else cfg.max_height + 1
        k = -args.depth_gt
        if h + k < 1:
            raise MelonError("empty strip: need height-lt - depth-gt >= 1")
        value = counting.count_strip(cfg, StripBound(h, k))
    if args.verify:
        _verify_count(cfg, args, value)
    if args.format == "json":
        return json.dumps({"p": args.p, "n": args.n, "count": value}) + "\n"
    return f"{value}\n"


def _verify_count(cfg, args, value):
    joint = oracle.stats(cfg).joint
    h = args.height_lt if args.height_lt is not None else cfg.max_height + 1
    d = args.depth_gt if args.depth_gt is not None else -cfg.n - 1
    brute = sum(c for (hh, dd), c in joint.items() if hh < h and dd > d)
    if brute != value:
        raise MelonError(f"count {value} disagrees with exhaustive search ({brute})")


def _distribution(args):
    cfg = MelonConfig(args.p, args.n)
    if args.stat == "height":
        dist = counting.height_distribution(cfg)
    else:
        dist = counting.range_distribution(cfg)
    if args.verify:
        s = oracle.stats(cfg)
        brute = s.height_distribution() if args.stat == "height" else s.range_distribution()
        if brute != dist:
            raise MelonError(f"{args.stat} law disagrees with exhaustive search")
    return dist


def cmd_pmf(args) -> str:
    dist = _distribution(args)
    table = Table([("value", "int"), ("count", "int"), ("probability", "frac"), ("decimal", "dec")])
    for v, c, m in zip(dist.support, dist.counts, dist.mass):
        table.add(v, c, m, m)
    return table.render(args.format)


def cmd_cdf(args) -> str:
    dist = _distribution(args)
    table = Table([("value", "int"), ("count", "int"), ("probability", "frac"), ("decimal", "dec")])
    for v, c in zip(dist.support, dist.cumulative_counts()):
        q = Fraction(c, dist.total_count)
        table.add(v, c, q, q)
    return table.render(args.format)


def cmd_moments(args) -> str:
    cfg = MelonConfig(args.p, args.n)
    cols = [("s", "int"), ("exact", "frac"), ("exact_decimal", "dec")]
    if args.asymptotic:
        cols += [("asymptotic", "dec"), ("abs_err", "dec")]
    table = Table(cols)
    for s in range(1, args.s_max + 1):
        exact = counting.height_moment_exact(cfg, s)
        if args.asymptotic:
            asym = gauss.moment_asymptotic(args.p, s, args.n)
            table.add(s, exact, exact, asym, abs(float(exact) - float(asym)))
        else:
            table.add(s, exact, exact)
    out = table.render(args.format)
    if args.dump_symbolic:
        dump = {"p": args.p,
                "kappa": gauss.kappa(args.p).to_json_terms(),
                "tau": gauss.tau(args.p).to_json_terms()}
        out += json.dumps(dump) + "\n"
    return out


def cmd_limit(args) -> str:
    curve = limits.limit_curve(args.stat, args.p, _grid(args.t_min, args.t_max, args.steps), args.eps)
    table = Table([("t", "dec"), ("cdf", "dec")])
    for t, v in curve.rows():
        table.add(t, v)
    return table.render(args.format)


def cmd_compare(args) -> str:
    rows = limits.convergence_report(args.stat, args.p, args.n,
                                     _grid(args.t_min, args.t_max, args.steps), args.eps)
    table = Table([("t", "dec"), ("exact", "dec"), ("limit", "dec"), ("abs_err", "dec")])
    for row in rows:
        table.add(*row)
    return table.render(args.format)


def cmd_table1(args) -> str:
    table = Table([("p", "int"), ("s", "int"), ("coefficient", "dec")])
    for (p, s), v in gauss.table1(args.p_max, args.s_max).items():
        table.add(p, s, v)
    return table.render(args.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--precision", type=int, help="mpmath working digits (default 40)")

    def pn(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--n", type=int, required=True)

    def verify(sp):
        sp.add_argument("--verify", action="store_true",
                        help="cross-check against exhaustive enumeration (small p*n only)")

    def stat(sp):
        sp.add_argument("--stat", choices=("height", "range"), default="height")

    def grid(sp):
        sp.add_argument("--t-min", type=float, default=0.5)
        sp.add_argument("--t-max", type=float, default=4.0)
        sp.add_argument("--steps", type=int, default=36)
        sp.add_argument("--eps", type=float, default=1e-10)

    parser = argparse.ArgumentParser(
        prog="melonlab", description="Height and range statistics of p-watermelons.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", parents=[common], help="exact number of watermelons")
    pn(sp)
    sp.add_argument("--height-lt", type=int, help="only count height < H")
    sp.add_argument("--depth-gt", type=int, help="only count depth > D (D <= 0)")
    verify(sp)
    sp.set_defaults(func=cmd_count)

    for name, func in (("pmf", cmd_pmf), ("cdf", cmd_cdf)):
        sp = sub.add_parser(name, parents=[common], help=f"exact {name} of height or range")
        pn(sp)
        stat(sp)
        verify(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("moments", parents=[common], help="exact height moments")
    pn(sp)
    sp.add_argument("--s-max", type=int, default=3)
    sp.add_argument("--asymptotic", action="store_true", help="add two-term asymptotics")
    sp.add_argument("--dump-symbolic", action="store_true", help="append kappa/tau term lists")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("limit", parents=[common], help="limiting CDF on a t grid")
    sp.add_argument("--p", type=int, required=True)
    stat(sp)
    grid(sp)
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("compare", parents=[common], help="exact CDF against its limit")
    pn(sp)
    stat(sp)
    grid(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("table1", parents=[common], help="leading moment coefficients")
    sp.add_argument("--p-max", type=int, default=4)
    sp.add_argument("--s-max", type=int, default=3)
    sp.set_defaults(func=cmd_table1)
    return parser


def _validate(args):
    if getattr(args, "s_max", 1) < 1:
        raise MelonError("--s-max must be >= 1")
    symbolic = args.command in ("limit", "compare", "table1") or (
        args.command == "moments" and (args.asymptotic or args.dump_symbolic))
    p = args.p_max if args.command == "table1" else args.p
    if symbolic and not 1 <= p <= gauss.MAX_P:
        raise MelonError(f"p must be in 1..{gauss.MAX_P} for this command")


@contextlib.contextmanager
def _unlimited_int_digits():
    # exact counts and fractions easily exceed the default int<->str digit limit
    limit = getattr(sys, "get_int_max_str_digits", lambda: None)()
    if limit:
        sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        if limit:
            sys.set_int_max_str_digits(limit)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision is not None:
        os.environ["MELONLAB_PRECISION"] = str(args.precision)
    try:
        _validate(args)
        with _unlimited_int_digits():
            text = args.func(args)
    except CapacityError as exc:
        print(f"melonlab: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except MelonError as exc:
        print(f"melonlab: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
