"""Command-line surface emitting CSV plot data.

Subcommands: likelihood, pdensity, cloud, stopping, slice, coin, ttest.
Every command is deterministic given its flags (and seed); outputs are
UTF-8 CSV with a header row, LF line endings, and 17-significant-digit
decimals. When --out is given, a JSON run manifest with output digests is
written next to the file.

Exit codes: 0 success, 2 usage error, 3 input data error, 4 budget
exceeded.
"""

import argparse
import csv
import hashlib
import io
import json
import secrets
import sys
import time

import numpy as np

from . import __version__
from .coin import CoinOutcome, Sampling, binomial_p, coin_likelihood, negative_binomial_p
from .errors import BudgetError, DomainError, EmptySliceError
from .likelihood import DEFAULT_GRID as LIKE_GRID
from .likelihood import likelihood_curve
from .montecarlo import (PCloud, SimConfig, StoppingRule, ThetaFixed,
                         ThetaUniform, horizontal_slice, run_cloud,
                         vertical_slice)
from .pdensity import p_density_curve
from .significance import Family, Tails, TestSpec, t_test

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_BUDGET = 4


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _parse_tails(s: str) -> Tails:
    return Tails.ONE if s == "one" else Tails.TWO


def _parse_band(s: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in s.split(":"))
    except ValueError:
        raise DomainError(f"band must look like LO:HI (got {s!r})")
    return lo, hi


def _parse_grid(s: str) -> np.ndarray:
    try:
        lo, hi, step = (float(v) for v in s.split(":"))
    except ValueError:
        raise DomainError(f"grid must look like LO:HI:STEP (got {s!r})")
    if step <= 0 or hi <= lo:
        raise DomainError("grid needs lo < hi and step > 0")
    k = int(round((hi - lo) / step))
    return lo + step * np.arange(k + 1)


def _parse_theta_mode(s: str):
    parts = s.split(":")
    if parts[0] == "uniform" and len(parts) == 3:
        return ThetaUniform(float(parts[1]), float(parts[2]))
    if parts[0] == "fixed" and len(parts) == 2:
        return ThetaFixed(float(parts[1]))
    raise DomainError(f"theta mode must be uniform:LO:HI or fixed:VALUE (got {s!r})")


class _Output:
    """Accumulates CSV text, then writes to --out (with manifest) or stdout."""

    def __init__(self, args, argv):
        self.path = getattr(args, "out", None)
        self.argv = argv
        self.seed = getattr(args, "seed", None)
        self.buf = io.StringIO()
        self.t0 = time.monotonic()

    def writer(self):
        return csv.writer(self.buf, lineterminator="\n")

    def finish(self, gnuplot: str | None = None) -> None:
        data = self.buf.getvalue()
        if self.path is None:
            sys.stdout.write(data)
            return
        with open(self.path, "w", newline="") as f:
            f.write(data)
        outputs = {self.path: hashlib.sha256(data.encode()).hexdigest()}
        if gnuplot is not None:
            gp_path = self.path + ".gp"
            with open(gp_path, "w") as f:
                f.write(gnuplot)
            outputs[gp_path] = hashlib.sha256(gnuplot.encode()).hexdigest()
        manifest = {
            "command": self.argv,
            "seed": self.seed,
            "version": __version__,
            "wall_time_s": round(time.monotonic() - self.t0, 6),
            "outputs": outputs,
        }
        with open(self.path + ".manifest.json", "w") as f:
            json.dump(manifest, f, indent=2)
            f.write("\n")


def _gnuplot_script(csv_path: str, xlabel: str, ylabel: str,
                    xcol: int, ycol: int) -> str:
    return (f"set datafile separator ','\n"
            f"set xlabel '{xlabel}'\nset ylabel '{ylabel}'\n"
            f"plot '{csv_path}' using {xcol}:{ycol} skip 1 with lines notitle\n")


def _spec_from_args(args) -> TestSpec:
    return TestSpec(family=Family(args.family), n=args.n,
                    tails=_parse_tails(args.tails))


def _cmd_likelihood(args, argv) -> int:
    spec = _spec_from_args(args)
    grid = _parse_grid(args.grid) if args.grid else LIKE_GRID.copy()
    curve = likelihood_curve(
        args.p, spec, grid=grid,
        normalization="raw_density_scale" if args.raw else "max_one",
        method="finite_diff" if args.finite_diff else "exact",
        force_one_sided=args.one_sided_compat)
    out = _Output(args, argv)
    w = out.writer()
    w.writerow(["theta", "likelihood"])
    for th, v in zip(curve.grid, curve.values):
        w.writerow([_fmt(th), _fmt(v)])
    gp = None
    if args.gnuplot and args.out:
        gp = _gnuplot_script(args.out, "effect size (delta/sigma)",
                             "likelihood", 1, 2)
    out.finish(gp)
    return EXIT_OK


def _cmd_pdensity(args, argv) -> int:
    spec = _spec_from_args(args)
    grid = _parse_grid(args.grid) if args.grid else None
    curve = p_density_curve(args.theta, spec, grid=grid,
                            method="finite_diff" if args.finite_diff else "exact")
    out = _Output(args, argv)
    w = out.writer()
    w.writerow(["p", "density"])
    for x, v in zip(curve.grid, curve.values):
        w.writerow([_fmt(x), _fmt(v)])
    gp = None
    if args.gnuplot and args.out:
        gp = _gnuplot_script(args.out, "P-value", "density", 1, 2)
    out.finish(gp)
    return EXIT_OK


def _resolve_seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(63)
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _run_cloud_cmd(args, argv, rule: StoppingRule) -> int:
    spec = _spec_from_args(args)
    config = SimConfig(spec=spec, runs=args.runs,
                       theta_mode=_parse_theta_mode(args.theta),
                       seed=_resolve_seed(args), rule=rule)
    cloud = run_cloud(config, workers=args.workers, budget=args.budget)
    out = _Output(args, argv)
    cloud.to_csv(out.buf)
    out.finish()
    return EXIT_OK


def _cmd_cloud(args, argv) -> int:
    return _run_cloud_cmd(args, argv, StoppingRule())


def _cmd_stopping(args, argv) -> int:
    rule = StoppingRule(kind="two_stage", continue_band=_parse_band(args.band),
                        stage2_increment=args.increment)
    return _run_cloud_cmd(args, argv, rule)


def _cmd_slice(args, argv) -> int:
    try:
        cloud = PCloud.from_csv(args.cloud)
    except OSError as e:
        print(f"error: cannot read cloud file: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, ValueError, IndexError) as e:
        print(f"error: malformed cloud file: {e}", file=sys.stderr)
        return EXIT_INPUT
    band = _parse_band(args.band)
    if args.axis == "vertical":
        hist = vertical_slice(cloud, band, args.bins)
    else:
        theta_range = _parse_band(args.theta_range) if args.theta_range else None
        hist = horizontal_slice(cloud, band, args.bins, stage=args.stage,
                                theta_range=theta_range)
    out = _Output(args, argv)
    w = out.writer()
    w.writerow([f"{hist.axis}_low", f"{hist.axis}_high", f"{hist.axis}_center",
                "count", "density"])
    for i in range(hist.counts.size):
        w.writerow([_fmt(hist.edges[i]), _fmt(hist.edges[i + 1]),
                    _fmt(hist.centers[i]), int(hist.counts[i]),
                    _fmt(hist.density[i])])
    gp = None
    if args.gnuplot and args.out:
        gp = _gnuplot_script(args.out, hist.axis, "density", 3, 5)
    out.finish(gp)
    return EXIT_OK


def _cmd_coin(args, argv) -> int:
    fixed = CoinOutcome(args.tosses, args.heads, Sampling.FIXED_N)
    grid = _parse_grid(args.grid) if args.grid else 0.005 * np.arange(1, 200)
    like_fixed = coin_likelihood(fixed, grid)
    p_binom = binomial_p(fixed, args.p0)
    lines = [f"binomial_p={_fmt(p_binom)}"]
    sequential = None
    if args.heads == 1:
        sequential = CoinOutcome(args.tosses, 1, Sampling.UNTIL_FIRST_HEAD)
        p_nb = negative_binomial_p(sequential, args.p0)
        like_nb = coin_likelihood(sequential, grid)
        ratio = like_fixed / like_nb
        lines.append(f"negative_binomial_p={_fmt(p_nb)}")
        lines.append(f"likelihood_ratio_constant={_fmt(ratio[0])}")
    print("\n".join(lines))
    out = _Output(args, argv)
    w = out.writer()
    if sequential is not None:
        w.writerow(["p", "likelihood_fixed_n", "likelihood_until_first_head"])
        like_nb = coin_likelihood(sequential, grid)
        for p, lf, ln in zip(grid, like_fixed, like_nb):
            w.writerow([_fmt(p), _fmt(lf), _fmt(ln)])
    else:
        w.writerow(["p", "likelihood_fixed_n"])
        for p, lf in zip(grid, like_fixed):
            w.writerow([_fmt(p), _fmt(lf)])
    if args.out:
        out.finish()
    return EXIT_OK


def _cmd_ttest(args, argv) -> int:
    try:
        with open(args.data, newline="") as f:
            rows = list(csv.reader(f))
    except OSError as e:
        print(f"error: cannot read data file: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.header:
        rows = rows[1:]
    try:
        table = np.array([[float(v) for v in row] for row in rows if row])
    except ValueError as e:
        print(f"error: malformed data file: {e}", file=sys.stderr)
        return EXIT_INPUT
    if table.ndim != 2 or table.shape[0] < 2:
        print("error: data file must hold one sample per column", file=sys.stderr)
        return EXIT_INPUT
    family = Family(args.family)
    spec = TestSpec(family=family, n=table.shape[0],
                    tails=_parse_tails(args.tails))
    group_b = table[:, 1] if table.shape[1] > 1 else None
    if family is not Family.ONE_SAMPLE and group_b is None:
        print(f"error: {family.value} test needs two data columns",
              file=sys.stderr)
        return EXIT_INPUT
    t, p = t_test(table[:, 0], group_b, spec)
    out = _Output(args, argv)
    w = out.writer()
    w.writerow(["t", "p", "df", "tails", "n"])
    w.writerow([_fmt(t), _fmt(p.value), _fmt(spec.df), p.tails.value, spec.n])
    out.finish()
    return EXIT_OK


def _add_spec_flags(p: argparse.ArgumentParser, tails_default=None) -> None:
    p.add_argument("--n", type=int, required=True,
                   help="sample size (per group for two_sample)")
    p.add_argument("--family", default="two_sample",
                   choices=[f.value for f in Family])
    kw = {"required": True} if tails_default is None else {"default": tails_default}
    p.add_argument("--tails", choices=["one", "two"], **kw)


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("--gnuplot", action="store_true",
                   help="also emit a companion gnuplot script (needs --out)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pvlik",
        description="Likelihood functions, P-value densities and Monte Carlo "
                    "P-value clouds for Student's t-test.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("likelihood", help="likelihood curve for an observed P")
    _add_spec_flags(p)
    p.add_argument("--p", type=float, required=True, help="observed P-value")
    p.add_argument("--grid", help="theta grid LO:HI:STEP (default -1:5:0.01)")
    p.add_argument("--raw", action="store_true",
                   help="raw density scale instead of max=1")
    p.add_argument("--finite-diff", action="store_true",
                   help="differentiate the power curve numerically")
    p.add_argument("--one-sided-compat", action="store_true",
                   help="use the one-sided density even for two-tailed P")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_likelihood)

    p = sub.add_parser("pdensity", help="P-value density at an effect size")
    _add_spec_flags(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--grid", help="P grid LO:HI:STEP (default appendix grid)")
    p.add_argument("--finite-diff", action="store_true")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_pdensity)

    for name, helptext in (("cloud", "simulate a P-value cloud"),
                           ("stopping", "two-stage stopping-rule cloud")):
        p = sub.add_parser(name, help=helptext)
        _add_spec_flags(p)
        p.add_argument("--runs", type=int, required=True)
        p.add_argument("--theta", default="uniform:-4:4",
                       help="uniform:LO:HI or fixed:VALUE")
        p.add_argument("--seed", type=int,
                       help="RNG seed (auto-generated and printed if absent)")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--budget", type=int, default=500_000_000,
                       help="max total simulated observations")
        if name == "stopping":
            p.add_argument("--band", default="0.05:0.15",
                           help="continuation band LO:HI")
            p.add_argument("--increment", type=int, default=5,
                           help="extra observations per group at stage two")
        _add_common_flags(p)
        p.set_defaults(func=_cmd_cloud if name == "cloud" else _cmd_stopping)

    p = sub.add_parser("slice", help="histogram slice of a cloud CSV")
    p.add_argument("--cloud", required=True, help="cloud CSV path")
    p.add_argument("--axis", choices=["vertical", "horizontal"], required=True)
    p.add_argument("--band", required=True, help="LO:HI band on the fixed axis")
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--stage", type=int, choices=[1, 2],
                   help="restrict to runs stopped at this stage")
    p.add_argument("--theta-range",
                   help="LO:HI histogram range for horizontal slices")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_slice)

    p = sub.add_parser("coin", help="two-statisticians coin example")
    p.add_argument("--tosses", type=int, required=True)
    p.add_argument("--heads", type=int, required=True)
    p.add_argument("--p0", type=float, default=0.5)
    p.add_argument("--grid", help="head-probability grid LO:HI:STEP")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_coin)

    p = sub.add_parser("ttest", help="t-test on a CSV data file")
    p.add_argument("--data", required=True,
                   help="CSV, one sample per column")
    p.add_argument("--header", action="store_true",
                   help="data file has a header row to skip")
    p.add_argument("--family", default="two_sample",
                   choices=[f.value for f in Family])
    p.add_argument("--tails", choices=["one", "two"], default="two")
    _add_common_flags(p)
    p.set_defaults(func=_cmd_ttest)

    return ap


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args, ["pvlik"] + list(argv))
    except BudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except EmptySliceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
