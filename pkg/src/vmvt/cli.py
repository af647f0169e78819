"""Command-line front end.

Every subcommand prints one header line and then records, as CSV or as
newline-delimited JSON, on stdout.  Diagnostics go to stderr.  Exit status:
0 success, 1 invalid arguments, 2 resource budget exceeded, 3 internal
invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import threading
import time
from fractions import Fraction

import numpy as np

from . import _config
from . import congruences, exp_sums, exponents, mean_values, tarry, waring
from .errors import InvariantViolation, ResourceExceeded

EXIT_OK, EXIT_INVALID, EXIT_RESOURCE, EXIT_INVARIANT = 0, 1, 2, 3
PROGRESS_PERIOD = 5.0


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _real(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from exc


def _fmt_real(v) -> str:
    return str(v) if isinstance(v, Fraction) else repr(float(v))


class _Heartbeat:
    """Prints elapsed time (and fraction done when known) to stderr every few seconds."""

    def __init__(self, label: str, quiet: bool):
        self.label = label
        self.quiet = quiet
        self.done = None
        self._stop = threading.Event()
        self._start = time.monotonic()
        self._thread = threading.Thread(target=self._run, daemon=True)

    def update(self, done: int, total: int):
        self.done = done / total if total else None

    def _run(self):
        while not self._stop.wait(PROGRESS_PERIOD):
            msg = f"[vmvt] {self.label}: {time.monotonic() - self._start:.0f}s elapsed"
            if self.done is not None:
                msg += f", {100 * self.done:.1f}% done"
            print(msg, file=sys.stderr, flush=True)

    def __enter__(self):
        if not self.quiet:
            self._thread.start()
        return self

    def __exit__(self, *exc):
        self._stop.set()


# -- subcommands --------------------------------------------------------------
# Each returns (columns, rows).


def _x_range(a):
    lo = a.xmin if a.xmin is not None else a.xmax
    return range(lo, a.xmax + 1)


def cmd_jmean(a, ctx):
    rows = []
    for X in _x_range(a):
        J = mean_values.count_mean_value(mean_values.SystemParams(a.s, a.k, X), a.strategy,
                                         ctx.threads, ctx.memory)
        rows.append((a.s, a.k, X, J))
    return ("s", "k", "X", "J"), rows


def cmd_tdiag(a, ctx):
    return ("s", "X", "T"), [(a.s, X, mean_values.count_diagonal(a.s, X)) for X in _x_range(a)]


def cmd_lowbound(a, ctx):
    rows = []
    for X in _x_range(a):
        L, J = mean_values.lower_bound_certificate(mean_values.SystemParams(a.s, a.k, X),
                                                   ctx.threads, ctx.memory)
        rows.append((a.s, a.k, X, L, J))
    return ("s", "k", "X", "L", "J"), rows


def cmd_newton(a, ctx):
    return ("k", "X", "holds"), [(a.k, X, mean_values.check_newton_identity(a.k, X, ctx.threads))
                                 for X in _x_range(a)]


def cmd_progression(a, ctx):
    c = mean_values.count_in_progression(mean_values.SystemParams(a.s, a.k, a.xmax), a.q, a.xi,
                                         ctx.threads, ctx.memory)
    return ("s", "k", "X", "q", "xi", "count"), [(a.s, a.k, a.xmax, a.q, a.xi, c)]


def cmd_slope(a, ctx):
    slope = mean_values.fit_empirical_exponent(a.s, a.k, a.x, ctx.threads, ctx.memory)
    conj = exponents.conjectured_exponent(a.s, a.k)
    return ("s", "k", "slope", "conjectured"), [(a.s, a.k, slope, conj)]


def _alpha(a, ctx):
    if a.alpha:
        return list(a.alpha)
    if a.random_k:
        rng = np.random.default_rng(ctx.seed)
        return [float(v) for v in rng.random(a.random_k)]
    raise _UsageError("give --alpha or --random-k")


def cmd_expsum(a, ctx):
    alpha = _alpha(a, ctx)
    with _Heartbeat("expsum", ctx.quiet) as hb:
        z = exp_sums.eval_f(alpha, a.xmax, ctx.threads, hb.update)
    label = " ".join(_fmt_real(v) for v in alpha)
    return ("alpha", "X", "re", "im", "abs"), [(label, a.xmax, z.real, z.imag, abs(z))]


def cmd_approx(a, ctx):
    r = exp_sums.dirichlet_approx(a.alpha, a.Q)
    return ("alpha", "Q", "a", "q", "err"), [(_fmt_real(a.alpha), a.Q, r.a, r.q, r.err)]


def cmd_minor(a, ctx):
    m = exp_sums.is_minor_arc(a.beta, a.k, a.xmax)
    return ("beta", "k", "X", "minor"), [(_fmt_real(a.beta), a.k, a.xmax, m)]


def cmd_envelope(a, ctx):
    if a.kind == "weyl":
        env = exp_sums.weyl_envelope(a.q, a.k, a.xmax, a.epsilon)
    else:
        env = exp_sums.vinogradov_envelope(a.q, a.j or a.k, a.k, a.xmax, a.epsilon)
    return ("name", "q", "k", "X", "epsilon", "value"), \
        [(env.name, a.q, a.k, a.xmax, env.epsilon, env.value)]


def cmd_equi(a, ctx):
    alpha = _alpha(a, ctx)
    with _Heartbeat("equi", ctx.quiet) as hb:
        n_star, value = exp_sums.equidistribution_min(alpha, a.n, ctx.threads, hb.update)
    label = " ".join(_fmt_real(v) for v in alpha)
    return ("alpha", "N", "n_star", "value"), [(label, a.n, n_star, value)]


def cmd_cong(a, ctx):
    inst = congruences.CongruenceInstance(a.k, a.p, a.eta, tuple(a.y))
    r = congruences.count_congruence_solutions(inst, ctx.memory)
    return ("k", "p", "eta", "y", "count", "bound", "ratio", "hensel_applies"), \
        [(a.k, a.p, a.eta, " ".join(map(str, a.y)), r.count, r.bound, r.ratio, r.hensel_applies)]


def cmd_congdeep(a, ctx):
    r = congruences.count_deep_congruence_solutions(a.k, a.p, a.xi, a.eta, a.y, ctx.memory)
    return ("k", "p", "xi", "eta", "y", "count", "bound", "ratio", "hensel_applies"), \
        [(a.k, a.p, a.xi, a.eta, " ".join(map(str, a.y)), r.count, r.bound, r.ratio,
          r.hensel_applies)]


def cmd_waring(a, ctx):
    lo = a.nmin if a.nmin is not None else a.n
    R = waring.representation_counts(a.s, a.k, a.n, ctx.memory)
    return ("s", "k", "n", "R"), [(a.s, a.k, n, int(R[n])) for n in range(lo, a.n + 1)]


def cmd_gauss(a, ctx):
    z = waring.gauss_sum(a.q, a.a, a.k)
    return ("q", "a", "k", "re", "im", "abs"), [(a.q, a.a, a.k, z.real, z.imag, abs(z))]


def cmd_sseries(a, ctx):
    r = waring.singular_series(waring.WaringInstance(a.s, a.k, a.n), a.Q)
    return ("s", "k", "n", "Q", "value", "imag_residue", "tail_estimate"), \
        [(a.s, a.k, a.n, a.Q, r.value, r.imag_residue, r.tail_estimate)]


def cmd_asym(a, ctx):
    rows = waring.asymptotic_report(a.s, a.k, a.n, a.Q, ctx.memory)
    return ("n", "R", "predicted", "ratio"), rows


def cmd_tarry_verify(a, ctx):
    stream = sys.stdin if a.file == "-" else open(a.file, encoding="utf-8")
    with stream:
        w = tarry.read_witness(stream)
    return ("k", "h", "s", "valid"), [(w.k, w.h, w.s, tarry.verify_witness(w))]


def cmd_tarry_search(a, ctx):
    w = tarry.search_witness(a.k, a.h, a.s, a.height, ctx.memory)
    if w is not None and a.out:
        with open(a.out, "w", encoding="utf-8", newline="\n") as fh:
            tarry.write_witness(w, fh)
    blocks = "" if w is None else "|".join(" ".join(map(str, b)) for b in w.blocks)
    return ("k", "h", "s", "height", "found", "blocks"), \
        [(a.k, a.h, a.s, a.height, w is not None, blocks)]


def cmd_ledger(a, ctx):
    rows = [(r.source, "" if r.k is None else r.k, "" if r.s is None else r.s, r.kind,
             float(r.value), r.citation) for r in exponents.ledger(a.k)]
    return ("source", "k", "s", "kind", "value", "citation"), rows


def cmd_j32(a, ctx):
    rows = exponents.compare_asymptotic_j32(a.x, ctx.threads)
    return ("X", "exact", "predicted", "relative_error", "in_range"), rows


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--memory-budget", type=int, default=None, help="bytes (default 4 GiB)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--quiet", action="store_true")

    p = _Parser(prog="vmvt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("jmean", cmd_jmean, "exact J_{s,k}(X)")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--xmax", type=int, required=True)
    sp.add_argument("--xmin", type=int)
    sp.add_argument("--strategy", choices=mean_values.STRATEGIES, default="meet_in_middle")

    sp = add("tdiag", cmd_tdiag, "diagonal count T_s(X)")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--xmax", type=int, required=True)
    sp.add_argument("--xmin", type=int)

    sp = add("lowbound", cmd_lowbound, "pigeonhole lower bound certificate")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--xmax", type=int, required=True)
    sp.add_argument("--xmin", type=int)

    sp = add("newton", cmd_newton, "check J_{s,k}(X) = T_s(X) for s <= k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--xmax", type=int, required=True)
    sp.add_argument("--xmin", type=int)

    sp = add("progression", cmd_progression, "count with all variables = xi mod q")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--xmax", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--xi", type=int, required=True)

    sp = add("slope", cmd_slope, "least-squares growth exponent of J")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--x", type=int, nargs="+", required=True)

    sp = add("expsum", cmd_expsum, "evaluate f_k(alpha; X)")
    sp.add_argument("--alpha", type=_real, nargs="+")
    sp.add_argument("--random-k", type=int)
    sp.add_argument("--xmax", type=int, required=True)

    sp = add("approx", cmd_approx, "Dirichlet rational approximation")
    sp.add_argument("--alpha", type=_real, required=True)
    sp.add_argument("--Q", type=int, required=True)

    sp = add("minor", cmd_minor, "minor-arc membership")
    sp.add_argument("--beta", type=_real, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--xmax", type=int, required=True)

    sp = add("envelope", cmd_envelope, "Weyl or Vinogradov bound envelope")
    sp.add_argument("--kind", choices=("weyl", "vinogradov"), default="weyl")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--j", type=int)
    sp.add_argument("--xmax", type=float, required=True)
    sp.add_argument("--epsilon", type=float, default=0.0)

    sp = add("equi", cmd_equi, "min ||alpha_1 n + ... + alpha_k n^k|| over n <= N")
    sp.add_argument("--alpha", type=_real, nargs="+")
    sp.add_argument("--random-k", type=int)
    sp.add_argument("--n", type=int, required=True)

    sp = add("cong", cmd_cong, "Hensel congruence count")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--eta", type=int, default=0)
    sp.add_argument("--y", type=int, nargs="+", required=True)

    sp = add("congdeep", cmd_congdeep, "deep Hensel congruence count")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--xi", type=int, required=True)
    sp.add_argument("--eta", type=int, default=0)
    sp.add_argument("--y", type=int, nargs="+", required=True)

    sp = add("waring", cmd_waring, "exact R_{s,k}(n)")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--nmin", type=int)

    sp = add("gauss", cmd_gauss, "complete sum over r mod q of e(a r^k / q)")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("sseries", cmd_sseries, "truncated singular series")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--Q", type=int, default=200)

    sp = add("asym", cmd_asym, "exact R against the circle-method prediction")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, nargs="+", required=True)
    sp.add_argument("--Q", type=int, default=200)

    sp = add("tarry-verify", cmd_tarry_verify, "verify a witness file ('-' for stdin)")
    sp.add_argument("--file", required=True)

    sp = add("tarry-search", cmd_tarry_search, "exhaustive witness search")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--h", type=int, default=2)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--out")

    sp = add("ledger", cmd_ledger, "exponent ledger for degree k")
    sp.add_argument("--k", type=int, required=True)

    sp = add("j32", cmd_j32, "exact J_{3,2}(X) against its two-term asymptotic")
    sp.add_argument("--x", type=int, nargs="+", required=True)
    return p


# -- output ------------------------------------------------------------------------


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_cell(v):
    if isinstance(v, bool) or isinstance(v, float) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def emit(columns, rows, fmt: str, out) -> None:
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_csv_cell(v) for v in row])
    else:
        out.write(json.dumps({"columns": list(columns)}) + "\n")
        for row in rows:
            out.write(json.dumps({c: _json_cell(v) for c, v in zip(columns, row)}) + "\n")


class _Context:
    def __init__(self, args):
        self.threads = args.threads or _config.default_workers()
        self.memory = args.memory_budget
        self.seed = args.seed
        self.quiet = args.quiet


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.threads is not None and args.threads < 1:
            raise _UsageError("--threads must be positive")
        columns, rows = args.fn(args, _Context(args))
    except _UsageError as exc:
        print(f"vmvt: {exc}", file=err)
        return EXIT_INVALID
    except ResourceExceeded as exc:
        print(f"vmvt: resource exceeded: {exc}", file=err)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"vmvt: invariant violation: {exc}", file=err)
        return EXIT_INVARIANT
    except (ValueError, OSError) as exc:
        print(f"vmvt: {exc}", file=err)
        return EXIT_INVALID
    buf = io.StringIO()
    emit(columns, rows, args.format, buf)
    out.write(buf.getvalue())
    out.flush()
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
