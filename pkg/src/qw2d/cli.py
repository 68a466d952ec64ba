"""Command-line entry point: ``qw2d {dist,verify,conjecture6,sigma}``.

Exit codes: 0 success, 2 precondition or guard failure, 3 a pass/fail check
exceeded its tolerance.
"""

from __future__ import annotations

import argparse
import os
import sys

from .coins import (
    Coin,
    build_walk_operators,
    coin_hadamard,
    coin_identity,
    coin_random,
    make_coin,
)
from .fourier import default_grid_size, evolve_fourier, invert, transform
from .functions import function_registry, get_function
from .ito import conjecture6_sweep, path_integral_sigma
from .paths import GuardError
from .position import Qubit4, distribution, evolve, init_state, moments, qubit_symmetric
from .reports import dumps, dumps_lines, fmt_float, matrix_json
from .suites import SUITES, run_suite

EXIT_OK, EXIT_PRECONDITION, EXIT_RESIDUAL = 0, 2, 3
CONJ6_MAX_N = 8


class UsageError(ValueError):
    pass


def parse_coin(spec: str) -> Coin:
    spec = spec.strip()
    if spec == "hadamard":
        return coin_hadamard()
    if spec == "identity":
        return coin_identity()
    if spec.startswith("seed:"):
        try:
            return coin_random(int(spec[5:]))
        except ValueError:
            raise UsageError(f"bad coin seed in {spec!r}") from None
    body = spec[len("explicit:"):] if spec.startswith("explicit:") else spec
    try:
        vals = [float(v) for v in body.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 6:
        raise UsageError(
            f"bad coin {spec!r}: use hadamard, identity, seed:N or explicit:ar,ai,br,bi,dr,di"
        )
    return make_coin(complex(vals[0], vals[1]), complex(vals[2], vals[3]),
                     complex(vals[4], vals[5]), label=f"explicit:{body}")


def parse_init(text: str | None) -> Qubit4:
    if text is None:
        return qubit_symmetric()
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad initial state {text!r}: expected 8 comma-separated reals") from None
    return Qubit4.from_reals(vals)


def thread_cap() -> int:
    """Validate QW2D_THREADS. Computation here is single-threaded, so any cap is honoured."""
    raw = os.environ.get("QW2D_THREADS")
    if raw is None:
        return 1
    try:
        val = int(raw)
    except ValueError:
        val = 0
    if val < 1:
        raise UsageError(f"QW2D_THREADS must be an integer >= 1, got {raw!r}")
    return val


def _need_nonneg(name: str, val: int) -> None:
    if val < 0:
        raise UsageError(f"{name} must be non-negative, got {val}")


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_dist(args) -> int:
    _need_nonneg("--n", args.n)
    coin = parse_coin(args.coin)
    phi = parse_init(args.init)
    start = init_state(phi)
    if args.method == "fourier":
        M = args.M if args.M is not None else default_grid_size(args.n)
        state = invert(evolve_fourier(transform(start, M), coin, args.n))
    else:
        state = evolve(start, build_walk_operators(coin), args.n)
    if args.format == "json":
        rows = [
            {"x": x, "y": y, "re": [float(z) for z in amp.real], "im": [float(z) for z in amp.imag]}
            for (x, y), amp in state.items()
        ]
        text = dumps_lines(rows)
    else:
        dist = distribution(state)
        lines = ["x,y,p"]
        lines += [f"{x},{y},{fmt_float(p)}" for (x, y), p in sorted(dist.probs.items())]
        text = "\n".join(lines) + "\n"
    _write(args.out, text)

    dist = distribution(state)
    mx, my = moments(dist, 1, 0), moments(dist, 0, 1)
    summary = {
        "n": args.n,
        "coin": coin.label,
        "total": moments(dist, 0, 0),
        "mean_x": mx,
        "mean_y": my,
        "var_x": moments(dist, 2, 0) - mx * mx,
        "var_y": moments(dist, 0, 2) - my * my,
    }
    print(dumps(summary), file=sys.stderr if args.out == "-" else sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    coin = parse_coin(args.coin)
    phi = parse_init(args.init)
    if args.n is not None:
        _need_nonneg("--n", args.n)
    reports = run_suite(args.suite, coin, phi, args.n)
    _write(args.out, dumps_lines(r.to_json() for r in reports))
    failed = [r for r in reports if r.failed]
    counts = {v: sum(r.verdict == v for r in reports) for v in ("pass", "fail", "report-only")}
    print(dumps({"suite": args.suite, "coin": coin.label, **counts}), file=sys.stderr)
    for r in failed[:20]:
        print(f"FAIL {r.check} {dumps(r.params)} residual={fmt_float(r.residual)}", file=sys.stderr)
    return EXIT_RESIDUAL if failed else EXIT_OK


def cmd_conjecture6(args) -> int:
    n2 = args.n if args.n2 is None else args.n2
    for name, val in (("--n", args.n), ("--n2", n2)):
        _need_nonneg(name, val)
        if val > CONJ6_MAX_N:
            raise GuardError(f"{name}={val} exceeds guard {CONJ6_MAX_N}")
    reports = [conjecture6_sweep(f, args.n, n2) for f in function_registry()]
    _write(args.out, dumps_lines(r.to_json() for r in reports))
    total = sum(len(r.counterexamples) for r in reports)
    print(dumps({"check": "conjecture6", "n": args.n, "n2": n2, "counterexamples": total}),
          file=sys.stderr)
    return EXIT_OK


def cmd_sigma(args) -> int:
    try:
        f = get_function(args.f)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    n2 = args.n if args.n2 is None else args.n2
    _need_nonneg("--n", args.n)
    _need_nonneg("--n2", n2)
    coin = parse_coin(args.coin)
    sigma = path_integral_sigma(f, coin, args.n, n2)
    out = {"function": f.name, "coin": coin.label, "n": args.n, "n2": n2, **matrix_json(sigma)}
    _write(args.out, dumps(out) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qw2d", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_required=True, init=True):
        p.add_argument("--coin", default="hadamard",
                       help="hadamard | identity | seed:N | explicit:ar,ai,br,bi,dr,di")
        p.add_argument("--n", type=int, required=n_required, default=None)
        if init:
            p.add_argument("--init", default=None,
                           help="initial state as 8 reals re0,im0,...,re3,im3 "
                                "(default: the symmetric state)")
        p.add_argument("--out", default="-", help="output file ('-' for stdout)")

    p = sub.add_parser("dist", help="position distribution after n steps")
    common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--method", choices=("position", "fourier"), default="position")
    p.add_argument("--M", type=int, default=None, help="Fourier grid size (default 2n+2)")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("verify", help="run identity sweeps and write a JSON report")
    common(p, n_required=False)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture6", help="counterexample sweep for the two-index formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_conjecture6)

    p = sub.add_parser("sigma", help="operator path integral of a registry function")
    common(p, init=False)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--f", required=True, help="registry function name")
    p.set_defaults(func=cmd_sigma)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        thread_cap()
        return args.func(args)
    except ValueError as exc:
        print(f"qw2d: error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
