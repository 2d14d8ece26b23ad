"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 circuit parse error,
3 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import circuit, hom, optics, poisson
from .cascade import PAIR_NAMES, DETECTORS, RoutingHypothesis, expected_cascade, simulate_cascade

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v: float) -> str:
    return f"{v:.12e}"


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _angle(text: str) -> float:
    try:
        return circuit.parse_phase_expr(text).evaluate({})
    except (ValueError, KeyError):
        raise argparse.ArgumentTypeError(f"expected an angle (radians or pi multiple), got {text!r}") from None


def _write(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")


def _require_finite(values) -> None:
    if not np.all(np.isfinite(np.asarray(values, dtype=float))):
        raise NumericFailure("non-finite value in results")


def cmd_homdip(args) -> str:
    if not (args.sigma > 0 and math.isfinite(args.sigma)):
        raise UsageError("--sigma must be positive")
    if not args.scales or any(not 0 < s <= 1 for s in args.scales):
        raise UsageError("--scales must be values in (0, 1]")
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    if args.tau_max <= args.tau_min:
        raise UsageError("--tau-max must exceed --tau-min")
    if args.nodes < hom.MIN_NODES:
        raise UsageError(f"--nodes must be >= {hom.MIN_NODES}")
    taus = np.linspace(args.tau_min, args.tau_max, args.points)
    profiles = [hom.SpectralProfile(args.sigma, s, args.fc) for s in args.scales]
    try:
        curve = hom.dip_curve(taus, profiles, args.nodes, workers=args.workers)
    except hom.QuadratureResolutionError as exc:
        raise NumericFailure(str(exc)) from None
    rows = ["tau,scale,r_ab"]
    for p in profiles:
        values = curve.series[p.scale]
        _require_finite(values)
        rows += [f"{_fmt(t)},{_fmt(p.scale)},{_fmt(r)}" for t, r in zip(taus, values)]
    return "\n".join(rows)


def cmd_mzi(args) -> str:
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    if not args.phi_max > args.phi_min:
        raise UsageError("--phi-max must exceed --phi-min")
    if args.i0 < 0:
        raise UsageError("--i0 must be nonnegative")
    rows = ["phi,i_alpha,i_beta"]
    for phi in np.linspace(args.phi_min, args.phi_max, args.points):
        ia, ib = hom.mzi_intensities(float(phi), args.i0)
        _require_finite((ia, ib))
        rows.append(f"{_fmt(phi)},{_fmt(ia)},{_fmt(ib)}")
    return "\n".join(rows)


def cmd_cascade(args) -> str:
    try:
        h = RoutingHypothesis.from_name(args.hypothesis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    tally = simulate_cascade(h, args.trials, args.seed, workers=args.workers)
    expected = expected_cascade(h)
    report = {
        "hypothesis": h.short_name,
        "trials": tally.trials,
        "seed": args.seed,
        "singles": {d: {"count": c, "rate": c / tally.trials} for d, c in zip(DETECTORS, tally.singles)},
        "pairs": {
            name: {"count": c, "rate": c / tally.trials, "expected": float(expected[name])}
            for name, c in zip(PAIR_NAMES, tally.pair_counts)
        },
    }
    return json.dumps(report, indent=2)


def cmd_poisson(args) -> str:
    if (args.mean is None) == (args.epsilon is None):
        raise UsageError("give exactly one of --mean or --epsilon")
    if args.mean is not None:
        if not args.mean > 0:
            raise UsageError("--mean must be positive")
        if args.n_max < 3:
            raise UsageError("--n-max must be >= 3")
        return json.dumps(poisson.poisson_stats(args.mean, args.n_max).to_dict(), indent=2)
    if not 0 < args.epsilon < 1:
        raise UsageError("--epsilon must lie in (0, 1)")
    mu = poisson.recommend_mean_photon(args.epsilon)
    return json.dumps(
        {"epsilon": args.epsilon, "mean": mu, "contamination": poisson.contamination(mu)}, indent=2
    )


def _bindings(pairs: list[str]) -> dict[str, float]:
    out = {}
    for item in pairs:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--bind expects name=value, got {item!r}")
        try:
            out[name.strip()] = _angle(value)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"--bind {name.strip()}: {exc}") from None
    return out


def _input_vector(text: str) -> list[complex]:
    try:
        return [complex(t.strip().replace(" ", "")) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--input expects comma-separated complex numbers, got {text!r}") from None


def cmd_run(args) -> str:
    try:
        source = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    ast = circuit.parse(source)
    try:
        t = circuit.compile(ast, _bindings(args.bind))
    except circuit.UnboundVariableError as exc:
        raise UsageError(str(exc)) from None
    vec = _input_vector(args.input) if args.input else [1.0] + [0.0] * (ast.mode_count - 1)
    try:
        out = optics.apply(t, vec)
    except optics.DimensionError as exc:
        raise UsageError(f"dimension mismatch: {exc}") from None
    amps = list(out)
    inten = optics.intensities(out)
    _require_finite([a.real for a in amps] + [a.imag for a in amps])
    return json.dumps(
        {
            "modes": ast.mode_count,
            "bindings": _bindings(args.bind),
            "input": [{"re": z.real, "im": z.imag} for z in map(complex, vec)],
            "output": [{"re": z.real, "im": z.imag} for z in amps],
            "intensities": [float(v) for v in inten],
        },
        indent=2,
    )


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    p = _Parser(prog="photonpair", description="Two-photon beam-splitter interferometry simulations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("homdip", help="spectrally averaged HOM dip curves (CSV)", formatter_class=fmt)
    h.add_argument("--sigma", type=float, default=1.0, help="detuning standard deviation; tau is in units of 1/sigma when 1")
    h.add_argument("--scales", type=_float_list, default=[1.0, 0.75, 0.5, 0.25], help="bandwidth scale factors in (0, 1]")
    h.add_argument("--fc", type=float, default=0.0, help="center detuning offset")
    h.add_argument("--tau-min", type=float, default=0.0)
    h.add_argument("--tau-max", type=float, default=3.0)
    h.add_argument("--points", type=int, default=200, help="delay grid points (>= 2)")
    h.add_argument("--nodes", type=int, default=hom.DEFAULT_NODES, help="minimum Gauss-Hermite nodes")
    h.add_argument("--workers", type=int, default=1)
    h.add_argument("--out", default=None, help="output path (default stdout)")
    h.set_defaults(func=cmd_homdip)

    m = sub.add_parser("mzi", help="Mach-Zehnder output intensities over a phase sweep (CSV)", formatter_class=fmt)
    m.add_argument("--phi-min", type=_angle, default=0.0, help="radians or pi multiple")
    m.add_argument("--phi-max", type=_angle, default=2 * math.pi, help="radians or pi multiple")
    m.add_argument("--points", type=int, default=100)
    m.add_argument("--i0", type=float, default=1.0, help="input intensity")
    m.add_argument("--out", default=None, help="output path (default stdout)")
    m.set_defaults(func=cmd_mzi)

    c = sub.add_parser("cascade", help="cascaded beam-splitter coincidence Monte Carlo (JSON)", formatter_class=fmt)
    c.add_argument("--hypothesis", default="independent", help="bunching | independent | antibunching")
    c.add_argument("--trials", type=int, default=1_000_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int, default=1, help="threads; does not change results")
    c.add_argument("--out", default=None, help="output path (default stdout)")
    c.set_defaults(func=cmd_cascade)

    q = sub.add_parser("poisson", help="Poisson photon statistics or mean-photon recommendation (JSON)", formatter_class=fmt)
    q.add_argument("--mean", type=float, default=None, help="mean photon number to report on")
    q.add_argument("--epsilon", type=float, default=None, help="max contamination P(n>=3)/P(n>=2)")
    q.add_argument("--n-max", type=int, default=20)
    q.add_argument("--out", default=None, help="output path (default stdout)")
    q.set_defaults(func=cmd_poisson)

    r = sub.add_parser("run", aliases=["circuit"], help="apply a .circ circuit to an input field (JSON)", formatter_class=fmt)
    r.add_argument("file", help="circuit description file")
    r.add_argument("--bind", action="append", default=[], metavar="NAME=VALUE", help="phase variable binding (repeatable)")
    r.add_argument("--input", default=None, help="comma-separated complex amplitudes (default: 1 on mode 0)")
    r.add_argument("--out", default=None, help="output path (default stdout)")
    r.set_defaults(func=cmd_run)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except UsageError as exc:
        print(f"photonpair {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except circuit.ParseError as exc:
        print(f"{args.file}:{exc.line}:{exc.column}: error: {exc.message}", file=sys.stderr)
        return EXIT_PARSE
    except (NumericFailure, ArithmeticError, FloatingPointError) as exc:
        print(f"photonpair {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _write(args, text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
