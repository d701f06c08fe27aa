"""Command-line front end.

Subcommands cover every computation in the package and regenerate the
figure datasets as CSV/JSON: occupation spectra, left/right correlation
matrices, Bogoliubov coefficient dumps, detector registration curves, the
joint-registration correlation surface, POVM tables, and the verification
suite.  Output is deterministic for a fixed command line (floats are written
with shortest round-trip repr) and every CSV carries a ``#`` header echoing
the configuration that produced it.

Exit codes: 0 success, 1 configuration or compute error, 2 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import verify as verify_mod
from .bogoliubov import QuadratureUnresolved, build_pair, pair_to_csv
from .detector import (
    PhasePoint,
    joint_correlation,
    registration_prob_one,
    registration_prob_two,
)
from .field import FieldConfig, Region
from .povm import OutOfRange, UndefinedConditional, conditionals, entangled_table, product_table
from .spectrum import (
    auto_truncation,
    correlation_matrix,
    occupation_spectrum,
    write_correlation_csv,
    write_spectrum_csv,
)

__all__ = ["main"]


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports flag errors via exit code 1."""

    def error(self, message):
        raise ConfigError(message)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise ConfigError(f"bad float list {text!r}") from exc


def _parse_grid(text: str) -> np.ndarray:
    """``start:stop:count`` linear grid, or a comma list of values."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid must be start:stop:count, got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad grid {text!r}") from exc
        if count < 1:
            raise ConfigError("grid count must be >= 1")
        return np.linspace(start, stop, count)
    return np.array(_parse_floats(text))


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _emit(path, text: str) -> None:
    buf, close = _open_out(path)
    try:
        buf.write(text)
    finally:
        if close:
            buf.close()


def _resolve_truncation(args, cfg: FieldConfig, k_max: int) -> int:
    if args.truncation is not None:
        return args.truncation
    return auto_truncation(cfg, min(k_max, 16))


def _cmd_spectrum(args) -> int:
    mu_ls = _parse_floats(args.mu_l)
    if not mu_ls:
        raise ConfigError("--mu-l needs at least one value")
    spectra = {}
    for mu_l in mu_ls:
        cfg = FieldConfig.from_mu_l(mu_l, time=args.time)
        n = _resolve_truncation(args, cfg, args.k_max)
        spectra[mu_l] = occupation_spectrum(args.k_max, cfg, n)
    if args.format == "json":
        payload = {repr(mu_l): [float(v) for v in s.values] for mu_l, s in spectra.items()}
        _emit(args.out, json.dumps({"k": list(range(1, args.k_max + 1)), "occupation": payload},
                                   indent=2) + "\n")
    else:
        buf, close = _open_out(args.out)
        try:
            write_spectrum_csv(buf, spectra)
        finally:
            if close:
                buf.close()
    return 0


def _cmd_correlation(args) -> int:
    mu_l = _parse_floats(args.mu_l)[0]
    cfg = FieldConfig.from_mu_l(mu_l, time=args.time)
    n = _resolve_truncation(args, cfg, args.k_max)
    mat = correlation_matrix(args.k_max, cfg, n)
    if args.format == "json":
        payload = [
            {"k": k, "m": m,
             "re": mat.entries[k - 1, m - 1].real, "im": mat.entries[k - 1, m - 1].imag}
            for k in range(1, args.k_max + 1) for m in range(1, args.k_max + 1)
        ]
        _emit(args.out, json.dumps(payload, indent=2) + "\n")
    else:
        buf, close = _open_out(args.out)
        try:
            write_correlation_csv(buf, mat)
        finally:
            if close:
                buf.close()
    return 0


def _cmd_bogoliubov(args) -> int:
    mu_l = _parse_floats(args.mu_l)[0]
    cfg = FieldConfig.from_mu_l(mu_l, time=args.time)
    region = Region.LEFT if args.region == "left" else Region.RIGHT
    pair = build_pair(region, cfg, args.truncation if args.truncation is not None else 16)
    buf, close = _open_out(args.out)
    try:
        pair_to_csv(pair, buf)
    finally:
        if close:
            buf.close()
    return 0


def _cmd_detector(args) -> int:
    radii = _parse_grid(args.grid)
    rows = []
    for r in radii:
        point = PhasePoint(args.sigma, x=float(r) / args.sigma)
        rows.append((float(r), registration_prob_one(point), registration_prob_two(point)))
    if args.format == "json":
        _emit(args.out, json.dumps([{"beta": b, "p1": p1, "p2": p2} for b, p1, p2 in rows],
                                   indent=2) + "\n")
    else:
        lines = [f"# sigma={args.sigma!r} grid={args.grid}", "beta,p1,p2"]
        lines += [f"{b!r},{p1!r},{p2!r}" for b, p1, p2 in rows]
        _emit(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_joint_correlation(args) -> int:
    grid = _parse_grid(args.grid)
    rows = []
    for parametrization in ("real_real", "real_imag"):
        for a in grid:
            point_a = PhasePoint(args.sigma, x=float(a) / args.sigma)
            for b in grid:
                if parametrization == "real_real":
                    point_b = PhasePoint(args.sigma, x=float(b) / args.sigma)
                else:
                    point_b = PhasePoint(args.sigma, p=2.0 * args.sigma * float(b))
                rows.append((parametrization, float(a), float(b),
                             joint_correlation(point_a, point_b)))
    if args.format == "json":
        _emit(args.out, json.dumps([{"parametrization": s, "a": a, "b": b, "c": c}
                                    for s, a, b, c in rows], indent=2) + "\n")
    else:
        lines = [f"# sigma={args.sigma!r} grid={args.grid}", "parametrization,a,b,c"]
        lines += [f"{s},{a!r},{b!r},{c!r}" for s, a, b, c in rows]
        _emit(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_povm(args) -> int:
    if (args.entangled is None) == (args.product is None):
        raise ConfigError("choose exactly one of --entangled P or --product PA PB")
    if args.entangled is not None:
        table = entangled_table(args.entangled)
    else:
        table = product_table(args.product[0], args.product[1])
    payload = table.as_dict()
    if args.with_conditionals:
        cond = conditionals(table)
        payload["conditionals"] = [list(cond[0]), list(cond[1])]
    if args.format == "csv":
        lines = ["cell,probability"] + [f"{k},{v!r}" for k, v in table.as_dict().items()]
        _emit(args.out, "\n".join(lines) + "\n")
    else:
        _emit(args.out, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_verify(args) -> int:
    numbers = None
    if args.only:
        numbers = [int(tok) for tok in args.only.split(",") if tok]
        unknown = set(numbers) - set(verify_mod.CRITERIA)
        if unknown:
            raise ConfigError(f"unknown criteria: {sorted(unknown)}")
    results = verify_mod.run(numbers, seed=args.seed)
    buf, close = _open_out(args.out)
    try:
        for result in results:
            buf.write(result.line() + "\n")
    finally:
        if close:
            buf.close()
    return 0 if all(r.passed for r in results) else 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="fermisect", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, mu_l_default="1.0"):
        p.add_argument("--mu-l", default=mu_l_default,
                       help="interval half-length over Compton wavelength (comma list)")
        p.add_argument("--k-max", type=int, default=64, help="largest mode number")
        p.add_argument("--truncation", type=int, default=None,
                       help="symmetric cutoff; default: doubling convergence probe")
        p.add_argument("--time", type=float, default=0.0, help="evaluation time")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=None, help="accepted for reproducibility")

    p = sub.add_parser("spectrum", help="occupation spectrum per mu*L value")
    add_common(p, mu_l_default="0.1,1,10")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("correlation", help="left/right filling-number correlation matrix")
    add_common(p)
    p.set_defaults(func=_cmd_correlation)
    p.set_defaults(k_max=16)

    p = sub.add_parser("bogoliubov", help="coefficient matrix dump")
    add_common(p)
    p.add_argument("--region", choices=("left", "right"), default="left")
    p.set_defaults(func=_cmd_bogoliubov)

    p = sub.add_parser("detector", help="registration probability curves")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--grid", default="0:4:50", help="|beta| grid start:stop:count")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_detector)

    p = sub.add_parser("joint-correlation", help="joint-registration correlation surface")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--grid", default="0:3:25", help="detector distance grid start:stop:count")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_joint_correlation)

    p = sub.add_parser("povm", help="two-subsystem joint probability table")
    p.add_argument("--entangled", type=float, default=None, metavar="P")
    p.add_argument("--product", type=float, nargs=2, default=None, metavar=("PA", "PB"))
    p.add_argument("--with-conditionals", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_povm)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--only", default=None, help="comma list of criterion numbers")
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OutOfRange, UndefinedConditional, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QuadratureUnresolved as exc:
        print(f"compute error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
