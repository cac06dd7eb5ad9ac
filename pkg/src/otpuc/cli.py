"""Command-line front end.

Exit codes: 0 pass, 1 a check failed, 2 bad input, 3 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .diagnostics import (
    baxter_report,
    identity_suite,
    limit_checks,
    rakhmanov_sequences,
    strong_szego_sums,
    szego_function_coefficients,
    szego_integral,
    szego_partial_products,
)
from .errors import DegeneracyError, InputError, OtpError, SzegoConditionError
from .favard import PhasePolicy, load_tuples, recovery_report
from .measures import DEFAULT_NODES, build_measure, moments
from .opuc import verblunsky_from_moments
from .otp import otp_coefficients
from .report import Report, dumps, to_csv, to_svg
from .schur import geronimus_otp, schur_parameters_from_moments

log = logging.getLogger("otpuc")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3
COMMANDS = ("analyze", "verify", "schur", "diagnostics", "synthesize")
MIN_CLI_NODES = 64


@dataclass(frozen=True)
class CliConfig:
    command: str
    measure: Path | None
    tuples: Path | None
    order: int
    tol: float
    out: Path | None
    fmt: str
    phase: PhasePolicy
    nodes: int
    plot: str | None = None
    strict: bool = True

    def __post_init__(self):
        if self.order < 1:
            raise InputError("order must be ≥ 1")
        if not self.tol > 0:
            raise InputError("tolerance must be > 0")
        n = self.nodes
        if n < MIN_CLI_NODES or n & (n - 1):
            raise InputError(f"nodes must be a power of two >= {MIN_CLI_NODES}, got {n}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", type=Path, help="measure JSON file or a directory of them")
    common.add_argument("--tuples", type=Path, help="tuple JSON file (synthesize)")
    common.add_argument("--order", type=int, default=8)
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--nodes", type=int, default=None, help="quadrature nodes (default $OTP_NODES or 4096)")
    common.add_argument("--phase", choices=("zero", "random"), default="zero")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=Path)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "svg"), default="json")
    common.add_argument("--plot", help="sequence to draw with --format svg (default: first)")
    common.add_argument("--non-strict", dest="strict", action="store_false",
                        help="accept tuples with equality in the admissibility inequality")
    common.add_argument("-v", "--verbose", action="store_true")
    p = argparse.ArgumentParser(prog="otpuc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "analyze": "moments, Verblunsky coefficients, κ and the OTP coefficient tables",
        "verify": "OPUC/OTP identity suite; exit 0 iff every residual is within --tol",
        "schur": "Schur parameters against the moment-side Verblunsky coefficients",
        "diagnostics": "Szegő, Baxter, Rakhmanov and strong Szegő quantities",
        "synthesize": "tuples -> measure, with the recovery report",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return p


def _config(ns) -> CliConfig:
    nodes = ns.nodes
    if nodes is None:
        env = os.environ.get("OTP_NODES")
        try:
            nodes = int(env) if env else DEFAULT_NODES
        except ValueError as exc:
            raise InputError(f"OTP_NODES must be an integer, got {env!r}") from exc
    return CliConfig(
        command=ns.command,
        measure=ns.measure,
        tuples=ns.tuples,
        order=ns.order,
        tol=ns.tol,
        out=ns.out,
        fmt=ns.fmt,
        phase=PhasePolicy(ns.phase, ns.seed),
        nodes=nodes,
        plot=ns.plot,
        strict=ns.strict,
    )


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def _load_measure(path: Path, nodes: int):
    try:
        spec = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read measure file {path}: {exc}") from exc
    if not isinstance(spec, dict):
        raise InputError(f"{path}: measure description must be a JSON object")
    if isinstance(spec.get("measure"), dict):  # a synthesize report
        spec = spec["measure"]
    spec = dict(spec)
    if "quadrature" not in spec:
        spec["quadrature"] = {"nodes": nodes}
    return build_measure(spec)


def cmd_analyze(m, cfg: CliConfig) -> Report:
    N = cfg.order
    c = moments(m, 2 * N + 2)
    lad = verblunsky_from_moments(c, 2 * N)
    k = otp_coefficients(c, N)
    r = Report("analyze", measure=m.to_spec(), order=N)
    r.add_sequence("moment", np.arange(c.order + 1), c.values)
    r.add_sequence("alpha", np.arange(lad.N), lad.alphas)
    r.add_sequence("kappa", np.arange(lad.N + 1), lad.kappas)
    for name in ("a", "b", "beta", "iota", "jmath", "varsigma", "zeta"):
        r.add_sequence(name, np.arange(N + 1), getattr(k, name))
    r.scalars["toeplitz_min_eigenvalue"] = c.min_eigenvalue(2 * N)
    return r


def cmd_verify(m, cfg: CliConfig) -> Report:
    r = identity_suite(m, cfg.order, cfg.tol)
    r.measure = m.to_spec()
    return r


def cmd_schur(m, cfg: CliConfig) -> Report:
    N = cfg.order
    M = 2 * N
    c = moments(m, M + 10)
    lad = verblunsky_from_moments(c, M)
    sr = schur_parameters_from_moments(c, M)
    k = otp_coefficients(c, N)
    ger = np.array([g for n in range(1, N + 1) for g in geronimus_otp(k, n)])
    r = Report("schur", measure=m.to_spec(), order=N)
    r.add_sequence("gamma", np.arange(M), sr.gammas)
    r.add_sequence("alpha", np.arange(M), lad.alphas)
    r.add_sequence("gamma_otp", np.arange(M), ger)
    r.check("gamma_vs_alpha", np.max(np.abs(sr.gammas - lad.alphas)), cfg.tol)
    r.check("gamma_vs_otp_form", np.max(np.abs(sr.gammas - ger)), cfg.tol)
    return r


def cmd_diagnostics(m, cfg: CliConfig) -> Report:
    N = cfg.order
    c = moments(m, 2 * N + 2)
    lad = verblunsky_from_moments(c, 2 * N + 2)
    k = otp_coefficients(c, N + 1)
    S = szego_integral(m)
    try:
        L = szego_function_coefficients(m, N)
    except SzegoConditionError:
        L = None
    r = Report("diagnostics", measure=m.to_spec(), order=N)
    r.scalars["szego_integral"] = S
    if L is None:
        r.verdicts["szego_condition"] = "violated"
    r.merge(szego_partial_products(k, N, S, lad.kappas), "szego.")
    r.merge(baxter_report(c, k, N, lad.alphas), "baxter.")
    r.merge(rakhmanov_sequences(k, N, lad.alphas), "rakhmanov.")
    r.merge(strong_szego_sums(k, L, N, lad.alphas), "strong_szego.")
    r.merge(limit_checks(k, m, N, S), "limits.")
    return r


def cmd_synthesize(cfg: CliConfig) -> Report:
    if cfg.tuples is None:
        raise InputError("synthesize needs --tuples")
    t = load_tuples(cfg.tuples)
    if cfg.order > t.N:
        raise InputError(f"order {cfg.order} exceeds the {t.N} tuple rows supplied")
    return recovery_report(t, cfg.phase, cfg.order, cfg.tol, cfg.strict)


HANDLERS = {"analyze": cmd_analyze, "verify": cmd_verify, "schur": cmd_schur, "diagnostics": cmd_diagnostics}


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def _render(r: Report, cfg: CliConfig) -> str:
    if cfg.fmt == "json":
        return dumps(r)
    if cfg.fmt == "csv":
        return to_csv(r)
    if not r.sequences:
        raise InputError("report has no sequences to plot")
    name = cfg.plot or next(iter(r.sequences))
    if name not in r.sequences:
        raise InputError(f"no sequence {name!r}; available: {', '.join(r.sequences)}")
    idx, vals = r.sequences[name]
    return to_svg(name, idx, vals)


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def _summary(label: str, r: Report) -> None:
    status = "PASS" if r.passed else "FAIL"
    print(f"{label}: {status} ({sum(c.passed for c in r.checks)}/{len(r.checks)} checks)", file=sys.stderr)
    for c in r.checks:
        if not c.passed:
            print("  " + c.line(), file=sys.stderr)


def _run_one(path: Path, cfg: CliConfig) -> Report:
    m = _load_measure(path, cfg.nodes)
    return HANDLERS[cfg.command](m, cfg)


def run(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = _config(ns)
        if cfg.command == "synthesize":
            r = cmd_synthesize(cfg)
            _emit(_render(r, cfg), cfg.out)
            _summary("synthesize", r)
            return EXIT_OK if r.passed else EXIT_FAIL
        if cfg.measure is None:
            raise InputError(f"{cfg.command} needs --measure")
        if cfg.measure.is_dir():
            return _run_directory(cfg)
        r = _run_one(cfg.measure, cfg)
        _emit(_render(r, cfg), cfg.out)
        _summary(str(cfg.measure), r)
        return EXIT_OK if r.passed else EXIT_FAIL
    except DegeneracyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OtpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def _run_directory(cfg: CliConfig) -> int:
    """One report per ``*.json`` file; with --out, written as <out>/<stem>.<format>."""
    files = sorted(cfg.measure.glob("*.json"))
    if not files:
        raise InputError(f"no *.json measure files in {cfg.measure}")
    code = EXIT_OK
    combined = {}
    for f in files:
        try:
            r = _run_one(f, cfg)
        except DegeneracyError as exc:
            print(f"{f}: error: {exc}", file=sys.stderr)
            code = max(code, EXIT_DEGENERATE)
            continue
        except InputError as exc:
            print(f"{f}: error: {exc}", file=sys.stderr)
            code = max(code, EXIT_INPUT)
            continue
        _summary(str(f), r)
        if not r.passed:
            code = max(code, EXIT_FAIL)
        if cfg.out is not None:
            write_atomic(cfg.out / f"{f.stem}.{cfg.fmt}", _render(r, cfg))
        else:
            combined[f.stem] = r.to_dict()
    if cfg.out is None:
        if cfg.fmt != "json":
            raise InputError("directory input without --out supports --format json only")
        sys.stdout.write(dumps(combined))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
