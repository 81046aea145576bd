"""Command-line driver.

Exit codes: 0 pass, 1 indicator mismatch, 2 config error, 3 hypothesis failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, Run, load_run
from .diagnostics.audit import PreconditionViolated, family_theorem_audit
from .diagnostics.family import ChainNotMonotone, check_chain, riesz_gap_curve, riesz_gap_power
from .diagnostics.frechet import FrechetSearchFailed
from .diagnostics.integrability import NoFeasibleDelta, ui_profile
from .diagnostics.tightness import integral_tightness_probe
from .numeric import as_rational, decimal_str
from .rademacher import DEFAULT_SEED, dyadic_probe_sets, example_report
from .report import audit_rows, example_rows, failure_rows, params_digest, render, row

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_HYPOTHESIS = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _say(msg: str, out: str | None) -> None:
    # human output only when the machine report goes to a file
    if out:
        print(msg)


def cmd_rademacher(N: int, L: int, k: int, eps, out: str | None = None, seed: int = DEFAULT_SEED) -> int:
    try:
        if not 1 <= N:
            raise ValueError("N must be >= 1")
        if L < N:
            raise ValueError(f"resolution L={L} must be >= N={N}")
        if not 0 <= k <= L:
            raise ValueError(f"probe level k={k} must lie in [0, L={L}]")
        if L > 20:
            raise ValueError("L must be <= 20")
        eps = as_rational(eps)
        if eps <= 0:
            raise ValueError("epsilon must be positive")
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    rep = example_report(N, L, k, eps, seed)
    digest = params_digest({"N": N, "L": L, "k": k, "epsilon": str(eps), "seed": seed})
    _emit(render("rademacher", digest, example_rows(rep)), out)
    _say(
        f"r_n e_n, N={N} L={L} k={k} eps={eps}: "
        f"integral-tight indicators {'pass' if rep.integral_tight_indicators else 'FAIL'}; "
        f"family covering {rep.family_covering.exact} (predicted {rep.predicted_family_covering}), "
        f"value covering {rep.value_covering.exact} (predicted {rep.predicted_value_covering})",
        out,
    )
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def _load(path: str) -> Run:
    run, _ = load_run(path)
    return run


def _context_rows(run: Run) -> list[dict]:
    """Uniform-integrability profile on the configured grids, and dyadic probes if requested."""
    rows = []
    prof = ui_profile(run.family, run.p, run.M_grid, run.delta_grid)
    rows += [row("tail", f"M={M}", t) for M, t in prof.tail.items()]
    rows += [row("modulus", f"delta={d}", m) for d, m in prof.modulus.items()]
    probe = run.config.probe
    if probe is not None:
        sets, _ = dyadic_probe_sets(run.config.space.dyadic_level, probe.level, probe.seed)
        probes = integral_tightness_probe(run.family, sets, run.epsilon)
        rows.append(row("covering", "probe sets", len(probes)))
        rows.append(row("covering", "max greedy covering of probe integral sets", max(pr.covering.upper for pr in probes)))
    return rows


def cmd_audit(config: str, out: str | None = None) -> int:
    try:
        run = _load(config)
        if not run.delta_grid:
            raise ConfigError("audit needs a non-empty 'delta_grid'")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = out or run.config.output.report
    try:
        audit = family_theorem_audit(
            run.family, run.p, run.epsilon, run.delta_grid, run.chain, run.config.block_budget
        )
    except FrechetSearchFailed as exc:
        print(exc.certificate.describe(), file=sys.stderr)
        _emit(render("audit", run.digest, failure_rows(exc.certificate)), out)
        return EXIT_HYPOTHESIS
    except (NoFeasibleDelta, PreconditionViolated) as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        _emit(render("audit", run.digest, [row("failure", str(exc), passed=False)]), out)
        return EXIT_HYPOTHESIS
    labels = [f"pi{j}({len(p)} blocks)" for j, p in enumerate(audit.partitions)]
    _emit(render("audit", run.digest, audit_rows(audit, labels) + _context_rows(run)), out)
    _say(
        f"T = {audit.constant_T}, delta = {audit.delta}, {len(audit.reports)} reports, "
        f"max I_pi = {decimal_str(max(r.I_pi for r in audit.reports))}, "
        f"bound T*eps = {decimal_str(audit.constant_T * audit.epsilon)}: {'all pass' if audit.all_pass else 'FAIL'}",
        out,
    )
    return EXIT_OK if audit.all_pass else EXIT_MISMATCH


def cmd_riesz_curve(config: str, out: str | None = None) -> int:
    try:
        run = _load(config)
        if not run.chain:
            raise ConfigError("riesz-curve needs a 'chain'")
        check_chain(run.chain)
    except (ConfigError, ChainNotMonotone) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = out or run.config.output.report
    gaps = riesz_gap_curve(run.family, run.chain, run.p)
    rows = [row("summary", "p", run.p)]
    for label, pi, gap in zip(run.chain_labels, run.chain, gaps):
        rows.append(row("curve", "gap vs gap^p", gap, riesz_gap_power(run.family, pi, run.p), partition=label, step=len(pi)))
    _emit(render("riesz-curve", run.digest, rows), out)
    for label, gap in zip(run.chain_labels, gaps):
        _say(f"{label:>12}  {decimal_str(gap)}", out)
    if run.chain[-1].is_atomic() and gaps[-1] != 0:
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpcompact", description="Compactness diagnostics for step-function families.")
    sub = parser.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rademacher", help="reproduce the Rademacher times l1-basis example")
    r.add_argument("--N", type=int, default=8, help="number of members r_1 e_1 .. r_N e_N")
    r.add_argument("--L", type=int, default=8, help="dyadic resolution level")
    r.add_argument("--k", type=int, default=3, help="probe level for dyadic unions")
    r.add_argument("--eps", default="0.9", help="covering radius")
    r.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for random probes when k > 4")
    r.add_argument("--out", help="report path (stdout when omitted)")

    a = sub.add_parser("audit", help="audit the compactness estimate on a configured family")
    a.add_argument("config")
    a.add_argument("--out")

    c = sub.add_parser("riesz-curve", help="conditional-expectation gap along a refinement chain")
    c.add_argument("config")
    c.add_argument("--out")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    if args.command == "rademacher":
        return cmd_rademacher(args.N, args.L, args.k, args.eps, args.out, args.seed)
    if args.command == "audit":
        return cmd_audit(args.config, args.out)
    return cmd_riesz_curve(args.config, args.out)


if __name__ == "__main__":
    sys.exit(main())
