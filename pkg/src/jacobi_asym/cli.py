"""Command-line front end.

    jacobi-asym <command> [--config FILE] [--spec JSON] [--k-max N] [--n-max N]
                [--rel-tol X] [--eps X] [--output PATH] [--format csv|json] [--seed N]

Commands: ``eig`` (enclosures), ``table`` (ratio table), ``verify``
(invariant suite), ``scan`` (smallest-eigenvalue scan and eps bounds).

Exit codes: 0 success, 1 config error, 2 partial analytic failure,
3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import reports
from .analysis import (
    Verdict,
    asymptotic_table,
    bracket_check,
    epsilon_bounds_check,
    smallest_eigenvalue_scan,
    trend_summary,
)
from .reports import exp_or_zero
from .sequence import SequenceSpec, check_condition, spec_from_json, spec_to_json
from .spectral import CertificationError, certify_eigenvalue
from .verification import run_verification, suite_passed

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARTIAL = 2
EXIT_INVARIANT = 3

COMMANDS = ("eig", "table", "verify", "scan")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    spec: SequenceSpec
    command: str
    k_max: int = 5
    n_max: int = 10
    rel_tol: float = 1e-10
    eps: float = 0.1
    output: str | None = None
    format: str = "csv"
    seed: int = 0
    spec_json: dict = field(default_factory=dict)

    def echo(self):
        return {
            "command": self.command,
            "k_max": self.k_max,
            "n_max": self.n_max,
            "rel_tol": self.rel_tol,
            "eps": self.eps,
            "seed": self.seed,
        }


class _Parser(argparse.ArgumentParser):
    """Usage errors are config errors (exit 1); argparse's default 2 means partial failure here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: config error: {message}\n")


def build_parser():
    p = _Parser(prog="jacobi-asym", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--spec", help="inline JSON sequence spec")
    p.add_argument("--k-max", type=int, dest="k_max")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--rel-tol", type=float, dest="rel_tol")
    p.add_argument("--eps", type=float)
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--seed", type=int)
    return p


def load_config(args) -> RunConfig:
    doc = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
    if args.spec:
        try:
            doc["spec"] = json.loads(args.spec)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--spec is not valid JSON: {exc}") from None
    for key in ("k_max", "n_max", "rel_tol", "eps", "output", "format", "seed"):
        val = getattr(args, key)
        if val is not None:
            doc[key] = val
    if "spec" not in doc:
        raise ConfigError("no sequence spec given (use --spec or a config file with a 'spec' field)")
    try:
        spec = spec_from_json(doc["spec"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    try:
        cfg = RunConfig(
            spec=spec,
            command=args.command,
            k_max=int(doc.get("k_max", 5)),
            n_max=int(doc.get("n_max", 10)),
            rel_tol=float(doc.get("rel_tol", 1e-10)),
            eps=float(doc.get("eps", 0.1)),
            output=doc.get("output"),
            format=str(doc.get("format", "csv")),
            seed=int(doc.get("seed", 0)),
            spec_json=spec_to_json(spec),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed config value: {exc}") from None
    if not (0.0 < cfg.rel_tol <= 1e-2):
        raise ConfigError(f"rel_tol must lie in (0, 1e-2], got {cfg.rel_tol!r}")
    if not (0.0 < cfg.eps < 0.125):
        raise ConfigError(f"eps must lie in (0, 1/8), got {cfg.eps!r}")
    if cfg.k_max < 1:
        raise ConfigError(f"k_max must be >= 1, got {cfg.k_max}")
    if cfg.n_max < 1:
        raise ConfigError(f"n_max must be >= 1, got {cfg.n_max}")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
    return cfg


EIG_COLUMNS = [
    "k", "lo", "hi", "log_lo", "log_hi", "value", "log_value", "truncation_size",
    "log_solver_width", "log_truncation_term", "rel_width", "status",
]


def cmd_eig(cfg: RunConfig):
    rows = []
    failed = 0
    for k in range(1, cfg.k_max + 1):
        try:
            e = certify_eigenvalue(cfg.spec, k, cfg.rel_tol)
        except CertificationError as exc:
            failed += 1
            rows.append({"k": k, "status": f"failed: {exc}"})
            continue
        rows.append({
            "k": k,
            "lo": exp_or_zero(e.lo.log_mag) if e.lo.sign > 0 else 0.0,
            "hi": exp_or_zero(e.hi.log_mag),
            "log_lo": e.lo.log_mag if e.lo.sign > 0 else None,
            "log_hi": e.hi.log_mag,
            "value": exp_or_zero(e.section_value.log_mag),
            "log_value": e.section_value.log_mag,
            "truncation_size": e.truncation_size,
            "log_solver_width": e.solver_width.log_mag if e.solver_width.sign else None,
            "log_truncation_term": e.truncation_term.log_mag,
            "rel_width": e.rel_width,
            "status": "certified",
        })
    summary = {"certified": cfg.k_max - failed, "failed": failed}
    return (EXIT_PARTIAL if failed else EXIT_OK), EIG_COLUMNS, rows, summary


TABLE_COLUMNS = [
    "k", "lambda_k", "log_lambda_k", "a_2km1", "log_a_2km1", "ratio", "ratio_lo", "ratio_hi",
    "bracket_lower", "bracket_upper", "bracket_verdict", "bracket_label",
    "enclosure_rel_width", "truncation_size", "status",
]


def cmd_table(cfg: RunConfig):
    cond = check_condition(cfg.spec, (1, 50)) if _has_ratios(cfg.spec) else None
    rows = asymptotic_table(cfg.spec, cfg.k_max, cfg.rel_tol, require_condition=False)
    verdicts = bracket_check(rows, cfg.spec)
    out = []
    for r, v in zip(rows, verdicts):
        d = r.to_json()
        d.update({
            "lambda_k": exp_or_zero(r.log_lambda_k),
            "a_2km1": exp_or_zero(r.log_a_2km1),
            "bracket_verdict": str(v.verdict),
            "bracket_label": v.label,
            "status": "certified" if r.error is None else f"failed: {r.error}",
        })
        out.append(d)
    cond_ok = cond is not None and cond.satisfied_on_window
    summary = trend_summary(rows)
    summary["decay_condition_on_window"] = cond_ok
    if not cond_ok:
        summary["decay_condition_note"] = "a_(n+1)/a_n -> 0 not observed on window 1..50"
    failed = any(r.error for r in rows)
    return (EXIT_PARTIAL if failed or not cond_ok else EXIT_OK), TABLE_COLUMNS, out, summary


def _has_ratios(spec):
    try:
        check_condition(spec, (1, 50))
        return True
    except ValueError:
        return False


SCAN_COLUMNS = [
    "k", "log_smallest", "log_half_a_2km1", "smallest_verdict",
    "eps_upper", "eps_lower", "eps_verdict", "eps_label", "status",
]


def cmd_scan(cfg: RunConfig):
    scan = smallest_eigenvalue_scan(cfg.spec, cfg.k_max, cfg.rel_tol)
    rows = {r.k: {
        "k": r.k,
        "log_smallest": r.log_value,
        "log_half_a_2km1": r.log_threshold,
        "smallest_verdict": str(r.verdict),
    } for r in scan.rows}
    failed = 0
    for k in range(1, cfg.k_max + 1):
        try:
            (e,) = epsilon_bounds_check(cfg.spec, cfg.eps, range(k, k + 1), cfg.rel_tol)
        except (CertificationError, IndexError) as exc:
            failed += 1
            rows[k]["status"] = f"eps check failed: {exc}"
            continue
        rows[k].update({
            "eps_upper": str(e.upper),
            "eps_lower": str(e.lower),
            "eps_verdict": str(e.verdict),
            "eps_label": e.label,
            "status": "ok",
        })
    summary = {**scan.counts, "fraction_true": scan.fraction_true, "eps": cfg.eps,
               "note": "the half bound is guaranteed only for infinitely many k; frequency reported"}
    return (EXIT_PARTIAL if failed else EXIT_OK), SCAN_COLUMNS, [rows[k] for k in sorted(rows)], summary


VERIFY_COLUMNS = ["check", "passed", "informational", "detail"]


def cmd_verify(cfg: RunConfig):
    results = run_verification(cfg.spec, cfg.n_max, cfg.rel_tol, cfg.seed)
    ok = suite_passed(results)
    failing = [r.name for r in results if not r.passed and not r.informational]
    summary = {"passed": ok, "failing_checks": failing}
    return (EXIT_OK if ok else EXIT_INVARIANT), VERIFY_COLUMNS, [r.to_json() for r in results], summary


HANDLERS = {"eig": cmd_eig, "table": cmd_table, "verify": cmd_verify, "scan": cmd_scan}


def render(cfg: RunConfig, columns, rows, summary) -> str:
    if cfg.format == "json":
        return reports.to_json(cfg.command, cfg.spec_json, rows, summary, cfg.echo())
    return reports.to_csv(columns, rows)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except ConfigError as exc:
        print(f"jacobi-asym: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    code, columns, rows, summary = HANDLERS[cfg.command](cfg)
    text = render(cfg, columns, rows, summary)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_INVARIANT:
        failing = ", ".join(summary.get("failing_checks", []))
        print(f"jacobi-asym: invariant violation: {failing}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
