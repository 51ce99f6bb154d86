"""Experiment driver: reproducible runs of every verification surface.

Subcommands
-----------
eulerian    cross-check the Eulerian rows (recursion vs enumeration)
limits      switching-integral ladder per momentum (CSV)
series      resummation report for the perturbative series (JSON, CSV table)
ness        Bogoliubov and steady-state spectral data per momentum (CSV)
verify-all  run the full acceptance suite and summarize

All numbers in the emitted CSV/JSON come from library operations; this layer
only formats.  Identical configs produce byte-identical data files: no
wall-clock enters any payload (a separate meta.json carries the timestamp
when writing to a directory).

Exit codes: 0 success, 1 criterion failure, 2 config/schema error,
3 numerical-infrastructure failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import verify
from .combinatorics import ENUMERATION_CAP, eulerian_row_by_enumeration, eulerian_row_recursive
from .config import ConfigError, RunConfig, default_config, load_config
from .modes import (
    IntegratorError,
    SwitchingProfile,
    sudden_quench_pair,
    switch_integral_limit,
    switch_integrals,
)
from .series import verify_resummation
from .spectral import QuadratureError, adiabatic, ness_classical, pair_report
from .verify import ness_bogoliubov_map

EXIT_OK = 0
EXIT_CRITERION = 1
EXIT_CONFIG = 2
EXIT_NUMERICS = 3


def _fmt(x: float) -> str:
    return f"{x:.17e}"


def _emit_csv(header, rows, out_dir, filename):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit_text(buf.getvalue(), out_dir, filename)


def _emit_json(payload, out_dir, filename):
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    _emit_text(text, out_dir, filename)


def _emit_text(text, out_dir, filename):
    if out_dir is None:
        sys.stdout.write(text)
    else:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / filename).write_text(text, encoding="utf-8")


def _write_meta(args, out_dir):
    if out_dir is None:
        return
    meta = {
        "command": args.command,
        "config": str(args.config) if args.config else "defaults",
        "refine": bool(args.refine),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    _emit_json(meta, out_dir, "meta.json")


def _map_ordered(fn, items, threads: int):
    """Apply fn to independent work items, optionally on a thread pool;
    results always come back in input order."""
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def cmd_eulerian(args) -> int:
    if args.n_max < 1 or args.n_max > ENUMERATION_CAP:
        sys.stderr.write(
            f"error: cap exceeded: enumeration cross-check requires 1 <= n_max <= {ENUMERATION_CAP}\n"
        )
        return EXIT_CONFIG
    rows = []
    all_match = True
    for n in range(1, args.n_max + 1):
        rec = eulerian_row_recursive(n)
        enum = eulerian_row_by_enumeration(n)
        match = rec.coefficients == enum.coefficients
        all_match = all_match and match
        rows.append(
            [
                str(n),
                " ".join(map(str, rec.coefficients)),
                " ".join(map(str, enum.coefficients)),
                str(rec.row_sum),
                "MATCH" if match else "MISMATCH",
            ]
        )
    out_dir = Path(args.out) if args.out else None
    _emit_csv(["n", "recursive", "enumeration", "row_sum", "status"], rows, out_dir, "eulerian.csv")
    _write_meta(args, out_dir)
    return EXIT_OK if all_match else EXIT_CRITERION


def cmd_limits(args) -> int:
    config = _load(args)
    rows = []
    failures = 0
    items = [(k, mu) for k in config.k_values for mu in config.mu_ladder]

    def work(item):
        k, mu = item
        target = switch_integral_limit(k, config.params)
        try:
            prof = SwitchingProfile(mu)
            i_sq, i_abs = switch_integrals(k, prof, config.params)
            return [
                _fmt(k), _fmt(mu),
                _fmt(i_sq.real), _fmt(i_sq.imag), _fmt(i_abs),
                _fmt(target), _fmt(abs(i_abs - target)), _fmt(abs(i_sq)),
                "ok",
            ]
        except IntegratorError as exc:
            return [_fmt(k), _fmt(mu), "", "", "", _fmt(target), "", "", f"error: {exc}"]

    for row in _map_ordered(work, items, args.threads):
        if row[-1] != "ok":
            failures += 1
        rows.append(row)
    out_dir = Path(args.out) if args.out else None
    _emit_csv(
        ["k", "mu", "re_I_sq", "im_I_sq", "I_abs", "target", "gap_abs", "gap_sq", "status"],
        rows, out_dir, "limits.csv",
    )
    _write_meta(args, out_dir)
    return EXIT_NUMERICS if failures else EXIT_OK


def cmd_series(args) -> int:
    config = _load(args)
    f, g = config.packet_pair
    report = verify_resummation(
        config.params, f, g,
        N=max(config.order_ladder),
        tol=config.tolerances["series_final_rel"],
        quad=config.quadrature,
        dual_path_tol=config.tolerances["series_dual_path_rel"],
    )
    payload = report.to_dict()
    payload["pairing_check"] = pair_report(adiabatic(config.params), f, g, config.quadrature)
    out_dir = Path(args.out) if args.out else None
    _emit_json(payload, out_dir, "series.json")
    if out_dir is not None:
        rows = [
            [
                str(r["order"]),
                _fmt(r["term_re"]), _fmt(r["term_im"]),
                _fmt(r["cumulative_re"]), _fmt(r["cumulative_im"]),
                _fmt(r["gap_to_closed_form"]), _fmt(r["dual_path_rel_dev"]),
            ]
            for r in payload["orders"]
        ]
        _emit_csv(
            ["order", "term_re", "term_im", "cumulative_re", "cumulative_im",
             "gap_to_closed_form", "dual_path_rel_dev"],
            rows, out_dir, "series.csv",
        )
    _write_meta(args, out_dir)
    if report.verdict == "fail":
        return EXIT_CRITERION
    return EXIT_OK  # "pass" and "radius-violated" both succeed; verdict is in the payload


def cmd_ness(args) -> int:
    config = _load(args)
    f, g = config.packet_pair
    k_nodes, _ = config.quadrature.radial_rule(f, g)
    params = config.params
    mu = config.profile.mu
    bog_map = ness_bogoliubov_map(params, mu=mu)
    state = ness_classical(params, bog_map)

    def work(k):
        k = float(k)
        try:
            b = bog_map(k)
            oracle = sudden_quench_pair(k, params)
            cp = float(state.c_plus(k))
            cm = float(state.c_minus(k))
            ccr = float(state.ccr_residual(k))
            sudden_gap = max(abs(b.a_plus - oracle.a_plus), abs(b.a_minus - oracle.a_minus))
            return [
                _fmt(k),
                _fmt(b.a_plus.real), _fmt(b.a_plus.imag),
                _fmt(b.a_minus.real), _fmt(b.a_minus.imag),
                _fmt(b.normalization_residual),
                _fmt(cp), _fmt(cm), _fmt(ccr),
                _fmt(sudden_gap),
                "ok",
            ]
        except IntegratorError as exc:
            return [_fmt(k)] + [""] * 9 + [f"error: {exc}"]

    rows = _map_ordered(work, list(k_nodes), args.threads)
    failures = sum(1 for r in rows if r[-1] != "ok")
    out_dir = Path(args.out) if args.out else None
    _emit_csv(
        ["k", "re_A_plus", "im_A_plus", "re_A_minus", "im_A_minus",
         "norm_residual", "c_plus", "c_minus", "ccr_residual", "sudden_gap", "status"],
        rows, out_dir, "ness.csv",
    )
    _write_meta(args, out_dir)
    return EXIT_NUMERICS if failures else EXIT_OK


def cmd_verify_all(args) -> int:
    config = _load(args)
    results = verify.run_all(config)
    for r in results:
        print(r.summary_line())
    payload = {
        "criteria": [r.to_dict() for r in results],
        "all_passed": all(r.status != "fail" for r in results),
    }
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        _emit_json(payload, out_dir, "verify_all.json")
    _write_meta(args, out_dir)
    return EXIT_OK if payload["all_passed"] else EXIT_CRITERION


def _load(args) -> RunConfig:
    config = load_config(args.config) if args.config else default_config()
    if args.refine:
        config = config.refined()
    return config


def _add_common(sub):
    sub.add_argument("--config", type=Path, default=None, help="JSON run configuration")
    sub.add_argument("--out", type=Path, default=None, help="output directory (stdout if omitted)")
    sub.add_argument("--refine", action="store_true",
                     help="double quadrature node counts and densify ladders")
    sub.add_argument("--threads", type=int, default=1,
                     help="thread pool size for independent work items")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermalquench",
        description="Verification runs for thermal states under a switched mass shift.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("eulerian", help="cross-check Eulerian rows")
    p.add_argument("--n-max", type=int, default=8, help=f"largest order (<= {ENUMERATION_CAP})")
    _add_common(p)
    p.set_defaults(fn=cmd_eulerian)

    p = subs.add_parser("limits", help="switching-integral ladder (CSV)")
    _add_common(p)
    p.set_defaults(fn=cmd_limits)

    p = subs.add_parser("series", help="series resummation report (JSON)")
    _add_common(p)
    p.set_defaults(fn=cmd_series)

    p = subs.add_parser("ness", help="Bogoliubov and steady-state data (CSV)")
    _add_common(p)
    p.set_defaults(fn=cmd_ness)

    p = subs.add_parser("verify-all", help="run the acceptance suite")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except (IntegratorError, QuadratureError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICS


if __name__ == "__main__":
    sys.exit(main())
