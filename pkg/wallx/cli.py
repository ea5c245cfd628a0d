"""
Command-line front end: `python -m wallx <command> [flags]`.

Commands: pt-local, dt, series, check-constraint, selftest. Results go to
stdout (or --out); logs go to stderr.
"""

import argparse
import logging
import sys

from wallx import __version__
from wallx.acceptance import CRITERIA, INTEGRALITY, run_acceptance
from wallx.config import build_config
from wallx.errors import ConfigError, NotAvailable, WallxError
from wallx.lattice import AmbientData, P2Class
from wallx.qseries import GENERATORS, series_for
from wallx.serialize import (
    dump_json,
    load_dt_table,
    pair_table_to_json,
    relation_to_json,
    series_to_json,
    write_pair_csv,
)
from wallx.wallcross import MODES, build_table, constraint_relation, pt_local

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


def _common(parser):
    parser.add_argument("--config", help="key = value config file (default: $WALLX_CONFIG)")
    parser.add_argument("--out", help="write the result here instead of stdout")
    parser.add_argument("--dt-table", dest="dt_table", help="JSON array of user DT values")
    parser.add_argument("--prefer-user", dest="prefer_user", action="store_true", default=None,
                        help="consult the user DT table before builtin values and series")
    parser.add_argument("--threads", type=int, help="worker threads for term evaluation")
    parser.add_argument("--m-window", dest="m_window", type=int)
    parser.add_argument("--r-window", dest="r_window", type=int)
    parser.add_argument("--n-pad", dest="n_pad", type=int)
    parser.add_argument("--saturation-steps", dest="saturation_steps", type=int)
    parser.add_argument("--max-candidates", dest="max_candidates", type=int)
    parser.add_argument("--log-level", dest="log_level",
                        help="DEBUG, INFO, WARNING (default) or ERROR")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wallx", description="Exact wall-crossing calculator for stable pairs near P².")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pt-local", help="stable pair invariants P_{n, c[l]} of local P²")
    p.add_argument("--cmax", dest="c_max", type=int)
    p.add_argument("--nmax", dest="n_max", type=int)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--format", dest="fmt", choices=("json", "csv"))
    _common(p)

    p = sub.add_parser("dt", help="look up DT(r, c, m) with its source")
    p.add_argument("--r", dest="r", type=int)
    p.add_argument("--c", dest="c", type=int)
    p.add_argument("--m2", dest="m2", type=int, help="twice the ch₂ coefficient")
    _common(p)

    p = sub.add_parser("series", help="dump a generating series as JSON")
    p.add_argument("--which", choices=GENERATORS)
    p.add_argument("--order", help="truncation order, e.g. 4 or 3/4")
    p.add_argument("--r", dest="theta_r", type=int, help="theta rank")
    p.add_argument("--a", dest="theta_a", type=int, help="theta shift")
    _common(p)

    p = sub.add_parser("check-constraint", help="emit the twist constraint relation")
    p.add_argument("--d-beta0", dest="d_beta0")
    p.add_argument("--l-beta0", dest="l_beta0")
    p.add_argument("--n", dest="n", type=int)
    p.add_argument("--shift", type=int, help="[l]-shift of the target class (default 1)")
    p.add_argument("--n-floor", dest="n_floor", type=int)
    p.add_argument("--mode", choices=MODES)
    _common(p)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--full", action="store_true", default=None,
                   help="also saturate the degree-3 orbifold classes")
    p.add_argument("--criteria", help="comma-separated criterion numbers to run")
    _common(p)
    return parser


def _config_from_args(args):
    overrides = {k: v for k, v in vars(args).items() if k not in ("config", "criteria")}
    return build_config(overrides, args.config)


def _user_entries(cfg):
    return load_dt_table(cfg.dt_table) if cfg.dt_table else ()


def cmd_pt_local(cfg):
    w = cfg.window()
    dt, _ = build_table(_user_entries(cfg), w, cfg.threads, cfg.prefer_user)
    table = pt_local(cfg.c_max, cfg.n_max, dt, cfg.mode, w, cfg.threads)
    if cfg.fmt == "csv":
        if cfg.out:
            with open(cfg.out, "w", newline="", encoding="utf-8") as fh:
                write_pair_csv(table, fh)
        else:
            write_pair_csv(table, sys.stdout)
    else:
        dump_json(pair_table_to_json(table), cfg.out)
    return EXIT_OK


def cmd_dt(cfg):
    dt, _ = build_table(_user_entries(cfg), cfg.window(), cfg.threads, cfg.prefer_user)
    value, source = dt.lookup_with_source(P2Class.from_m2(cfg.r, cfg.c, cfg.m2))
    print(f"{value} ({source})")
    return EXIT_OK


def cmd_series(cfg):
    series = series_for(cfg.which, cfg.order, cfg.theta_r, cfg.theta_a)
    dump_json(series_to_json(series), cfg.out)
    return EXIT_OK


def cmd_check_constraint(cfg):
    if cfg.d_beta0 is None:
        raise ConfigError("check-constraint needs --d-beta0")
    amb = AmbientData(cfg.d_beta0, cfg.l_beta0)
    w = cfg.window()
    dt, _ = build_table(_user_entries(cfg), w, cfg.threads, cfg.prefer_user)
    rel = constraint_relation(cfg.n, amb, dt, cfg.mode, w, cfg.shift, cfg.n_floor, cfg.threads)
    print(rel)
    if cfg.out:
        dump_json(relation_to_json(rel), cfg.out)
    return EXIT_OK


def _parse_criteria(raw):
    if not raw:
        return None
    try:
        chosen = {int(x) for x in raw.split(",") if x.strip()}
    except ValueError:
        raise ConfigError(f"--criteria expects comma-separated numbers, got '{raw}'") from None
    unknown = chosen - set(CRITERIA) - {INTEGRALITY}
    if unknown:
        raise ConfigError(f"unknown criteria {sorted(unknown)}")
    return chosen


def cmd_selftest(cfg, criteria=None):
    results = run_acceptance(cfg, _parse_criteria(criteria))
    for res in results:
        print(res.line())
    failed = [res.number for res in results if not res.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed"
          + (f"; failed: {', '.join(map(str, failed))}" if failed else ""))
    return EXIT_FAILED if failed else EXIT_OK


COMMANDS = {
    "pt-local": cmd_pt_local,
    "dt": cmd_dt,
    "series": cmd_series,
    "check-constraint": cmd_check_constraint,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        logging.basicConfig(level=cfg.log_level.upper(), stream=sys.stderr,
                            format="%(levelname)s %(name)s %(message)s")
        if cfg.command == "selftest":
            return cmd_selftest(cfg, args.criteria)
        return COMMANDS[cfg.command](cfg)
    except NotAvailable as e:
        print(f"error: {e.message} (missing DT key {e.key}); {e.hint}", file=sys.stderr)
        return EXIT_ERROR
    except WallxError as e:
        hint = f" ({e.hint})" if e.hint else ""
        print(f"error: {e.message}{hint}", file=sys.stderr)
        return EXIT_ERROR
