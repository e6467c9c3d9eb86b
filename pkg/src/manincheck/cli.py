"""Command-line batch interface: select suites, run them, write one JSON report."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence

from .ideal import DEFAULT_GUARD
from .scalar import FieldError, PrimeField, field_from_tag
from .suites import report
from .suites.base import Options
from .suites.catalogue import CATALOGUE, GROUPS, UnknownSuite, resolve
from .suites.runner import run_many

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_GUARD = 0, 1, 2, 3
CLI_MODES = ("generic", "one-parameter", "classical", "yangian")
DEFAULT_OUT = "manincheck-report.json"
MIN_PRIME = 2 ** 31

# keys accepted in a --config file, mapped to their parser types
CONFIG_KEYS = {
    "suite": str, "n": int, "m": int, "s": int, "degree": int, "mode": str, "prime": str, "seeds": str,
    "out": str, "workers": int, "guard_words": int, "capelli_r": int, "fusion_k": int, "trials": int,
    "timing": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
}


class ConfigError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="manincheck",
                                description="Check multiparameter Manin-matrix identities by ideal membership.")
    p.add_argument("command", nargs="?", choices=("run", "list"), default="run",
                   help="run suites (default) or list the catalogue")
    p.add_argument("--suite", action="append", help="catalogue id, group name or 'all'; repeatable or comma separated")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="inner dimension (default n)")
    p.add_argument("--s", type=int, help="outer dimension for products (default n)")
    p.add_argument("--degree", type=int, help="series degree cap")
    p.add_argument("--mode", choices=CLI_MODES)
    p.add_argument("--prime", help="field: a prime, or Q for the rationals (default 2^61-1)")
    p.add_argument("--seeds", help="a count N (seeds 1..N) or a comma separated list")
    p.add_argument("--out", help=f"JSON report path (default {DEFAULT_OUT})")
    p.add_argument("--workers", type=int, help="process pool size")
    p.add_argument("--guard-words", dest="guard_words", type=int, help="abort when a weight component exceeds this")
    p.add_argument("--capelli-r", dest="capelli_r", type=int, help="largest Capelli minor size")
    p.add_argument("--fusion-k", dest="fusion_k", type=int, help="largest fusion order")
    p.add_argument("--trials", type=int, help="random matrices per inverse-identity oracle")
    p.add_argument("--config", help="key=value file with the same fields; flags take precedence")
    p.add_argument("--timing", action="store_true", default=None, help="record wall-clock millis in the report")
    p.add_argument("-v", "--verbose", action="store_true", help="log resampling and progress to stderr")
    return p


def read_config(path: str) -> Dict[str, object]:
    out: Dict[str, object] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (t.strip() for t in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                parsed = CONFIG_KEYS[key](value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
            if key == "suite":
                out.setdefault("suite", []).append(parsed)
            else:
                out[key] = parsed
    return out


def parse_seeds(text: str) -> List[int]:
    text = text.strip()
    try:
        if "," not in text:
            count = int(text)
            if count < 1:
                raise ConfigError("--seeds needs at least one seed")
            return list(range(1, count + 1))
        seeds = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"bad --seeds {text!r}") from None
    if len(set(seeds)) != len(seeds):
        raise ConfigError("duplicate seeds")
    return seeds


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge flags over the config file over defaults, validating everything."""
    cfg = read_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    names = [t.strip() for item in cfg.get("suite", ["all"]) for t in str(item).split(",") if t.strip()]
    suites = resolve(names)
    n = cfg.get("n", 2)
    try:
        opts = Options(n, cfg.get("m"), cfg.get("s"), degree=cfg.get("degree"),
                       capelli_r=cfg.get("capelli_r", 2), fusion_k=cfg.get("fusion_k", 3),
                       oracle_trials=cfg.get("trials", 20), guard=cfg.get("guard_words", DEFAULT_GUARD),
                       mode=cfg.get("mode", "generic"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if opts.mode not in CLI_MODES:
        raise ConfigError(f"unknown mode {opts.mode!r}")
    if opts.degree is not None and opts.degree < 1:
        raise ConfigError("--degree must be positive")
    if opts.guard < 1:
        raise ConfigError("--guard-words must be positive")
    prime = cfg.get("prime")
    try:
        field = field_from_tag(prime)
    except (FieldError, ValueError) as exc:
        raise ConfigError(f"bad --prime: {exc}") from None
    if isinstance(field, PrimeField) and field.p <= MIN_PRIME:
        raise ConfigError(f"--prime must exceed 2^31 so random parameters rarely vanish, got {field.p}")
    workers = cfg.get("workers", 1)
    if workers < 1:
        raise ConfigError("--workers must be positive")
    return {"suites": suites, "opts": opts, "field": field, "prime": prime,
            "seeds": parse_seeds(str(cfg.get("seeds", "5"))), "out": cfg.get("out", DEFAULT_OUT),
            "workers": workers, "timing": bool(cfg.get("timing", False))}


def catalogue_listing() -> str:
    lines = ["known suites:"]
    lines += [f"  {sid:<18} {d.group}" for sid, d in CATALOGUE.items()]
    lines.append("groups: all, " + ", ".join(GROUPS))
    return "\n".join(lines)


def summary_table(suites: Sequence[dict]) -> str:
    rows = [f"{'suite':<18} {'mode':<14} {'cases':>9}  {'controls':<28} verdict"]
    for s in suites:
        total = sum(len(b["cases"]) for b in s["seeds"])
        good = sum(1 for b in s["seeds"] for c in b["cases"] if c["verdict"] in ("member", "equal", "agree"))
        ctl = ", ".join(f"{c['mutation']}:{c['caught_seeds']}/{c['applicable_seeds']}" if c["applicable_seeds"]
                        else f"{c['mutation']}:n/a" for c in s["controls"]) or "-"
        verdict = "PASS" if s["passed"] else ("GUARD" if s["guard_exceeded"] else "FAIL")
        rows.append(f"{s['id']:<18} {s['mode']:<14} {good:>4}/{total:<4}  {ctl:<28} {verdict}")
    return "\n".join(rows)


def run(cfg: dict) -> int:
    opts: Options = cfg["opts"]
    results = run_many(cfg["suites"], opts, opts.mode, cfg["field"], cfg["seeds"], cfg["workers"], cfg["timing"])
    config_block = {"suites": cfg["suites"], "n": opts.n, "m": opts.m, "s": opts.s, "degree": opts.degree,
                    "mode": opts.mode, "prime": report.field_tag(cfg["field"]), "seeds": cfg["seeds"],
                    "guard_words": opts.guard, "capelli_r": opts.capelli_r, "fusion_k": opts.fusion_k,
                    "oracle_trials": opts.oracle_trials}
    doc = report.document(config_block, results)
    report.write(doc, cfg["out"])
    print(summary_table(results))
    print(f"report: {cfg['out']}")
    if doc["guard_exceeded"]:
        return EXIT_GUARD
    return EXIT_OK if doc["passed"] else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(message)s")
    if args.command == "list":
        print(catalogue_listing())
        return EXIT_OK
    try:
        cfg = resolve_config(args)
    except UnknownSuite as exc:
        print(f"unknown suite {exc.args[0]!r}", file=sys.stderr)
        print(catalogue_listing(), file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, OSError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run(cfg)
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
