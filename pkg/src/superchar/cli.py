"""Command-line entry point: ``superchar {expand,verify,table,modular}``.

Exit codes are 0 when everything passes, 1 on a verification failure and 2 on a
usage error. Every flag can also be given in a ``key=value`` config file passed
with ``--config``; flags on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import xml.etree.ElementTree as ET
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import (HEARTS, LabelError, ModuleLabel, Sector, character, conformal_data,
                         omega_domain)
from .checks import DEFAULT_SEED, READINGS, SUITES, coprime_levels, run_suite
from .exact import rat, rat_str
from .numeric import EvalPoint, parse_complex, s_check, t_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    qmax: Fraction = Fraction(8)
    window: int = 6
    format: str = "json"
    jobs: int = 1
    seed: int = DEFAULT_SEED
    suites: list[str] = field(default_factory=lambda: list(SUITES))

    def __post_init__(self):
        if self.qmax <= 0:
            raise UsageError("qmax > 0 violated")
        if self.window < 1:
            raise UsageError("window >= 1 violated")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.jobs < 1:
            raise UsageError("jobs >= 1 violated")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)} or all")


def parse_suites(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names or "all" in names:
        return list(SUITES)
    seen = []
    for n in names:
        if n not in seen:
            seen.append(n)
    return seen


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (x.strip() for x in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- expand ---------------------------------------------------------------------------


def _label(args) -> ModuleLabel:
    if args.algebra == "n2":
        return ModuleLabel.n2(args.M, args.m, args.m2, args.k1, args.k2)
    return ModuleLabel.n4(args.M, args.m, args.m2, args.k1, args.k2, args.heart)


def cmd_expand(args) -> tuple[int, str]:
    cfg = CliConfig(qmax=rat(args.qmax), window=args.window, format=args.format)
    label = _label(args)
    sector = Sector.parse(args.sector)
    series = character(label, sector, cfg.qmax, window=(-cfg.window, cfg.window))
    q, z, c = series.leading()
    if cfg.format == "csv":
        rows = [[rat_str(a), rat_str(b), rat_str(v.re), rat_str(v.im)] for a, b, v in series.terms()]
        return EXIT_OK, _csv(rows, ["q", "zeta", "re", "im"])
    body = {
        "label": label.as_dict(),
        "sector": sector.value,
        "leading": {"q": rat_str(q), "zeta": rat_str(z), "re": rat_str(c.re), "im": rat_str(c.im)},
        "series": series.to_json(),
    }
    return EXIT_OK, _dump_json(body)


# -- verify ---------------------------------------------------------------------------


def _suite_job(job):
    name, qmax, reading, seed = job
    return run_suite(name, qmax, reading, seed)


def junit_xml(summaries: list[dict]) -> str:
    root = ET.Element("testsuite", name="superchar", tests=str(len(summaries)),
                      failures=str(sum(not s["pass"] for s in summaries)))
    for s in summaries:
        case = ET.SubElement(root, "testcase", classname="superchar.verify", name=s["suite"])
        if not s["pass"]:
            fail = ET.SubElement(case, "failure", message=f"{s['failed']} of {s['cases']} cases failed")
            fail.text = _dump_json(s["counterexamples"])
    return ET.tostring(root, encoding="unicode")


def cmd_verify(args) -> tuple[int, str]:
    suites = parse_suites(args.suite)
    qmax = None if args.qmax is None else rat(args.qmax)
    cfg = CliConfig(qmax=qmax if qmax is not None else Fraction(8), format=args.format,
                    jobs=args.jobs, seed=args.seed, suites=suites)
    if args.reading not in READINGS:
        raise UsageError(f"unknown reading {args.reading!r}")
    jobs = [(name, qmax, args.reading, cfg.seed) for name in cfg.suites]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            summaries = list(pool.map(_suite_job, jobs))
    else:
        summaries = [_suite_job(j) for j in jobs]
    ok = all(s["pass"] for s in summaries)
    if args.junit:
        with open(args.junit, "w", encoding="utf-8") as fh:
            fh.write(junit_xml(summaries))
    if cfg.format == "csv":
        rows = [[s["suite"], s["reading"], "pass" if s["pass"] else "fail", s["cases"], s["failed"]]
                for s in summaries]
        text = _csv(rows, ["suite", "reading", "result", "cases", "failed"])
    else:
        text = _dump_json({"pass": ok, "seed": cfg.seed, "suites": summaries})
    return (EXIT_OK if ok else EXIT_FAIL), text


# -- table ----------------------------------------------------------------------------


TABLE_HEADER = ["M", "m", "m2", "k1", "k2", "heart", "sector", "c", "h", "s", "leading_q", "leading_zeta"]


def conformal_rows(max_M: int, max_m: int) -> list[list[str]]:
    """(c, h, s) from the lemmas at the label's m2, plus the leading monomial data at m2 + 1."""
    rows = []
    for M, m in coprime_levels(max_M, max_m, min_M=1):
        for heart in HEARTS:
            for k1, k2 in omega_domain(M, heart):
                for m2 in range(m):
                    label = ModuleLabel.n4(M, m, m2, k1, k2, heart)
                    for tw in (False, True):
                        d = conformal_data(label, tw)
                        lead = conformal_data(label, tw, m2_shift=1)
                        rows.append([str(M), str(m), str(m2), str(k1), str(k2), heart,
                                     "tw" if tw else "untw", rat_str(d.c), rat_str(d.h), rat_str(d.s),
                                     rat_str(lead.leading_q), rat_str(lead.s)])
    return rows


def cmd_table(args) -> tuple[int, str]:
    if args.Mmax < 1 or args.mmax < 1:
        raise UsageError("table bounds must be >= 1")
    rows = conformal_rows(args.Mmax, args.mmax)
    if args.format == "json":
        return EXIT_OK, _dump_json([dict(zip(TABLE_HEADER, r)) for r in rows])
    return EXIT_OK, _csv(rows, TABLE_HEADER)


# -- modular --------------------------------------------------------------------------


def cmd_modular(args) -> tuple[int, str]:
    if args.m != 1 or args.m2 != 0:
        raise UsageError(f"S/T laws are stated only for (m, m2) = (1, 0), got ({args.m}, {args.m2})")
    label = ModuleLabel.n4(args.M, 1, 0, args.k1, args.k2, args.heart)
    sector = Sector.parse(args.sector)
    try:
        point = EvalPoint(parse_complex(args.tau), parse_complex(args.z), 0.0, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.check == "S":
        rep = s_check(label, sector, point, args.variant)
    else:
        rep = t_check(label, sector, point)
    return (EXIT_OK if rep.passed else EXIT_FAIL), _dump_json(rep.to_dict())


# -- parser ---------------------------------------------------------------------------


def _label_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--M", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--m2", type=int, default=0)
    p.add_argument("--k1", type=int, default=0)
    p.add_argument("--k2", type=int, default=0)
    p.add_argument("--heart", choices=HEARTS, default="I")
    p.add_argument("--sector", default="plus")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superchar", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file mirroring the flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand one character as an exact q-series")
    p.add_argument("--algebra", choices=("n4", "n2"), default="n4")
    _label_flags(p)
    p.add_argument("--qmax", default="8")
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", help="comma-separated names: " + ", ".join(SUITES) + " or all")
    p.add_argument("--qmax", default=None, help="override each suite's own q-order")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--reading", choices=READINGS, default="printed",
                   help="use the printed or the corrected form where a suite has both")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--junit", help="also write a JUnit XML report to this path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="conformal data (c, h, s) as exact rationals")
    p.add_argument("--Mmax", type=int, default=6)
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("modular", help="numeric S or T check at one point")
    p.add_argument("--check", choices=("S", "T"), required=True)
    p.add_argument("--variant", choices=("printed", "derived"), default="printed")
    _label_flags(p)
    p.add_argument("--tau", default="0.1+1.3i")
    p.add_argument("--z", default="0.23+0.11i")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_modular)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    for action in parser._subparsers._group_actions:
        for name, sp in action.choices.items():
            dests = {a.dest for a in sp._actions}
            sp.set_defaults(**{k: v for k, v in values.items() if k in dests})
    everything = {a.dest for a in parser._actions}
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            everything |= {a.dest for a in sp._actions}
    unknown = sorted(set(values) - everything)
    if unknown:
        raise UsageError(f"unknown config key {unknown[0]!r}")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        code, text = args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, LabelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
