"""``verify``: run a verification suite and report per-claim results.

Exit codes: 0 all claims pass, 1 some claim fails (or a golden file differs),
2 configuration error, 3 no failures but at least one inconclusive claim.
"""

from __future__ import annotations

import argparse
import difflib
import os
import sys
from pathlib import Path

import yaml

from .modules import DegreeWindow, dumps
from .report import SUITES, ConfigError, SuiteConfig, exit_code, report_document
from .suites import effective_config, run_suite

CORPUS_ENV = "ROOTSTACK_CORPUS"
CONFIG_KEYS = {"suite", "l", "divisor", "window", "depth", "samples", "index", "citations", "output"}
OUTPUT_KEYS = {"json", "quiet"}


def corpus_dir() -> Path:
    env = os.environ.get(CORPUS_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "corpus"


def _int_list(value, key: str) -> tuple[int, ...]:
    items = value if isinstance(value, list) else [value]
    try:
        return tuple(int(v) for v in items)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer or a list of integers") from None


def _window(value) -> DegreeWindow:
    try:
        if isinstance(value, str):
            return DegreeWindow.parse(value)
        if isinstance(value, list) and len(value) == 2:
            return DegreeWindow(int(value[0]), int(value[1]))
        if isinstance(value, dict) and set(value) == {"lo", "hi"}:
            return DegreeWindow(int(value["lo"]), int(value["hi"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"cannot read window {value!r}; use LO..HI")


def load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh) or {}
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path} is not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path} must hold a mapping")
    unknown = set(doc) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out = doc.get("output") or {}
    if not isinstance(out, dict) or set(out) - OUTPUT_KEYS:
        raise ConfigError("output must be a mapping with keys json and quiet")
    return doc


def build_config(args: argparse.Namespace) -> SuiteConfig:
    doc = load_config_file(args.config) if args.config else {}
    out = doc.get("output") or {}
    suite = args.suite or doc.get("suite")
    if not suite:
        raise ConfigError("no suite given")
    fields = {
        "suite": suite,
        "ls": _int_list(doc["l"], "l") if "l" in doc else (),
        "divisors": _int_list(doc["divisor"], "divisor") if "divisor" in doc else (),
        "window": _window(doc["window"]) if doc.get("window") is not None else None,
        "depth": int(doc.get("depth", 8)),
        "samples": tuple(str(s) for s in doc.get("samples") or ()),
        "indices": _int_list(doc["index"], "index") if "index" in doc else (),
        "citations": tuple(sorted((str(k), str(v)) for k, v in (doc.get("citations") or {}).items())),
        "json_path": out.get("json"),
        "quiet": bool(out.get("quiet", False)),
    }
    if args.l:
        fields["ls"] = tuple(args.l)
    if args.divisor:
        fields["divisors"] = tuple(args.divisor)
    if args.window:
        fields["window"] = _window(args.window)
    if args.depth is not None:
        fields["depth"] = args.depth
    if args.sample:
        fields["samples"] = tuple(args.sample)
    if args.index:
        fields["indices"] = tuple(args.index)
    if args.json:
        fields["json_path"] = args.json
    if args.quiet:
        fields["quiet"] = True
    return effective_config(SuiteConfig(**fields))


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description="Run a verification suite.")
    p.add_argument("suite", nargs="?", choices=SUITES, help="suite to run (may also come from --config)")
    p.add_argument("--l", type=int, action="append", metavar="K", help="root order; repeatable")
    p.add_argument("--divisor", type=int, action="append", metavar="N", help="chart divisor; repeatable")
    p.add_argument("--window", metavar="LO..HI", help="degree window on the free grading")
    p.add_argument("--depth", type=int, metavar="H", help="resolution depth for chart Ext (Ext^k for k <= H-2)")
    p.add_argument("--config", metavar="PATH", help="YAML config file; flags override it")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    p.add_argument("--quiet", action="store_true", help="print only the summary line")
    p.add_argument("--sample", action="append", metavar="DESC", help="sample object descriptor; repeatable")
    p.add_argument("--index", type=int, action="append", metavar="I", help="decompose: ordering index; repeatable")
    p.add_argument("--timings", action="store_true", help="append wall time to each claim line")
    p.add_argument("--golden", action="store_true", help="compare the JSON report with the corpus file for this suite")
    p.add_argument("--write-golden", action="store_true", help="store the JSON report in the corpus")
    return p


def main(argv: list[str] | None = None) -> int:
    p = parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        try:
            cfg = build_config(args)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        reports = run_suite(cfg)
    except ConfigError as exc:
        print(f"verify: config error: {exc}", file=sys.stderr)
        return 2
    text = dumps(report_document(cfg, reports)) + "\n"
    code = exit_code(reports)
    to_stdout = cfg.json_path == "-"
    log = sys.stderr if to_stdout else sys.stdout

    if not cfg.quiet:
        for r in reports:
            suffix = f" ({r.wall_time:.2f}s)" if args.timings else ""
            print(r.line(cfg.suite) + suffix, file=log)
    counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "inconclusive")}
    print(f"{cfg.suite}: {counts['pass']} pass, {counts['fail']} fail, {counts['inconclusive']} inconclusive", file=log)

    if to_stdout:
        sys.stdout.write(text)
    elif cfg.json_path:
        Path(cfg.json_path).write_text(text)
    golden = corpus_dir() / f"{cfg.suite}.json"
    if args.write_golden:
        golden.parent.mkdir(parents=True, exist_ok=True)
        golden.write_text(text)
    elif args.golden:
        if not golden.exists():
            print(f"verify: no golden file {golden}", file=sys.stderr)
            return 2
        want = golden.read_text()
        if want != text:
            diff = difflib.unified_diff(want.splitlines(), text.splitlines(), str(golden), "report", lineterm="", n=1)
            print("\n".join(list(diff)[:60]), file=log)
            print(f"verify: report differs from {golden}", file=log)
            return 1
    return code


if __name__ == "__main__":
    sys.exit(main())
