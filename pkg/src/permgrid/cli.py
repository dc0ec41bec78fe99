"""Command-line interface: ``permgrid count|gf|verify|plot``.

Exit codes: 0 on success, 1 when a verification or pipeline stage fails,
2 on a usage error.  ``--json`` prints the same report as the text form,
as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .automata import Dfa, DfaFormatError, gf as dfa_gf
from .enumerate import ClassSpec, count_series
from .grid import GriddingMatrix, grid
from .perm import Permutation
from .ratfun import format_rational, series

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    stages: list[dict] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(s["passed"] for s in self.stages)

    def add(self, name: str, passed: bool, expected: Any = None, got: Any = None, **extra):
        self.stages.append({"name": name, "passed": bool(passed), "expected": expected, "got": got, **extra})

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "passed": self.passed,
            **self.data,
            "stages": self.stages,
            "seconds": round(self.seconds, 3),
        }

    def render_text(self) -> str:
        d = self.as_dict()
        lines = []
        for key, value in d.items():
            if key == "stages":
                continue
            if isinstance(value, list):
                value = ",".join(map(str, value))
            if isinstance(value, str) and "\n" in value:
                lines.append(f"{key}:")
                lines.append(value.rstrip("\n"))
            else:
                lines.append(f"{key}: {value}")
        for s in d["stages"]:
            mark = "ok  " if s["passed"] else "FAIL"
            line = f"  [{mark}] {s['name']}"
            if not s["passed"]:
                line += f"  expected={s['expected']} got={s['got']}"
            if s.get("detail"):
                line += f"  ({s['detail']})"
            lines.append(line)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument helpers

def parse_perm(text: str, what: str = "permutation") -> Permutation:
    for i, ch in enumerate(text):
        if not (ch.isdigit() or ch.isspace() or ch == ","):
            raise UsageError(f"{what} {text!r}: unexpected character {ch!r} at position {i + 1}")
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise UsageError(f"{what} {text!r}: {exc}") from None


def parse_basis(text: str) -> list[Permutation]:
    out = []
    offset = 0
    for k, token in enumerate(text.replace(",", " ").split(), 1):
        start = text.index(token, offset)
        offset = start + len(token)
        try:
            out.append(parse_perm(token, f"basis element {k}"))
        except UsageError as exc:
            raise UsageError(f"{exc} (column {start + 1} of the basis)") from None
    return out


def _series_text(values: Sequence) -> list:
    return [int(v) if getattr(v, "denominator", 1) == 1 else str(v) for v in values]


# ---------------------------------------------------------------------------
# commands

def cmd_count(args) -> RunReport:
    basis = parse_basis(args.basis)
    if args.n < 1:
        raise UsageError("-n must be at least 1")
    spec = ClassSpec.av(*basis)
    report = RunReport(f"count -b {args.basis!r} -n {args.n}")
    report.data["class"] = str(spec)
    report.data["series"] = count_series(spec, args.n)
    return report


def cmd_gf(args) -> RunReport:
    if args.terms < 0:
        raise UsageError("--terms must be non-negative")
    if args.dfa:
        try:
            d = Dfa.load(args.dfa)
        except (OSError, DfaFormatError, ValueError) as exc:
            raise UsageError(f"cannot read automaton {args.dfa}: {exc}") from None
        r = dfa_gf(d)
        report = RunReport(f"gf --dfa {args.dfa} --terms {args.terms}")
        report.data["gf"] = format_rational(r)
        # words are counted from length 0
        report.data["series"] = _series_text(series(r, args.terms - 1)) if args.terms else []
        return report
    if not args.class_id:
        raise UsageError("gf needs a class id or --dfa FILE")
    from .classes.pipelines import PIPELINES, StageFailure, run_pipeline

    if args.class_id not in PIPELINES:
        raise UsageError(f"unknown class id {args.class_id!r}; choose from {', '.join(PIPELINES)}")
    report = RunReport(f"gf {args.class_id} --terms {args.terms}")
    try:
        result = run_pipeline(args.class_id, check=not args.no_check, strict=True)
    except StageFailure as exc:
        report.add(exc.stage, False, str(exc.expected), str(exc.got), detail=exc.kind)
        return report
    r = result["f"]
    report.data["gf"] = format_rational(r)
    # permutations are counted from length 1
    report.data["series"] = _series_text(series(r, args.terms)[1:])
    report.data["stages_checked"] = len(result.checks)
    return report


def _verify_structure(report: RunReport, n: int):
    from .classes.structure import THEOREMS, verify_structure

    for t in THEOREMS:
        r = verify_structure(t, n)
        report.add(f"structure:{t}", r.passed, None, str(r.counterexample) if r.counterexample else None,
                   detail=r.reason or f"{sum(r.checked.values())} permutations checked")


def _verify_encodings(report: RunReport, n: int):
    from .classes.bijections import check_encoding, encodings

    for name in encodings():
        checks = check_encoding(name, n)
        bad = [c for c in checks if not c.passed]
        detail = f"n<={n}, {sum(c.words for c in checks)} words"
        if bad:
            c = bad[0]
            detail = f"n={c.n}: {c.duplicates} duplicates, {c.extraneous} extraneous, {c.missing} missing"
        report.add(f"encoding:{name}", not bad, None, None, detail=detail)


def _verify_pipelines(report: RunReport, n: int):
    from .classes.oracles import check_against_oracles
    from .classes.pipelines import PIPELINES, run_pipeline

    for name in PIPELINES:
        result = run_pipeline(name, strict=False)
        for c in result.checks:
            report.add(f"{name}:{c.stage}", c.passed, str(c.expected), str(c.got), detail=c.kind)
        for c in check_against_oracles(result, n):
            report.add(f"{name}:{c.stage}", c.passed, c.expected, _series_text(c.got), detail=f"brute force to n={n}")


def cmd_verify(args) -> RunReport:
    from .classes.structure import MAX_N

    if not 1 <= args.n <= MAX_N:
        raise UsageError(f"-n must lie in 1..{MAX_N}")
    report = RunReport(f"verify {args.scope} -n {args.n}")
    if args.scope in ("all", "structure"):
        _verify_structure(report, args.n)
    if args.scope in ("all", "encodings"):
        _verify_encodings(report, args.n)
    if args.scope in ("all", "pipelines"):
        _verify_pipelines(report, args.n)
    return report


def _load_matrix(path: str) -> GriddingMatrix:
    from .classes.resources import load_matrix

    try:
        return load_matrix(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix {path}: {exc}") from None


def plot_ascii(p: Permutation, col_cuts: Sequence[int] = (), row_cuts: Sequence[int] = ()) -> str:
    """Points as ``o`` at (i, p(i)), value 1 at the bottom; cut lines drawn between them."""
    n = len(p)
    vcuts, hcuts = set(col_cuts), set(row_cuts)
    width = 2 * n + 1

    def rule():
        chars = ["-"] * width
        for k in vcuts:
            chars[2 * k] = "+"
        return "".join(chars)

    lines = []
    if n in hcuts:
        lines.append(rule())
    for val in range(n, 0, -1):
        chars = [" "] * width
        for k in vcuts:
            chars[2 * k] = "|"
        chars[2 * p.values.index(val) + 1] = "o"
        lines.append("".join(chars).rstrip())
        if val - 1 in hcuts:
            lines.append(rule())
    return "\n".join(lines)


def plot_svg(p: Permutation, col_cuts: Sequence[int] = (), row_cuts: Sequence[int] = (), unit: int = 20) -> str:
    n = len(p)
    size = unit * (n + 1)
    y = lambda v: size - unit * v
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for k in col_cuts:
        x = unit * (k + 0.5)
        parts.append(f'<line x1="{x}" y1="0" x2="{x}" y2="{size}" stroke="gray"/>')
    for k in row_cuts:
        yy = y(k + 0.5)
        parts.append(f'<line x1="0" y1="{yy}" x2="{size}" y2="{yy}" stroke="gray"/>')
    for i, v in enumerate(p.values, 1):
        parts.append(f'<circle cx="{unit * i}" cy="{y(v)}" r="{unit // 5}" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def cmd_plot(args) -> RunReport:
    p = parse_perm(args.perm)
    report = RunReport(f"plot {args.perm}" + (f" --grid {args.grid}" if args.grid else "") + f" --format {args.format}")
    col_cuts: tuple = ()
    row_cuts: tuple = ()
    if args.grid:
        m = _load_matrix(args.grid)
        g = grid(p, m)
        if g is None:
            report.data["note"] = f"{p} is not griddable in {args.grid}"
        else:
            # outer cuts at 0 and n add nothing to the picture
            col_cuts = tuple(k for k in g.col_cuts if 0 < k < len(p))
            row_cuts = tuple(k for k in g.row_cuts if 0 < k < len(p))
            report.data["col_cuts"] = list(col_cuts)
            report.data["row_cuts"] = list(row_cuts)
    draw = plot_svg if args.format == "svg" else plot_ascii
    report.data["diagram"] = draw(p, col_cuts, row_cuts) + "\n"
    return report


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="permgrid", description="Enumerate permutation classes through grid classes and automata.")
    ap.add_argument("--json", action="store_true", help="print the report as JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="brute-force counts of Av(basis)")
    c.add_argument("-b", "--basis", required=True, help='space separated patterns, e.g. "2143 4321"')
    c.add_argument("-n", type=int, default=8, help="largest length (default 8)")
    c.set_defaults(run=cmd_count)

    g = sub.add_parser("gf", help="generating function of a class pipeline or of an automaton")
    g.add_argument("class_id", nargs="?", help="av2143_4321, av2143_4312 or av1324_4312")
    g.add_argument("--dfa", help="automaton file; its words are counted by length")
    g.add_argument("--terms", type=int, default=10, help="number of series terms (default 10)")
    g.add_argument("--no-check", action="store_true", help="skip the comparison of stages with the bundled fixtures")
    g.set_defaults(run=cmd_gf)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("scope", nargs="?", default="all", choices=["all", "structure", "encodings", "pipelines"])
    v.add_argument("-n", type=int, default=7, help="largest length checked (default 7)")
    v.set_defaults(run=cmd_verify)

    p = sub.add_parser("plot", help="draw a permutation, optionally with a gridding")
    p.add_argument("perm")
    p.add_argument("--grid", help="matrix file or bundled matrix name")
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.set_defaults(run=cmd_plot)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    started = time.perf_counter()
    try:
        report = args.run(args)
    except UsageError as exc:
        print(f"permgrid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.seconds = time.perf_counter() - started
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, default=str))
    else:
        print(report.render_text())
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
