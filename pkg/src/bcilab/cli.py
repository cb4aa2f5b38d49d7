"""Command-line entry point: ``bcilab <subcommand> [flags]``.

Exit codes: 0 success (or provable), 1 not provable / verification
failure, 2 usage or runtime error.  Set ``BCILAB_CACHE_DIR`` to keep
sequence prefixes on disk between ``count`` runs.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence as Seq, TextIO

from . import verify
from .classify import (
    CSV_COLUMNS,
    census,
    is_classical_tautology,
    is_less_simple_nontautology,
    labels,
)
from .counting import Sequence, dump_csv, load_csv, table
from .density import (
    DENSITY_CSV_HEADER,
    convergence_table,
    decimal_string,
    doubling_sizes,
    term_density_table,
    write_density_csv,
)
from .errors import BcilabError, ResourceLimitError
from .formula import (
    DEFAULT_ENUM_CAP,
    Formula,
    enumerate_formulas,
    max_variable,
    parse_formula,
    render_formula,
)
from .lam import DEFAULT_TERM_CAP, enumerate_bci_terms, enumerate_bck_terms, enumerate_closed_terms, render_term
from .prover import DEFAULT_PROVER_CAP, Prover

CACHE_ENV = "BCILAB_CACHE_DIR"
_INT64_MAX = 2**63 - 1
_UNBOUNDED_VARS = 10**9
_FORMULA_SEQUENCES = (Sequence.CATALAN, Sequence.F, Sequence.G, Sequence.EVEN)


@dataclass
class RunConfig:
    subcommand: str
    k: Optional[int] = None
    n: Optional[int] = None
    n_max: Optional[int] = None
    sizes: Optional[list[int]] = None
    sequence: Optional[str] = None
    cls: Optional[str] = None
    logic: Optional[str] = None
    formula: Optional[str] = None
    suite: Optional[str] = None
    fmt: str = "csv"
    output: Optional[str] = None
    provers: bool = False
    witness: bool = False
    cap_enum: int = DEFAULT_ENUM_CAP
    cap_prover: int = DEFAULT_PROVER_CAP
    cap_terms: int = DEFAULT_TERM_CAP

    def validate(self) -> None:
        for name in ("cap_enum", "cap_prover", "cap_terms"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.fmt not in ("csv", "json"):
            raise ValueError("--format must be csv or json")
        if self.k is not None and self.k < 1:
            raise ValueError("--vars must be positive")
        if self.n is not None and self.n < 0:
            raise ValueError("--size must be non-negative")
        if self.n_max is not None and self.n_max < 0:
            raise ValueError("--max must be non-negative")
        if self.sizes is not None and not self.sizes:
            raise ValueError("--sizes must be non-empty")


def _need(value, flag: str):
    if value is None:
        raise ValueError(f"{flag} is required")
    return value


def _json_value(v):
    if isinstance(v, int) and not isinstance(v, bool) and abs(v) > _INT64_MAX:
        return str(v)
    return v


def _emit(rows: list[dict], columns: Seq[str], cfg: RunConfig, out: TextIO) -> None:
    if cfg.fmt == "json":
        data = [{c: _json_value(r.get(c)) for c in columns} for r in rows]
        out.write(json.dumps(data, indent=1) + "\n")
        return
    out.write(",".join(columns) + "\n")
    for r in rows:
        out.write(",".join("" if r.get(c) is None else str(r.get(c)) for c in columns) + "\n")


# ---------------------------------------------------------------- subcommands


def _cmd_enumerate(cfg: RunConfig, out: TextIO) -> int:
    k, n = _need(cfg.k, "--vars"), _need(cfg.n, "--size")
    rows = [{"formula": render_formula(f)} for f in enumerate_formulas(k, n, cfg.cap_enum)]
    _emit(rows, ["formula"], cfg, out)
    return 0


def _cache_path(seq: Sequence, k: Optional[int]) -> Optional[Path]:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    name = seq.value if k is None else f"{seq.value}-k{k}"
    return Path(root) / f"{name}.csv"


def _cmd_count(cfg: RunConfig, out: TextIO) -> int:
    seq = Sequence(_need(cfg.sequence, "--sequence"))
    n_max = _need(cfg.n_max, "--max")
    k = cfg.k if seq.needs_k else None
    if seq.needs_k and k is None:
        raise ValueError(f"--vars is required for sequence {seq.value}")
    t = table(seq, k)
    path = _cache_path(seq, k)
    if path is not None and path.exists():
        with path.open() as fh:
            cached = load_csv(fh).get((seq, k))
        if cached:
            t.preload(cached)
    if seq is Sequence.L and n_max > cfg.cap_terms:
        raise ResourceLimitError(f"size {n_max} exceeds term enumeration cap {cfg.cap_terms}")
    start = 1 if seq in _FORMULA_SEQUENCES else 0
    values = t.prefix(n_max)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        buf = io.StringIO()
        dump_csv([(seq, k, i, v) for i, v in enumerate(t.memo)], buf)
        path.write_text(buf.getvalue())
    rows = [(seq, k, i, values[i]) for i in range(start, n_max + 1)]
    if cfg.fmt == "csv":
        dump_csv(rows, out)
    else:
        _emit([{"sequence": s.value, "k": kk, "n": i, "value": v} for s, kk, i, v in rows],
              ["sequence", "k", "n", "value"], cfg, out)
    return 0


def _formula(cfg: RunConfig) -> tuple[Formula, int]:
    # without --vars, k is the highest variable index in the formula
    text = _need(cfg.formula, "--formula")
    if cfg.k is not None:
        return parse_formula(text, cfg.k), cfg.k
    f = parse_formula(text, _UNBOUNDED_VARS)
    return f, max_variable(f)


def _provers(cfg: RunConfig) -> dict[str, Prover]:
    return {name: Prover(name, cap=cfg.cap_prover) for name in ("bci", "bck", "int")}


def _cmd_classify(cfg: RunConfig, out: TextIO) -> int:
    f, k = _formula(cfg)
    found = labels(f, k, _provers(cfg) if cfg.provers else None)
    valuation = is_less_simple_nontautology(f, k)
    row = {
        "formula": render_formula(f),
        "labels": " ".join(sorted(label.value for label in found)),
        "ln_valuation": "" if valuation is None
        else " ".join(f"a{v}={int(b)}" for v, b in sorted(valuation.items())),
    }
    _emit([row], ["formula", "labels", "ln_valuation"], cfg, out)
    return 0


def _cmd_census(cfg: RunConfig, out: TextIO) -> int:
    k = _need(cfg.k, "--vars")
    if cfg.n is not None:
        sizes = [cfg.n]
    else:
        sizes = list(range(1, _need(cfg.n_max, "--size or --max") + 1))
    provers = _provers(cfg) if cfg.provers else None
    rows = [census(k, n, cfg.provers, provers, cfg.cap_enum).as_dict() for n in sizes]
    _emit(rows, CSV_COLUMNS, cfg, out)
    return 0


def _cmd_prove(cfg: RunConfig, out: TextIO) -> int:
    logic = _need(cfg.logic, "--logic")
    f, k = _formula(cfg)
    if logic == "cl":
        ok = is_classical_tautology(f, k)
        out.write(("tautology" if ok else "not a tautology") + "\n")
        return 0 if ok else 1
    result = Prover(logic, cap=cfg.cap_prover).prove(f)
    out.write(("provable" if result.provable else "not provable") + "\n")
    if cfg.witness and result.witness is not None:
        out.write(render_term(result.witness) + "\n")
    return 0 if result.provable else 1


def _cmd_density(cfg: RunConfig, out: TextIO) -> int:
    cls = _need(cfg.cls, "--class").upper()
    if cls in ("TERMS", "BCI/BCK"):
        k_max = _need(cfg.n_max, "--max")
        rows = []
        for k, r in term_density_table(k_max):
            rows.append({"class": "TERMS", "k": k, "n": 3 * k + 2, "numerator": r.numerator,
                         "denominator": r.denominator, "target_num": 0, "target_den": 1,
                         "gap_decimal": decimal_string(r)})
        _emit(rows, DENSITY_CSV_HEADER, cfg, out)
        return 0
    k = _need(cfg.k, "--vars")
    if cfg.sizes:
        sizes = cfg.sizes
    elif cfg.n is not None:
        sizes = [cfg.n]
    else:
        n_max = _need(cfg.n_max, "--size, --sizes or --max")
        sizes = doubling_sizes(16, n_max) if cls == "G" else list(range(1, n_max + 1))
    report = convergence_table(cls, k, sizes)
    if cfg.fmt == "csv":
        write_density_csv([report], out)
    else:
        _emit([dict(zip(DENSITY_CSV_HEADER, r)) for r in report.csv_rows()], DENSITY_CSV_HEADER, cfg, out)
    return 0


def _cmd_verify(cfg: RunConfig, out: TextIO) -> int:
    suite = _need(cfg.suite, "--suite")
    names = list(verify.SUITES) if suite == "all" else [suite]
    failed = False
    for name in names:
        if name not in verify.SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(verify.SUITES)} or all")
        outcome = verify.SUITES[name](cfg.n_max)
        out.write(outcome.summary() + "\n")
        failed |= not outcome.passed
    return 1 if failed else 0


def _cmd_dump_terms(cfg: RunConfig, out: TextIO) -> int:
    n = _need(cfg.n, "--size")
    kind = (cfg.cls or cfg.logic or "all").lower()
    if kind == "bci":
        terms = enumerate_bci_terms(n)
    elif kind == "bck":
        terms = enumerate_bck_terms(n)
    elif kind == "all":
        terms = enumerate_closed_terms(n, cfg.cap_terms)
    else:
        raise ValueError("--class for dump-terms must be bci, bck or all")
    _emit([{"term": render_term(t)} for t in terms], ["term"], cfg, out)
    return 0


COMMANDS: dict[str, Callable[[RunConfig, TextIO], int]] = {
    "enumerate": _cmd_enumerate,
    "count": _cmd_count,
    "classify": _cmd_classify,
    "census": _cmd_census,
    "prove": _cmd_prove,
    "density": _cmd_density,
    "verify": _cmd_verify,
    "dump-terms": _cmd_dump_terms,
}


# ---------------------------------------------------------------- argument parsing


def _sizes(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bcilab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--vars", dest="k", type=int)
        p.add_argument("--size", dest="n", type=int)
        p.add_argument("--max", dest="n_max", type=int)
        p.add_argument("--sizes", type=_sizes)
        p.add_argument("--sequence", choices=[s.value for s in Sequence])
        p.add_argument("--class", dest="cls")
        p.add_argument("--logic", choices=["cl", "int", "bck", "bci"])
        p.add_argument("--formula")
        p.add_argument("--suite")
        p.add_argument("--format", dest="fmt", default="csv", choices=["csv", "json"])
        p.add_argument("--output", "-o")
        p.add_argument("--provers", action="store_true")
        p.add_argument("--witness", action="store_true")
        p.add_argument("--cap-enum", type=int, default=DEFAULT_ENUM_CAP)
        p.add_argument("--cap-prover", type=int, default=DEFAULT_PROVER_CAP)
        p.add_argument("--cap-terms", type=int, default=DEFAULT_TERM_CAP)
    return parser


def run(cfg: RunConfig, out: Optional[TextIO] = None) -> int:
    """Execute one validated configuration; returns the exit code."""
    try:
        cfg.validate()
        if cfg.output:
            with open(cfg.output, "w") as fh:
                return COMMANDS[cfg.subcommand](cfg, fh)
        return COMMANDS[cfg.subcommand](cfg, out or sys.stdout)
    except (BcilabError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: Optional[Seq[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    cfg = RunConfig(**vars(ns))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
