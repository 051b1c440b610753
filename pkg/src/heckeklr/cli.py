"""Command line interface: ``heckeklr <command> --field ... --charge ... --d ...``.

Every command prints an aligned text table and, with ``--out``, writes a JSON
report carrying ``"schema": 1``.  Exit codes: 0 success, 1 usage error,
2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .blockspectral import block_decomposition, character
from .exactfield import FieldError, make_field
from .heckecore import build_hecke
from .klriso import (
    QCHOICES,
    check_grading,
    check_nilpotency_conjecture,
    compare_blocks,
    format_laurent,
    hecke_from_klr,
    klr_generators,
    poincare_polynomial,
    verify_intertwiner_identities,
    verify_klr_relations,
    word_span_rank,
)
from .rootdata import DominantWeight, format_residue, partitions
from .seminormal import verify_specht

__all__ = ["RunConfig", "UsageError", "build_parser", "run", "main"]

SCHEMA = 1
COMMANDS = ("blocks", "verify", "poincare", "seminormal", "conjecture", "compare")


class UsageError(ValueError):
    """A configuration that cannot be run."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    field: str
    charges: tuple[int, ...]
    d: int
    out: str | None = None
    jobs: int = 1
    qchoice: str = "paper"
    field2: str | None = None
    json_stdout: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.d < 0:
            raise UsageError("--d must be non-negative")
        if not self.charges:
            raise UsageError("--charge needs at least one residue")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if self.qchoice not in QCHOICES:
            raise UsageError(f"--qchoice must be one of {', '.join(QCHOICES)}")
        if self.command == "compare" and not self.field2:
            raise UsageError("compare needs --field2")


# ---------------------------------------------------------------------------
# per-block work (module level so that worker processes can import it)


@lru_cache(maxsize=8)
def _decomposition(field_spec: str, charges: tuple[int, ...], d: int):
    field = make_field(field_spec)
    return block_decomposition(build_hecke(field, list(charges), d))


def _seq(e: int, seq) -> list:
    return [format_residue(e, i) for i in seq]


def _block_summary(block) -> dict:
    e = block.e
    return {
        "alpha": str(block.alpha),
        "content": _seq(e, block.alpha.multiset()),
        "dimension": block.dimension,
        "character": [{"sequence": _seq(e, s), "dimension": k} for s, k in character(block).items()],
    }


def _verify_block(block, qchoice: str) -> dict:
    G = klr_generators(block, qchoice)
    relations = verify_klr_relations(G)
    identities = verify_intertwiner_identities(block)
    rebuilt = hecke_from_klr(G)
    roundtrip = all(rebuilt[name] == block.matrices[name] for name in rebuilt)
    span = word_span_rank(G) == block.dimension
    grading = check_grading(G)
    ok = relations.ok and identities.ok and roundtrip and span and grading["ok"]
    return {
        "alpha": str(block.alpha),
        "dimension": block.dimension,
        "relations": relations.as_dict(),
        "intertwiners": {"families": identities.counts(), "failures": [list(f) for f in identities.failures]},
        "round_trip": roundtrip,
        "words_span_block": span,
        "grading": {"checked": grading["checked"], "inhomogeneous": grading["inhomogeneous"], "ok": grading["ok"]},
        "ok": ok,
    }


def _poincare_block(block, qchoice: str) -> dict:
    G = klr_generators(block, qchoice)
    poly = poincare_polynomial(G)
    return {
        "alpha": str(block.alpha),
        "dimension": block.dimension,
        "poincare": {str(k): v for k, v in poly.items()},
        "text": format_laurent(poly),
        "ok": sum(poly.values()) == block.dimension,
    }


def _conjecture_block(block, qchoice: str, level: int) -> dict:
    G = klr_generators(block, qchoice)
    report = check_nilpotency_conjecture(G, level)
    return {"alpha": str(block.alpha), "dimension": block.dimension, **report}


def _block_task(kind: str, field_spec: str, charges: tuple[int, ...], d: int, alpha_text: str, qchoice: str) -> dict:
    decomposition = _decomposition(field_spec, charges, d)
    block = next(b for a, b in decomposition.items() if str(a) == alpha_text)
    if kind == "verify":
        return _verify_block(block, qchoice)
    if kind == "poincare":
        return _poincare_block(block, qchoice)
    return _conjecture_block(block, qchoice, len(charges))


def _map_blocks(config: RunConfig, kind: str, decomposition) -> list[dict]:
    alphas = [str(a) for a in decomposition]
    if config.jobs == 1 or len(alphas) < 2:
        return [_block_task(kind, config.field, config.charges, config.d, a, config.qchoice) for a in alphas]
    with ProcessPoolExecutor(max_workers=config.jobs) as pool:
        futures = [pool.submit(_block_task, kind, config.field, config.charges, config.d, a, config.qchoice) for a in alphas]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# commands


def _header(config: RunConfig, field) -> dict:
    return {
        "schema": SCHEMA,
        "command": config.command,
        "field": str(field.spec),
        "e": field.e,
        "charge": _seq(field.e, DominantWeight(field.e, config.charges).charges),
        "d": config.d,
    }


def _cmd_blocks(config: RunConfig, field) -> tuple[dict, bool]:
    decomposition = _decomposition(config.field, config.charges, config.d)
    H = decomposition.algebra
    report = _header(config, field)
    report.update(
        dimension=H.dimension,
        expected_dimension=H.expected_dimension,
        checks=dict(decomposition.checks),
        blocks=[_block_summary(b) for b in decomposition.values()],
    )
    ok = decomposition.ok and H.dimension == H.expected_dimension
    return report, ok


def _cmd_per_block(config: RunConfig, field, kind: str) -> tuple[dict, bool]:
    if kind == "conjecture" and field.e != 0:
        raise UsageError("the conjecture probe needs e = 0")
    decomposition = _decomposition(config.field, config.charges, config.d)
    report = _header(config, field)
    report["qchoice"] = config.qchoice
    report["blocks"] = _map_blocks(config, kind, decomposition)
    ok = all(b["ok"] for b in report["blocks"])
    return report, ok


def _cmd_seminormal(config: RunConfig, field) -> tuple[dict, bool]:
    if len(config.charges) != 1 or field.e != 0:
        raise UsageError("seminormal needs level one (a single charge) and e = 0")
    report = _header(config, field)
    report["qchoice"] = config.qchoice
    modules = []
    for shape in partitions(config.d):
        result = verify_specht(shape, field, config.qchoice)
        module = result["module"]
        modules.append(
            {
                "shape": list(shape),
                "dimension": result["dimension"],
                "tableaux": [str(t) for t in module.tableaux],
                "matrices": [[[field.format(x) for x in row] for row in M.tolist()] for M in result["matrices"]],
                "checks": result["checks"],
                "ok": result["ok"],
            }
        )
    report["modules"] = modules
    return report, all(m["ok"] for m in modules)


def _cmd_compare(config: RunConfig, field) -> tuple[dict, bool]:
    other = make_field(config.field2)
    if other.e != field.e:
        raise UsageError(f"fields have different e ({field.e} and {other.e})")
    first = _decomposition(config.field, config.charges, config.d)
    second = _decomposition(config.field2, config.charges, config.d)
    report = _header(config, field)
    report["field2"] = str(other.spec)
    report["qchoice"] = config.qchoice
    rows = []
    ok = True
    for alpha in sorted(set(first.blocks) | set(second.blocks)):
        if alpha not in first.blocks or alpha not in second.blocks:
            rows.append({"alpha": str(alpha), "present": [alpha in first.blocks, alpha in second.blocks]})
            ok = False
            continue
        row = compare_blocks(first[alpha], second[alpha], config.qchoice)
        ok &= row["dimensions_equal"] and row["characters_equal"] and row["structure_constants"] != "different"
        rows.append(row)
    report["blocks"] = rows
    return report, ok


def run(config: RunConfig) -> tuple[dict, bool]:
    """Execute one command and return ``(report, ok)``."""
    config.validate()
    field = make_field(config.field)
    if config.command == "blocks":
        return _cmd_blocks(config, field)
    if config.command in ("verify", "poincare", "conjecture"):
        return _cmd_per_block(config, field, config.command)
    if config.command == "seminormal":
        return _cmd_seminormal(config, field)
    return _cmd_compare(config, field)


# ---------------------------------------------------------------------------
# text rendering


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [headers] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_text(report: dict) -> str:
    head = f"{report['command']}: field {report['field']} (e={report['e']}), charge {report['charge']}, d={report['d']}"
    command = report["command"]
    if command == "blocks":
        rows = [[b["alpha"], b["dimension"], len(b["character"])] for b in report["blocks"]]
        body = _table(["alpha", "dim", "weights"], rows)
        tail = f"total {report['dimension']} (expected {report['expected_dimension']})"
        return "\n".join([head, body, tail])
    if command == "verify":
        rows = []
        for b in report["blocks"]:
            failed = sum(f["failed"] for f in b["relations"]["families"].values())
            rows.append([b["alpha"], b["dimension"], failed, b["round_trip"], b["words_span_block"], b["grading"]["ok"], "pass" if b["ok"] else "FAIL"])
        return "\n".join([head, _table(["alpha", "dim", "failed", "round trip", "span", "graded", "status"], rows)])
    if command == "poincare":
        rows = [[b["alpha"], b["dimension"], b["text"]] for b in report["blocks"]]
        return "\n".join([head, _table(["alpha", "dim", "poincare"], rows)])
    if command == "conjecture":
        rows = []
        for b in report["blocks"]:
            indices = ",".join(str(r["index"]) for r in b["rows"])
            rows.append([b["alpha"], b["dimension"], indices, "pass" if b["ok"] else "FAIL"])
        return "\n".join([head, _table(["alpha", "dim", "y indices", f"y^{len(report['charge'])}=0"], rows)])
    if command == "seminormal":
        rows = [["".join(map(str, m["shape"])), m["dimension"], "pass" if m["ok"] else "FAIL"] for m in report["modules"]]
        return "\n".join([head, _table(["shape", "dim", "status"], rows)])
    rows = []
    for b in report["blocks"]:
        if "present" in b:
            rows.append([b["alpha"], "missing", "", "", ""])
        else:
            rows.append([b["alpha"], "/".join(map(str, b["dimension"])), b["dimensions_equal"], b["characters_equal"], b["structure_constants"]])
    return "\n".join([head + f" vs {report['field2']}", _table(["alpha", "dims", "dim eq", "char eq", "structure"], rows)])


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _charges(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad charge list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="heckeklr", description="Blocks of cyclotomic Hecke algebras and their KLR generators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "blocks": "block dimensions and characters",
        "verify": "KLR relations, intertwiners, round trip and grading",
        "poincare": "graded dimensions of each block",
        "seminormal": "semi-normal matrices of Specht modules (level one, e = 0)",
        "conjecture": "nilpotency probe y_r^l = 0 (e = 0)",
        "compare": "compare blocks over two fields",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--field", required=True, help='field spec, e.g. "Q,q=1", "GF(5),q=4", "Qzeta(3)"')
        p.add_argument("--charge", type=_charges, default=(0,), help="multicharge as a comma list (default 0)")
        p.add_argument("--d", type=int, required=True, help="degree")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for per-block tasks")
        p.add_argument("--qchoice", choices=QCHOICES, default="paper", help="choice of the q_r(i) series")
        p.add_argument("--json", dest="json_stdout", action="store_true", help="print JSON instead of a table")
        if name == "compare":
            p.add_argument("--field2", required=True, help="second field spec")
    return parser


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        field=args.field,
        charges=tuple(args.charge),
        d=args.d,
        out=args.out,
        jobs=args.jobs,
        qchoice=args.qchoice,
        field2=getattr(args, "field2", None),
        json_stdout=args.json_stdout,
    )
    try:
        report, ok = run(config)
    except (UsageError, FieldError) as exc:
        print(f"heckeklr: error: {exc}", file=sys.stderr)
        return 1
    text = dumps(report)
    if config.out:
        Path(config.out).write_text(text)
    sys.stdout.write(text if config.json_stdout else render_text(report) + "\n")
    if not ok:
        where = f" (report: {config.out})" if config.out else ""
        print(f"heckeklr: verification failed{where}", file=sys.stderr)
        return 2
    return 0
