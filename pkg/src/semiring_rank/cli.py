"""Command-line front end: ``semiring-rank <rank|unique|verify|cone> ...``.

Exit codes: 0 success, 1 verification failed, 2 input error, 3 budget
exhausted (partial output is still printed).  Row and column indices in all
output are 1-based.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .cone import BooleanCone, cone_elements, minimal_generators, sort_masks
from .errors import (DomainError, FormatError, Limits, ResourceError, SemiringRankError, ShapeError,
                     VerificationError, DEFAULT_MAX_NODES)
from .matrix import BinaryMatrix, SemiringTag, parse_matrix, parse_rational_matrix
from .search import ALL_FIELDS, Factorization, first_mismatch, rank_report
from .uniqueness import count_h_solutions, uniqueness_report

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

RANK_COLUMNS = [("rk_real", "rk_R"), ("rk_z2", "rk_Z2"), ("rk_nonneg", "rk_+"), ("rk_boolean", "rk_Bool"),
                ("rk_binary", "rk_Bin"), ("isolation", "iota")]


@dataclass
class ReportDocument:
    input_path: str
    matrix_shape: tuple[int, int]
    rank_report: dict | None = None
    uniqueness_report: dict | None = None
    budget: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    error: str | None = None

    def to_dict(self):
        return {
            "input_path": self.input_path,
            "matrix_shape": list(self.matrix_shape),
            "rank_report": self.rank_report,
            "uniqueness_report": self.uniqueness_report,
            "budget": self.budget,
            "timings": self.timings,
            "error": self.error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        return cls(d["input_path"], tuple(d["matrix_shape"]), d.get("rank_report"),
                   d.get("uniqueness_report"), d.get("budget", {}), d.get("timings", {}), d.get("error"))

    def render_text(self) -> str:
        lines = [f"{self.input_path}: {self.matrix_shape[0]}x{self.matrix_shape[1]}"]
        if self.rank_report is not None:
            lines.extend(_render_ranks(self.rank_report))
        if self.uniqueness_report is not None:
            lines.extend(_render_unique(self.uniqueness_report))
        if self.budget:
            lines.append("budget: " + ", ".join(f"{k}={v}" for k, v in self.budget.items()))
        if self.timings:
            lines.append("timings: " + ", ".join(f"{k}={v:.4f}s" for k, v in self.timings.items()))
        if self.error:
            lines.append(f"error: {self.error}")
        return "\n".join(lines)


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, dict):
        text = f"[{value['lo']},{value['hi']}]"
        return text + (" exact" if value["exact"] else "")
    return str(value)


def _render_ranks(rep: dict) -> list[str]:
    header = "  ".join(f"{label:>12}" for _, label in RANK_COLUMNS)
    row = "  ".join(f"{_cell(rep.get(key)):>12}" for key, _ in RANK_COLUMNS)
    lines = [header, row]
    for name, w in rep.get("witnesses", {}).items():
        lines.append(f"  witness {name}: {_render_witness(w)}")
    for name, why in rep.get("not_computed", {}).items():
        lines.append(f"  {name}: not computed ({why})")
    return lines


def _render_witness(w) -> str:
    if isinstance(w, dict) and "pivot_rows" in w:
        return f"rank {w['rank']}, pivot rows {w['pivot_rows']}, pivot cols {w['pivot_cols']}"
    if isinstance(w, dict):
        W = " / ".join("".join(str(v) if len(str(v)) == 1 else f"({v})" for v in r) for r in w["W"])
        H = " / ".join("".join(str(v) if len(str(v)) == 1 else f"({v})" for v in r) for r in w["H"])
        return f"{w['semiring']} inner_dim {w['inner_dim']}; W = {W}; H = {H}"
    return "isolated ones " + ", ".join(f"({i},{j})" for i, j in w)


def _yes(flag) -> str:
    return "yes" if flag else "no"


def _render_unique(rep: dict) -> list[str]:
    lines = [
        f"boolean rank: {rep['boolean_rank']}",
        f"boolean column rank: {rep['boolean_column_rank']}",
        f"unique_w: {_yes(rep['unique_w'])} (census size {rep['cone_census_size']})",
        f"unique_h: {_yes(rep['unique_h_given_w'])}"
        + ("" if rep["representative_is_unique"] else " (for a representative, non-unique W)"),
        f"boundary close: {_yes(rep['boundary_close'])}",
        f"fully unique: {_yes(rep['fully_unique'])}",
    ]
    if rep.get("representative_w") is not None:
        lines.append("W = " + " / ".join("".join(map(str, r)) for r in rep["representative_w"]))
    if "census" in rep:
        for k, gens in enumerate(rep["census"], start=1):
            lines.append(f"cone {k}: " + " ".join("(" + ",".join(map(str, g)) + ")" for g in gens))
    if "oracle_counts" in rep:
        lines.append(f"oracle counts: {rep['oracle_counts']} agrees: {_yes(rep['oracle_agrees'])}")
    return lines


# -- commands -------------------------------------------------------------

def _limits(args) -> Limits:
    nodes = args.budget_nodes
    if nodes is None:
        env = os.environ.get("SEMIRING_RANK_BUDGET_NODES")
        nodes = int(env) if env else DEFAULT_MAX_NODES
    return Limits(max_nodes=nodes, max_seconds=args.budget_seconds)


def _read_binary(path: str) -> BinaryMatrix:
    return parse_matrix(Path(path).read_text())


def _read_factor(path: str):
    text = Path(path).read_text()
    try:
        return parse_matrix(text)
    except FormatError:
        return parse_rational_matrix(text)


def cmd_rank(args) -> tuple[ReportDocument, int]:
    X = _read_binary(args.path)
    fields = [f for f in ALL_FIELDS if getattr(args, f)]
    if args.all or not fields:
        fields = list(ALL_FIELDS)
    witness = None
    if args.nonneg_witness:
        W = _read_factor(args.nonneg_witness[0])
        H = _read_factor(args.nonneg_witness[1])
        witness = Factorization(W, H, SemiringTag.NONNEG)
    limits = _limits(args)
    t0 = time.perf_counter()
    rep = rank_report(X, fields, limits, nonneg_witness=witness)
    doc = ReportDocument(args.path, X.shape, rank_report=rep.to_dict(), budget=limits.to_dict(),
                         timings={"rank": time.perf_counter() - t0})
    return doc, EXIT_OK if rep.complete else EXIT_BUDGET


def cmd_unique(args) -> tuple[ReportDocument, int]:
    X = _read_binary(args.path)
    limits = _limits(args)
    doc = ReportDocument(args.path, X.shape, budget=limits.to_dict())
    t0 = time.perf_counter()
    try:
        rep = uniqueness_report(X, limits)
    except ResourceError as exc:
        doc.error = f"budget exhausted: {exc}"
        doc.timings["unique"] = time.perf_counter() - t0
        return doc, EXIT_BUDGET
    d = rep.to_dict(include_census=args.census)
    if args.oracle and rep.representative_w is not None:
        counts = count_h_solutions(X, rep.representative_w)
        d["oracle_counts"] = counts
        d["oracle_agrees"] = all(c == 1 for c in counts) == rep.unique_h_given_w
    doc.uniqueness_report = d
    doc.timings["unique"] = time.perf_counter() - t0
    return doc, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    X = _read_binary(args.x_path)
    W = _read_factor(args.w_path)
    H = _read_factor(args.h_path)
    tag = SemiringTag.parse(args.semiring)
    cell = first_mismatch(X, W, H, tag)
    out = {"x_path": args.x_path, "w_path": args.w_path, "h_path": args.h_path, "semiring": tag.value,
           "ok": cell is None, "mismatch": None if cell is None else [cell[0] + 1, cell[1] + 1]}
    return out, EXIT_OK if cell is None else EXIT_FALSE


def cmd_cone(args) -> tuple[dict, int]:
    G = _read_binary(args.path)
    limits = _limits(args)
    n = G.n_rows
    cone = BooleanCone.from_generators(G.columns, n)
    out = {"path": args.path, "ambient_dim": n,
           "generators": [[(m >> i) & 1 for i in range(n)] for m in cone.generators]}
    try:
        cone = cone_elements(G, limits)
    except ResourceError as exc:
        out["error"] = str(exc)
        return out, EXIT_BUDGET
    mins = minimal_generators(cone)
    out["minimal_generators"] = [list(v.bits) for v in mins]
    out["order"] = len(mins)
    out["elements"] = [[(m >> i) & 1 for i in range(n)] for m in sort_masks(cone.elements, n)]
    out["size"] = len(cone.elements)
    return out, EXIT_OK


def _render_plain(d: dict) -> str:
    if "semiring" in d:
        if d["ok"]:
            return f"OK: {d['x_path']} = W*H under {d['semiring']}"
        i, j = d["mismatch"]
        return f"MISMATCH at cell ({i},{j}) under {d['semiring']}"
    fmt = lambda vs: " ".join("(" + ",".join(map(str, v)) + ")" for v in vs)
    lines = [f"{d['path']}: cone in B^{d['ambient_dim']} with {len(d['generators'])} distinct nonzero generators"]
    if "error" in d:
        lines.append(f"error: {d['error']}")
        return "\n".join(lines)
    lines.append(f"order: {d['order']}")
    lines.append(f"minimal generators: {fmt(d['minimal_generators'])}")
    lines.append(f"elements ({d['size']}): {fmt(d['elements'])}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--budget-nodes", type=int, default=None,
                        help="search node limit (default: $SEMIRING_RANK_BUDGET_NODES or %d)" % DEFAULT_MAX_NODES)
    common.add_argument("--budget-seconds", type=float, default=None, help="search time limit")

    p = argparse.ArgumentParser(prog="semiring-rank",
                                description="Exact ranks and factorization uniqueness for 0-1 matrices. "
                                            "Indices in output are 1-based.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rank", parents=[common], help="real, Z2, nonnegative, Boolean and binary ranks")
    for f in ALL_FIELDS:
        r.add_argument(f"--{f}", action="store_true")
    r.add_argument("--all", action="store_true")
    r.add_argument("--nonneg-witness", nargs=2, metavar=("W", "H"),
                   help="nonnegative factors tightening the upper bound on the nonnegative rank")
    r.add_argument("path")
    r.set_defaults(func=cmd_rank)

    u = sub.add_parser("unique", parents=[common], help="uniqueness of Boolean rank factorizations")
    u.add_argument("--census", action="store_true", help="list every minimal-order cone containing the data")
    u.add_argument("--oracle", action="store_true", help="cross-check unique H by brute-force counting")
    u.add_argument("path")
    u.set_defaults(func=cmd_unique)

    v = sub.add_parser("verify", parents=[common], help="check X = W*H under a semiring")
    v.add_argument("--semiring", default="boolean", choices=[t.value for t in SemiringTag])
    v.add_argument("x_path")
    v.add_argument("w_path")
    v.add_argument("h_path")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cone", parents=[common], help="minimal generators and elements of a Boolean cone")
    c.add_argument("path", help="matrix whose columns are the generators")
    c.set_defaults(func=cmd_cone)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result, code = args.func(args)
    except (FormatError, ShapeError, DomainError, VerificationError, OSError, ValueError) as exc:
        print(f"semiring-rank: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"semiring-rank: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if isinstance(result, ReportDocument):
        print(result.to_json() if args.json else result.render_text())
    else:
        print(json.dumps(result, indent=2) if args.json else _render_plain(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
