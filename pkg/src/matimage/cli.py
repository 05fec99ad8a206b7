"""Command-line entry point: classify, solve, image, verify-table, verify-commutator."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Iterable, Optional

from .commutator import canonical_case_prediction, certify_vector_space, closed_form_image
from .conjugacy import canonical_pair, family_zero_rows
from .gf import FieldError, FieldSpec, make_field
from .mat import Matrix2, SplittingError, jordan_form
from .oracle import EXHAUSTIVE_MAX_Q, OracleLimitError, Subspace, enumerate_image, equals_subspace, span
from .polys import CommutatorPoly, PowerSumPoly, ZeroConstantError
from .waring import (
    ImagePrediction,
    UnsatisfiableRowError,
    Variant,
    classify_image,
    instantiate_row,
    roots_gate,
    solve_with_path,
    table_rows,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    field: FieldSpec
    k1: int = 1
    k2: int = 1
    mode: str = "exhaustive"
    seed: int = 0
    workers: int = 1
    output: str = "pretty"
    timing: bool = True
    count: int = 5
    random_pairs: int = 1000
    samples: int = 10**6

    def check_oracle(self) -> None:
        if self.mode == "exhaustive" and self.field.q > EXHAUSTIVE_MAX_Q:
            raise UsageError(f"exhaustive mode needs q <= {EXHAUSTIVE_MAX_Q}; use --mode sampled")

    def as_dict(self) -> dict:
        return {
            "p": self.field.p,
            "deg": self.field.deg,
            "k1": self.k1,
            "k2": self.k2,
            "mode": self.mode,
            "seed": self.seed,
            "workers": self.workers,
        }


# -- record helpers -------------------------------------------------------------------


def _subspace_json(sub: Subspace) -> dict:
    return {"dim": sub.dim, "basis": sub.describe()}


def _prediction_json(pred: Optional[ImagePrediction]) -> Optional[dict]:
    if pred is None:
        return None
    return {
        "variant": pred.variant.value,
        "zero_row": None if pred.zero_row is None else str(pred.zero_row),
        "conjugator": None if pred.conjugator is None else str(pred.conjugator),
        "provenance": pred.provenance,
        "subspace": _subspace_json(pred.subspace()),
    }


def _canonical_json(A: Matrix2, B: Matrix2) -> dict:
    cp = canonical_pair(A, B)
    zr = family_zero_rows(cp.J_A, cp.B_tilde)
    return {
        "J_A": str(cp.J_A),
        "B_tilde": str(cp.B_tilde),
        "family": cp.family.tag.value,
        "witness": str(cp.witness),
        "base_extended": cp.base_extended,
        "zero_row": None if zr is None else str(zr),
    }


def _inputs(A: Matrix2, B: Matrix2, cfg: RunConfig, powers: bool = True) -> dict:
    d = {"A": str(A), "B": str(B), "field": str(cfg.field)}
    if powers:
        d.update(k1=cfg.k1, k2=cfg.k2)
    return d


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.start = time.perf_counter()

    def elapsed(self) -> Optional[float]:
        return round(time.perf_counter() - self.start, 6) if self.enabled else None


# -- commands -------------------------------------------------------------------------


def cmd_classify(A: Matrix2, B: Matrix2, cfg: RunConfig) -> list[dict]:
    clock = _Clock(cfg.timing)
    pred = classify_image(PowerSumPoly(A, B, cfg.k1, cfg.k2))
    return [
        {
            "id": "classify",
            "inputs": _inputs(A, B, cfg),
            "canonical": _canonical_json(A, B),
            "prediction": _prediction_json(pred),
            "gate": roots_gate(cfg.field, cfg.k1, cfg.k2),
            "status": "predicted",
            "wall_time": clock.elapsed(),
        }
    ]


def cmd_solve(A: Matrix2, B: Matrix2, C: Matrix2, cfg: RunConfig) -> list[dict]:
    clock = _Clock(cfg.timing)
    found, path = solve_with_path(PowerSumPoly(A, B, cfg.k1, cfg.k2), C)
    inputs = _inputs(A, B, cfg)
    inputs["C"] = str(C)
    return [
        {
            "id": "solve",
            "inputs": inputs,
            "witness": None if found is None else {"X": str(found[0]), "Y": str(found[1])},
            "path": path,
            "status": "solved" if found is not None else "not_in_image",
            "wall_time": clock.elapsed(),
        }
    ]


def cmd_image(A: Matrix2, B: Matrix2, cfg: RunConfig, poly_kind: str) -> list[dict]:
    cfg.check_oracle()
    clock = _Clock(cfg.timing)
    if poly_kind == "power":
        poly = PowerSumPoly(A, B, cfg.k1, cfg.k2)
    else:
        poly = CommutatorPoly(A, B)
    image = enumerate_image(poly, mode=cfg.mode, seed=cfg.seed, samples=cfg.samples, workers=cfg.workers)
    sub = span(image)
    closed = image.mode == "exhaustive" and len(image) == cfg.field.q**sub.dim
    return [
        {
            "id": f"image-{poly_kind}",
            "inputs": _inputs(A, B, cfg, powers=poly_kind == "power"),
            "oracle": {"mode": image.mode, "size": len(image), "is_subspace": closed, **_subspace_json(sub)},
            "status": "enumerated" if image.mode == "exhaustive" else "evidence",
            "wall_time": clock.elapsed(),
        }
    ]


def _compare(image, predicted: Subspace) -> bool:
    if image.mode == "exhaustive":
        return equals_subspace(image, predicted)
    # sampled sets can only witness containment
    return all(predicted.contains(v) for v in image.vectors())


def cmd_verify_table(cfg: RunConfig, emit: Callable[[dict], None] = lambda r: None) -> list[dict]:
    cfg.check_oracle()
    gate = roots_gate(cfg.field, cfg.k1, cfg.k2)
    records = []
    for row in table_rows():
        rid = f"row-{row.id}"
        try:
            pairs = instantiate_row(row, cfg.field, seed=cfg.seed, count=cfg.count)
        except UnsatisfiableRowError:
            rec = {"id": rid, "row": row.id, "inputs": None, "status": "skipped: field too small", "gate": gate}
            records.append(rec)
            emit(rec)
            continue
        for i, (A, B) in enumerate(pairs):
            clock = _Clock(cfg.timing)
            poly = PowerSumPoly(A, B, cfg.k1, cfg.k2)
            pred = classify_image(poly)
            image = enumerate_image(poly, mode=cfg.mode, seed=cfg.seed, samples=cfg.samples, workers=cfg.workers)
            match = _compare(image, pred.subspace())
            table_match = _compare(image, row.image.subspace(cfg.field))
            compared = gate or pred.variant is not Variant.FULL
            if not compared:
                status = "gated: roots unavailable"
            elif image.mode != "exhaustive":
                status = "evidence" if match and table_match else "fail"
            else:
                status = "pass" if match and table_match else "fail"
            rec = {
                "id": f"{rid}.{i}",
                "row": row.id,
                "duplicate_of": row.duplicate_of,
                "table_image": row.image.value,
                "inputs": _inputs(A, B, cfg),
                "canonical": _canonical_json(A, B),
                "prediction": _prediction_json(pred),
                "oracle": {"mode": image.mode, "size": len(image), **_subspace_json(span(image))},
                "match": match if image.mode == "exhaustive" else None,
                "table_match": table_match if image.mode == "exhaustive" else None,
                "gate": gate,
                "status": status,
                "wall_time": clock.elapsed(),
            }
            records.append(rec)
            emit(rec)
    return records


def representative_pairs(field: FieldSpec) -> list[tuple[Matrix2, Matrix2]]:
    """Distinct canonical pairs (J_A, B~) reachable without a field extension."""
    jordans = {}
    for M in Matrix2.all(field):
        if M.is_zero():
            continue
        try:
            j = jordan_form(M)
        except SplittingError:
            continue
        if j.J.field == field:
            jordans.setdefault(j.J, None)
    reps: dict[tuple[Matrix2, Matrix2], None] = {}
    for J in jordans:
        for B in Matrix2.all(field):
            if B.is_zero():
                continue
            cp = canonical_pair(J, B)
            if not cp.base_extended:
                reps.setdefault((cp.J_A, cp.B_tilde), None)
    return list(reps)


def _random_pairs(field: FieldSpec, n: int, seed: int) -> list[tuple[Matrix2, Matrix2]]:
    rng = random.Random(seed)
    q4 = field.q**4
    out = []
    while len(out) < n:
        A = Matrix2.from_code(field, rng.randrange(1, q4))
        B = Matrix2.from_code(field, rng.randrange(1, q4))
        out.append((A, B))
    return out


def _commutator_record(rid: str, A: Matrix2, B: Matrix2, cfg: RunConfig) -> dict:
    clock = _Clock(cfg.timing)
    poly = CommutatorPoly(A, B)
    report = certify_vector_space(poly, mode=cfg.mode, seed=cfg.seed, samples=cfg.samples, workers=cfg.workers)
    pred = canonical_case_prediction(poly)
    closed = closed_form_image(poly)
    exact = report.mode == "exhaustive"
    agrees = None if pred is None else pred.subspace() == report.basis
    closed_ok = None if closed is None else closed[0] == report.basis
    ok = report.is_subspace and agrees is not False and closed_ok is not False
    status = ("pass" if ok else "fail") if exact else ("evidence" if agrees is not False else "fail")
    return {
        "id": rid,
        "inputs": _inputs(A, B, cfg, powers=False),
        "canonical": _canonical_json(A, B),
        "prediction": _prediction_json(pred) if pred is not None else "abstain",
        "oracle": {
            "mode": report.mode,
            "size": report.size,
            "is_subspace": report.is_subspace,
            "counterexample": None if report.counterexample is None else str(report.counterexample),
            **_subspace_json(report.basis),
        },
        "match": agrees if exact else None,
        "status": status,
        "wall_time": clock.elapsed(),
    }


def cmd_verify_commutator(
    cfg: RunConfig,
    pairs: Optional[Iterable[tuple[Matrix2, Matrix2]]] = None,
    emit: Callable[[dict], None] = lambda r: None,
) -> list[dict]:
    cfg.check_oracle()
    if pairs is not None:
        labelled = [(f"pair-{i}", A, B) for i, (A, B) in enumerate(pairs)]
    else:
        labelled = [(f"rep-{i}", A, B) for i, (A, B) in enumerate(representative_pairs(cfg.field))]
        labelled += [
            (f"random-{i}", A, B) for i, (A, B) in enumerate(_random_pairs(cfg.field, cfg.random_pairs, cfg.seed))
        ]
    records = []
    for rid, A, B in labelled:
        rec = _commutator_record(rid, A, B, cfg)
        records.append(rec)
        emit(rec)
    return records


# -- output -----------------------------------------------------------------------------


def summarize(records: list[dict]) -> dict:
    counts: dict[str, int] = {}
    for r in records:
        key = r["status"].split(":")[0]
        counts[key] = counts.get(key, 0) + 1
    out = {"records": len(records), "statuses": dict(sorted(counts.items()))}
    rows = {r["row"] for r in records if "row" in r and r.get("duplicate_of") is None}
    if rows:
        def row_verdict(rid: int) -> str:
            sts = [r["status"].split(":")[0] for r in records if r.get("row") == rid]
            for s in ("fail", "gated", "skipped", "evidence"):
                if s in sts:
                    return s
            return "pass"

        verdicts = [row_verdict(rid) for rid in sorted(rows)]
        out["rows"] = {s: verdicts.count(s) for s in ("pass", "gated", "skipped", "evidence", "fail")}
        out["rows"]["total"] = len(verdicts)
    return out


def build_report(command: str, cfg: RunConfig, records: list[dict]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": cfg.as_dict(),
        "records": records,
        "summary": summarize(records),
    }


def load_schema() -> dict:
    return json.loads(resources.files("matimage").joinpath("report.schema.json").read_text())


CSV_FIELDS = ["id", "status", "match", "gate", "family", "zero_row", "prediction", "oracle_dim", "wall_time"]


def _csv_row(r: dict) -> dict:
    canon = r.get("canonical") or {}
    pred = r.get("prediction")
    oracle = r.get("oracle") or {}
    if isinstance(pred, dict):
        pred = pred["variant"] if pred["zero_row"] is None else f"{pred['variant']}:{pred['zero_row']}"
    return {
        "id": r["id"],
        "status": r["status"],
        "match": r.get("match"),
        "gate": r.get("gate"),
        "family": canon.get("family"),
        "zero_row": canon.get("zero_row"),
        "prediction": pred,
        "oracle_dim": oracle.get("dim"),
        "wall_time": r.get("wall_time"),
    }


def _pretty_line(r: dict) -> str:
    parts = [f"{r['id']:<14} {r['status']}"]
    pred = r.get("prediction")
    if isinstance(pred, dict):
        label = "Full" if pred["variant"] == "full" else pred["variant"]
        if pred["zero_row"] is not None:
            label = f"RowSpace({pred['zero_row']})"
            if pred["conjugator"] not in (None, "[[1,0],[0,1]]"):
                label += f" Q={pred['conjugator']}"
        parts.append(f"prediction={label}")
    elif pred == "abstain":
        parts.append("prediction=abstain")
    if r.get("oracle"):
        parts.append(f"oracle_dim={r['oracle']['dim']}")
    if r.get("witness") is not None:
        parts.append(f"X={r['witness']['X']} Y={r['witness']['Y']}")
    if r.get("path"):
        parts.append(f"via {r['path']}")
    if r.get("inputs"):
        parts.append(f"A={r['inputs']['A']} B={r['inputs']['B']}")
    return "  ".join(parts)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in report["records"]:
            w.writerow(_csv_row(r))
        return buf.getvalue().rstrip("\n")
    lines = [f"# {report['command']} seed={report['config']['seed']}"]
    lines += [_pretty_line(r) for r in report["records"]]
    lines.append(f"# summary {json.dumps(report['summary'], sort_keys=True)}")
    return "\n".join(lines)


def exit_code(records: list[dict]) -> int:
    return EXIT_MISMATCH if any(r["status"] == "fail" for r in records) else EXIT_OK


# -- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="field characteristic")
    common.add_argument("--deg", type=int, default=1, choices=(1, 2), help="extension degree")
    common.add_argument("--k1", type=int, default=1)
    common.add_argument("--k2", type=int, default=1)
    common.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--samples", type=int, default=10**6, help="pairs drawn in sampled mode")
    common.add_argument("--output", choices=("json", "csv", "pretty"), default="pretty")
    common.add_argument("--no-timing", action="store_true", help="omit wall times for reproducible output")

    parser = argparse.ArgumentParser(prog="matimage", description="Images of 2x2 matrix polynomial maps with constants.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", parents=[common], help="predict the image of A x^k1 + B y^k2")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p = sub.add_parser("solve", parents=[common], help="find X, Y with A X^k1 + B Y^k2 = C")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--C", required=True)
    p = sub.add_parser("image", parents=[common], help="enumerate an image with the oracle")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--poly", choices=("power", "commutator"), default="power")
    p = sub.add_parser("verify-table", parents=[common], help="check every table row against the oracle")
    p.add_argument("--count", type=int, default=5, help="instances per row")
    p = sub.add_parser("verify-commutator", parents=[common], help="certify commutator images")
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--random", type=int, default=1000, help="seeded random pairs added to the sweep")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    if args.k1 < 1 or args.k2 < 1:
        raise UsageError("exponents must be positive")
    if args.workers < 1:
        raise UsageError("--workers must be positive")
    return RunConfig(
        field=make_field(args.p, args.deg),
        k1=args.k1,
        k2=args.k2,
        mode=args.mode,
        seed=args.seed,
        workers=args.workers,
        output=args.output,
        timing=not args.no_timing,
        count=getattr(args, "count", 5),
        random_pairs=getattr(args, "random", 1000),
        samples=args.samples,
    )


def _parse(cfg: RunConfig, text: str, name: str) -> Matrix2:
    try:
        return Matrix2.parse(cfg.field, text)
    except (ValueError, FieldError) as exc:
        raise UsageError(f"cannot parse --{name} {text!r}: {exc}") from exc


def run(args: argparse.Namespace) -> tuple[dict, int]:
    cfg = _config(args)
    cmd = args.command
    if cmd == "classify":
        records = cmd_classify(_parse(cfg, args.A, "A"), _parse(cfg, args.B, "B"), cfg)
    elif cmd == "solve":
        A, B, C = (_parse(cfg, getattr(args, n), n) for n in "ABC")
        records = cmd_solve(A, B, C, cfg)
    elif cmd == "image":
        records = cmd_image(_parse(cfg, args.A, "A"), _parse(cfg, args.B, "B"), cfg, args.poly)
    elif cmd == "verify-table":
        records = cmd_verify_table(cfg)
    else:
        if (args.A is None) != (args.B is None):
            raise UsageError("--A and --B must be given together")
        pairs = None
        if args.A is not None:
            pairs = [(_parse(cfg, args.A, "A"), _parse(cfg, args.B, "B"))]
        records = cmd_verify_commutator(cfg, pairs)
    report = build_report(cmd, cfg, records)
    return report, exit_code(records)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = run(args)
    except (UsageError, FieldError, ZeroConstantError, OracleLimitError) as exc:
        print(f"matimage: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(report, args.output))
    return code


if __name__ == "__main__":
    sys.exit(main())
