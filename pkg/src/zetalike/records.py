"""Serialization of classification records and verification reports.

JSON is canonical (UTF-8, sorted keys).  Polynomials are integer coefficient
arrays in ascending order, each integer encoding an element of F_q as
sum(c_i p^i) over the field's modulus, which the file header records.
CSV and Markdown are projections of the same records.
"""
from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone

from . import __version__
from .algebra import FieldConfig, Polynomial, RationalFunction
from .search import ClassificationRecord, ResultSet, tuple_key

TOOL = "zetalike"


def field_to_dict(f: FieldConfig) -> dict:
    return {"q": f.q, "p": f.p, "s": f.s, "modulus": list(f.modulus)}


def field_from_dict(d: dict) -> FieldConfig:
    return FieldConfig(int(d["p"]), int(d["s"]), tuple(d["modulus"]))


def rational_to_dict(r: RationalFunction | None):
    if r is None:
        return None
    return {"num": r.num.to_list(), "den": r.den.to_list()}


def rational_from_dict(d, field: FieldConfig):
    if d is None:
        return None
    return RationalFunction(Polynomial(field, d["num"]), Polynomial(field, d["den"]))


def record_to_dict(rec: ClassificationRecord) -> dict:
    return {
        "key": tuple_key(rec.tuple),
        "tuple": list(rec.tuple),
        "weight": rec.weight,
        "depth": rec.depth,
        "status": rec.status,
        "ratio": rational_to_dict(rec.ratio),
        "ratio_text": None if rec.ratio is None else rec.ratio.format(),
        "covered_by_theorem": rec.covered_by_theorem,
        "covering_case": rec.covering_case,
        "precision_used": rec.precision_used,
        "heuristic": rec.heuristic_flag,
        "note": rec.note,
    }


def record_from_dict(d: dict, field: FieldConfig) -> ClassificationRecord:
    return ClassificationRecord(
        tuple=tuple(d["tuple"]),
        weight=int(d["weight"]),
        depth=int(d["depth"]),
        status=d["status"],
        ratio=rational_from_dict(d.get("ratio"), field),
        covered_by_theorem=bool(d.get("covered_by_theorem", False)),
        precision_used=int(d.get("precision_used", 0)),
        heuristic_flag=bool(d.get("heuristic", False)),
        covering_case=d.get("covering_case"),
        note=d.get("note", ""),
    )


def report_to_dict(rep) -> dict:
    c = rep.case
    return {
        "family": c.family,
        "q": c.q,
        "params": {k: (list(v) if isinstance(v, tuple) else v) for k, v in c.params},
        "lhs_tuple": list(c.lhs_tuple),
        "rhs_zeta_arg": c.rhs_zeta_arg,
        "coefficient": rational_to_dict(c.rhs_coefficient),
        "coefficient_text": c.rhs_coefficient.format(),
        "residual_valuation": rep.residual_valuation,
        "precision": rep.precision,
        "pass": rep.passed,
        "kind": "theorem" if c.is_theorem else "conjecture",
    }


def make_header(field: FieldConfig, config: dict, timestamp: bool = True) -> dict:
    h = {"tool": TOOL, "version": __version__, "field": field_to_dict(field), "config": config}
    if timestamp:
        h["timestamp"] = datetime.now(timezone.utc).replace(microsecond=0).isoformat()
    return h


def dumps_json(header: dict, records: list) -> str:
    return json.dumps({"header": header, "records": records}, sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def loads_record_file(text: str):
    """(header, field, ClassificationRecords) from a JSON record file."""
    d = json.loads(text)
    header = d["header"]
    field = field_from_dict(header["field"])
    return header, field, [record_from_dict(r, field) for r in d["records"]]


CSV_COLUMNS = ["tuple", "weight", "depth", "status", "ratio", "covered_by_theorem",
               "precision_used", "heuristic"]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([tuple_key(r.tuple), r.weight, r.depth, r.status,
                    "" if r.ratio is None else r.ratio.format(),
                    int(r.covered_by_theorem), r.precision_used, int(r.heuristic_flag)])
    return buf.getvalue()


# tuples per table row, following the printed data tables
_COLUMNS = {(2, 2): 7, (2, 3): 6, (2, 4): 5, (2, 5): 4, (2, 6): 3, (3, 2): 6}


def format_tuple(t, covered: bool = False) -> str:
    return "(" + ", ".join(str(s) for s in t) + ")" + ("*" if covered else "")


def result_set_to_markdown(rs: ResultSet, columns: int | None = None) -> str:
    cfg = rs.config
    q = cfg.q
    cols = columns or _COLUMNS.get((q, cfg.depth), 4)
    mode = "restricted" if cfg.restricted else "unrestricted"
    prim = "primitive" if cfg.primitive_only else "all"
    lines = [f"## q = {q}, depth {cfg.depth}, weight <= {cfg.max_weight} ({prim}, {mode})", ""]
    cells = [format_tuple(r.tuple, r.covered_by_theorem) for r in rs.detected()]
    if cells:
        rows = [cells[i:i + cols] for i in range(0, len(cells), cols)]
        width = min(cols, len(cells))
        for i, row in enumerate(rows):
            row = row + [""] * (width - len(row))
            lines.append("| " + " | ".join(row) + " |")
            if i == 0:
                lines.append("|" + "---|" * width)
    else:
        lines.append("(no zeta-like tuples detected)")
    lines.append("")
    lines.append("Tuples marked * are instances of a proven identity family.")
    lines.append("")
    lines.append("| q | depth | eulerian weights | zeta-like weights |")
    lines.append("|---|---|---|---|")
    for row in rs.summary["rows"]:
        e = ", ".join(map(str, row["eulerian_weights"])) or "-"
        z = ", ".join(map(str, row["zeta_like_weights"])) or "-"
        lines.append(f"| {row['q']} | {row['depth']} | {e} | {z} |")
    nd = sum(1 for r in rs.records if not r.detected)
    lines.append("")
    lines.append(f"{len(rs.records)} tuples classified, {len(cells)} detected, {nd} not detected.")
    return "\n".join(lines) + "\n"
