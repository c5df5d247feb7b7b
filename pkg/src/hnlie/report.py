"""Report assembly and rendering (text grids and exact-string JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Mapping

from . import __version__
from .algebra import DIM, LieAlgebra
from .classify import ClassLabel
from .curvature import PLANES, CurvatureReport
from .scalar import format_scalar


@dataclass(frozen=True)
class Report:
    kind: str
    inputs: Mapping[str, Any]
    payload: Mapping[str, Any]
    seed: int | None = None
    samples: int | None = None
    meta_extra: Mapping[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict:
        meta = {"version": __version__, "seed": self.seed, "samples": self.samples}
        meta.update(self.meta_extra)
        return {
            "kind": self.kind,
            "meta": meta,
            "inputs": dict(self.inputs),
            "payload": dict(self.payload),
        }


def emit(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=2) + "\n"
    if fmt == "text":
        return _render_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def classify_payload(labels: tuple[ClassLabel, ...], ft) -> dict:
    return {
        "labels": {f"J{l.alpha}": l.label for l in labels},
        "components": {
            f"J{l.alpha}": sorted(l.nonzero_components) for l in labels
        },
        "lee_forms": {
            f"J{alpha}": [format_scalar(x) for x in ft.lee(alpha)]
            for alpha in (1, 2, 3)
        },
    }


def curvature_payload(rep: CurvatureReport) -> dict:
    riemann = {}
    for (i, j, k, l), value in sorted(rep.R04.nonzero().items()):
        if i < j and k < l and (i, j) <= (k, l):
            riemann[f"{i},{j},{k},{l}"] = format_scalar(value)
    return {
        "riemann": riemann,
        "ricci": [
            [format_scalar(rep.rho[i, j]) for j in range(DIM)] for i in range(DIM)
        ],
        "ricci_star": {
            f"J{alpha}": [
                [format_scalar(rep.rho_star[alpha - 1][i, j]) for j in range(DIM)]
                for i in range(DIM)
            ]
            for alpha in (1, 2, 3)
        },
        "tau": format_scalar(rep.tau),
        "tau_star": {
            f"J{alpha}": format_scalar(rep.tau_star[alpha - 1]) for alpha in (1, 2, 3)
        },
        "tau_star_star": {
            f"J{alpha}": format_scalar(rep.tau_star_star[alpha - 1])
            for alpha in (1, 2, 3)
        },
        "sectional": {
            f"{i},{j}": format_scalar(rep.k[(i, j)]) for (i, j) in PLANES
        },
        "plane_types": {
            f"J{alpha}": {
                f"{i},{j}": rep.plane_type[(alpha, (i, j))] for (i, j) in PLANES
            }
            for alpha in (1, 2, 3)
        },
    }


def describe_inputs(
    family: str | None,
    params: Mapping[str, Any] | None,
    path: str | None,
    algebra: LieAlgebra | None = None,
) -> dict:
    inputs: dict[str, Any] = {}
    if family is not None:
        inputs["family"] = family
    if path is not None:
        inputs["file"] = path
        if algebra is not None:
            inputs["name"] = algebra.source.name
    inputs["params"] = {
        name: format_scalar(value) for name, value in (params or {}).items()
    }
    if algebra is not None and algebra.source.alt_names:
        inputs["alt_names"] = dict(algebra.source.alt_names)
    return inputs


# -- text rendering -------------------------------------------------------


def _render_text(report: Report) -> str:
    lines: list[str] = []
    meta = report.as_dict()["meta"]
    header = f"hnlie {meta['version']} :: {report.kind}"
    if report.seed is not None:
        header += f" (seed={report.seed}, samples={report.samples})"
    lines.append(header)
    inputs = report.inputs
    if inputs:
        described = ", ".join(
            f"{k}={v}" for k, v in inputs.items() if k != "params" and v
        )
        params = inputs.get("params") or {}
        if params:
            described += (", " if described else "") + ", ".join(
                f"{k}={v}" for k, v in params.items()
            )
        if described:
            lines.append(f"input: {described}")
    lines.append("")
    renderer = _TEXT_RENDERERS[report.kind]
    lines.extend(renderer(report.payload))
    return "\n".join(lines) + "\n"


def _render_classify(payload) -> list[str]:
    lines = ["class labels:"]
    for alpha_name, label in payload["labels"].items():
        parts = payload["components"][alpha_name]
        detail = ", ".join(parts) if parts else "none"
        lines.append(f"  {alpha_name}: {label}  (nonzero components: {detail})")
    lines.append("lee forms (components on e1..e4):")
    for alpha_name, vec in payload["lee_forms"].items():
        lines.append(f"  theta_{alpha_name}: [{', '.join(vec)}]")
    return lines


def _render_curvature(payload) -> list[str]:
    lines = ["curvature tensor (independent nonzero components R_ijkl):"]
    if payload["riemann"]:
        for key, value in payload["riemann"].items():
            lines.append(f"  R[{key}] = {value}")
    else:
        lines.append("  (flat)")
    lines.append("ricci tensor:")
    for row in payload["ricci"]:
        lines.append("  [" + ", ".join(row) + "]")
    lines.append(
        f"tau = {payload['tau']}; "
        + "; ".join(f"tau*_{a[1]} = {v}" for a, v in payload["tau_star"].items())
        + "; "
        + "; ".join(f"tau**_{a[1]} = {v}" for a, v in payload["tau_star_star"].items())
    )
    lines.append("basic sectional curvatures (plane: value, type per J1/J2/J3):")
    for key, value in payload["sectional"].items():
        types = "/".join(
            payload["plane_types"][f"J{alpha}"][key][0].upper() for alpha in (1, 2, 3)
        )
        lines.append(f"  k[{key}] = {value}  ({types})")
    lines.append("plane types: H = holomorphic, T = totally real")
    return lines


def _render_table(payload) -> list[str]:
    lines = ["class-table verification:"]
    width = max(len(r["row"]) for r in payload["rows"]) + 2
    for rec in payload["rows"]:
        if rec.get("kind") == "disputed-row":
            lines.append(f"  {rec['row']:<{width}} DISPUTED ROW: {rec['note']}")
            for name, reading in rec["readings"].items():
                lines.append(
                    f"  {'':<{width}}   {name}: {reading['params']} -> "
                    f"{_labels_text(reading['computed'])}"
                    f"{' (equals published)' if reading['equals_published'] else ''}"
                )
            continue
        status = rec["status"].upper()
        lines.append(
            f"  {rec['row']:<{width}} {rec['kind']:<8} {str(rec['params']):<34} "
            f"computed {_labels_text(rec['computed'])}  {status}"
        )
        if rec.get("note"):
            lines.append(f"  {'':<{width}}   note: {rec['note']}")
    if payload["bullets"]:
        lines.append("exclusion-check findings:")
        for rec in payload["bullets"]:
            lines.append(
                f"  {rec['family']} {rec['params']} {rec['alpha']}: computed "
                f"{rec['computed']} lies in excluded {rec['excluded_class']} "
                f"[{rec['status'].upper()}]"
            )
            if rec.get("note"):
                lines.append(f"    note: {rec['note']}")
    else:
        lines.append("exclusion checks: all passed")
    s = payload["summary"]
    lines.append(
        f"summary: {s['checks']} checks, {s['mismatches']} mismatches, "
        f"{s['annotations']} annotations"
    )
    return lines


def _labels_text(labels: Mapping[str, str]) -> str:
    return "(" + ", ".join(labels[a] for a in ("J1", "J2", "J3")) + ")"


def _render_claims(payload) -> list[str]:
    lines = ["curvature-claims verification:"]
    current_item = None
    for rec in payload["checks"]:
        if rec["item"] != current_item:
            current_item = rec["item"]
            lines.append(f"item {current_item}: {rec['claim']}")
        mark = {"agree": "ok", "disagree": "DISAGREE", "disputed": "DISPUTED"}[
            rec["status"]
        ]
        computed = ", ".join(f"{k}={v}" for k, v in rec["computed"].items())
        lines.append(
            f"  {rec['family']:<7} {rec['kind']:<9} {str(rec['witness']):<38} "
            f"{computed}  [{mark}]"
        )
        if rec.get("note"):
            lines.append(f"    note: {rec['note']}")
    for note in payload["notes"]:
        lines.append(f"reading of item {note['item']}: " + "; ".join(note["notes"]))
    s = payload["summary"]
    lines.append(
        f"summary: {s['checks']} checks, {s['disagreements']} disagreements, "
        f"{s['annotations']} annotations ({s['coverage']})"
    )
    return lines


def _render_components(payload) -> list[str]:
    lines = ["component-table verification:"]
    shown = 0
    for rec in payload["records"]:
        if rec["status"] == "match":
            continue
        shown += 1
        lines.append(
            f"  {rec['family']} {rec['quantity']}[{rec['index']}]: published "
            f"{rec['expected']}, computed {rec['computed']} [{rec['status'].upper()}]"
        )
        if rec.get("note"):
            lines.append(f"    note: {rec['note']}")
    if not shown:
        lines.append("  all published components reproduced exactly")
    s = payload["summary"]
    lines.append(
        f"summary: {s['checks']} checks, {s['mismatches']} mismatches, "
        f"{s['annotations']} annotations"
    )
    return lines


_TEXT_RENDERERS = {
    "classify": _render_classify,
    "curvature": _render_curvature,
    "verify-table2": _render_table,
    "verify-theorem5": _render_claims,
    "verify-components": _render_components,
}
