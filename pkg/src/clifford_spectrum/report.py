"""JSON-ready rendering of results.

Exact values become ``{"a": "p/q", "b": "r/s"}`` (meaning a + b sqrt 2) and
floats become decimal strings, so a report never loses exactness.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from typing import Any

import numpy as np

from .exact import QS2, Poly, Signature, SymMatrix
from .spectrum import BASIS_ORDER, BlockSummary, CompositionResult, SpectrumReport, SweepRow, Witness
from .torus import Section, TrigPoly, frames_of


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def trig_to_json(f: TrigPoly) -> list[dict[str, Any]]:
    return [{"kind": k, "m": j, "n": n, "coef": c.to_json()} for (k, j, n), c in sorted(f.terms.items())]


def section_to_json(v: Section) -> dict[str, Any]:
    return {"target": v.target,
            "components": {e.name.lower(): trig_to_json(v[e]) for e in frames_of(v.target)}}


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.name.lower()
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return repr(float(obj))
    if isinstance(obj, QS2):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, Poly):
        return obj.to_json()
    if isinstance(obj, SymMatrix):
        return obj.to_json()
    if isinstance(obj, Signature):
        return {"neg": obj.neg, "zero": obj.zero, "pos": obj.pos}
    if isinstance(obj, Section):
        return section_to_json(obj)
    if isinstance(obj, TrigPoly):
        return trig_to_json(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return str(obj)


def block_to_json(b: BlockSummary, with_poly: bool) -> dict[str, Any]:
    out: dict[str, Any] = {"m": b.m, "n": b.n, "dim": b.dim, "mode": b.mode,
                           "signature": to_jsonable(b.signature)}
    if b.exact_roots:
        out["nonpositive_eigenvalues"] = [{"value": r.to_json(), "multiplicity": k}
                                          for r, k in b.exact_roots]
    if b.char_poly is not None and (with_poly or b.exceptional):
        out["char_poly"] = b.char_poly.to_json()
    return out


def witness_to_json(w: Witness | None) -> Any:
    if w is None:
        return None
    return {"block": list(w.block) if isinstance(w.block, tuple) else w.block,
            "interval": [fraction_str(w.lo), fraction_str(w.hi)],
            "approx": repr(w.approx), "exact": None if w.exact is None else w.exact.to_json()}


def composition_to_json(c: CompositionResult) -> dict[str, Any]:
    return {"holds": c.holds, "interval": list(c.interval), "witness": witness_to_json(c.witness)}


def spectrum_to_json(rep: SpectrumReport, with_polys: bool = False) -> dict[str, Any]:
    contrib_index = {f"{b.m},{b.n}": b.signature.neg for b in rep.per_block if b.signature.neg}
    contrib_null = {f"{b.m},{b.n}": b.signature.zero for b in rep.per_block if b.signature.zero}
    return {
        "operator": str(rep.op),
        "p": None if rep.op.p is None else to_jsonable(rep.op.p),
        "mode": "exact" if rep.op.exact else "float",
        "cutoff": rep.cutoff,
        "basis_order": BASIS_ORDER,
        "index": rep.index,
        "nullity": rep.nullity,
        "index_contributions": contrib_index,
        "nullity_contributions": contrib_null,
        "tail_certified": rep.tail_certified,
        "tail_note": rep.tail_note,
        "blocks": [block_to_json(b, with_polys) for b in rep.per_block],
    }


def sweep_to_json(rows: list[SweepRow]) -> list[dict[str, Any]]:
    return [{"p": repr(r.p), "index": r.index, "nullity": r.nullity, "mode": r.mode} for r in rows]


def dumps(report: Any) -> str:
    return json.dumps(to_jsonable(report), indent=2)
