"""JSON encodings for sequences, operators, certificates and weights.

Every number crosses the boundary as an exact string ("3", "-1/2").
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .construction import OperatorCertificate
from .marcinkiewicz import WeightFamily, power_weight, tabulated_weight, telescoping_quadratic
from .operators import SparseOperator
from .sequences import FiniteSequence, SortedProfile, to_rat


class FormatError(ValueError):
    pass


def _rat(value: Any) -> Fraction:
    if isinstance(value, float):
        value = repr(value)  # JSON decimals arrive as floats; their literal text is exact
    try:
        return to_rat(value)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def sequence_from_json(obj: Any) -> FiniteSequence:
    if not isinstance(obj, dict) or not isinstance(obj.get("values"), list):
        raise FormatError('sequence JSON must look like {"values": [...]}')
    return FiniteSequence(tuple(_rat(v) for v in obj["values"]))


def sequence_to_json(x: FiniteSequence) -> dict:
    return {"values": [str(v) for v in x.values]}


def profile_to_json(p: SortedProfile) -> dict:
    return {
        "profile": [str(v) for v in p.profile],
        "recover": [{"slot": s, "index": idx, "sign": sign} for s, (idx, sign) in enumerate(p.recover, start=1)],
    }


def operator_to_json(t: SparseOperator) -> dict:
    return {
        "n_in": t.n_in,
        "n_out": t.n_out,
        "rows": [{"out": r, "entries": [[i, str(c)] for i, c in row]} for r, row in t.rows.items()],
    }


def operator_from_json(obj: Any) -> SparseOperator:
    try:
        rows = {}
        for row in obj["rows"]:
            rows[int(row["out"])] = tuple((int(i), _rat(c)) for i, c in row["entries"])
        return SparseOperator(int(obj["n_in"]), int(obj["n_out"]), rows)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad operator JSON: {exc}") from exc


def certificate_to_json(cert: OperatorCertificate) -> dict:
    out = operator_to_json(cert.operator)
    out.update(
        {"l1_bound": str(cert.l1_bound), "l0_expansion": cert.l0_expansion, "pipeline": cert.pipeline}
    )
    return out


def certificate_from_json(obj: Any) -> OperatorCertificate:
    """Certificates keep their claimed bounds; a bare operator gets its own."""
    op = operator_from_json(obj)
    if "l1_bound" not in obj:
        return OperatorCertificate.certify(op, {})
    try:
        return OperatorCertificate(op, _rat(obj["l1_bound"]), int(obj["l0_expansion"]), obj.get("pipeline", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad certificate JSON: {exc}") from exc


def weight_from_json(obj: Any) -> WeightFamily:
    kind = obj.get("kind") if isinstance(obj, dict) else None
    try:
        if kind == "telescoping-quadratic":
            return telescoping_quadratic()
        if kind == "power":
            return power_weight(_rat(obj["p"]))
        if kind == "pairwise":
            return tabulated_weight(
                [_rat(v) for v in obj["alpha"]],
                [_rat(v) for v in obj["beta"]],
                _rat(obj["R1"]) if "R1" in obj else None,
                _rat(obj["R2"]) if "R2" in obj else None,
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad weight JSON: {exc}") from exc
    raise FormatError(f"unknown weight kind {kind!r}")
