"""JSON descriptors for fields, codes and transforms.

A code file is self-contained: it embeds the field (p, m, modulus), the
evaluation points, the scaling vector and optionally the generator matrix.
Elements are coefficient lists over GF(p), constant term first.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .errors import MalformedDescriptor
from .field import INF, FieldContext, field_from_modulus, is_infinity
from .grs import EvaluationSet, GrsCode, ScalingVector, generator_matrix
from .mobius import MobiusTransform


def field_to_json(field: FieldContext) -> dict:
    return field.to_json()


def field_from_json(data: dict) -> FieldContext:
    try:
        p = int(data["p"])
        m = int(data["m"])
        modulus = [int(c) for c in data["modulus"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDescriptor(f"bad field descriptor: {exc}") from exc
    if len(modulus) != m + 1:
        raise MalformedDescriptor(f"modulus has {len(modulus)} coefficients, expected {m + 1}")
    try:
        return field_from_modulus(p, modulus)
    except ValueError as exc:
        raise MalformedDescriptor(str(exc)) from exc


def _element(field: FieldContext, coeffs) -> int:
    try:
        return field.from_coeffs([int(c) for c in coeffs]).value
    except (TypeError, ValueError) as exc:
        raise MalformedDescriptor(f"bad element {coeffs!r}: {exc}") from exc


def _coeffs(field: FieldContext, code) -> list[int]:
    return field._coeffs(int(code))


def point_to_json(point) -> dict:
    if is_infinity(point):
        return {"kind": "infinity"}
    return {"kind": "finite", "coeffs": point.coeffs}


def point_from_json(field: FieldContext, data: dict):
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind == "infinity":
        return INF
    if kind == "finite":
        return field.from_code(_element(field, data.get("coeffs")))
    raise MalformedDescriptor(f"bad evaluation point {data!r}")


def code_to_json(code: GrsCode, include_matrix: bool = True) -> dict:
    f = code.field
    out: dict[str, Any] = {
        "field": f.to_json(),
        "n": code.n,
        "k": code.k,
        "points": [point_to_json(p) for p in code.points],
        "scaling": [v.coeffs for v in code.scaling],
    }
    if include_matrix:
        out["generator"] = [[_coeffs(f, c) for c in row] for row in code.generator.tolist()]
    out["provenance"] = code.provenance
    return out


def code_from_json(data: dict) -> GrsCode:
    """Rebuild a code; the stored generator is kept verbatim so that it can be audited."""
    if not isinstance(data, dict):
        raise MalformedDescriptor("code descriptor must be a JSON object")
    try:
        f = field_from_json(data["field"])
        n = int(data["n"])
        k = int(data["k"])
        pts = EvaluationSet(f, tuple(point_from_json(f, p) for p in data["points"]))
        scaling = ScalingVector.from_codes(f, [_element(f, c) for c in data["scaling"]])
    except KeyError as exc:
        raise MalformedDescriptor(f"missing key {exc}") from exc
    except MalformedDescriptor:
        raise
    except (TypeError, ValueError) as exc:
        raise MalformedDescriptor(str(exc)) from exc
    if len(pts) != n or len(scaling) != n:
        raise MalformedDescriptor(f"n = {n} but {len(pts)} points and {len(scaling)} scaling entries")
    if not 1 <= k <= n:
        raise MalformedDescriptor(f"bad dimension k = {k} for n = {n}")
    if "generator" in data and data["generator"] is not None:
        rows = data["generator"]
        if len(rows) != k or any(len(r) != n for r in rows):
            raise MalformedDescriptor(f"generator must be {k} x {n}")
        gen = np.array([[_element(f, c) for c in row] for row in rows], dtype=np.int64).reshape(k, n)
    else:
        gen = generator_matrix(f, k, pts, scaling)
    prov = data.get("provenance") or {}
    return GrsCode(f, k, pts, scaling, gen, dict(prov))


def transform_to_json(g: MobiusTransform) -> dict:
    return g.to_json()


def transform_from_json(field: FieldContext, data: dict) -> MobiusTransform:
    try:
        vals = [field.from_code(_element(field, data[name])) for name in "abcd"]
    except KeyError as exc:
        raise MalformedDescriptor(f"missing transform entry {exc}") from exc
    return MobiusTransform(field, *vals)


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def write_json_atomic(path: str | os.PathLike, obj: Any) -> None:
    """Write JSON through a temporary file in the target directory, then rename."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(obj))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path: str | os.PathLike) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
