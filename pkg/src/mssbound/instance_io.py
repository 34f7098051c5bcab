"""JSON instance files and report serialisation.

Rationals travel as ``"p/q"`` strings, complex entries as ``[re, im]`` pairs.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from typing import Optional

from .algebra import ComplexRational, HermitianMatrix, VectorC, normalize
from .errors import ParseError
from .expectation import Instance, RandomVectorSpec, SupportPoint


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q, digits: int = 12) -> str:
    """Decimal approximation with exactly ``digits`` significant digits, prefixed by "≈"."""
    q = Fraction(q)
    ctx = Context(prec=digits)
    val = ctx.divide(Decimal(q.numerator), Decimal(q.denominator))
    if not val:
        return "≈0." + "0" * (digits - 1)
    val = val.quantize(Decimal(1).scaleb(val.adjusted() - digits + 1), context=Context(prec=digits + 2))
    if -6 <= val.adjusted() < digits:
        return "≈" + format(val, "f")
    return "≈" + format(val, f".{digits - 1}e")


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{where}: expected a rational string like \"p/q\", got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ParseError(f"{where}: expected a rational string, got {type(value).__name__}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: {value!r} is not a rational number") from None


def _complex(value, where: str):
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{where}: complex entries are [re, im] pairs")
    return normalize(ComplexRational(_rational(value[0], f"{where}[0]"), _rational(value[1], f"{where}[1]")))


def _vector(value, dim: Optional[int], where: str) -> VectorC:
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: vectors are nonempty lists of [re, im] pairs")
    if dim is not None and len(value) != dim:
        raise ParseError(f"{where}: length {len(value)} does not match dim {dim}")
    return VectorC(_complex(e, f"{where}[{k}]") for k, e in enumerate(value))


def _matrix(value, dim: Optional[int], where: str) -> HermitianMatrix:
    if not isinstance(value, list) or not value:
        raise ParseError(f"{where}: matrices are nonempty lists of rows")
    rows = []
    for j, row in enumerate(value):
        if not isinstance(row, list) or len(row) != len(value):
            raise ParseError(f"{where}[{j}]: matrix is not square")
        rows.append([_complex(e, f"{where}[{j}][{k}]") for k, e in enumerate(row)])
    if dim is not None and len(rows) != dim:
        raise ParseError(f"{where}: size {len(rows)} does not match dim {dim}")
    try:
        return HermitianMatrix(rows)
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None


@dataclass(frozen=True)
class InstanceFile:
    dim: int
    instance: Optional[Instance] = None
    matrices: Optional[tuple] = None
    vectors: Optional[tuple] = None


def parse_instance(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("dim: expected a positive integer")

    instance = None
    if "specs" in doc:
        if not isinstance(doc["specs"], list):
            raise ParseError("specs: expected a list")
        specs = []
        for i, spec in enumerate(doc["specs"]):
            where = f"specs[{i}]"
            support = spec.get("support") if isinstance(spec, dict) else None
            if not isinstance(support, list) or not support:
                raise ParseError(f"{where}.support: expected a nonempty list")
            pts = []
            for s, pt in enumerate(support):
                w = f"{where}.support[{s}]"
                if not isinstance(pt, dict) or "prob" not in pt or "vector" not in pt:
                    raise ParseError(f"{w}: needs 'prob' and 'vector'")
                prob = _rational(pt["prob"], f"{w}.prob")
                if prob <= 0:
                    raise ParseError(f"{w}.prob: probabilities must be positive")
                pts.append(SupportPoint.of_vector(prob, _vector(pt["vector"], dim, f"{w}.vector")))
            total = sum((p.prob for p in pts), Fraction(0))
            if total != 1:
                raise ParseError(f"spec {i}: probabilities sum to {rational_str(total)}, not 1")
            specs.append(RandomVectorSpec(pts))
        instance = Instance(dim, specs)

    matrices = None
    if "matrices" in doc:
        if not isinstance(doc["matrices"], list):
            raise ParseError("matrices: expected a list")
        matrices = tuple(_matrix(mx, dim, f"matrices[{k}]") for k, mx in enumerate(doc["matrices"]))

    vectors = None
    if "vectors" in doc:
        if not isinstance(doc["vectors"], list):
            raise ParseError("vectors: expected a list")
        vectors = tuple(_vector(v, dim, f"vectors[{k}]") for k, v in enumerate(doc["vectors"]))

    return InstanceFile(dim, instance, matrices, vectors)


def _scalar_json(v):
    if isinstance(v, ComplexRational):
        return [rational_str(v.re), rational_str(v.im)]
    return [rational_str(v), "0/1"]


def vector_json(v: VectorC):
    return [_scalar_json(e) for e in v.entries]


def matrix_json(m: HermitianMatrix):
    return [[_scalar_json(e) for e in row] for row in m.entries]


def instance_to_json(f: InstanceFile) -> dict:
    doc = {"dim": f.dim}
    if f.instance is not None:
        specs = []
        for spec in f.instance.specs:
            pts = []
            for p in spec.support:
                if p.vector is None:
                    raise ValueError("support points without a vector cannot be serialised")
                pts.append({"prob": rational_str(p.prob), "vector": vector_json(p.vector)})
            specs.append({"support": pts})
        doc["specs"] = specs
    if f.matrices is not None:
        doc["matrices"] = [matrix_json(m) for m in f.matrices]
    if f.vectors is not None:
        doc["vectors"] = [vector_json(v) for v in f.vectors]
    return doc


def serialize_instance(f: InstanceFile) -> str:
    return json.dumps(instance_to_json(f), indent=2, sort_keys=True) + "\n"


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
