"""
Report Schemas
marshmallow schemas for every JSON report and for validating CLI requests
"""

import json
from typing import Any

from marshmallow import Schema, fields, validate

from exceptions import InvariantViolation


# ============= REQUESTS =============

class FamilyRequestSchema(Schema):
    gamma = fields.Int(required=True, strict=True, validate=validate.Range(min=1))
    m = fields.Int(required=True, strict=True, validate=validate.Range(min=1))


class SelftestRequestSchema(Schema):
    max_n = fields.Int(required=True, strict=True, validate=validate.Range(min=2))
    seed = fields.Int(required=True, strict=True)


class BatsonRequestSchema(Schema):
    r = fields.Int(required=True, strict=True, validate=validate.Range(min=2))
    s = fields.Int(required=True, strict=True, validate=validate.Range(min=1))


# ============= REPORTS =============

class HomologySchema(Schema):
    free_rank = fields.Int()
    torsion_exponents = fields.List(fields.Int())


class OrderReportSchema(Schema):
    knot = fields.Str()
    order_u = fields.Int()
    homology = fields.Nested(HomologySchema)


class InvariantsReportSchema(Schema):
    knot = fields.Str()
    order_u = fields.Int()
    signature = fields.Int()
    upsilon = fields.Int(allow_none=True)
    gamma4_lower = fields.Int(allow_none=True)
    homology = fields.Nested(HomologySchema)


class BranchSchema(Schema):
    leaf = fields.Str()
    height = fields.Int()
    merge_height = fields.Int(allow_none=True)
    parent = fields.Str(allow_none=True)
    length = fields.Int(allow_none=True)


class GradedRootSchema(Schema):
    """Summary always; merge heights only for pure staircases"""
    knot = fields.Str()
    tower_count = fields.Int()
    branch_exponents = fields.List(fields.Int())
    branches = fields.List(fields.Nested(BranchSchema), allow_none=True)


class CobordismStatsSchema(Schema):
    m = fields.Int()
    b = fields.Int()
    M = fields.Int()
    chi = fields.Int()
    gamma = fields.Int()
    norm = fields.Int()
    nonorientable = fields.Bool()
    ribbon = fields.Bool()


class CobordismReportSchema(Schema):
    trace = fields.List(fields.Int())
    stats = fields.Nested(CobordismStatsSchema)
    normalized = fields.Method("dump_normalized")
    normalize_note = fields.Str(allow_none=True)
    source = fields.Str(allow_none=True)
    target = fields.Str(allow_none=True)
    torsion_order_upper_bound = fields.Int(allow_none=True)
    source_order_u = fields.Int(allow_none=True)
    bound_holds = fields.Bool(allow_none=True)
    wong_bound_check = fields.Bool(allow_none=True)
    dur_lower_bound = fields.Int(allow_none=True)
    ribbon_bound = fields.Int(allow_none=True)

    def dump_normalized(self, obj):
        if obj.normalized is None:
            return None
        return [str(move) for move in obj.normalized.moves]


class FamilyReportSchema(Schema):
    knot = fields.Str()
    gamma = fields.Int()
    m = fields.Int()
    r = fields.Int()
    s = fields.Int()
    order_u = fields.Int()
    gamma4 = fields.Int()
    d_u = fields.Int()
    min_minima = fields.Int()
    dur_lower = fields.Int()
    dur_lower_order_difference = fields.Int()
    dur_upper = fields.Int(allow_none=True)
    flags = fields.List(fields.Str())
    provenance = fields.Dict(keys=fields.Str(), values=fields.Str())


class ReportDocumentSchema(Schema):
    command = fields.Str(required=True)
    input = fields.Raw(required=True)
    result = fields.Raw(required=True)
    version = fields.Str(required=True)


# ============= CANONICAL JSON =============

def _reject_floats(value: Any, path: str = "$") -> None:
    if isinstance(value, float):
        raise InvariantViolation(f"floating point value at {path}")
    if isinstance(value, dict):
        for key, item in value.items():
            _reject_floats(item, f"{path}.{key}")
    elif isinstance(value, (list, tuple)):
        for index, item in enumerate(value):
            _reject_floats(item, f"{path}[{index}]")


def canonical_json(data: Any) -> str:
    """Sorted keys, two-space indent, integers only"""
    _reject_floats(data)
    return json.dumps(data, sort_keys=True, indent=2)


def report_document(command: str, input_echo: Any, result: Any, version: str) -> dict:
    return ReportDocumentSchema().dump({
        'command': command,
        'input': input_echo,
        'result': result,
        'version': version,
    })
