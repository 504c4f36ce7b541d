"""JSON schema for input documents; see docs/input_format.md."""

_scalar = {"oneOf": [{"type": "integer"},
                     {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*-?\d+)?\s*$"}]}
_label = {"type": "string", "minLength": 1}

_table = {"type": "array", "items": {"type": "array", "minItems": 4, "maxItems": 4,
                                     "prefixItems": [_label, _label, _label, _scalar],
                                     "items": False}}

_ops_algebra = {"type": "object",
                "patternProperties": {r"^[3-9]$|^[1-9][0-9]+$": {
                    "type": "array",
                    "items": {"type": "array", "minItems": 5}}},
                "additionalProperties": False}

_ops_bimodule = {"type": "object",
                 "patternProperties": {r"^[3-9]$|^[1-9][0-9]+$": {
                     "type": "array",
                     "items": {"type": "array", "minItems": 6,
                               "prefixItems": [{"type": "string", "pattern": "^[AM]+$"}]}}},
                 "additionalProperties": False}

INPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "formality input document",
    "type": "object",
    "required": ["field", "spaces", "algebra"],
    "additionalProperties": False,
    "properties": {
        "field": {"oneOf": [
            {"type": "string", "pattern": r"^(Q|Fp:\d+)$"},
            {"type": "object", "required": ["Fp"], "additionalProperties": False,
             "properties": {"Fp": {"type": "integer", "minimum": 2}}}]},
        "spaces": {"type": "object",
                   "additionalProperties": {
                       "type": "array",
                       "items": {"type": "array", "minItems": 2, "maxItems": 2,
                                 "prefixItems": [_label, {"type": "integer"}], "items": False}}},
        "algebra": {"type": "object", "required": ["space", "products"], "additionalProperties": False,
                    "properties": {"space": _label, "products": _table}},
        "bimodule": {"type": "object", "required": ["space", "left", "right"], "additionalProperties": False,
                     "properties": {"space": _label, "left": _table, "right": _table}},
        "higher_ops": {"type": "object", "additionalProperties": False,
                       "properties": {"algebra": _ops_algebra, "bimodule": _ops_bimodule}},
        "task": {"type": "object", "additionalProperties": False,
                 "properties": {
                     "window": {"type": "string"},
                     "k": {"type": "integer", "minimum": 2},
                     "target_arity": {"type": "integer", "minimum": 3},
                     "sparse_d": {"type": "integer", "minimum": 0},
                     "theorem": {"type": "string"},
                     "mode": {"enum": ["algebra", "pair", "bimodule"]},
                     "complex": {"enum": ["HC", "BC", "HCE"]},
                     "kind": {"enum": ["hochschild", "pair", "bimodule"]},
                     "range": {"type": "integer", "minimum": 0}}},
    },
}
