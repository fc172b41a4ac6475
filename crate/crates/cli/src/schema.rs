//! JSON schemas of the reports written by each verb.

use serde_json::{json, Value};

fn number_or_null() -> Value {
    json!({"type": ["number", "null"]})
}

fn complex_vector() -> Value {
    json!({
        "type": "array",
        "description": "complex vector flattened as re, im, re, im, ...",
        "items": number_or_null(),
    })
}

fn germ_report() -> Value {
    json!({
        "type": "object",
        "required": ["source", "kind", "nvars", "multiplicity", "cone", "branches", "identity_ok", "smooth", "regularity"],
        "properties": {
            "source": {"type": "string"},
            "kind": {"enum": ["plane-curve", "hypersurface", "parametrized-curve"]},
            "nvars": {"type": "integer", "minimum": 1},
            "multiplicity": {"type": "integer", "minimum": 1},
            "cone": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["k"],
                    "properties": {
                        "direction": complex_vector(),
                        "component": {"type": "string", "description": "squarefree factor of the initial form (n >= 3)"},
                        "k": {"type": "integer", "minimum": 1},
                        "note": {"type": "string"},
                    },
                },
            },
            "branches": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["e", "multiplicity", "tangent", "orientation", "series"],
                    "properties": {
                        "e": {"type": "integer", "minimum": 1},
                        "multiplicity": {"type": "integer", "minimum": 1},
                        "tangent": complex_vector(),
                        "orientation": {"enum": ["x-param", "y-param", "explicit"]},
                        "series": {
                            "type": "array",
                            "description": "terms [num, den, re, im] of sum (re + i im) t^(num/den)",
                            "items": {"type": "array", "minItems": 4, "maxItems": 4},
                        },
                        "truncation_order": {"type": ["array", "null"], "description": "[num, den]"},
                        "coordinates": {
                            "type": "array",
                            "description": "per coordinate, terms [power, re, im]",
                            "items": {"type": "array"},
                        },
                        "residual_order": number_or_null(),
                    },
                },
            },
            "identity_ok": {"type": "boolean"},
            "smooth": {"type": "boolean"},
            "regularity": {"enum": ["smooth", "not-blow-spherical-regular"]},
        },
    })
}

fn decision() -> Value {
    let side = json!({
        "type": "object",
        "properties": {
            "coordinates": {"type": "array", "description": "per coordinate, terms [power, re, im]"},
            "align": {"type": "array", "description": "unitary alignment matrix, rows of [re, im] pairs"},
        },
    });
    json!({
        "type": "object",
        "required": ["equivalent", "sigma", "certificate", "witness", "x", "y"],
        "properties": {
            "equivalent": {"type": "boolean"},
            "sigma": {
                "type": ["array", "null"],
                "description": "pairs [branch of x, branch of y]",
                "items": {"type": "array", "minItems": 2, "maxItems": 2},
            },
            "certificate": {"type": ["string", "null"]},
            "witness": {
                "type": ["array", "null"],
                "items": {
                    "type": "object",
                    "properties": {
                        "pair": {"type": "array"},
                        "multiplicity": {"type": "integer"},
                        "x": side,
                        "y": side,
                    },
                },
            },
            "x": {"type": "object", "properties": {"source": {"type": "string"}, "signature": {"type": "string"}}},
            "y": {"type": "object", "properties": {"source": {"type": "string"}, "signature": {"type": "string"}}},
        },
    })
}

fn oracle() -> Value {
    json!({
        "type": "object",
        "required": ["source", "radii", "per_radius", "seed", "delta", "lines", "cone_deviation", "agree"],
        "properties": {
            "source": {"type": "string"},
            "radii": {"type": "array", "items": {"type": "number"}},
            "per_radius": {"type": "integer"},
            "seed": {"type": "integer"},
            "delta": {"type": "number"},
            "lines": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "direction": complex_vector(),
                        "k_symbolic": {"type": "integer"},
                        "k_oracle": {"type": "integer"},
                    },
                },
            },
            "cone_deviation": {
                "type": "array",
                "items": {"type": "object", "properties": {"r": {"type": "number"}, "max_distance": {"type": "number"}}},
            },
            "agree": {"type": "boolean"},
        },
    })
}

fn family() -> Value {
    json!({
        "type": "object",
        "required": ["source", "generic_m", "exceptional_t", "equimultiple", "sampled"],
        "properties": {
            "source": {"type": "string"},
            "generic_m": {"type": "integer"},
            "exceptional_t": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "exact": {"type": ["string", "null"], "description": "rational p/q"},
                        "approx": {"type": "number"},
                        "order": {"type": ["integer", "null"]},
                    },
                },
            },
            "equimultiple": {"type": "boolean"},
            "sampled": {"type": "array", "description": "pairs [t as p/q, order]", "items": {"type": "array"}},
        },
    })
}

fn multiplicity_equation(input: &str) -> Value {
    json!({
        "type": "object",
        "required": ["n", input, "polynomial", "positive_roots", "degrees"],
        "properties": {
            "n": {"type": "integer", "minimum": 2},
            input: {},
            "polynomial": {"type": "array", "description": "coefficients, constant term first", "items": {"type": "string"}},
            "positive_roots": {"type": "integer", "maximum": 1},
            "degrees": {"type": "array", "items": {"type": "integer", "minimum": 2}, "maxItems": 1},
        },
    })
}

fn selftest() -> Value {
    json!({
        "type": "object",
        "required": ["passed", "seed", "criteria"],
        "properties": {
            "passed": {"type": "boolean"},
            "seed": {"type": "integer"},
            "criteria": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "id": {"type": "integer"},
                        "name": {"type": "string"},
                        "passed": {"type": "boolean"},
                        "seconds": {"type": "number"},
                        "detail": {"type": "string"},
                    },
                },
            },
        },
    })
}

pub fn all() -> Value {
    json!({
        "$schema": "http://json-schema.org/draft-07/schema#",
        "analyze": germ_report(),
        "classify": decision(),
        "oracle": oracle(),
        "family": family(),
        "descartes": multiplicity_equation("mu_prime"),
        "le": multiplicity_equation("lambdas"),
        "selftest": selftest(),
    })
}
