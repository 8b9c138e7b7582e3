"""JSON scenario documents consumed by the command-line interface.

A scenario has up to four blocks::

    {
      "network": {"family": "hypercube", "theta": 1, "g": 3, "kappa": 1.0, "omega": 0.0},
      "bath": {"kind": "ohmic", "gamma": 1.0, "Gamma": 1.0, "r": 0.5},
      "state": [{"kind": "fock", "coeffs": [[0.6, 0], [0, 0.8]]}, {"kind": "vacuum"}],
      "run": {"tau": 3.14159, "temperature": 0.5, "M": 3, "seed": 7}
    }

Node labels in every emitted report are 1-based.
"""

from __future__ import annotations

import json
from os import PathLike
from pathlib import Path
from typing import Any, Union

import jsonschema
import numpy as np

from . import bath as _bath
from . import states as _states
from . import topology as _topology

_number = {"type": "number"}
_pos = {"type": "number", "exclusiveMinimum": 0}
_nonneg = {"type": "number", "minimum": 0}
_pair = {"type": "array", "items": _number, "minItems": 2, "maxItems": 2}

NODE_SCHEMA = {
    "oneOf": [
        {"type": "object", "properties": {"kind": {"const": "vacuum"}}, "required": ["kind"],
         "additionalProperties": False},
        {"type": "object", "properties": {"kind": {"const": "fock"},
                                          "coeffs": {"type": "array", "items": _pair, "minItems": 1}},
         "required": ["kind", "coeffs"], "additionalProperties": False},
        {"type": "object", "properties": {"kind": {"const": "coherent"}, "alpha": _pair},
         "required": ["kind", "alpha"], "additionalProperties": False},
        {"type": "object", "properties": {"kind": {"const": "ghz"}, "m": {"type": "integer", "minimum": 1}},
         "required": ["kind", "m"], "additionalProperties": False},
    ]
}

NETWORK_SCHEMA = {
    "type": "object",
    "properties": {
        "family": {"enum": ["path2", "path3", "hypercube", "engineered_chain", "custom"]},
        "theta": {"enum": [1, 2]},
        "g": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 1},
        "kappa": _pos,
        "lambda": _pos,
        "omega": _nonneg,
        "adjacency": {"type": "array", "items": {"type": "array", "items": {"enum": [0, 1]}}},
    },
    "required": ["family"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"family": {"const": "hypercube"}}},
         "then": {"required": ["theta", "g"], "not": {"anyOf": [{"required": ["lambda"]}, {"required": ["n"]},
                                                                 {"required": ["adjacency"]}]}}},
        {"if": {"properties": {"family": {"enum": ["path2", "path3"]}}},
         "then": {"not": {"anyOf": [{"required": ["lambda"]}, {"required": ["g"]}, {"required": ["theta"]},
                                    {"required": ["n"]}, {"required": ["adjacency"]}]}}},
        {"if": {"properties": {"family": {"const": "engineered_chain"}}},
         "then": {"required": ["n"], "not": {"anyOf": [{"required": ["kappa"]}, {"required": ["g"]},
                                                       {"required": ["theta"]}, {"required": ["adjacency"]}]}}},
        {"if": {"properties": {"family": {"const": "custom"}}},
         "then": {"required": ["adjacency"], "not": {"anyOf": [{"required": ["lambda"]}, {"required": ["g"]},
                                                               {"required": ["theta"]}]}}},
    ],
}

BATH_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["ohmic", "discrete"]},
        "gamma": _nonneg,
        "Gamma": _pos,
        "r": _nonneg,
        "modes": {"type": "array", "items": {"type": "array", "items": _number, "minItems": 2, "maxItems": 2},
                  "minItems": 1},
        "csv": {"type": "string"},
    },
    "required": ["kind"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"kind": {"const": "ohmic"}}}, "then": {"required": ["gamma", "Gamma"]}},
        {"if": {"properties": {"kind": {"const": "discrete"}}},
         "then": {"oneOf": [{"required": ["modes"]}, {"required": ["csv"]}]}},
    ],
}

RUN_SCHEMA = {
    "type": "object",
    "properties": {
        "seed": {"type": "integer", "minimum": 0},
        "out": {"type": "string"},
        "time": _nonneg,
        "tau": _pos,
        "temperature": _nonneg,
        "M": {"type": "integer", "minimum": 1},
        "lambda": _pos,
        "lambda_grid": {"type": "array", "items": _pos, "minItems": 1},
        "temperature_grid": {"type": "array", "items": _nonneg, "minItems": 1},
        "chain_n": {"type": "integer", "minimum": 2},
        "samples": {"type": "integer", "minimum": 100},
        "tolerance": _pos,
        "t_max": _pos,
    },
    "additionalProperties": False,
}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "photonswap scenario",
    "type": "object",
    "properties": {
        "network": NETWORK_SCHEMA,
        "bath": BATH_SCHEMA,
        "state": {"type": "array", "items": NODE_SCHEMA},
        "run": RUN_SCHEMA,
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "photonswap report",
    "type": "object",
    "properties": {
        "command": {"enum": ["topology", "verify", "fidelity"]},
        "scenario": SCENARIO_SCHEMA,
        "passed": {"type": "boolean"},
    },
    "required": ["command", "scenario"],
}


class ScenarioError(ValueError):
    pass


def validate(doc: Any, schema: dict = SCENARIO_SCHEMA) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioError(f"{where}: {exc.message}") from exc


def load(path: Union[str, PathLike]) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON: {exc}") from exc
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc.strerror}") from exc
    validate(doc)
    base = Path(path).resolve().parent
    bath = doc.get("bath")
    if bath and "csv" in bath and not Path(bath["csv"]).is_absolute():
        bath["csv"] = str(base / bath["csv"])
    return doc


def build_coupling(network: dict) -> _topology.CouplingMatrix:
    family = network["family"]
    if family == "engineered_chain":
        return _topology.engineered_chain(network["n"], network.get("lambda", 1.0))
    kappa = network.get("kappa", 1.0)
    if family in ("path2", "path3"):
        graph = _topology.path_graph(int(family[-1]))
    elif family == "hypercube":
        graph = _topology.hypercube(network["theta"], network["g"])
    else:
        graph = _topology.Graph(np.asarray(network["adjacency"], dtype=float), family="custom")
    if "n" in network and network["n"] != graph.n_nodes:
        raise ScenarioError(f"network.n = {network['n']} but the graph has {graph.n_nodes} nodes")
    return _topology.coupling_from_graph(graph, kappa)


def build_bath(block: dict) -> _bath.BathSpec:
    r = block.get("r", 1.0)
    if block["kind"] == "ohmic":
        return _bath.BathSpec.ohmic(block["gamma"], block["Gamma"], r)
    if "csv" in block:
        return _bath.load_discrete_csv(block["csv"], r)
    modes = np.asarray(block["modes"], dtype=float)
    return _bath.BathSpec.discrete(modes[:, 0], modes[:, 1], r)


def build_state(nodes: list) -> tuple:
    return _states.network_from_json(nodes)


def schema_document() -> str:
    """The scenario schema as pretty-printed JSON."""
    return json.dumps(SCENARIO_SCHEMA, indent=2) + "\n"
