"""JSON wrappers for pairs, scripts and search results.

Matrices embed as the shared text format; floats rely on Python's shortest
round-trip repr, so every serialized double survives a load/dump cycle
bit-exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .bases import Basis, MUPair
from .equivalence import TransformScript
from .errors import FormatError
from .families import FamilyParams
from .linalg import format_matrix, parse_matrix
from .search import ExtensionResult, MUVectorSet, OrthoGraph


def basis_to_dict(basis: Basis) -> dict:
    """Optional JSON wrapper for a single basis: dimension, inline matrix
    text, and label names when product provenance is known."""
    return {
        "dim": basis.dim,
        "matrix": format_matrix(basis.matrix),
        "labels": None if basis.labels is None else [l.name for l in basis.labels],
    }


def basis_from_dict(data: dict) -> Basis:
    """Read a basis wrapper; "matrix" may be inline text (contains newlines)
    or a path to a matrix text file. Label names are informational and are
    not reattached."""
    try:
        raw = data["matrix"]
    except KeyError as exc:
        raise FormatError("basis JSON is missing the 'matrix' key") from exc
    if "\n" in raw:
        matrix = parse_matrix(raw)
    else:
        with open(raw, "r", encoding="utf-8") as fh:
            matrix = parse_matrix(fh.read())
    basis = Basis(matrix)
    if "dim" in data and int(data["dim"]) != basis.dim:
        raise FormatError(
            f"basis JSON declares dim {data['dim']} but the matrix has dim {basis.dim}"
        )
    return basis


def pair_to_dict(pair: MUPair) -> dict:
    out: dict = {
        "first": format_matrix(pair.first.matrix),
        "second": format_matrix(pair.second.matrix),
        "family": pair.family,
        "params": pair.params.present() if pair.params is not None else None,
    }
    labels = {}
    for member_name, basis in (("first", pair.first), ("second", pair.second)):
        if basis.labels is not None:
            labels[member_name] = [label.name for label in basis.labels]
    if labels:
        out["labels"] = labels
    return out


def pair_from_dict(data: dict) -> MUPair:
    try:
        first = parse_matrix(data["first"])
        second = parse_matrix(data["second"])
    except KeyError as exc:
        raise FormatError(f"pair JSON is missing key {exc}") from exc
    family = data.get("family")
    raw_params = data.get("params")
    params = FamilyParams(**raw_params) if raw_params else None
    return MUPair(Basis(first), Basis(second), family=family, params=params)


def script_to_dict(script: TransformScript) -> dict:
    return script.to_json_dict()


def script_from_dict(data: dict) -> TransformScript:
    return TransformScript.from_json_dict(data)


def _vector_to_json(vec: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in vec]


def _vector_from_json(data) -> np.ndarray:
    return np.array([complex(re, im) for re, im in data], dtype=np.complex128)


def vector_set_to_dict(vecset: MUVectorSet) -> dict:
    return {
        "pair": pair_to_dict(vecset.pair),
        "clusters": [
            {"vector": _vector_to_json(v), "residual": float(r), "hits": int(h)}
            for v, r, h in zip(vecset.vectors, vecset.residuals, vecset.hits)
        ],
        "manifold_warning": bool(vecset.manifold_warning),
    }


def graph_to_dict(graph: OrthoGraph) -> dict:
    return {
        "num_vectors": graph.num_vectors,
        "edges": [[int(i), int(j)] for i, j in graph.edges],
        "min_abs_overlap": graph.min_abs_overlap,
        "max_abs_overlap": graph.max_abs_overlap,
    }


def extension_result_to_dict(result: ExtensionResult) -> dict:
    out = vector_set_to_dict(result.vectors)
    out["graph"] = graph_to_dict(result.graph)
    out["max_clique_size"] = int(result.max_clique_size)
    out["extension_basis"] = (
        None if result.basis is None else format_matrix(result.basis.matrix)
    )
    return out


def vectors_from_dict(data: dict) -> tuple[np.ndarray, ...]:
    """Extract the cluster vectors from a serialized search result."""
    try:
        clusters = data["clusters"]
    except KeyError as exc:
        raise FormatError("vector-set JSON is missing the 'clusters' key") from exc
    return tuple(_vector_from_json(c["vector"]) for c in clusters)


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def load_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object at the top level")
    return data
