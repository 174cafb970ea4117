"""JSON encoding of the operator types; schema tag "liftkit/1".

Matrices are {"rows", "cols", "re", "im"} with row-major coefficient
lists, so files are diffable and independent of numpy.  Encoders return
plain dicts; write with json.dumps(..., sort_keys=True) for byte-stable
output.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ConfigError
from .hardy import PolyOpFn
from .lifting import InterpolationProblem
from .linalg import Subspace, as_operator
from .modelspace import BlaschkeFactor, InnerFn
from .rcl import RclDataSet
from .schur import SchurRealization

SCHEMA = "liftkit/1"


def matrix_to_json(M) -> dict:
    A = as_operator(M)
    return {"rows": A.shape[0], "cols": A.shape[1],
            "re": [float(x) for x in A.real.ravel()],
            "im": [float(x) for x in A.imag.ravel()]}


def matrix_from_json(d: dict) -> np.ndarray:
    try:
        rows, cols = int(d["rows"]), int(d["cols"])
        re = np.asarray(d["re"], dtype=np.float64).reshape(rows, cols)
        im = np.asarray(d["im"], dtype=np.float64).reshape(rows, cols)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed matrix record: {exc}") from exc
    return re + 1j * im


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient": s.ambient_dim, "basis": matrix_to_json(s.basis)}


def subspace_from_json(d: dict) -> Subspace:
    return Subspace(int(d["ambient"]), matrix_from_json(d["basis"]))


def poly_to_json(p: PolyOpFn) -> dict:
    return {"out": p.out_dim, "in": p.in_dim,
            "coeffs": [matrix_to_json(c) for c in p.coeffs]}


def poly_from_json(d: dict) -> PolyOpFn:
    coeffs = tuple(matrix_from_json(c) for c in d["coeffs"])
    return PolyOpFn(int(d["out"]), int(d["in"]), coeffs)


def schur_to_json(s: SchurRealization) -> dict:
    return {"A": matrix_to_json(s.A), "B": matrix_to_json(s.B),
            "C": matrix_to_json(s.C), "D": matrix_to_json(s.D)}


def schur_from_json(d: dict) -> SchurRealization:
    return SchurRealization(matrix_from_json(d["A"]), matrix_from_json(d["B"]),
                            matrix_from_json(d["C"]), matrix_from_json(d["D"]))


def problem_to_json(p: InterpolationProblem) -> dict:
    return {"U": p.U_dim, "Y": p.Y_dim, "F": subspace_to_json(p.F),
            "omega1": matrix_to_json(p.omega1),
            "omega2": matrix_to_json(p.omega2)}


def problem_from_json(d: dict) -> InterpolationProblem:
    return InterpolationProblem(U_dim=int(d["U"]), Y_dim=int(d["Y"]),
                                F=subspace_from_json(d["F"]),
                                omega1=matrix_from_json(d["omega1"]),
                                omega2=matrix_from_json(d["omega2"]))


def dataset_to_json(ds: RclDataSet) -> dict:
    return {"A": matrix_to_json(ds.A), "Tprime": matrix_to_json(ds.Tprime),
            "R": matrix_to_json(ds.R), "Q": matrix_to_json(ds.Q)}


def dataset_from_json(d: dict) -> RclDataSet:
    return RclDataSet(A=matrix_from_json(d["A"]),
                      Tprime=matrix_from_json(d["Tprime"]),
                      R=matrix_from_json(d["R"]),
                      Q=matrix_from_json(d["Q"]))


def inner_to_json(t: InnerFn) -> dict:
    if t.kind == "power":
        return {"kind": "power", "N": t.power, "V0": matrix_to_json(t.V0)}
    if t.power != 1:
        raise ConfigError("bp_product serialization assumes a single leading shift")
    return {"kind": "bp_product",
            "factors": [{"a": [float(f.a.real), float(f.a.imag)],
                         "w": matrix_to_json(f.w.reshape(-1, 1))}
                        for f in t.factors],
            "V0": matrix_to_json(t.V0)}


def inner_from_json(d: dict) -> InnerFn:
    V0 = matrix_from_json(d["V0"])
    if d.get("kind") == "power":
        return InnerFn(kind="power", out_dim=V0.shape[0], in_dim=V0.shape[1],
                       power=int(d["N"]), V0=V0)
    if d.get("kind") == "bp_product":
        facs = tuple(BlaschkeFactor(a=complex(f["a"][0], f["a"][1]),
                                    w=matrix_from_json(f["w"]).ravel())
                     for f in d["factors"])
        return InnerFn(kind="bp_product", out_dim=V0.shape[0],
                       in_dim=V0.shape[1], factors=facs, V0=V0)
    raise ConfigError(f"unknown inner-function kind {d.get('kind')!r}")


def dumps(payload: dict) -> str:
    """Deterministic serialization used for every file the tools write."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def save(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(payload))


def load(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
