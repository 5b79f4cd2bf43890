"""Structured text interchange for matrices, polynomials, and systems.

Documents are JSON objects; complex numbers are [re, im] pairs and
matrices row-major lists of them.  Python's float repr is shortest
round-trip, so dumping and re-loading a document reproduces every finite
double bit-exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import DimensionMismatch
from .feedback import SkewFeedback, SolutionSet
from .matcore import Poly, as_cmatrix
from .sysreal import Realization, SymmetryType

__all__ = [
    "matrix_to_doc",
    "matrix_from_doc",
    "poly_to_doc",
    "poly_from_doc",
    "realization_to_doc",
    "realization_from_doc",
    "feedback_to_doc",
    "feedback_from_doc",
    "solution_set_to_doc",
    "dumps",
    "load_path",
]


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_to_doc(M) -> dict:
    M = as_cmatrix(M)
    return {
        "rows": M.shape[0],
        "cols": M.shape[1],
        "data": [_pair(z) for z in M.reshape(-1)],
    }


def matrix_from_doc(doc: dict) -> np.ndarray:
    rows, cols = int(doc["rows"]), int(doc["cols"])
    data = doc["data"]
    if len(data) != rows * cols:
        raise DimensionMismatch("matrix document data length mismatch")
    flat = [complex(re, im) for re, im in data]
    return np.array(flat, dtype=np.complex128).reshape(rows, cols)


def poly_to_doc(p: Poly) -> dict:
    return {"coeffs": [_pair(c) for c in p.coeffs]}


def poly_from_doc(doc: dict) -> Poly:
    return Poly(tuple(complex(re, im) for re, im in doc["coeffs"]))


def realization_to_doc(r: Realization) -> dict:
    return {
        "n": r.n,
        "m": r.m,
        "A": matrix_to_doc(r.A),
        "B": matrix_to_doc(r.B),
        "C": matrix_to_doc(r.C),
        "D": matrix_to_doc(r.D),
        "symmetry": r.symmetry.value if r.symmetry else None,
    }


def realization_from_doc(doc: dict) -> Realization:
    tag = doc.get("symmetry")
    r = Realization(
        matrix_from_doc(doc["A"]),
        matrix_from_doc(doc["B"]),
        matrix_from_doc(doc["C"]),
        matrix_from_doc(doc["D"]),
        symmetry=SymmetryType.parse(tag) if tag else None,
    )
    if "n" in doc and int(doc["n"]) != r.n:
        raise DimensionMismatch("declared n does not match matrix shapes")
    if "m" in doc and int(doc["m"]) != r.m:
        raise DimensionMismatch("declared m does not match matrix shapes")
    return r


def feedback_to_doc(f: SkewFeedback) -> dict:
    return {"m": f.m, "coords": [_pair(c) for c in f.coords]}


def feedback_from_doc(doc: dict) -> SkewFeedback:
    if "coords" in doc:
        return SkewFeedback(
            int(doc["m"]), tuple(complex(re, im) for re, im in doc["coords"])
        )
    return SkewFeedback.from_matrix(matrix_from_doc(doc))


def solution_set_to_doc(sols: SolutionSet, charpolys=None) -> dict:
    entries = []
    for i, f in enumerate(sols.solutions):
        entry = {
            "coords": [_pair(c) for c in f.coords],
            "residual": sols.residuals[i],
            "is_real": sols.is_real[i],
        }
        if charpolys is not None:
            entry["charpoly"] = poly_to_doc(charpolys[i])
        entries.append(entry)
    return {
        "count": len(sols.solutions),
        "solutions": entries,
        "starts_used": sols.starts_used,
        "converged_starts": sols.converged_starts,
        "underdetermined": sols.underdetermined,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def load_path(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
