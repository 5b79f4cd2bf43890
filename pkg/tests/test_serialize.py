import json

import numpy as np
from support import crandn, structured_realization

from skewctl.feedback import SkewFeedback
from skewctl.matcore import Poly
from skewctl.serialize import (
    dumps,
    feedback_from_doc,
    feedback_to_doc,
    matrix_from_doc,
    matrix_to_doc,
    poly_from_doc,
    poly_to_doc,
    realization_from_doc,
    realization_to_doc,
)
from skewctl.sysreal import SymmetryType


def test_matrix_round_trip_bit_exact():
    rng = np.random.default_rng(0)
    M = crandn(rng, 3, 5) * np.pi
    doc = json.loads(dumps(matrix_to_doc(M)))
    back = matrix_from_doc(doc)
    assert np.array_equal(back, M)


def test_matrix_round_trip_extreme_doubles():
    M = np.array([[1e-308 + 1e300j, -0.0 + 0.1j], [1 / 3, 2**-52]])
    back = matrix_from_doc(json.loads(dumps(matrix_to_doc(M))))
    assert np.array_equal(back, M.astype(np.complex128))


def test_poly_round_trip():
    p = Poly((0.1 + 0.2j, -1 / 7, 1.0))
    back = poly_from_doc(json.loads(dumps(poly_to_doc(p))))
    assert back.coeffs == p.coeffs


def test_realization_round_trip_with_tag():
    rng = np.random.default_rng(1)
    r = structured_realization(SymmetryType.SKEW_HAMILTONIAN, 4, 2, rng)
    doc = json.loads(dumps(realization_to_doc(r)))
    back = realization_from_doc(doc)
    assert np.array_equal(back.A, r.A)
    assert np.array_equal(back.B, r.B)
    assert np.array_equal(back.C, r.C)
    assert back.symmetry is SymmetryType.SKEW_HAMILTONIAN


def test_feedback_round_trip():
    f = SkewFeedback(3, (1 + 2j, -0.25, 0.125j))
    back = feedback_from_doc(json.loads(dumps(feedback_to_doc(f))))
    assert back.coords == f.coords


def test_feedback_from_matrix_doc():
    f = SkewFeedback(2, (0.5,))
    doc = matrix_to_doc(f.matrix)
    assert feedback_from_doc(doc).coords == f.coords
