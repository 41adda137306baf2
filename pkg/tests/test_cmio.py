import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ergoscope import CovarianceParseError, InvalidStateError, RandomStateConfig, cmio, random_pure_cm, vacuum


@given(st.integers(0, 2**32), st.integers(1, 5))
def test_round_trip_is_exact(seed, n):
    cm = random_pure_cm(RandomStateConfig(n, 2.0 * n + 7.5, seed))
    back = cmio.loads(cmio.dumps(cm))
    assert np.array_equal(back.data, cm.data)


def test_document_layout():
    doc = json.loads(cmio.dumps(vacuum(2)))
    assert doc == {"n_modes": 2, "ordering": "qpqp", "matrix": np.eye(4).tolist()}


def test_file_round_trip(tmp_path):
    cm = random_pure_cm(RandomStateConfig(2, 9.0, 1))
    path = tmp_path / "state.json"
    cmio.dump(cm, path)
    assert np.array_equal(cmio.load(path).data, cm.data)


def test_reader_symmetrises():
    doc = {"n_modes": 1, "ordering": "qpqp", "matrix": [[2.0, 0.1 + 1e-12], [0.1, 1.0]]}
    cm = cmio.cm_from_dict(doc)
    assert cm.data[0, 1] == cm.data[1, 0]


def test_syntax_error_carries_position():
    with pytest.raises(CovarianceParseError) as info:
        cmio.loads('{"n_modes": 1,\n "matrix": [[1, 0], [0, 1]\n}')
    assert info.value.line == 3
    assert info.value.column is not None


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"matrix": [[1, 0], [0, 1]]},
        {"n_modes": 1},
        {"n_modes": 1, "ordering": "qqpp", "matrix": [[1, 0], [0, 1]]},
        {"n_modes": 2, "matrix": [[1, 0], [0, 1]]},
        {"n_modes": 1, "matrix": [[1, "x"], [0, 1]]},
        {"n_modes": 0, "matrix": []},
        {"n_modes": 1, "matrix": [[1, 0], [0, 1]], "displacement": [0, 0]},
    ],
)
def test_structural_errors(doc):
    with pytest.raises(CovarianceParseError):
        cmio.cm_from_dict(doc)


def test_unphysical_matrix_rejected():
    with pytest.raises(InvalidStateError):
        cmio.loads('{"n_modes": 1, "ordering": "qpqp", "matrix": [[0.5, 0], [0, 1]]}')
    assert cmio.loads('{"n_modes": 1, "matrix": [[0.5, 0], [0, 1]]}', check=False).n_modes == 1
