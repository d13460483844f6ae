import numpy as np
import pytest

from locc_ops.errors import InputError
from locc_ops.fixtures import build_fixture, fixture_names, load_fixture


@pytest.mark.parametrize("name", fixture_names())
def test_shipped_files_match_their_constructors(name):
    shipped = load_fixture(name)
    built = build_fixture(name)
    assert shipped.dims == built.dims
    assert shipped.labels == built.labels
    for s, t in zip(shipped.states, built.states):
        for u, v in zip(s.locals, t.locals):
            assert np.allclose(u, v, atol=1e-15)


def test_unknown_fixture():
    with pytest.raises(InputError):
        load_fixture("eq99")
