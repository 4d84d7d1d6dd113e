import pytest

import goldens
from fcn.semantics import Interp


@pytest.fixture(scope="session")
def bakery():
    sig, val = goldens.bakery_signature()
    return sig, val


@pytest.fixture(scope="session")
def interp(bakery):
    sig, val = bakery
    return Interp(sig, val)
