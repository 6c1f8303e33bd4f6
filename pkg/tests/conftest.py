import pathlib

import pytest

from knaplab import akleylek

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent

TOY_P = 2579
TOY_G = 2
TOY_X = 1500
TOY_K = 348
TOY_A = (2, 3, 6, 12, 24)


@pytest.fixture(scope="session")
def toy_keypair():
    """The checked-in demonstration key both failure modes are staged on."""
    return akleylek.keypair_from_params(TOY_P, TOY_G, TOY_X, TOY_K, TOY_A)


@pytest.fixture(scope="session")
def toy_params_path():
    return REPO_ROOT / "fixtures" / "toy-original.params"
