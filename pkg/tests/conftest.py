import numpy as np
import pytest

from wdnoma import ldpc, modem


@pytest.fixture(scope="session")
def qpsk():
    return modem.qpsk()


@pytest.fixture(scope="session")
def bpsk():
    return modem.bpsk()


@pytest.fixture(scope="session")
def im_cfg_43():
    # the headline layout: subblocks of 4 with 3 active, QPSK
    return modem.make_im_config(128, 4, 3, 4)


@pytest.fixture(scope="session")
def code256():
    return ldpc.construct_code(256, 0.5, seed=1)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
