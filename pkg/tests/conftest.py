import pytest

import overcong.prover as prover


@pytest.fixture(autouse=True)
def _reset_disk_cache():
    yield
    prover.set_disk_cache(None)
