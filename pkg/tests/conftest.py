import pytest

from zzgrade.classify import full_run


@pytest.fixture(scope="session")
def bundle():
    """One full classification run shared across the suite (cross-checking
    the fingerprint path against full-rank identification on every diagonal
    record)."""
    return full_run(cross_check=True)
