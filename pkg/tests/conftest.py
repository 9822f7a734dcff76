import pytest

from affblocks.affine_weyl import reset_groups
from affblocks.hecke import reset_engines


@pytest.fixture
def cold():
    """Drop every in-memory polynomial before and after the test."""
    reset_engines()
    yield
    reset_engines()


def a1_alcove(k: int) -> tuple[int]:
    """The A1 alcove between k and k+1."""
    return (k + 1,)
