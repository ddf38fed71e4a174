import functools
import os

import pytest

from vck.enumeration import enumerate_virtual_pairs


@functools.lru_cache(maxsize=None)
def involutive_pairs(max_n=3):
    """Every virtual pair with an involutive virtual map, sizes 2..max_n."""
    return tuple(c.representative for n in range(2, max_n + 1) for c in enumerate_virtual_pairs(n, strict=True))


@pytest.fixture(scope="session")
def small_pairs():
    return involutive_pairs()


def pytest_collection_modifyitems(config, items):
    if os.environ.get("VCK_LONG"):
        return
    skip = pytest.mark.skip(reason="long-running; set VCK_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)
