from __future__ import annotations

import pytest

from skelsig.atlas import build_atlas
from skelsig.catalog import default_catalog

_ATLASES: dict = {}


def atlas_for(genus: int):
    """Atlases are deterministic, so build each genus once per session."""
    if genus not in _ATLASES:
        _ATLASES[genus] = build_atlas(genus, default_catalog())
    return _ATLASES[genus]


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def atlases():
    return atlas_for
