import pytest

from involq import (
    Generator,
    MontesinosParams,
    Presentation,
    Relation,
    enumerate_quandle,
    presentation,
)

_cache = {}


def trefoil_presentation() -> Presentation:
    return Presentation(
        (Generator(1, "1"), Generator(2, "2")),
        (Relation((1, (2, 1)), (2, ())),),
    )


def montesinos_quandle(p: int, q: int, e: int):
    """Enumerate one parameter triple, cached across the test session."""
    key = (p, q, e)
    if key not in _cache:
        _cache[key] = enumerate_quandle(presentation(MontesinosParams(p, q, e)))
    return _cache[key]


@pytest.fixture(scope="session")
def trefoil():
    return enumerate_quandle(trefoil_presentation())
