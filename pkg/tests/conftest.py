import pytest

from ufg import rng
from ufg.model import GENOME_LENGTH, MapGenome, decode


def keyed_genome(seed: int, index: int = 0) -> MapGenome:
    return MapGenome(rng.KeyedRng(seed, 0, index, 0).units(GENOME_LENGTH, 0))


@pytest.fixture(scope="session")
def random_layouts():
    """A couple dozen decoded random maps shared by the slower analysis tests."""
    return [decode(keyed_genome(4242, i)) for i in range(24)]
