import pytest

from cyclecover.graphs import generate_named
from cyclecover.reduced import build_reduced

BRIDGELESS_CORPUS = (
    "k33",
    "cube",
    "petersen",
    "heawood",
    "pappus",
    "desargues",
    "moebius_kantor",
)
FULL_CORPUS = BRIDGELESS_CORPUS + ("bridged_gadget",)


@pytest.fixture(scope="session")
def corpus_graphs():
    return {name: generate_named(name) for name in FULL_CORPUS}


@pytest.fixture(scope="session")
def corpus_structures(corpus_graphs):
    return {name: build_reduced(g) for name, g in corpus_graphs.items()}


@pytest.fixture(scope="session")
def k33_structure(corpus_structures):
    return corpus_structures["k33"]


@pytest.fixture(scope="session")
def petersen_structure(corpus_structures):
    return corpus_structures["petersen"]
