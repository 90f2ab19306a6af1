import json
from pathlib import Path

import pytest

from basispath import validate_cfg

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# Hand-checked path sets for the 10-node/17-edge illustrative graph, as
# node sequences; rows with a second component carry a disjoint cycle
# that coexists with the main trail under flow conservation alone.
ILLUSTRATIVE_BFS = [
    [0, 1, 2, 9],
    [0, 1, 3, 4, 9],
    [0, 1, 2, 1, 2, 9],
    [0, 1, 3, 5, 6, 9],
    [0, 1, 3, 8, 9],
    [0, 1, 3, 4, 3, 4, 9],
    [0, 1, 3, 5, 7, 5, 6, 9],
    [0, 1, 3, 5, 6, 3, 4, 9],
    [0, 1, 3, 8, 3, 4, 9],
]

ILLUSTRATIVE_HOLISTIC = [
    [0, 1, 2, 9],
    [0, 1, 3, 4, 9],
    [0, 1, 3, 8, 9],
    [0, 1, 3, 5, 6, 9],
    [0, 1, 2, 1, 3, 4, 9],
    [0, 1, 3, 4, 3, 8, 9],
    [0, 1, 3, 8, 3, 4, 9],
    [0, 1, 3, 5, 6, 3, 4, 9],
    [0, 1, 3, 5, 7, 5, 6, 9],
]

ILLUSTRATIVE_INCREMENTAL = [
    [0, 1, 2, 9],
    [0, 1, 2, 1, 2, 9],
    [0, 1, 3, 4, 9],
    [0, 1, 3, 8, 9],
    [0, 1, 3, 4, 3, 4, 9],
    [0, 1, 3, 8, 3, 4, 9],
    [0, 1, 3, 5, 6, 9],
    [0, 1, 3, 5, 6, 3, 4, 9],
    [0, 1, 3, 5, 7, 5, 6, 9],
]

# (trail, disjoint cycle or None); the cycle rows are the subtour pathology.
ILLUSTRATIVE_NOSUBTOUR = [
    ([0, 1, 3, 8, 9], None),
    ([0, 1, 2, 9], None),
    ([0, 1, 3, 4, 9], None),
    ([0, 1, 2, 9], [3, 4, 3]),
    ([0, 1, 2, 9], [5, 7, 5]),
    ([0, 1, 2, 9], [3, 5, 6, 3]),
    ([0, 1, 2, 1, 2, 9], None),
    ([0, 1, 2, 9], [3, 8, 3]),
    ([0, 1, 3, 5, 6, 9], None),
]


def load_fixture(name):
    with open(FIXTURES / f"{name}.json", encoding="utf-8") as fh:
        return validate_cfg(json.load(fh))


@pytest.fixture(scope="session")
def double_diamond():
    return load_fixture("double_diamond")


@pytest.fixture(scope="session")
def illustrative():
    return load_fixture("illustrative_k9")


@pytest.fixture(scope="session")
def single_edge():
    return load_fixture("single_edge")


@pytest.fixture(scope="session")
def chain5():
    return load_fixture("chain5")


@pytest.fixture(scope="session")
def loop_branch():
    return load_fixture("loop_branch")


@pytest.fixture(scope="session")
def nested_loops():
    return load_fixture("nested_loops")
