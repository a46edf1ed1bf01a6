import pytest

from matchcert import Instance, figure2_instance


@pytest.fixture
def p4() -> Instance:
    # Path 1-2-3-4 with weights 5, 1, 5 (1-based labels).
    return Instance.from_edges(4, [(0, 1, 5), (1, 2, 1), (2, 3, 5)])


@pytest.fixture
def triangle() -> Instance:
    # w12 = 1, w13 = 2, w23 = 3.
    return Instance.from_edges(3, [(0, 1, 1), (0, 2, 2), (1, 2, 3)])


@pytest.fixture
def fig2() -> Instance:
    return figure2_instance()


@pytest.fixture
def nested_blossom_instance() -> Instance:
    # Triangle 0-1-2 plus the path 2-3-4-0; the run shrinks the triangle,
    # then shrinks an outer blossom around it.
    return Instance.from_edges(
        5, [(0, 1, 0), (1, 2, 0), (0, 2, 0), (2, 3, 2), (3, 4, 0), (0, 4, 2)])


@pytest.fixture
def c5_two_tails() -> Instance:
    # Unit-weight 5-cycle with pendants at nodes 0 and 3. Drives the run
    # through a shrink, an S-labeled blossom with dual 0 (alpha = 0), and
    # the deshrink that follows.
    return Instance.from_edges(
        7, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1),
            (0, 5, 1), (3, 6, 1)])
