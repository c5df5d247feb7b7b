import pytest

from hnlie.structure import standard_structure


@pytest.fixture(scope="session")
def h():
    return standard_structure()


@pytest.fixture(scope="session")
def spaces(h):
    # Build the three admissible spaces once; admissible_space memoizes.
    from hnlie.classify import admissible_space

    return {alpha: admissible_space(alpha, h) for alpha in (1, 2, 3)}
