import pytest

from queensgame.tables import generate_tables


@pytest.fixture(scope="session")
def tables10():
    """Generated answer tables for the 10-board (player 2 wins there)."""
    return generate_tables(10)
