from __future__ import annotations

import pytest

from roughpart import Fixture, standard_fixture


@pytest.fixture(scope="session")
def std() -> Fixture:
    return standard_fixture()


def subsets_by_label(fixture: Fixture) -> dict[str, object]:
    """Label-keyed map of every subset of the fixture universe."""
    universe = fixture.universe
    return {s.label(): s for s in universe.subsets()}
