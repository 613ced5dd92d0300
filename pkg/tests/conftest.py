"""Shared fixtures: the storyline example KBs and hypothesis settings."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from probalc.parser import parse_kb, parse_query

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# Four axioms about a literary crime.  Axiom indices in file order; the
# annotated view sees ordinals 0 (0.2), 1 (0.6) and 2 (0.7).
CRIME_TEXT = """\
0.2 :: Nihilist <= GreatMan
exists killed. Top <= Nihilist
0.6 :: (raskolnikov, alyona) : killed
0.7 :: (raskolnikov, lizaveta) : killed
"""

# Same axioms without annotations, for plain entailment work.
CRIME_CERTAIN_TEXT = """\
Nihilist <= GreatMan
exists killed. Top <= Nihilist
(raskolnikov, alyona) : killed
(raskolnikov, lizaveta) : killed
"""

CRIME_QUERY_TEXT = "raskolnikov : GreatMan"


@pytest.fixture(scope="session")
def crime_kb():
    return parse_kb(CRIME_TEXT)


@pytest.fixture(scope="session")
def crime_certain_kb():
    return parse_kb(CRIME_CERTAIN_TEXT)


@pytest.fixture(scope="session")
def crime_query():
    return parse_query(CRIME_QUERY_TEXT)
