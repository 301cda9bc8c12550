from __future__ import annotations

import os
import random

import pytest
from hypothesis import HealthCheck, settings

from frechet_xlate.curves import Curve, random_curve

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@pytest.fixture
def example_a():
    return Curve.from_points([(0, 0), (2, 0)]), Curve.from_points([(0, 1), (2, 1)])


def random_pair(seed: int, lo: int = 2, hi: int = 6):
    rng = random.Random(seed)
    return random_curve(rng.randrange(2**31), rng.randint(lo, hi)), random_curve(rng.randrange(2**31), rng.randint(lo, hi))
