import json
import random

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from frechet_xlate.curves import Curve
from frechet_xlate.freespace import alt_godau_decide, build_skeleton, frechet_value
from frechet_xlate.fsg import BOUNDARY, build_fsg, fsg_reachable

from conftest import random_pair


def test_example_line_counts(example_a):
    g = build_fsg(build_skeleton(*example_a, 1.2))
    assert len(g.vertical) == 4 and len(g.horizontal) == 4
    assert g.weights.size == 16


def test_empty_free_space_is_bare_corner_lattice():
    pi = Curve.from_points([(0, 0), (1, 0), (2, 0)])
    sigma = Curve.from_points([(0, 5), (1, 5)])
    g = build_fsg(build_skeleton(pi, sigma, 1.0))
    assert g.shape == (3, 2)
    assert not g.weights.any()


def test_identical_curves_at_zero():
    c = Curve.from_points([(0, 0), (1, 0), (1, 1)])
    g = build_fsg(build_skeleton(c, c, 0.0))
    assert g.shape == (3, 3)
    assert np.array_equal(g.weights, np.eye(3, dtype=np.uint8))
    assert fsg_reachable(g)


def test_reachable_examples(example_a):
    assert fsg_reachable(build_fsg(build_skeleton(*example_a, 1.0)))
    assert not fsg_reachable(build_fsg(build_skeleton(*example_a, 0.9)))
    g = build_fsg(build_skeleton(*example_a, 1.2))
    g.weights[:] = 1
    assert fsg_reachable(g)


def test_right_up_only_misses_segment_shaped_free_space(example_a):
    # at delta = d_F the free space of this cell is a single diagonal segment
    g = build_fsg(build_skeleton(*example_a, 1.0))
    assert not fsg_reachable(g, diagonal=False)


def test_fsg_matches_direct_decision_on_random_pairs():
    agree = 0
    for seed in range(200):
        pi, sigma = random_pair(seed)
        d = frechet_value(pi, sigma, 1e-6) * random.Random(seed).uniform(0.8, 1.2)
        sk = build_skeleton(pi, sigma, d)
        g = build_fsg(sk)
        agree += fsg_reachable(g) == alt_godau_decide(pi, sigma, d) == fsg_reachable(g, diagonal=False)
    assert agree == 200


@given(st.integers(0, 10**6), st.floats(0.05, 1.0))
@settings(max_examples=40)
def test_interior_ones_and_contiguous_membership(seed, d):
    pi, sigma = random_pair(seed)
    g = build_fsg(build_skeleton(pi, sigma, d))
    assert np.all(g.weights[g.classes == 2] == 1)
    assert len(g.vertical) == pi.n + sum(build_skeleton(pi, sigma, d).m_col)
    hb = [b for b, h in enumerate(g.horizontal) if h.origin == BOUNDARY]
    for a, v in enumerate(g.vertical):
        if v.origin != BOUNDARY:
            continue
        for lo, hi in zip(hb, hb[1:]):
            seq = g.weights[a, lo + 1:hi].tolist()
            ones = [k for k, x in enumerate(seq) if x]
            assert not ones or ones == list(range(ones[0], ones[-1] + 1))


def test_json_dump(example_a):
    data = json.loads(build_fsg(build_skeleton(*example_a, 1.2)).to_json())
    assert len(data["vertical"]) == 4 and len(data["weights"]) == 4
