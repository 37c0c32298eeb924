import cmath
import math
import os

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polyan.algebra import ExpPoly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

coefs = st.builds(
    lambda r, t: cmath.rect(r, t),
    st.floats(0.05, 1.0),
    st.floats(0.0, 2 * math.pi),
)


@st.composite
def exppolys(draw, max_a=4, max_b=4, max_c=2, max_d=2, factors=((0, 0, 0), (1, 0, 0)), max_terms=6):
    n = draw(st.integers(0, max_terms))
    terms = []
    for _ in range(n):
        e = (
            draw(st.integers(0, max_a)),
            draw(st.integers(0, max_b)),
            draw(st.integers(0, max_c)),
            draw(st.integers(0, max_d)),
        )
        terms.append((e, draw(coefs)))
    m = draw(st.sampled_from(factors))
    return ExpPoly(terms, *m)


def polyanalytic(draw_rng: np.random.Generator, max_a=8, max_b=6, m1=0, n_terms=8, with_w=True) -> ExpPoly:
    """Random datum with z-degree <= max_a, zb-degree <= max_b and unit-disc coefficients."""
    terms = []
    for _ in range(n_terms):
        r = math.sqrt(draw_rng.uniform())
        t = draw_rng.uniform(0, 2 * math.pi)
        e = (
            int(draw_rng.integers(0, max_a + 1)),
            int(draw_rng.integers(0, max_b + 1)),
            int(draw_rng.integers(0, 3)) if with_w else 0,
            int(draw_rng.integers(0, 3)) if with_w else 0,
        )
        terms.append((e, cmath.rect(r, t)))
    return ExpPoly(terms, m1, 0, 0)
