import numpy as np
import pytest

from sobtrace import SampledFunction
from sobtrace.corpus import random_sampled_function


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def make_samples(rng, size, span=3.0, min_gap=1e-3) -> SampledFunction:
    return random_sampled_function(rng, size, span, min_gap)


def polynomial_samples(rng, degree, size, span=4.0, min_gap=0.2):
    """Samples of a random polynomial, returned with its coefficient array."""
    coeffs = rng.standard_normal(degree + 1)
    while True:
        pts = np.sort(rng.uniform(0.0, span, size))
        if size == 1 or float(np.diff(pts).min()) >= min_gap:
            break
    vals = np.polynomial.polynomial.polyval(pts, coeffs)
    return SampledFunction(tuple(pts), tuple(vals)), coeffs
