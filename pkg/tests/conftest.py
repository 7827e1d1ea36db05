import numpy as np
import pytest

from dtmm.profiles import CoefficientProfile


def random_profile(rng: np.random.Generator, complex_valued: bool = False) -> CoefficientProfile:
    """Smooth g (and h) mixing a quadratic with a sinusoid."""

    def text():
        c = [float(v) for v in rng.uniform(-2, 2, size=5)]
        return f"{c[0]!r} + {c[1]!r}*x + {c[2]!r}*x^2 + {c[3]!r}*sin({abs(c[4]) + 0.5!r}*x)"

    return CoefficientProfile.from_text(text(), text() if complex_valued else None)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
