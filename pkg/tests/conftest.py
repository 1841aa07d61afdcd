import numpy as np
from hypothesis import HealthCheck, settings

from qsearch import HermitianOperator, StateVector

# The single shared CPU in CI makes wall-clock deadlines meaningless.
settings.register_profile(
    "qsearch", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("qsearch")


def haar_state(n: int, rng: np.random.Generator) -> StateVector:
    z = rng.standard_normal((2, n))
    v = z[0] + 1j * z[1]
    return StateVector(v / np.linalg.norm(v))


def random_hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> HermitianOperator:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return HermitianOperator(scale * (g + g.conj().T) / 2.0)
