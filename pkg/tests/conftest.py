import pytest

from src.enveloping.pi_map import PiHomomorphism


class MutatedPi(PiHomomorphism):
    """pi with the sign in front of the odd-derivative terms dropped."""

    def odd_coefficient_sign(self, odd):
        return 1


@pytest.fixture
def mutated_pi():
    def build(m, n):
        return MutatedPi(m, n)

    return build
