import pytest
from hypothesis import HealthCheck, settings

from reflow import bls, credential as cr

settings.register_profile(
    "reflow",
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("reflow")


class Participant:
    """A participant holding reflow keys and an issued credential."""

    def __init__(self, issuer):
        self.keys = bls.bls_keygen()
        self.cs = cr.credential_keygen()
        self.request = cr.prepare_blind_sign(self.cs)
        self.blinded = cr.blind_sign(issuer, self.request)
        self.cred = cr.unblind(self.blinded, self.cs)

    @property
    def sk(self):
        return self.keys.sk

    @property
    def pk(self):
        return self.keys.pk


@pytest.fixture(scope="session")
def issuer():
    return cr.issuer_keygen()


@pytest.fixture(scope="session")
def vk(issuer):
    return issuer.public


@pytest.fixture(scope="session")
def make_participant(issuer):
    def make():
        return Participant(issuer)

    return make


@pytest.fixture(scope="session")
def alice(make_participant):
    return make_participant()


@pytest.fixture(scope="session")
def crowd(make_participant):
    """100 credentialed participants, shared across tests."""
    return [make_participant() for _ in range(100)]
