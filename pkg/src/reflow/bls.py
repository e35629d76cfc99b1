"""Plain BLS signatures: sk in F_n, pk = sk*G2, sigma = sk*H(m) in E."""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import G2, ORDER, PointG1, PointG2, hash_to_point_g1, pairings_equal, random_scalar
from .errors import InvalidInput


@dataclass(frozen=True)
class SigningKeypair:
    sk: int = field(repr=False)
    pk: PointG2

    @classmethod
    def from_secret(cls, sk: int) -> "SigningKeypair":
        sk %= ORDER
        if sk == 0:
            raise InvalidInput("secret key must be nonzero")
        return cls(sk, G2() * sk)


def bls_keygen() -> SigningKeypair:
    return SigningKeypair.from_secret(random_scalar())


def bls_sign(sk: int, message: bytes) -> PointG1:
    return hash_to_point_g1(message) * sk


def bls_verify(pk: PointG2, message: bytes, sig: PointG1) -> bool:
    """Check e(pk, H(m)) == e(G2, sig)."""
    if not isinstance(pk, PointG2) or not isinstance(sig, PointG1):
        raise InvalidInput("bls_verify expects a PointG2 key and a PointG1 signature")
    if not message:
        return False
    return pairings_equal((pk, hash_to_point_g1(message)), (G2(), sig))
