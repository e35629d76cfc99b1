"""Coconut-style single-attribute credentials.

Issuance::

    user:    cs = credential_keygen()
             req = prepare_blind_sign(cs)          # lambda, carries pi_s
    issuer:  bc = blind_sign(issuer_keys, req)     # checks pi_s first
    user:    cred = unblind(bc, cs)

Showing against a session identity ``uid``::

    theta, zeta = prove_cred_uid(cred, cs, vk, uid)
    verify_credential(vk, theta, zeta, uid)

``zeta = h*uid`` depends only on the attribute digest and ``uid``; theta is
re-randomized on every showing.

The request proof covers knowledge of (h, k, r) behind ``c`` and ``(a, b)``
exactly through the three reconstructed commitments; there is no separate
Schnorr response for ``ck`` against ``gamma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from .curve import (
    G1,
    G2,
    ORDER,
    PointG1,
    PointG2,
    challenge_hash,
    encode_scalar,
    generator_hs,
    hash_to_point_g1,
    pairings_equal,
    random_scalar,
)
from .errors import InvalidInput, ProofError

PI_S_TAG = b"reflow/v1/pi_s"
PI_V_TAG = b"reflow/v1/pi_v"
ATTRIBUTE_TAG = b"reflow/v1/attribute"
POP_TAG = b"reflow/v1/pop"


@dataclass(frozen=True)
class IssuerPublicKey:
    alpha: PointG2
    beta: PointG2


@dataclass(frozen=True)
class IssuerKeypair:
    x: int = field(repr=False)
    y: int = field(repr=False)
    alpha: PointG2
    beta: PointG2

    @classmethod
    def from_secrets(cls, x: int, y: int) -> "IssuerKeypair":
        x, y = x % ORDER, y % ORDER
        return cls(x, y, G2() * x, G2() * y)

    @property
    def public(self) -> IssuerPublicKey:
        return IssuerPublicKey(self.alpha, self.beta)


@dataclass(frozen=True)
class CredentialSecret:
    ck: int = field(repr=False)
    gamma: PointG1
    h: int = field(repr=False)

    @classmethod
    def from_secret(cls, ck: int) -> "CredentialSecret":
        ck %= ORDER
        if ck == 0:
            raise InvalidInput("credential key must be nonzero")
        return cls(ck, G1() * ck, attribute_digest(ck))


@dataclass(frozen=True)
class ProofPiS:
    c_h: int
    r_h: int
    r_k: int
    r_r: int


@dataclass(frozen=True)
class CredentialRequest:
    c: PointG1
    a: PointG1
    b: PointG1
    gamma: PointG1
    pi_s: ProofPiS


@dataclass(frozen=True)
class BlindedCredential:
    c: PointG1
    a_tilde: PointG1
    b_tilde: PointG1


@dataclass(frozen=True)
class Credential:
    c: PointG1
    s: PointG1


@dataclass(frozen=True)
class ProofPiV:
    c_h: int
    r_h: int
    r_r: int


@dataclass(frozen=True)
class CredentialProof:
    kappa: PointG2
    nu: PointG1
    pi_v: ProofPiV
    c_prime: PointG1
    s_prime: PointG1


def attribute_digest(ck: int) -> int:
    """Scalar digest h of the secret attribute ck."""
    return challenge_hash(ATTRIBUTE_TAG, [encode_scalar(ck % ORDER)])


def issuer_keygen() -> IssuerKeypair:
    return IssuerKeypair.from_secrets(random_scalar(), random_scalar())


def credential_keygen() -> CredentialSecret:
    return CredentialSecret.from_secret(random_scalar())


# -- issuance ----------------------------------------------------------------


def _prepare_blind_sign(cs, r, k, w_h, w_k, w_r):
    g1, hs, h = G1(), generator_hs(), cs.h
    c = g1 * r + hs * h
    a = g1 * k
    b = cs.gamma * k + c * h

    a_w = g1 * w_k
    b_w = cs.gamma * w_k + c * w_h
    c_w = g1 * w_r + hs * w_h
    c_h = challenge_hash(PI_S_TAG, [c, a_w, b_w, c_w])

    pi_s = ProofPiS(
        c_h=c_h,
        r_h=(w_h - c_h * h) % ORDER,
        r_k=(w_k - c_h * k) % ORDER,
        r_r=(w_r - c_h * r) % ORDER,
    )
    return CredentialRequest(c=c, a=a, b=b, gamma=cs.gamma, pi_s=pi_s)


def prepare_blind_sign(cs: CredentialSecret) -> CredentialRequest:
    """Build the credential request lambda with its proof pi_s.

    The commitment nonces (r, k) and proof nonces are drawn fresh and
    dropped on return.
    """
    return _prepare_blind_sign(cs, *(random_scalar() for _ in range(5)))


def verify_pi_s(req: CredentialRequest) -> bool:
    g1, hs, p = G1(), generator_hs(), req.pi_s
    a_w = req.a * p.c_h + g1 * p.r_k
    b_w = req.b * p.c_h + req.gamma * p.r_k + req.c * p.r_h
    c_w = req.c * p.c_h + g1 * p.r_r + hs * p.r_h
    return challenge_hash(PI_S_TAG, [req.c, a_w, b_w, c_w]) == p.c_h


def blind_sign(ik: IssuerKeypair, req: CredentialRequest) -> BlindedCredential:
    """Issuer side: check pi_s, then sign the committed attribute blindly."""
    if not verify_pi_s(req):
        raise ProofError("credential request proof pi_s does not verify")
    return BlindedCredential(
        c=req.c,
        a_tilde=req.a * ik.y,
        b_tilde=req.c * ik.x + req.b * ik.y,
    )


def unblind(bc: BlindedCredential, cs: CredentialSecret) -> Credential:
    return Credential(c=bc.c, s=bc.b_tilde - bc.a_tilde * cs.ck)


def aggregate_issuer_keys(keys) -> IssuerPublicKey:
    keys = list(keys)
    if not keys:
        raise InvalidInput("no issuer keys to aggregate")
    return IssuerPublicKey(
        alpha=reduce(lambda u, v: u + v, (k.alpha for k in keys)),
        beta=reduce(lambda u, v: u + v, (k.beta for k in keys)),
    )


def aggregate_credentials(creds) -> Credential:
    creds = list(creds)
    if not creds:
        raise InvalidInput("no credentials to aggregate")
    c = creds[0].c
    if any(cr.c != c for cr in creds[1:]):
        raise InvalidInput("credentials were issued on different commitments")
    return Credential(c=c, s=reduce(lambda u, v: u + v, (cr.s for cr in creds)))


# -- showing -----------------------------------------------------------------


def _prove_cred_uid(cred, cs, vk, uid, r, r_prime, w_h, w_r):
    g2, h = G2(), cs.h
    c_prime = cred.c * r_prime
    s_prime = cred.s * r_prime
    kappa = vk.alpha + vk.beta * h + g2 * r
    nu = c_prime * r

    a_w = vk.alpha + vk.beta * w_h + g2 * w_r
    b_w = c_prime * w_r
    c_w = uid * w_h
    c_h = challenge_hash(PI_V_TAG, [vk.alpha, vk.beta, a_w, b_w, c_w])

    pi_v = ProofPiV(c_h=c_h, r_h=(w_h - c_h * h) % ORDER, r_r=(w_r - c_h * r) % ORDER)
    theta = CredentialProof(kappa=kappa, nu=nu, pi_v=pi_v, c_prime=c_prime, s_prime=s_prime)
    return theta, uid * h


def prove_cred_uid(
    cred: Credential, cs: CredentialSecret, vk: IssuerPublicKey, uid: PointG1
) -> tuple[CredentialProof, PointG1]:
    """Show *cred* bound to session identity *uid*; returns ``(theta, zeta)``."""
    if uid.is_identity():
        raise InvalidInput("session identity must not be the point at infinity")
    return _prove_cred_uid(cred, cs, vk, uid, *(random_scalar() for _ in range(4)))


def verify_credential(
    vk: IssuerPublicKey, theta: CredentialProof, zeta: PointG1, uid: PointG1
) -> bool:
    p = theta.pi_v
    a_w = theta.kappa * p.c_h + G2() * p.r_r + vk.alpha * (1 - p.c_h) + vk.beta * p.r_h
    b_w = theta.c_prime * p.r_r + theta.nu * p.c_h
    c_w = uid * p.r_h + zeta * p.c_h
    if challenge_hash(PI_V_TAG, [vk.alpha, vk.beta, a_w, b_w, c_w]) != p.c_h:
        return False
    if theta.c_prime.is_identity():
        return False
    return pairings_equal((theta.kappa, theta.c_prime), (G2(), theta.s_prime + theta.nu))


# -- proof-of-possession side channel ----------------------------------------


def pop_sign(cs: CredentialSecret, nonce: bytes) -> tuple[int, int]:
    """Schnorr signature on *nonce* under ck, checkable against gamma = ck*G1."""
    w = random_scalar()
    commit = G1() * w
    e = challenge_hash(POP_TAG, [cs.gamma, commit, hash_to_point_g1(nonce)])
    return e, (w - e * cs.ck) % ORDER


def pop_verify(gamma: PointG1, nonce: bytes, sig: tuple[int, int]) -> bool:
    e, z = sig
    commit = G1() * z + gamma * e
    return challenge_hash(POP_TAG, [gamma, commit, hash_to_point_g1(nonce)]) == e
