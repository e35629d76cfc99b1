"""Multi-party signing sessions ("seals").

A seal over identity ``U`` starts as ``SM = r*U`` with verifier
``P = r*G2 + sum(pk_i)``; each participant contributes ``sk_i*U`` plus a
credential showing bound to ``U``. The seal verifies once every key summed
into ``P`` has contributed exactly once::

    e(P, U) == e(G2, SM)

Nothing in the seal records how many participants were elected, so an
incomplete seal is only detectable as a failed pairing check.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import reduce

from .credential import (
    Credential,
    CredentialProof,
    CredentialSecret,
    IssuerPublicKey,
    prove_cred_uid,
    verify_credential,
)
from .curve import G2, PointG1, PointG2, hash_to_point_g1, pairings_equal, random_scalar
from .errors import DuplicateSignature, InvalidInput, ProofError, SealClosed, VerificationFailed
from .identity import reflow_identity


@dataclass(frozen=True)
class Seal:
    sm: PointG1
    identity: PointG1
    verifier: PointG2
    fingerprints: tuple[PointG1, ...] = ()
    closed: bool = False


@dataclass(frozen=True)
class ReflowSignature:
    sigma: PointG1
    proof: CredentialProof
    zeta: PointG1


def _open_seal(pubkeys, identity, r):
    pubkeys = list(pubkeys)
    if not pubkeys:
        raise InvalidInput("a seal needs at least one participant public key")
    if identity.is_identity():
        raise InvalidInput("seal identity must not be the point at infinity")
    verifier = reduce(lambda u, v: u + v, pubkeys, G2() * r)
    if verifier.is_identity():
        raise InvalidInput("aggregate verifier is the point at infinity")
    # keys may come from a curve-checked-only batch decode; one check on the sum suffices
    if not verifier.in_subgroup():
        raise InvalidInput("aggregate verifier is outside the prime-order subgroup")
    return Seal(sm=identity * r, identity=identity, verifier=verifier)


def seal_for_identity(pubkeys, identity: PointG1) -> Seal:
    """Open a seal over an already computed identity point."""
    return _open_seal(pubkeys, identity, random_scalar())


def create_seal(pubkeys, message: bytes) -> Seal:
    """Open a seal for *message*; the session nonce r is never kept."""
    return seal_for_identity(pubkeys, hash_to_point_g1(message))


def sign_seal(
    sk: int, cred: Credential, cs: CredentialSecret, vk: IssuerPublicKey, seal: Seal
) -> ReflowSignature:
    if seal.closed:
        raise SealClosed("cannot sign a closed seal")
    proof, zeta = prove_cred_uid(cred, cs, vk, seal.identity)
    return ReflowSignature(sigma=seal.identity * sk, proof=proof, zeta=zeta)


def add_signature(
    seal: Seal, vk: IssuerPublicKey, sig: ReflowSignature, enforce_fingerprints: bool = True
) -> Seal:
    """Return a new seal with *sig* folded in; *seal* itself is left untouched.

    With ``enforce_fingerprints`` off a repeated fingerprint is tolerated:
    its sigma is added again (which breaks the seal) but the fingerprint
    list keeps one copy.
    """
    if seal.closed:
        raise SealClosed("cannot add signatures to a closed seal")
    if not verify_credential(vk, sig.proof, sig.zeta, seal.identity):
        raise ProofError("signature credential does not verify for this seal")
    seen = sig.zeta in seal.fingerprints
    if seen and enforce_fingerprints:
        raise DuplicateSignature("fingerprint already present in the seal")
    fingerprints = seal.fingerprints if seen else seal.fingerprints + (sig.zeta,)
    return dataclasses.replace(seal, sm=seal.sm + sig.sigma, fingerprints=fingerprints)


def verify_seal(seal: Seal) -> bool:
    return pairings_equal((seal.verifier, seal.identity), (G2(), seal.sm))


def close_seal(seal: Seal) -> Seal:
    if not verify_seal(seal):
        raise VerificationFailed("only a verifying seal can be closed")
    return dataclasses.replace(seal, fingerprints=(), closed=True)


def compare_identity(seal: Seal, document) -> bool:
    return reflow_identity(document) == seal.identity
