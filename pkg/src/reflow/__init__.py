"""Reflow: credential-gated BLS multi-party signatures and material passports."""

from .bls import SigningKeypair, bls_keygen, bls_sign, bls_verify
from .credential import (
    BlindedCredential,
    Credential,
    CredentialProof,
    CredentialRequest,
    CredentialSecret,
    IssuerKeypair,
    IssuerPublicKey,
    ProofPiS,
    ProofPiV,
    aggregate_credentials,
    aggregate_issuer_keys,
    blind_sign,
    credential_keygen,
    issuer_keygen,
    prepare_blind_sign,
    prove_cred_uid,
    unblind,
    verify_credential,
    verify_pi_s,
)
from .curve import (
    G1,
    G2,
    ORDER,
    GtElement,
    PointG1,
    PointG2,
    challenge_hash,
    generator_hs,
    hash_to_point_g1,
    pairing,
    random_scalar,
)
from .errors import (
    DecodeError,
    DuplicateSignature,
    InvalidInput,
    ProofError,
    ReflowError,
    SealClosed,
    VerificationFailed,
)
from .passport import (
    MaterialPassport,
    aggregate_seal_identities,
    create_material_passport,
    reflow_identity,
    verify_genealogy,
    verify_material_passport,
    verify_track_and_trace,
)
from .seal import (
    ReflowSignature,
    Seal,
    add_signature,
    close_seal,
    compare_identity,
    create_seal,
    seal_for_identity,
    sign_seal,
    verify_seal,
)

__version__ = "0.1.0"
