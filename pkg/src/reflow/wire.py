"""JSON wire format for protocol objects.

Points and scalars travel as URL-safe base64 of their canonical encodings
(48-byte G1, 96-byte G2, 32-byte big-endian scalars). Field names:
``SM``/``identity``/``verifier``/``fingerprints`` for
seals, ``kappa``/``nu``/``pi_v{c, rm, rr}``/``sigma_prime{h_prime,
s_prime}`` for credential proofs.

Files are envelopes: a JSON object with exactly one payload key naming the
object kind, plus an optional ``name`` actor label. Kinds listed in
:data:`SECRET_KINDS` carry secret scalars.
"""

from __future__ import annotations

import base64
import binascii
import json
import os
from pathlib import Path

from .bls import SigningKeypair
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
)
from .curve import PointG1, PointG2, decode_scalar, encode_scalar
from .errors import DecodeError
from .passport import MaterialPassport
from .seal import ReflowSignature, Seal


def b64(data: bytes) -> str:
    return base64.urlsafe_b64encode(data).decode("ascii")


def unb64(text) -> bytes:
    if not isinstance(text, str):
        raise DecodeError(f"expected a base64 string, got {type(text).__name__}")
    try:
        return base64.urlsafe_b64decode(text.encode("ascii"))
    except (binascii.Error, ValueError) as exc:
        raise DecodeError(f"invalid base64: {exc}") from None


def _field(d, key):
    if not isinstance(d, dict):
        raise DecodeError(f"expected an object holding {key!r}")
    try:
        return d[key]
    except KeyError:
        raise DecodeError(f"missing field {key!r}") from None


def g1(d, key):
    return PointG1.decode(unb64(_field(d, key)))


def g2(d, key):
    return PointG2.decode(unb64(_field(d, key)))


def scalar(d, key):
    return decode_scalar(unb64(_field(d, key)))


def enc(v) -> str:
    if isinstance(v, int):
        return b64(encode_scalar(v))
    return b64(v.encode())


# -- per-type codecs ---------------------------------------------------------


def dump_issuer_keys(ik: IssuerKeypair) -> dict:
    return {"x": enc(ik.x), "y": enc(ik.y)}


def load_issuer_keys(d) -> IssuerKeypair:
    return IssuerKeypair.from_secrets(scalar(d, "x"), scalar(d, "y"))


def dump_issuer_public_key(vk: IssuerPublicKey) -> dict:
    return {"alpha": enc(vk.alpha), "beta": enc(vk.beta)}


def load_issuer_public_key(d) -> IssuerPublicKey:
    return IssuerPublicKey(g2(d, "alpha"), g2(d, "beta"))


def dump_keys(kp: SigningKeypair, cs: CredentialSecret) -> dict:
    return {"reflow": enc(kp.sk), "credential": enc(cs.ck)}


def load_keys(d) -> tuple[SigningKeypair, CredentialSecret]:
    try:
        return (
            SigningKeypair.from_secret(scalar(d, "reflow")),
            CredentialSecret.from_secret(scalar(d, "credential")),
        )
    except ValueError as exc:
        if isinstance(exc, DecodeError):
            raise
        raise DecodeError(str(exc)) from None


def dump_request(req: CredentialRequest) -> dict:
    p = req.pi_s
    return {
        "commit": enc(req.c),
        "public": enc(req.gamma),
        "sign": {"a": enc(req.a), "b": enc(req.b)},
        "pi_s": {"commit": enc(p.c_h), "rm": enc(p.r_h), "rk": enc(p.r_k), "rr": enc(p.r_r)},
    }


def load_request(d) -> CredentialRequest:
    sign, p = _field(d, "sign"), _field(d, "pi_s")
    return CredentialRequest(
        c=g1(d, "commit"),
        a=g1(sign, "a"),
        b=g1(sign, "b"),
        gamma=g1(d, "public"),
        pi_s=ProofPiS(
            c_h=scalar(p, "commit"),
            r_h=scalar(p, "rm"),
            r_k=scalar(p, "rk"),
            r_r=scalar(p, "rr"),
        ),
    )


def dump_blinded(bc: BlindedCredential) -> dict:
    return {"h": enc(bc.c), "a_tilde": enc(bc.a_tilde), "b_tilde": enc(bc.b_tilde)}


def load_blinded(d) -> BlindedCredential:
    return BlindedCredential(g1(d, "h"), g1(d, "a_tilde"), g1(d, "b_tilde"))


def dump_credential(cred: Credential) -> dict:
    return {"h": enc(cred.c), "s": enc(cred.s)}


def load_credential(d) -> Credential:
    return Credential(g1(d, "h"), g1(d, "s"))


def dump_proof(theta: CredentialProof) -> dict:
    p = theta.pi_v
    return {
        "kappa": enc(theta.kappa),
        "nu": enc(theta.nu),
        "pi_v": {"c": enc(p.c_h), "rm": enc(p.r_h), "rr": enc(p.r_r)},
        "sigma_prime": {"h_prime": enc(theta.c_prime), "s_prime": enc(theta.s_prime)},
    }


def load_proof(d) -> CredentialProof:
    p, sp = _field(d, "pi_v"), _field(d, "sigma_prime")
    return CredentialProof(
        kappa=g2(d, "kappa"),
        nu=g1(d, "nu"),
        pi_v=ProofPiV(c_h=scalar(p, "c"), r_h=scalar(p, "rm"), r_r=scalar(p, "rr")),
        c_prime=g1(sp, "h_prime"),
        s_prime=g1(sp, "s_prime"),
    )


def dump_seal(seal: Seal) -> dict:
    d = {"SM": enc(seal.sm), "identity": enc(seal.identity), "verifier": enc(seal.verifier)}
    if seal.closed:
        d["closed"] = True
    else:
        d["fingerprints"] = [enc(z) for z in seal.fingerprints]
    return d


def load_seal(d) -> Seal:
    closed = d.get("closed", False) if isinstance(d, dict) else False
    if not isinstance(closed, bool):
        raise DecodeError("'closed' must be a boolean")
    raw = [] if closed else _field(d, "fingerprints")
    if not isinstance(raw, list):
        raise DecodeError("'fingerprints' must be a list")
    fingerprints = tuple(PointG1.decode(unb64(z)) for z in raw)
    if len(set(fingerprints)) != len(fingerprints):
        raise DecodeError("duplicate entries in 'fingerprints'")
    return Seal(
        sm=g1(d, "SM"),
        identity=g1(d, "identity"),
        verifier=g2(d, "verifier"),
        fingerprints=fingerprints,
        closed=closed,
    )


def dump_signature(sig: ReflowSignature) -> dict:
    return {"signature": enc(sig.sigma), "proof": dump_proof(sig.proof), "zeta": enc(sig.zeta)}


def load_signature(d) -> ReflowSignature:
    return ReflowSignature(sigma=g1(d, "signature"), proof=load_proof(_field(d, "proof")), zeta=g1(d, "zeta"))


def dump_passport(mp: MaterialPassport) -> dict:
    return {"proof": dump_proof(mp.proof), "seal": dump_seal(mp.seal), "zeta": enc(mp.zeta)}


def load_passport(d) -> MaterialPassport:
    return MaterialPassport(
        proof=load_proof(_field(d, "proof")), seal=load_seal(_field(d, "seal")), zeta=g1(d, "zeta")
    )


def _list_of(loader):
    def load(items):
        if not isinstance(items, list) or not items:
            raise DecodeError("expected a non-empty array")
        return [loader(item) for item in items]

    return load


def _load_g1(text):
    return PointG1.decode(unb64(text))


def _load_g2(text):
    return PointG2.decode(unb64(text))


def _load_g2_curve_only(text):
    return PointG2.decode(unb64(text), check_subgroup=False)


# -- envelopes ---------------------------------------------------------------

CODECS = {
    "issuer_keys": (dump_issuer_keys, load_issuer_keys),
    "issuer_public_key": (dump_issuer_public_key, load_issuer_public_key),
    "keys": (lambda pair: dump_keys(*pair), load_keys),
    "reflow_public_key": (enc, _load_g2),
    # subgroup membership is enforced on the aggregate verifier when a seal is opened
    "reflow_public_key_array": (lambda pks: [enc(p) for p in pks], _list_of(_load_g2_curve_only)),
    "credential_request": (dump_request, load_request),
    "credential_signature": (dump_blinded, load_blinded),
    "credentials": (dump_credential, load_credential),
    "reflow_seal": (dump_seal, load_seal),
    "reflow_seal_array": (lambda seals: [dump_seal(s) for s in seals], _list_of(load_seal)),
    "reflow_signature": (dump_signature, load_signature),
    "material_passport": (dump_passport, load_passport),
    "reflow_identity": (enc, _load_g1),
    "credential_proof": (dump_proof, load_proof),
    "pop_signature": (lambda s: {"c": enc(s[0]), "r": enc(s[1])}, lambda d: (scalar(d, "c"), scalar(d, "r"))),
}

SECRET_KINDS = frozenset({"issuer_keys", "keys", "credentials"})


def dumps(kind: str, obj, name: str | None = None) -> str:
    dump, _ = CODECS[kind]
    env = {kind: dump(obj)}
    if name:
        env["name"] = name
    return json.dumps(env, indent=2, sort_keys=True)


def loads(kind: str, text: str):
    """Parse an envelope of *kind*; raises :class:`DecodeError` on any defect."""
    _, load = CODECS[kind]
    try:
        env = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DecodeError(f"not valid JSON: {exc}") from None
    if not isinstance(env, dict) or kind not in env:
        raise DecodeError(f"expected an object with a {kind!r} entry")
    return load(env[kind])


def envelope_name(text: str) -> str | None:
    try:
        env = json.loads(text)
    except json.JSONDecodeError:
        return None
    return env.get("name") if isinstance(env, dict) else None


def write(path, kind: str, obj, name: str | None = None, force: bool = False) -> None:
    """Write an envelope; refuses to clobber an existing file unless *force*."""
    text = dumps(kind, obj, name) + "\n"
    path = Path(path)
    flags = os.O_WRONLY | os.O_CREAT | (os.O_TRUNC if force else os.O_EXCL)
    mode = 0o600 if kind in SECRET_KINDS else 0o644
    fd = os.open(path, flags, mode)
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)


def read(path, kind: str):
    return loads(kind, Path(path).read_text(encoding="utf-8"))
