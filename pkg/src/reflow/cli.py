"""Command-line tool for reflow: one subcommand per protocol step, JSON files in and out.

Exit codes::

    0  success
    1  verification returned false
    2  usage error (argparse)
    3  I/O error (missing file, refusing to overwrite, ...)
    4  malformed input (JSON, base64, point or scalar decoding)
    5  proof or credential failure
    6  duplicate signature fingerprint
    7  invalid state or input (closed seal, empty key array, ...)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bls, credential as cr, curve, passport as pp, seal as sl, wire
from .errors import DecodeError, DuplicateSignature, InvalidInput, ProofError, ReflowError, SealClosed, VerificationFailed

log = logging.getLogger("reflow")

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_IO = 3
EXIT_DECODE = 4
EXIT_PROOF = 5
EXIT_DUPLICATE = 6
EXIT_STATE = 7


class _Fail(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def _read_text(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Fail(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from None


def _load(path, kind):
    return wire.loads(kind, _read_text(path))


def _load_document(path):
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise DecodeError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DecodeError(f"{path}: document must be a JSON object")
    return doc


def _emit(args, kind, obj, out=None):
    out = out if out is not None else getattr(args, "out", None)
    name = getattr(args, "name", None)
    if out is None or out == "-":
        sys.stdout.write(wire.dumps(kind, obj, name) + "\n")
        return
    try:
        wire.write(out, kind, obj, name=name, force=args.force)
    except FileExistsError:
        raise _Fail(EXIT_IO, f"{out} exists; use --force to overwrite") from None
    except OSError as exc:
        raise _Fail(EXIT_IO, f"cannot write {out}: {exc.strerror or exc}") from None
    log.info("wrote %s", out)


# -- issuer ------------------------------------------------------------------


def cmd_issuer_keygen(args):
    _emit(args, "issuer_keys", cr.issuer_keygen())


def cmd_issuer_pubkey(args):
    _emit(args, "issuer_public_key", _load(args.keys, "issuer_keys").public)


def cmd_aggregate_issuer_keys(args):
    keys = [_load(p, "issuer_public_key") for p in args.pubkeys]
    _emit(args, "issuer_public_key", cr.aggregate_issuer_keys(keys))


def cmd_credential_sign(args):
    ik = _load(args.issuer_keys, "issuer_keys")
    req = _load(args.request, "credential_request")
    _emit(args, "credential_signature", cr.blind_sign(ik, req))


# -- participant -------------------------------------------------------------


def cmd_keygen(args):
    _emit(args, "keys", (bls.bls_keygen(), cr.credential_keygen()))


def cmd_pubkey(args):
    kp, _ = _load(args.keys, "keys")
    _emit(args, "reflow_public_key", kp.pk)


def cmd_credential_request(args):
    _, cs = _load(args.keys, "keys")
    _emit(args, "credential_request", cr.prepare_blind_sign(cs))


def cmd_aggregate_credentials(args):
    _, cs = _load(args.keys, "keys")
    creds = [cr.unblind(_load(p, "credential_signature"), cs) for p in args.signatures]
    _emit(args, "credentials", cr.aggregate_credentials(creds))


def cmd_pop_sign(args):
    _, cs = _load(args.keys, "keys")
    nonce = bytes.fromhex(args.nonce)
    _emit(args, "pop_signature", cr.pop_sign(cs, nonce))


def cmd_pop_verify(args):
    req = _load(args.request, "credential_request")
    sig = _load(args.signature, "pop_signature")
    if not cr.pop_verify(req.gamma, bytes.fromhex(args.nonce), sig):
        raise _Fail(EXIT_FALSE, "proof-of-possession signature does not verify")
    print("SUCCESS")


# -- arrays ------------------------------------------------------------------

_ARRAYS = {"reflow_public_key": "reflow_public_key_array", "reflow_seal": "reflow_seal_array"}


def cmd_collect(args):
    items = [_load(p, args.kind) for p in args.inputs]
    _emit(args, _ARRAYS[args.kind], items)


# -- seals -------------------------------------------------------------------


def cmd_create_seal(args):
    pubkeys = _load(args.pubkeys, "reflow_public_key_array")
    doc = _load_document(args.document)
    _emit(args, "reflow_seal", sl.seal_for_identity(pubkeys, pp.reflow_identity(doc)))


def _signer_inputs(args):
    kp, cs = _load(args.keys, "keys")
    cred = _load(args.credentials, "credentials")
    vk = _load(args.issuer_pubkey, "issuer_public_key")
    return kp, cs, cred, vk


def cmd_sign_seal(args):
    kp, cs, cred, vk = _signer_inputs(args)
    seal = _load(args.seal, "reflow_seal")
    _emit(args, "reflow_signature", sl.sign_seal(kp.sk, cred, cs, vk, seal))


def cmd_add_signature(args):
    seal = _load(args.seal, "reflow_seal")
    vk = _load(args.issuer_pubkey, "issuer_public_key")
    sig = _load(args.signature, "reflow_signature")
    _emit(args, "reflow_seal", sl.add_signature(seal, vk, sig, enforce_fingerprints=not args.no_fingerprint_check))


def cmd_verify_seal(args):
    seal = _load(args.seal, "reflow_seal")
    if not sl.verify_seal(seal):
        raise _Fail(EXIT_FALSE, "seal does not verify")
    print("SUCCESS")


def cmd_close_seal(args):
    _emit(args, "reflow_seal", sl.close_seal(_load(args.seal, "reflow_seal")))


def cmd_compare_identity(args):
    seal = _load(args.seal, "reflow_seal")
    if not sl.compare_identity(seal, _load_document(args.document)):
        raise _Fail(EXIT_FALSE, "document identity differs from the seal identity")
    print("The seal really belongs to this document")


def cmd_identity(args):
    _emit(args, "reflow_identity", pp.reflow_identity(_load_document(args.document)))


# -- passports ---------------------------------------------------------------


def _parents(args):
    return _load(args.parents, "reflow_seal_array") if args.parents else []


def cmd_passport_create(args):
    kp, cs, cred, vk = _signer_inputs(args)
    doc = _load_document(args.document)
    _emit(args, "material_passport", pp.create_material_passport(kp.sk, cred, cs, vk, doc, _parents(args)))


def cmd_passport_verify(args):
    doc = _load_document(args.document)
    vk = _load(args.issuer_pubkey, "issuer_public_key")
    mp = _load(args.passport, "material_passport")
    parents = _parents(args)
    if parents:
        ok = pp.verify_track_and_trace(parents, mp, doc, vk)
    else:
        ok = pp.verify_material_passport(doc, vk, mp)
    if not ok:
        raise _Fail(EXIT_FALSE, "material passport does not verify for this document")
    print("Valid Event material passport")


def cmd_aggregate_identities(args):
    seals = _load(args.seals, "reflow_seal_array")
    _emit(args, "reflow_identity", pp.aggregate_seal_identities(seals))


# -- bench -------------------------------------------------------------------


def cmd_bench(args):
    from . import bench

    grid = [int(v) for v in args.participants.split(",") if v.strip()]
    if args.large:
        grid.append(1000)
    backends = args.backend.split(",")
    records = []
    for name in backends:
        with curve.use_backend(name):
            records.extend(bench.run_benchmark(grid, args.reps, backend=name))
    text = bench.emit_csv(records)
    if args.csv and args.csv != "-":
        Path(args.csv).write_text(text, encoding="utf-8")
        log.info("wrote %s", args.csv)
    else:
        sys.stdout.write(text)
    for name in backends:
        for label in bench.ANYONE_LABELS:
            rows = [r for r in records if r.backend == name and r.label == label]
            if len({r.participants for r in rows}) >= 3:
                slope, intercept, r2 = bench.fit_linear_scaling(rows)
                log.info("%s %-13s slope=%.3gs/participant r2=%.4f", name, label, slope, r2)


# -- parser ------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="reflow", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, help="deterministic test-mode randomness (never in production)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_, out=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        if out:
            p.add_argument("-o", "--out", help="output file (default: stdout)")
            p.add_argument("--force", action="store_true", help="overwrite an existing output file")
            p.add_argument("--name", help="actor label stored in the envelope")
        return p

    command("issuer-keygen", cmd_issuer_keygen, "create issuer secret keys")
    p = command("issuer-pubkey", cmd_issuer_pubkey, "export the issuer public key")
    p.add_argument("--keys", required=True)
    p = command("aggregate-issuer-keys", cmd_aggregate_issuer_keys, "sum several issuer public keys")
    p.add_argument("pubkeys", nargs="+")
    p = command("credential-sign", cmd_credential_sign, "issuer: blind-sign a credential request")
    p.add_argument("--issuer-keys", required=True)
    p.add_argument("--request", required=True)

    command("keygen", cmd_keygen, "participant: create reflow and credential keys")
    p = command("pubkey", cmd_pubkey, "participant: export the reflow public key")
    p.add_argument("--keys", required=True)
    p = command("credential-request", cmd_credential_request, "participant: create a credential request")
    p.add_argument("--keys", required=True)
    p = command("aggregate-credentials", cmd_aggregate_credentials, "participant: unblind and aggregate credential signatures")
    p.add_argument("--keys", required=True)
    p.add_argument("signatures", nargs="+")
    p = command("pop-sign", cmd_pop_sign, "participant: sign an issuer nonce with the credential key")
    p.add_argument("--keys", required=True)
    p.add_argument("--nonce", required=True, help="hex nonce chosen by the issuer")
    p = command("pop-verify", cmd_pop_verify, "issuer: check a proof-of-possession signature", out=False)
    p.add_argument("--request", required=True)
    p.add_argument("--signature", required=True)
    p.add_argument("--nonce", required=True)

    p = command("collect", cmd_collect, "bundle public keys or seals into an array file")
    p.add_argument("--kind", choices=sorted(_ARRAYS), required=True)
    p.add_argument("inputs", nargs="+")

    p = command("create-seal", cmd_create_seal, "open a signing session over a document")
    p.add_argument("--pubkeys", required=True, help="reflow public key array file")
    p.add_argument("--document", required=True)
    p = command("sign-seal", cmd_sign_seal, "participant: produce a reflow signature")
    for flag in ("--keys", "--credentials", "--issuer-pubkey", "--seal"):
        p.add_argument(flag, required=True)
    p = command("add-signature", cmd_add_signature, "verify a signature and fold it into the seal")
    for flag in ("--seal", "--issuer-pubkey", "--signature"):
        p.add_argument(flag, required=True)
    p.add_argument("--no-fingerprint-check", action="store_true", help="allow repeated fingerprints")
    p = command("verify-seal", cmd_verify_seal, "check the aggregate signature", out=False)
    p.add_argument("--seal", required=True)
    p = command("close-seal", cmd_close_seal, "mark a verified seal closed and drop fingerprints")
    p.add_argument("--seal", required=True)
    p = command("compare-identity", cmd_compare_identity, "check a document against a seal identity", out=False)
    p.add_argument("--seal", required=True)
    p.add_argument("--document", required=True)
    p = command("identity", cmd_identity, "compute the reflow identity of a document")
    p.add_argument("--document", required=True)

    p = command("passport-create", cmd_passport_create, "create a material passport")
    for flag in ("--keys", "--credentials", "--issuer-pubkey", "--document"):
        p.add_argument(flag, required=True)
    p.add_argument("--parents", help="reflow seal array of parent nodes")
    p = command("passport-verify", cmd_passport_verify, "verify a material passport", out=False)
    for flag in ("--document", "--issuer-pubkey", "--passport"):
        p.add_argument(flag, required=True)
    p.add_argument("--parents", help="reflow seal array of parent nodes")
    p = command("aggregate-identities", cmd_aggregate_identities, "sum the identities of a seal array")
    p.add_argument("--seals", required=True)

    p = sub.add_parser("bench", help="time the protocol flow over participant counts")
    p.set_defaults(func=cmd_bench)
    p.add_argument("--participants", default="2,10,50,100")
    p.add_argument("--large", action="store_true", help="also run N=1000")
    p.add_argument("--reps", type=int, default=50)
    p.add_argument("--csv", help="CSV output path (default: stdout)")
    p.add_argument("--backend", default=curve.backend_name(), help="comma-separated: native,python")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="reflow: %(message)s",
        stream=sys.stderr,
    )
    if args.seed is not None:
        curve.set_test_seed(args.seed)
    try:
        args.func(args)
    except _Fail as exc:
        print(f"reflow: {exc}", file=sys.stderr)
        return exc.code
    except DecodeError as exc:
        print(f"reflow: malformed input: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except ProofError as exc:
        print(f"reflow: proof failure: {exc}", file=sys.stderr)
        return EXIT_PROOF
    except DuplicateSignature as exc:
        print(f"reflow: duplicate signature: {exc}", file=sys.stderr)
        return EXIT_DUPLICATE
    except (SealClosed, VerificationFailed, InvalidInput, ReflowError) as exc:
        print(f"reflow: {exc}", file=sys.stderr)
        return EXIT_STATE
    except ValueError as exc:
        # e.g. bytes.fromhex on a bad nonce
        print(f"reflow: malformed input: {exc}", file=sys.stderr)
        return EXIT_DECODE
    finally:
        if args.seed is not None:
            curve.set_test_seed(None)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
