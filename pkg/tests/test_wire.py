import json
import os
import stat

import pytest

from reflow import credential as cr, passport as pp, seal as sl, wire
from reflow.curve import G1, G2, hash_to_point_g1
from reflow.errors import DecodeError


@pytest.fixture(scope="module")
def objects(issuer, alice, crowd):
    vk = issuer.public
    parts = [alice] + crowd[:2]
    seal = sl.create_seal([p.pk for p in parts], b"wire")
    sig = sl.sign_seal(alice.sk, alice.cred, alice.cs, vk, seal)
    seal1 = sl.add_signature(seal, vk, sig)
    theta, _ = cr.prove_cred_uid(alice.cred, alice.cs, vk, hash_to_point_g1(b"w"))
    return {
        "issuer_keys": issuer,
        "issuer_public_key": vk,
        "keys": (alice.keys, alice.cs),
        "reflow_public_key": alice.pk,
        "reflow_public_key_array": [p.pk for p in parts],
        "credential_request": alice.request,
        "credential_signature": alice.blinded,
        "credentials": alice.cred,
        "reflow_seal": seal1,
        "reflow_seal_array": [seal, seal1],
        "reflow_signature": sig,
        "material_passport": pp.create_material_passport(alice.sk, alice.cred, alice.cs, vk, {"d": 1}),
        "reflow_identity": seal.identity,
        "credential_proof": theta,
        "pop_signature": cr.pop_sign(alice.cs, b"n"),
    }


def test_every_kind_is_covered(objects):
    assert set(objects) == set(wire.CODECS)


@pytest.mark.parametrize("kind", sorted(wire.CODECS))
def test_roundtrip(objects, kind):
    obj = objects[kind]
    back = wire.loads(kind, wire.dumps(kind, obj))
    assert back == obj
    assert wire.dumps(kind, back) == wire.dumps(kind, obj)


def test_closed_seal_roundtrip(objects, vk, alice):
    seal = sl.create_seal([alice.pk], b"closed")
    seal = sl.close_seal(sl.add_signature(seal, vk, sl.sign_seal(alice.sk, alice.cred, alice.cs, vk, seal)))
    payload = json.loads(wire.dumps("reflow_seal", seal))["reflow_seal"]
    assert payload["closed"] is True and "fingerprints" not in payload
    assert wire.loads("reflow_seal", wire.dumps("reflow_seal", seal)) == seal


def test_field_names(objects):
    seal = json.loads(wire.dumps("reflow_seal", objects["reflow_seal"]))["reflow_seal"]
    assert set(seal) == {"SM", "identity", "verifier", "fingerprints"}
    proof = json.loads(wire.dumps("credential_proof", objects["credential_proof"]))["credential_proof"]
    assert set(proof) == {"kappa", "nu", "pi_v", "sigma_prime"}
    assert set(proof["pi_v"]) == {"c", "rm", "rr"}
    assert set(proof["sigma_prime"]) == {"h_prime", "s_prime"}


def test_name_label():
    text = wire.dumps("reflow_identity", G1(), name="Alice")
    assert wire.envelope_name(text) == "Alice"
    assert wire.envelope_name("not json") is None


_SECRET_KEYS = {"x", "y", "reflow", "credential", "s"}


def _keys(obj):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield k
            yield from _keys(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _keys(v)


@pytest.mark.parametrize("kind", sorted(set(wire.CODECS) - wire.SECRET_KINDS))
def test_public_outputs_hold_no_secrets(objects, issuer, alice, kind):
    text = wire.dumps(kind, objects[kind])
    assert not _SECRET_KEYS & set(_keys(json.loads(text)))
    for secret in (issuer.x, issuer.y, alice.sk, alice.cs.ck):
        assert wire.enc(secret) not in text


@pytest.mark.parametrize(
    "text",
    [
        "",
        "[]",
        '{"other": 1}',
        '{"reflow_seal": {"SM": "AAAA"}}',
        '{"reflow_seal": {"SM": 5, "identity": "", "verifier": "", "fingerprints": []}}',
        '{"reflow_seal": {"SM": "!!", "identity": "", "verifier": "", "fingerprints": []}}',
        '{"reflow_seal": "nope"}',
    ],
)
def test_malformed_input(text):
    with pytest.raises(DecodeError):
        wire.loads("reflow_seal", text)


def test_malformed_seal_fields(objects):
    good = json.loads(wire.dumps("reflow_seal", objects["reflow_seal"]))
    cases = [
        ("fingerprints", "notalist"),
        ("fingerprints", good["reflow_seal"]["fingerprints"] * 2),
        ("closed", "yes"),
        ("verifier", wire.b64(G1().encode())),
    ]
    for field, value in cases:
        bad = json.loads(json.dumps(good))
        bad["reflow_seal"][field] = value
        with pytest.raises(DecodeError):
            wire.loads("reflow_seal", json.dumps(bad))


def test_empty_arrays_rejected():
    with pytest.raises(DecodeError):
        wire.loads("reflow_public_key_array", '{"reflow_public_key_array": []}')


def test_key_array_decodes_without_subgroup_check():
    text = wire.dumps("reflow_public_key_array", [G2(), G2() * 2])
    assert wire.loads("reflow_public_key_array", text) == [G2(), G2() * 2]


def test_out_of_range_scalar():
    bad = {"issuer_keys": {"x": wire.b64(b"\xff" * 32), "y": wire.enc(1)}}
    with pytest.raises(DecodeError):
        wire.loads("issuer_keys", json.dumps(bad))
    zero = {"keys": {"reflow": wire.enc(0), "credential": wire.enc(1)}}
    with pytest.raises(DecodeError):
        wire.loads("keys", json.dumps(zero))


def test_write_and_read(tmp_path, objects):
    path = tmp_path / "keys.json"
    wire.write(path, "keys", objects["keys"])
    assert stat.S_IMODE(os.stat(path).st_mode) == 0o600
    assert wire.read(path, "keys") == objects["keys"]
    with pytest.raises(FileExistsError):
        wire.write(path, "keys", objects["keys"])
    wire.write(path, "keys", objects["keys"], force=True)
