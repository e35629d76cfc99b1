"""Benchmark harness for the end-to-end flow.

Every phase is timed around a file-level step (read JSON inputs, parse,
compute, serialize, write), the way a deployment would run one command per
step. Labels follow the three script groups:

* (A) anyone: ``session_start``, ``collect_sign``, ``verify_sign``;
* (P) participant: ``p_keygen``, ``p_pubkey``, ``p_request``,
  ``p_aggr_cred``, ``p_sign_session``;
* (I) issuer: ``i_keygen``, ``i_pubkey``, ``i_sign_req``.

``collect_sign`` is the mean cost of folding one signature into a seal,
averaged over the N additions of a session. Timed steps read fixed inputs
prepared up front and write to their own output files, so repetitions are
independent. Peak memory is the process high-water mark (``ru_maxrss``) at
the end of the run, so it is approximate and shared by all rows.
"""

from __future__ import annotations

import contextlib
import csv
import gc
import io
import json
import resource
import sys
import tempfile
import time
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np

from . import bls, credential as cr, curve, passport as pp, seal as sl, wire
from .errors import InvalidInput, VerificationFailed

ANYONE_LABELS = ("session_start", "collect_sign", "verify_sign")
PARTICIPANT_LABELS = ("p_keygen", "p_pubkey", "p_request", "p_aggr_cred", "p_sign_session")
ISSUER_LABELS = ("i_keygen", "i_pubkey", "i_sign_req")
LABELS = ANYONE_LABELS + PARTICIPANT_LABELS + ISSUER_LABELS

DOCUMENT = {"EconomicEvent": {"action": "produce", "note": "benchmark event", "quantity": "1"}}


@dataclass(frozen=True)
class BenchRecord:
    label: str
    participants: int
    repetitions: int
    mean_seconds: float
    peak_memory_bytes: int
    output_bytes: int
    backend: str = ""


def _peak_rss():
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # kilobytes on Linux, bytes on macOS
    return rss if sys.platform == "darwin" else rss * 1024


class _Workdir:
    def __init__(self, root):
        self.root = Path(root)

    def put(self, name, kind, obj):
        path = self.root / name
        path.write_text(wire.dumps(kind, obj), encoding="utf-8")
        return path

    def put_doc(self, name, doc):
        path = self.root / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    def load(self, name, kind):
        return wire.loads(kind, (self.root / name).read_text(encoding="utf-8"))

    def store(self, name, kind, obj):
        text = wire.dumps(kind, obj)
        (self.root / name).write_text(text, encoding="utf-8")
        return len(text.encode("utf-8"))


@contextlib.contextmanager
def _no_gc():
    # as timeit does: keep collector pauses out of the measurements
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def _timed(fn):
    """Wrap a file-level step so it reports (seconds, output bytes)."""

    def step():
        t0 = time.perf_counter()
        size = fn()
        return time.perf_counter() - t0, size

    return step


def run_benchmark(participants, repetitions: int, backend: str | None = None) -> list[BenchRecord]:
    """Time every labelled phase for each participant count in *participants*.

    All sessions are prepared first; the repetitions are then interleaved
    across participant counts (rep 1 for every N, rep 2 for every N, ...)
    so slow drift of the host affects every N alike.
    """
    participants = list(participants)
    if not participants or any(n < 1 for n in participants):
        raise InvalidInput("participant counts must be positive")
    if repetitions < 1:
        raise InvalidInput("repetitions must be >= 1")
    backend = backend or curve.backend_name()
    with tempfile.TemporaryDirectory(prefix="reflow-bench-") as tmp:
        plans = [(n, _prepare(_Workdir(Path(tmp) / f"n{n}"), n)) for n in participants]
        totals = {(n, label): 0.0 for n, plan in plans for label in plan}
        sizes = {}
        for n, plan in plans:
            for step, _ in plan.values():
                step()  # warm-up, untimed
        with _no_gc():
            for _ in range(repetitions):
                for n, plan in plans:
                    for label, (step, _) in plan.items():
                        seconds, sizes[n, label] = step()
                        totals[n, label] += seconds
        for n, plan in plans:
            if not sl.verify_seal(plan.wd.load("collect.json", "reflow_seal")):
                raise VerificationFailed(f"benchmark seal with {n} participants does not verify")
        peak = _peak_rss()
        return [
            BenchRecord(label, n, repetitions, totals[n, label] / (repetitions * per), peak, sizes[n, label], backend)
            for n, plan in plans
            for label, (_, per) in plan.items()
        ]


class _Plan(dict):
    """label -> (step, operations per step), in execution order."""

    def __init__(self, wd):
        super().__init__()
        self.wd = wd


def _prepare(wd, n):
    wd.root.mkdir()
    plan = _Plan(wd)

    # inputs shared by the timed steps, written once
    ik = cr.issuer_keygen()
    vk = ik.public
    wd.put("issuer_keys.json", "issuer_keys", ik)
    wd.put("issuer_pk.json", "issuer_public_key", vk)
    signers = []
    for _ in range(n):
        kp, cs = bls.bls_keygen(), cr.credential_keygen()
        signers.append((kp, cs, cr.unblind(cr.blind_sign(ik, cr.prepare_blind_sign(cs)), cs)))
    kp0, cs0, cred0 = signers[0]
    wd.put("keys.json", "keys", (kp0, cs0))
    wd.put("credentials.json", "credentials", cred0)
    wd.put("request.json", "credential_request", cr.prepare_blind_sign(cs0))
    wd.put("cred_sig.json", "credential_signature", cr.blind_sign(ik, wd.load("request.json", "credential_request")))
    wd.put("pubkeys.json", "reflow_public_key_array", [kp.pk for kp, _, _ in signers])
    wd.put_doc("event.json", DOCUMENT)
    seal0 = sl.seal_for_identity([kp.pk for kp, _, _ in signers], pp.reflow_identity(DOCUMENT))
    wd.put("seal.json", "reflow_seal", seal0)
    for i, (kp, cs, cred) in enumerate(signers):
        wd.put(f"sig{i}.json", "reflow_signature", sl.sign_seal(kp.sk, cred, cs, vk, seal0))

    def add(label, fn, per=1):
        plan[label] = (_timed(fn), per)

    # (I) issuer
    add("i_keygen", lambda: wd.store("out_issuer_keys.json", "issuer_keys", cr.issuer_keygen()))
    add(
        "i_pubkey",
        lambda: wd.store("out_issuer_pk.json", "issuer_public_key", wd.load("issuer_keys.json", "issuer_keys").public),
    )
    add(
        "i_sign_req",
        lambda: wd.store(
            "out_cred_sig.json",
            "credential_signature",
            cr.blind_sign(wd.load("issuer_keys.json", "issuer_keys"), wd.load("request.json", "credential_request")),
        ),
    )

    # (P) participant, on participant 0
    add("p_keygen", lambda: wd.store("out_keys.json", "keys", (bls.bls_keygen(), cr.credential_keygen())))
    add("p_pubkey", lambda: wd.store("out_pk.json", "reflow_public_key", wd.load("keys.json", "keys")[0].pk))
    add(
        "p_request",
        lambda: wd.store("out_request.json", "credential_request", cr.prepare_blind_sign(wd.load("keys.json", "keys")[1])),
    )

    def aggr_cred():
        _, cs = wd.load("keys.json", "keys")
        blinded = wd.load("cred_sig.json", "credential_signature")
        return wd.store("out_credentials.json", "credentials", cr.aggregate_credentials([cr.unblind(blinded, cs)]))

    add("p_aggr_cred", aggr_cred)

    def sign_session():
        kp, cs = wd.load("keys.json", "keys")
        sig = sl.sign_seal(
            kp.sk,
            wd.load("credentials.json", "credentials"),
            cs,
            wd.load("issuer_pk.json", "issuer_public_key"),
            wd.load("seal.json", "reflow_seal"),
        )
        return wd.store("out_signature.json", "reflow_signature", sig)

    add("p_sign_session", sign_session)

    # (A) anyone
    def session_start():
        pubkeys = wd.load("pubkeys.json", "reflow_public_key_array")
        doc = json.loads((wd.root / "event.json").read_text(encoding="utf-8"))
        return wd.store("out_seal.json", "reflow_seal", sl.seal_for_identity(pubkeys, pp.reflow_identity(doc)))

    add("session_start", session_start)

    seal0_text = (wd.root / "seal.json").read_text(encoding="utf-8")

    def collect():
        # fold all n signatures, one file-level step each; the reset is not timed
        (wd.root / "collect.json").write_text(seal0_text, encoding="utf-8")
        total, size = 0.0, 0
        for i in range(n):
            t0 = time.perf_counter()
            seal = wd.load("collect.json", "reflow_seal")
            sig = wd.load(f"sig{i}.json", "reflow_signature")
            vk_ = wd.load("issuer_pk.json", "issuer_public_key")
            size = wd.store("collect.json", "reflow_seal", sl.add_signature(seal, vk_, sig))
            total += time.perf_counter() - t0
        return total, size

    plan["collect_sign"] = (collect, n)

    def verify_sign():
        if not sl.verify_seal(wd.load("collect.json", "reflow_seal")):
            raise VerificationFailed(f"benchmark seal with {n} participants does not verify")
        return len(b"SUCCESS\n")

    add("verify_sign", verify_sign)
    return plan


_COLUMNS = [f.name for f in fields(BenchRecord)]


def emit_csv(records) -> str:
    """CSV text: header then one row per record, columns in :class:`BenchRecord` order."""
    records = list(records)
    if not records:
        raise InvalidInput("no benchmark records to emit")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for r in records:
        writer.writerow([f"{v!r}" if isinstance(v, float) else v for v in astuple(r)])
    return buf.getvalue()


def parse_csv(text: str) -> list[BenchRecord]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [
        BenchRecord(
            label=row["label"],
            participants=int(row["participants"]),
            repetitions=int(row["repetitions"]),
            mean_seconds=float(row["mean_seconds"]),
            peak_memory_bytes=int(row["peak_memory_bytes"]),
            output_bytes=int(row["output_bytes"]),
            backend=row.get("backend", "") or "",
        )
        for row in rows
    ]


def fit_linear_scaling(records) -> tuple[float, float, float]:
    """Least-squares line of mean_seconds against participants: (slope, intercept, r^2)."""
    records = list(records)
    x = np.array([r.participants for r in records], dtype=float)
    y = np.array([r.mean_seconds for r in records], dtype=float)
    if len(np.unique(x)) < 3:
        raise InvalidInput("need at least 3 distinct participant counts to fit")
    slope, intercept = np.polyfit(x, y, 1)
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else (1.0 if ss_res <= 1e-30 else 0.0)
    return float(slope), float(intercept), r2
