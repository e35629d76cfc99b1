"""Material passports and identity-sum track-and-trace.

A node's identity is the point sum of its parents' seal identities plus the
identity of its own content document, so siblings built from the same
parents still get distinct identities. Verification of one node only needs
its direct parents; a whole genealogy is valid when every node passes its
own one-level check and all of its ancestors do too.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .credential import (
    Credential,
    CredentialProof,
    CredentialSecret,
    IssuerPublicKey,
    verify_credential,
)
from .curve import G2, PointG1
from .errors import InvalidInput
from .identity import canonicalize, reflow_identity
from .seal import Seal, add_signature, seal_for_identity, sign_seal, verify_seal

__all__ = [
    "MaterialPassport",
    "aggregate_seal_identities",
    "canonicalize",
    "create_material_passport",
    "reflow_identity",
    "verify_genealogy",
    "verify_material_passport",
    "verify_track_and_trace",
]


@dataclass(frozen=True)
class MaterialPassport:
    proof: CredentialProof
    seal: Seal
    zeta: PointG1


def aggregate_seal_identities(seals) -> PointG1:
    seals = list(seals)
    if not seals:
        raise InvalidInput("no seals to aggregate")
    return reduce(lambda u, v: u + v, (s.identity for s in seals))


def node_identity(doc, parents=()) -> PointG1:
    """Identity of a graph node: own content identity plus all parent identities."""
    ident = reflow_identity(doc)
    parents = list(parents)
    if parents:
        ident = ident + aggregate_seal_identities(parents)
    return ident


def create_material_passport(
    sk: int,
    cred: Credential,
    cs: CredentialSecret,
    vk: IssuerPublicKey,
    doc,
    parents=(),
) -> MaterialPassport:
    """Single-agent passport for *doc*, chained onto the seals of *parents*."""
    seal = seal_for_identity([G2() * sk], node_identity(doc, parents))
    sig = sign_seal(sk, cred, cs, vk, seal)
    seal = add_signature(seal, vk, sig)
    return MaterialPassport(proof=sig.proof, seal=seal, zeta=sig.zeta)


def _passport_checks(expected: PointG1, vk: IssuerPublicKey, mp: MaterialPassport) -> bool:
    return (
        expected == mp.seal.identity
        and verify_seal(mp.seal)
        and verify_credential(vk, mp.proof, mp.zeta, mp.seal.identity)
    )


def verify_material_passport(doc, vk: IssuerPublicKey, mp: MaterialPassport) -> bool:
    return _passport_checks(reflow_identity(doc), vk, mp)


def verify_track_and_trace(parent_seals, child: MaterialPassport, child_doc_extra, vk: IssuerPublicKey) -> bool:
    """One level of track-and-trace: recompute the child identity from its parents."""
    parent_seals = list(parent_seals)
    if not parent_seals:
        raise InvalidInput("track-and-trace needs at least one parent seal")
    return _passport_checks(node_identity(child_doc_extra, parent_seals), vk, child)


def verify_genealogy(nodes, vk: IssuerPublicKey) -> dict:
    """Validate a provenance DAG.

    *nodes* maps a name to ``(doc, passport, parent_names)``. Returns a map
    from name to validity, where a node is valid iff its own level verifies
    and every ancestor is valid.
    """
    result: dict = {}

    def visit(name, stack=()):
        if name in result:
            return result[name]
        if name in stack:
            raise InvalidInput(f"cycle through node {name!r}")
        doc, mp, parent_names = nodes[name]
        parents_ok = all([visit(p, stack + (name,)) for p in parent_names])
        if parent_names:
            local = verify_track_and_trace([nodes[p][1].seal for p in parent_names], mp, doc, vk)
        else:
            local = verify_material_passport(doc, vk, mp)
        result[name] = parents_ok and local
        return result[name]

    for name in nodes:
        visit(name)
    return result
