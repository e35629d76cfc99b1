"""Rust-backed BLS12-381 arithmetic via ``py_arkworks_bls12381``."""

from py_arkworks_bls12381 import GT, G1Point, G2Point, Scalar

NAME = "native"

_G1 = G1Point()
_G2 = G2Point()
_G1_ZERO = G1Point.identity()
_G2_ZERO = G2Point.identity()


def g1_generator():
    return _G1


def g1_identity():
    return _G1_ZERO


def g1_add(p, q):
    return p + q


def g1_neg(p):
    return -p


def g1_mul(p, k):
    # k is already reduced mod the group order by the caller
    return p * Scalar(k)


def g1_eq(p, q):
    return p == q


def g1_encode(p):
    return bytes(p.to_compressed_bytes())


def _canonical(p, data):
    # arkworks ignores stray bits in an infinity encoding
    if bytes(p.to_compressed_bytes()) != bytes(data):
        raise ValueError("non-canonical point encoding")
    return p


def g1_decode(data, check_subgroup=True):
    # unchecked still rejects x-coordinates that are not on the curve
    if check_subgroup:
        return _canonical(G1Point.from_compressed_bytes(data), data)
    return _canonical(G1Point.from_compressed_bytes_unchecked(data), data)


def g1_in_subgroup(p):
    try:
        G1Point.from_compressed_bytes(p.to_compressed_bytes())
    except ValueError:
        return False
    return True


def g2_generator():
    return _G2


def g2_identity():
    return _G2_ZERO


def g2_add(p, q):
    return p + q


def g2_neg(p):
    return -p


def g2_mul(p, k):
    return p * Scalar(k)


def g2_eq(p, q):
    return p == q


def g2_encode(p):
    return bytes(p.to_compressed_bytes())


def g2_decode(data, check_subgroup=True):
    if check_subgroup:
        return _canonical(G2Point.from_compressed_bytes(data), data)
    return _canonical(G2Point.from_compressed_bytes_unchecked(data), data)


def g2_in_subgroup(p):
    try:
        G2Point.from_compressed_bytes(p.to_compressed_bytes())
    except ValueError:
        return False
    return True


def pairing(q2, p1):
    return GT.pairing(p1, q2)


def pairing_product_is_one(pairs):
    g1s = [p1 for _, p1 in pairs]
    g2s = [q2 for q2, _ in pairs]
    return GT.multi_pairing(g1s, g2s) == GT.one()


def gt_one():
    return GT.one()


def gt_mul(a, b):
    return a * b


def gt_eq(a, b):
    return a == b
