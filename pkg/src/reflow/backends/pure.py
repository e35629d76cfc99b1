"""Pure-Python BLS12-381 arithmetic on top of ``py_ecc``.

Slow (a pairing costs most of a second) but dependency-light; it is the
fallback when the Rust extension is unavailable and the reference the
native backend is cross-checked against.
"""

from py_ecc.bls.point_compression import (
    compress_G1,
    compress_G2,
    decompress_G1,
    decompress_G2,
)
from py_ecc.optimized_bls12_381 import (
    FQ12,
    G1,
    G2,
    Z1,
    Z2,
    add,
    b,
    b2,
    curve_order,
    eq,
    final_exponentiate,
    is_inf,
    is_on_curve,
    multiply,
    neg,
)
from py_ecc.optimized_bls12_381.optimized_pairing import miller_loop

NAME = "python"


def _in_subgroup(p):
    return is_inf(multiply(p, curve_order))


def g1_generator():
    return G1


def g1_identity():
    return Z1


def g1_add(p, q):
    return add(p, q)


def g1_neg(p):
    return neg(p)


def g1_mul(p, k):
    if k == 0:
        return Z1
    return multiply(p, k)


def g1_eq(p, q):
    return eq(p, q)


def g1_encode(p):
    return compress_G1(p).to_bytes(48, "big")


def g1_in_subgroup(p):
    return _in_subgroup(p)


def g1_decode(data, check_subgroup=True):
    if len(data) != 48:
        raise ValueError(f"expected 48 bytes, got {len(data)}")
    p = decompress_G1(int.from_bytes(data, "big"))
    if compress_G1(p).to_bytes(48, "big") != bytes(data):
        raise ValueError("non-canonical G1 encoding")
    if check_subgroup and not _in_subgroup(p):
        raise ValueError("point is not in the prime-order subgroup")
    return p


def g2_generator():
    return G2


def g2_identity():
    return Z2


def g2_add(p, q):
    return add(p, q)


def g2_neg(p):
    return neg(p)


def g2_mul(p, k):
    if k == 0:
        return Z2
    return multiply(p, k)


def g2_eq(p, q):
    return eq(p, q)


def g2_encode(p):
    z1, z2 = compress_G2(p)
    return z1.to_bytes(48, "big") + z2.to_bytes(48, "big")


def g2_in_subgroup(p):
    return _in_subgroup(p)


def g2_decode(data, check_subgroup=True):
    if len(data) != 96:
        raise ValueError(f"expected 96 bytes, got {len(data)}")
    z = (int.from_bytes(data[:48], "big"), int.from_bytes(data[48:], "big"))
    p = decompress_G2(z)
    if g2_encode(p) != bytes(data):
        raise ValueError("non-canonical G2 encoding")
    if check_subgroup and not _in_subgroup(p):
        raise ValueError("point is not in the prime-order subgroup")
    return p


def _miller(q2, p1):
    if is_inf(q2) or is_inf(p1):
        return FQ12.one()
    assert is_on_curve(q2, b2) and is_on_curve(p1, b)
    return miller_loop(q2, p1, final_exponentiate=False)


def pairing(q2, p1):
    return final_exponentiate(_miller(q2, p1))


def pairing_product_is_one(pairs):
    acc = FQ12.one()
    for q2, p1 in pairs:
        acc = acc * _miller(q2, p1)
    return final_exponentiate(acc) == FQ12.one()


def gt_one():
    return FQ12.one()


def gt_mul(a, b_):
    return a * b_


def gt_eq(a, b_):
    return a == b_
