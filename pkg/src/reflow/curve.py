"""Pairing-group primitives over BLS12-381.

Scalars are plain ``int`` values reduced modulo :data:`ORDER`. Points are
immutable wrappers around backend objects:

* :class:`PointG1` lives on the base curve E (48-byte compressed encoding);
  signatures, session identities, credentials and fingerprints;
* :class:`PointG2` lives on the twist E_T (96-byte compressed encoding);
  public keys, the seal verifier and issuer keys;
* :class:`GtElement` is the pairing target group, written multiplicatively.
"""

from __future__ import annotations

import contextlib
import hashlib
import random
import secrets
import struct
import threading

from py_ecc.bls.hash_to_curve import hash_to_G1
from py_ecc.bls.point_compression import compress_G1

from . import backends
from .errors import DecodeError, InvalidInput

ORDER = 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001

SCALAR_BYTES = 32
G1_BYTES = 48
G2_BYTES = 96

#: Domain-separation tag for hashing messages to E (RFC 9380 suite naming).
HASH_TO_G1_DST = b"REFLOW-V1-CS01-with-BLS12381G1_XMD:SHA-256_SSWU_RO_"

_HS_SEED = b"reflow/v1 commitment base HS"

_backend = backends.active


def backend_name():
    return _backend.NAME


@contextlib.contextmanager
def use_backend(name):
    """Temporarily switch the process-wide arithmetic backend.

    Points created under one backend must not be combined with points from
    another; re-encode and decode to move values across.
    """
    global _backend, _HS
    saved = _backend, _HS
    _backend = backends.load(name)
    _HS = None
    try:
        yield _backend
    finally:
        _backend, _HS = saved


# -- scalars -----------------------------------------------------------------

_rng_lock = threading.Lock()
_test_rng: random.Random | None = None


def random_scalar() -> int:
    """Uniform nonzero scalar from the OS CSPRNG (or the seeded test stream)."""
    with _rng_lock:
        if _test_rng is not None:
            return _test_rng.randrange(1, ORDER)
    return secrets.randbelow(ORDER - 1) + 1


def set_test_seed(seed: int | None) -> None:
    """Enable (or with ``None`` disable) the deterministic test generator.

    Never use outside tests and golden-file generation: the stream is a
    Mersenne Twister and offers no secrecy.
    """
    global _test_rng
    with _rng_lock:
        _test_rng = None if seed is None else random.Random(seed)


@contextlib.contextmanager
def seeded(seed: int):
    global _test_rng
    with _rng_lock:
        saved = _test_rng
        _test_rng = random.Random(seed)
    try:
        yield
    finally:
        with _rng_lock:
            _test_rng = saved


def inv(a: int) -> int:
    if a % ORDER == 0:
        raise ZeroDivisionError("zero has no inverse mod the group order")
    return pow(a, -1, ORDER)


def encode_scalar(k: int) -> bytes:
    if not 0 <= k < ORDER:
        raise InvalidInput("scalar out of range")
    return k.to_bytes(SCALAR_BYTES, "big")


def decode_scalar(data: bytes) -> int:
    if len(data) != SCALAR_BYTES:
        raise DecodeError(f"scalar must be {SCALAR_BYTES} bytes, got {len(data)}")
    k = int.from_bytes(data, "big")
    if k >= ORDER:
        raise DecodeError("scalar not reduced mod the group order")
    return k


# -- groups ------------------------------------------------------------------


class _Point:
    __slots__ = ("_p", "_b")
    _prefix = ""
    _size = 0

    def __init__(self, raw, backend=None):
        self._p = raw
        self._b = backend or _backend

    def _op(self, name):
        return getattr(self._b, self._prefix + name)

    def _check(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other._b is not self._b:
            raise TypeError("points from different backends cannot be combined")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(self._op("add")(self._p, other._p), self._b)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        neg = self._op("neg")(other._p)
        return type(self)(self._op("add")(self._p, neg), self._b)

    def __neg__(self):
        return type(self)(self._op("neg")(self._p), self._b)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return type(self)(self._op("mul")(self._p, k % ORDER), self._b)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other._b is not self._b:
            return self.encode() == other.encode()
        return self._op("eq")(self._p, other._p)

    def __hash__(self):
        return hash(self.encode())

    def __repr__(self):
        return f"{type(self).__name__}({self.encode().hex()[:16]}…)"

    def is_identity(self) -> bool:
        return self == type(self).identity()

    def encode(self) -> bytes:
        return self._op("encode")(self._p)

    def in_subgroup(self) -> bool:
        return self._op("in_subgroup")(self._p)

    @classmethod
    def decode(cls, data: bytes, check_subgroup: bool = True):
        """Decode a compressed point.

        With ``check_subgroup=False`` the point is only guaranteed to be on
        the curve; the caller must check membership of whatever it derives.
        """
        data = bytes(data)
        if len(data) != cls._size:
            raise DecodeError(f"{cls.__name__} must be {cls._size} bytes, got {len(data)}")
        try:
            raw = getattr(_backend, cls._prefix + "decode")(data, check_subgroup)
        except (ValueError, TypeError, AssertionError) as exc:
            raise DecodeError(f"invalid {cls.__name__} encoding: {exc}") from None
        return cls(raw)

    @classmethod
    def generator(cls):
        return cls(getattr(_backend, cls._prefix + "generator")())

    @classmethod
    def identity(cls):
        return cls(getattr(_backend, cls._prefix + "identity")())


class PointG1(_Point):
    __slots__ = ()
    _prefix = "g1_"
    _size = G1_BYTES


class PointG2(_Point):
    __slots__ = ()
    _prefix = "g2_"
    _size = G2_BYTES


class GtElement:
    """Element of the order-n subgroup of F_p^12 (multiplicative)."""

    __slots__ = ("_v", "_b")

    def __init__(self, raw, backend=None):
        self._v = raw
        self._b = backend or _backend

    @classmethod
    def one(cls):
        return cls(_backend.gt_one())

    def __mul__(self, other):
        if not isinstance(other, GtElement):
            return NotImplemented
        return GtElement(self._b.gt_mul(self._v, other._v), self._b)

    def __pow__(self, k):
        k %= ORDER
        acc, base = self._b.gt_one(), self._v
        while k:
            if k & 1:
                acc = self._b.gt_mul(acc, base)
            base = self._b.gt_mul(base, base)
            k >>= 1
        return GtElement(acc, self._b)

    def __eq__(self, other):
        if not isinstance(other, GtElement):
            return NotImplemented
        return self._b.gt_eq(self._v, other._v)

    __hash__ = None

    def is_one(self) -> bool:
        return self._b.gt_eq(self._v, self._b.gt_one())


def G1() -> PointG1:
    return PointG1.generator()


def G2() -> PointG2:
    return PointG2.generator()


def pairing(p: PointG2, q: PointG1) -> GtElement:
    """Optimal ate pairing e: E_T x E -> G_T (argument order as in the protocol)."""
    if not isinstance(p, PointG2) or not isinstance(q, PointG1):
        raise TypeError("pairing expects (PointG2, PointG1)")
    return GtElement(_backend.pairing(p._p, q._p))


def pairings_equal(lhs: tuple[PointG2, PointG1], rhs: tuple[PointG2, PointG1]) -> bool:
    """``e(*lhs) == e(*rhs)`` using one shared final exponentiation."""
    (p1, q1), (p2, q2) = lhs, rhs
    return _backend.pairing_product_is_one([(p1._p, q1._p), ((-p2)._p, q2._p)])


# -- hashing -----------------------------------------------------------------


def _to_backend_g1(pyecc_point) -> PointG1:
    if _backend.NAME == "python":
        return PointG1(pyecc_point)
    data = compress_G1(pyecc_point).to_bytes(G1_BYTES, "big")
    return PointG1(_backend.g1_decode(data))


def hash_to_point_g1(message: bytes, dst: bytes = HASH_TO_G1_DST) -> PointG1:
    """Hash bytes onto E with the RFC 9380 ``BLS12381G1_XMD:SHA-256_SSWU_RO_`` suite."""
    if not message:
        raise InvalidInput("cannot hash an empty message to a point")
    return _to_backend_g1(hash_to_G1(bytes(message), dst, hashlib.sha256))


_HS: PointG1 | None = None


def generator_hs() -> PointG1:
    """Fixed commitment base HS, derived by hashing a public seed (no known dlog)."""
    global _HS
    if _HS is None:
        _HS = hash_to_point_g1(_HS_SEED)
    return _HS


def _encoded(e) -> bytes:
    if isinstance(e, (bytes, bytearray)):
        return bytes(e)
    if isinstance(e, (PointG1, PointG2)):
        return e.encode()
    if isinstance(e, int):
        return encode_scalar(e % ORDER)
    raise TypeError(f"cannot hash {type(e).__name__}")


def challenge_hash(domain_tag: bytes, elements) -> int:
    """Fiat-Shamir challenge: SHA-512 over length-prefixed inputs, reduced mod n.

    *elements* may be raw bytes, points or scalars; points and scalars are
    hashed in their canonical encodings. Order matters.
    """
    elements = list(elements)
    if not elements:
        raise InvalidInput("challenge input list is empty")
    h = hashlib.sha512()
    h.update(struct.pack(">I", len(domain_tag)))
    h.update(domain_tag)
    h.update(struct.pack(">I", len(elements)))
    for e in elements:
        data = _encoded(e)
        h.update(struct.pack(">I", len(data)))
        h.update(data)
    return int.from_bytes(h.digest(), "big") % ORDER
