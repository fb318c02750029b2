"""FO-DS-IR: deterministic signing with tag binding and implicit rejection.

Wraps any randomized inner signature scheme Sign(sk, M; r):

    r      = H1('r' || M || pk)
    sigma0 = Sign(sk, M; r)
    t      = H2('t' || sigma0 || M || pk)

Verification recomputes both the inner check and the tag unconditionally.  A
failure is not an exception: it yields a 32-byte placeholder
H2('z' || z || sigma0 || M) in place of the tag.

The default inner scheme is a stateless Merkle tree of Lamport one-time keys,
with the leaf chosen from r.  Distinct messages can land on the same leaf, so
it is a test-grade stand-in, not a deployable signature.
"""

from __future__ import annotations

import hmac
import os
from dataclasses import dataclass, field, replace
from typing import Protocol

from . import codec, hashing
from .hashing import u32
from .kem import ct_select

SEED_BYTES = 32
DEFAULT_HEIGHT = 10

_LOCAL_Z = hashing.xof("zsec", os.urandom(32), 256)


class InnerSignatureScheme(Protocol):
    sig_len: int

    def keygen(self, seed: bytes) -> tuple[bytes, object]: ...

    def sign(self, isk: object, msg: bytes, r: bytes) -> bytes: ...

    def verify(self, ipk: bytes, msg: bytes, sig0: bytes) -> bool: ...

    def public_bytes(self, ipk: bytes) -> bytes: ...


@dataclass(frozen=True)
class _TreeKey:
    seed: bytes
    levels: tuple[tuple[bytes, ...], ...]   # levels[0] = leaves, levels[-1] = (root,)


class MerkleLamport:
    """Merkle tree of 2**height Lamport keys over a 256-bit message digest.

    sigma0 = leaf index (4) || 256 revealed secrets || 256 opposite public
    halves || authentication path (height nodes), all 32-byte values.
    """

    N = 32
    BITS = 256

    def __init__(self, height: int = DEFAULT_HEIGHT):
        if not 1 <= height <= 20:
            raise ValueError("height must be in [1, 20]")
        self.height = height
        self.sig_len = 4 + 2 * self.BITS * self.N + height * self.N

    def __repr__(self):
        return f"MerkleLamport(height={self.height})"

    def __eq__(self, other):
        return isinstance(other, MerkleLamport) and other.height == self.height

    def __hash__(self):
        return hash(("MerkleLamport", self.height))

    def _secrets(self, seed: bytes, idx: int) -> list[bytes]:
        buf = hashing.xof("otsk", seed + u32(idx), 2 * self.BITS * self.N * 8)
        return [buf[k:k + self.N] for k in range(0, len(buf), self.N)]

    @staticmethod
    def _image(x: bytes) -> bytes:
        return hashing.xof("otpk", x, 256)

    @staticmethod
    def _leaf(pub: list[bytes]) -> bytes:
        return hashing.xof("pkh", b"".join(pub), 256)

    @staticmethod
    def _node(left: bytes, right: bytes) -> bytes:
        return hashing.xof("node", left + right, 256)

    def _digest_bits(self, root: bytes, idx: int, msg: bytes) -> list[int]:
        dg = int.from_bytes(hashing.xof("msg", root + u32(idx) + msg, self.BITS), "big")
        return [(dg >> (self.BITS - 1 - i)) & 1 for i in range(self.BITS)]

    def keygen(self, seed: bytes) -> tuple[bytes, _TreeKey]:
        leaves = []
        for idx in range(1 << self.height):
            leaves.append(self._leaf([self._image(s) for s in self._secrets(seed, idx)]))
        levels = [tuple(leaves)]
        while len(levels[-1]) > 1:
            lv = levels[-1]
            levels.append(tuple(self._node(lv[k], lv[k + 1]) for k in range(0, len(lv), 2)))
        return levels[-1][0], _TreeKey(seed, tuple(levels))

    def sign(self, isk: _TreeKey, msg: bytes, r: bytes) -> bytes:
        idx = int.from_bytes(r, "big") % (1 << self.height)
        root = isk.levels[-1][0]
        bits = self._digest_bits(root, idx, msg)
        sk = self._secrets(isk.seed, idx)
        revealed = [sk[2 * i + b] for i, b in enumerate(bits)]
        others = [self._image(sk[2 * i + 1 - b]) for i, b in enumerate(bits)]
        path = [isk.levels[lv][(idx >> lv) ^ 1] for lv in range(self.height)]
        return u32(idx) + b"".join(revealed) + b"".join(others) + b"".join(path)

    def verify(self, ipk: bytes, msg: bytes, sig0: bytes) -> bool:
        if len(sig0) != self.sig_len:
            return False
        N, B = self.N, self.BITS
        idx = int.from_bytes(sig0[:4], "big")
        in_range = idx < (1 << self.height)
        idx %= 1 << self.height
        body = sig0[4:]
        bits = self._digest_bits(ipk, idx, msg)
        pub = []
        for i, b in enumerate(bits):
            mine = self._image(body[i * N:(i + 1) * N])
            other = body[(B + i) * N:(B + i + 1) * N]
            pub += [mine, other] if b == 0 else [other, mine]
        node = self._leaf(pub)
        path = body[2 * B * N:]
        for lv in range(self.height):
            sib = path[lv * N:(lv + 1) * N]
            node = self._node(sib, node) if (idx >> lv) & 1 else self._node(node, sib)
        return hmac.compare_digest(node, ipk) and in_range

    def public_bytes(self, ipk: bytes) -> bytes:
        return bytes([self.height]) + ipk


@dataclass(frozen=True)
class DsPublicKey:
    scheme: InnerSignatureScheme
    ipk: bytes
    encoded: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "encoded", self.scheme.public_bytes(self.ipk))

    @property
    def height(self) -> int:
        return self.scheme.height

    @property
    def root(self) -> bytes:
        return self.ipk

    def to_bytes(self) -> bytes:
        return self.encoded


@dataclass(frozen=True)
class DsSecretKey:
    seed: bytes
    z: bytes
    pk: DsPublicKey
    isk: object = field(repr=False, compare=False)

    def with_z(self, z: bytes) -> DsSecretKey:
        return replace(self, z=z)

    def to_bytes(self) -> bytes:
        return codec.encode_ds_sk(self)


@dataclass(frozen=True)
class Signature:
    sigma0: bytes
    t: bytes

    def to_bytes(self) -> bytes:
        return codec.encode_sig(self)

    @classmethod
    def from_bytes(cls, b: bytes, sigma0_len: int) -> Signature:
        return codec.decode_sig(b, sigma0_len)


@dataclass(frozen=True)
class VerifyOutcome:
    """``accepted`` plus a 32-byte value: the tag on accept, the placeholder on reject*."""

    accepted: bool
    value: bytes

    def __bool__(self):
        return self.accepted

    def __str__(self):
        return "accept" if self.accepted else f"reject* {self.value.hex()}"


def keygen_ds(seed: bytes, scheme: InnerSignatureScheme | None = None,
              height: int = DEFAULT_HEIGHT) -> tuple[DsPublicKey, DsSecretKey]:
    if len(seed) != SEED_BYTES:
        raise ValueError(f"seed must be {SEED_BYTES} bytes")
    if scheme is None:
        scheme = MerkleLamport(height)
    ipk, isk = scheme.keygen(seed)
    pk = DsPublicKey(scheme, ipk)
    return pk, DsSecretKey(seed, hashing.xof("zsec", seed, 256), pk, isk)


def sign_ds(sk: DsSecretKey, msg: bytes) -> Signature:
    pk = sk.pk
    r = hashing.h1(msg + pk.encoded, "r")
    sigma0 = pk.scheme.sign(sk.isk, msg, r)
    t = hashing.h2(sigma0 + msg + pk.encoded, "t")
    return Signature(sigma0, t)


def verify_ds(pk: DsPublicKey, msg: bytes, sig: Signature | bytes,
              z: bytes | None = None) -> VerifyOutcome:
    """Verify with implicit rejection.

    ``z`` is the rejection secret; contexts without one fall back to a
    process-local value (the placeholder is never checked by anyone else).
    """
    if isinstance(sig, bytes):
        sig = codec.decode_sig(sig, pk.scheme.sig_len)
    if len(sig.sigma0) != pk.scheme.sig_len or len(sig.t) != codec.TAG_BYTES:
        raise codec.FramingError("signature has wrong field lengths")
    if z is None:
        z = _LOCAL_Z
    valid = pk.scheme.verify(pk.ipk, msg, sig.sigma0)
    t2 = hashing.h2(sig.sigma0 + msg + pk.encoded, "t")
    ok = bool(valid) & hmac.compare_digest(t2, sig.t)
    placeholder = hashing.h2(z + sig.sigma0 + msg, "z")
    return VerifyOutcome(ok, ct_select(ok, sig.t, placeholder))
