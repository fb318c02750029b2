"""FO-RDMPF-KEM: Fujisaki-Okamoto KEM over the rank-deficient matrix power function.

Key material comes from a 32-byte seed.  The public key carries two singular
bases A (left null vector ones) and B (right null vector ones), a unit matrix
W, and TB_r = RDMPF(U_r, W, V_r) where U_r, V_r are zero-constant polynomials
in A and B.  Encapsulation maps the message to polynomials X_r, Y_r in the
same bases, so X_r commutes with U_r and Y_r with V_r, and

    RDMPF(U, RDMPF(X, W, Y), V) == RDMPF(X, RDMPF(U, W, V), Y)

is what makes decapsulation recover the sender's S_r.

Decapsulation always runs the accept and the reject derivation and picks the
result with a masked select, so the work done does not depend on validity.
"""

from __future__ import annotations

import hmac
import os
from dataclasses import dataclass, field
from typing import Callable

from . import algebra, codec, hashing
from .algebra import LEFT, RIGHT, ExponentMatrix, GroupMatrix
from .hashing import u32
from .params import Params

SEED_BYTES = 32


@dataclass(frozen=True)
class KemPublicKey:
    params: Params
    A: ExponentMatrix
    B: ExponentMatrix
    W: GroupMatrix
    TB: tuple[GroupMatrix, ...]
    encoded: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "encoded", codec.encode_pk(self))

    def to_bytes(self) -> bytes:
        return self.encoded

    @classmethod
    def from_bytes(cls, b: bytes, params: Params | None = None) -> KemPublicKey:
        return codec.decode_pk(b, params)


@dataclass(frozen=True)
class KemSecretKey:
    seed: bytes
    z: bytes
    pk: KemPublicKey
    # (U_r, V_r) re-expanded from seed, never serialized
    uv: tuple[tuple[ExponentMatrix, ExponentMatrix], ...] = field(repr=False, compare=False)

    def to_bytes(self) -> bytes:
        return codec.encode_sk(self)

    @classmethod
    def from_bytes(cls, b: bytes, params: Params | None = None) -> KemSecretKey:
        return codec.decode_sk(b, params)


@dataclass(frozen=True)
class Ciphertext:
    ta_enc: bytes
    c_mask: bytes
    tag: bytes

    def to_bytes(self) -> bytes:
        return codec.encode_ct(self)

    @classmethod
    def from_bytes(cls, b: bytes, params: Params) -> Ciphertext:
        return codec.decode_ct(b, params)


def sample_coeff_pair(label: str, data: bytes, params: Params) -> tuple[list[int], list[int]]:
    """Two coefficient vectors of length d in [0, exp_max], neither all zero.

    Draws 2d values from xof(label, data || ctr) and bumps the counter until
    both halves are nonzero.
    """
    d = params.d
    ctr = 0
    while True:
        cs = hashing.sample_below(label, data + u32(ctr), 2 * d, params.exp_max + 1)
        left, right = cs[:d], cs[d:]
        if any(left) and any(right):
            return left, right
        ctr += 1


def expand_secret(seed: bytes, params: Params, z: bytes | None = None) -> KemSecretKey:
    """Deterministically expand a 32-byte seed into the full key pair."""
    if len(seed) != SEED_BYTES:
        raise ValueError(f"seed must be {SEED_BYTES} bytes")
    p, n = params.p, params.n
    A = algebra.gen_singular_base(seed, LEFT, params)
    B = algebra.gen_singular_base(seed, RIGHT, params)
    wv = hashing.sample_below("Wgen", seed, n * n, p - 1)
    W = tuple(tuple(1 + wv[i * n + j] for j in range(n)) for i in range(n))
    uv = []
    tb = []
    for r in range(1, params.R + 1):
        cu, cv = sample_coeff_pair("UVgen", seed + u32(r), params)
        U = algebra.poly_eval_matrix(cu, A, p)
        V = algebra.poly_eval_matrix(cv, B, p)
        uv.append((U, V))
        tb.append(algebra.rdmpf(U, W, V, params))
    pk = KemPublicKey(params, A, B, W, tuple(tb))
    if z is None:
        z = hashing.xof("zsec", seed, 256)
    return KemSecretKey(seed, z, pk, tuple(uv))


def keygen(rng_seed: bytes, params: Params) -> tuple[KemPublicKey, KemSecretKey]:
    sk = expand_secret(rng_seed, params)
    return sk.pk, sk


def map_to_xy(m: bytes, pk: KemPublicKey) -> list[tuple[ExponentMatrix, ExponentMatrix]]:
    """Derandomized (X_r, Y_r) as polynomials in the public bases."""
    params = pk.params
    if len(m) != params.kappa_bytes:
        raise ValueError(f"message must be {params.kappa_bytes} bytes")
    out = []
    for r in range(1, params.R + 1):
        cx, cy = sample_coeff_pair("XY", m + pk.encoded + u32(r), params)
        out.append((algebra.poly_eval_matrix(cx, pk.A, params.p),
                    algebra.poly_eval_matrix(cy, pk.B, params.p)))
    return out


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def ct_select(flag: bool, a: bytes, b: bytes) -> bytes:
    """``a`` if flag else ``b`` without branching on flag."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    nbits = 8 * len(a)
    ai, bi = int.from_bytes(a, "big"), int.from_bytes(b, "big")
    m = -int(bool(flag)) & ((1 << nbits) - 1)
    return (bi ^ ((ai ^ bi) & m)).to_bytes(len(a), "big")


def encaps(pk: KemPublicKey, coins: bytes) -> tuple[Ciphertext, bytes]:
    """Deterministic encapsulation; ``coins`` is the kappa-bit message m."""
    params = pk.params
    m = coins
    xy = map_to_xy(m, pk)
    ta = [algebra.rdmpf(X, pk.W, Y, params) for X, Y in xy]
    s = [algebra.rdmpf(X, tb, Y, params) for (X, Y), tb in zip(xy, pk.TB)]
    ta_enc = codec.encode_matrices(ta, params)
    s_enc = codec.encode_matrices(s, params)
    z_key = hashing.kdf(s_enc, params.kappa)
    mask = hashing.h1(z_key + ta_enc + pk.encoded, "mask", params.kappa)
    c_mask = _xor(m, mask[:params.kappa_bytes])
    tag = hashing.h2(m + ta_enc + pk.encoded, "tag")
    ct = Ciphertext(ta_enc, c_mask, tag)
    k = hashing.kdf(z_key + ct.to_bytes() + b"\x00", params.kappa)
    return ct, k


def encapsulate(pk: KemPublicKey, rng: Callable[[int], bytes] = os.urandom) -> tuple[Ciphertext, bytes]:
    return encaps(pk, rng(pk.params.kappa_bytes))


def secret_fallback(sk: KemSecretKey) -> bytes:
    return sk.z


def decaps(sk: KemSecretKey, ct: Ciphertext | bytes) -> bytes:
    return decapsulate_with(sk.pk, sk.uv, secret_fallback(sk), ct)


def decapsulate_with(pk: KemPublicKey, uv, z: bytes, ct: Ciphertext | bytes) -> bytes:
    """Decapsulation from explicit (U_r, V_r) pairs and fallback secret z."""
    params = pk.params
    if isinstance(ct, bytes):
        ct = codec.decode_ct(ct, params)
    ct_enc = ct.to_bytes()
    if len(ct_enc) != codec.ct_bytes(params) or len(ct.c_mask) != params.kappa_bytes:
        raise codec.FramingError("ciphertext has wrong field lengths")

    ta, valid = codec.decode_matrices(ct.ta_enc, params)
    s = [algebra.rdmpf(U, ta_r, V, params) for (U, V), ta_r in zip(uv, ta)]
    z_key = hashing.kdf(codec.encode_matrices(s, params), params.kappa)
    mask = hashing.h1(z_key + ct.ta_enc + pk.encoded, "mask", params.kappa)
    m = _xor(ct.c_mask, mask[:params.kappa_bytes])
    xy = map_to_xy(m, pk)
    ta2 = [algebra.rdmpf(X, pk.W, Y, params) for X, Y in xy]
    ta2_enc = codec.encode_matrices(ta2, params)
    tag = hashing.h2(m + ct.ta_enc + pk.encoded, "tag")

    ok = hmac.compare_digest(ta2_enc, ct.ta_enc) & hmac.compare_digest(tag, ct.tag) & valid
    k_accept = hashing.kdf(z_key + ct_enc + b"\x00", params.kappa)
    rho = hashing.h1(z + ct_enc + b"\xff", "rej")
    k_reject = hashing.kdf(rho + ct_enc + b"\x01", params.kappa)
    return ct_select(ok, k_accept, k_reject)
