"""Domain-separated SHAKE256 suite.

Every hash input is framed as ``len(label) || label || data`` where the length
is a single byte.  Labels come from a closed registry; an unknown label is a
programming error and raises.
"""

from __future__ import annotations

import hashlib

LABELS = frozenset({
    # signature combinator
    "r", "t", "z",
    # key encapsulation
    "XY", "mask", "tag", "key", "rej",
    # key / seed expansion
    "Wgen", "Agen", "Bgen", "UVgen", "zsec",
    # Merkle-Lamport inner signature
    "pkh", "otsk", "otpk", "node", "msg",
})

H1_LABELS = frozenset({"mask", "rej", "r"})
H2_LABELS = frozenset({"tag", "t", "z"})

RHO_BITS = 256
TAG_BITS = 256


def frame(label: str, data: bytes) -> bytes:
    if label not in LABELS:
        raise ValueError(f"unregistered domain label {label!r}")
    lb = label.encode("ascii")
    return bytes([len(lb)]) + lb + data


def xof(label: str, data: bytes, out_bits: int) -> bytes:
    """SHAKE256 over the framed input, ``out_bits // 8`` bytes of output."""
    if out_bits <= 0 or out_bits % 8:
        raise ValueError("out_bits must be a positive multiple of 8")
    return hashlib.shake_256(frame(label, data)).digest(out_bits // 8)


def h1(data: bytes, label: str = "mask", out_bits: int = RHO_BITS) -> bytes:
    """Randomness / mask derivation (rho bits)."""
    if label not in H1_LABELS:
        raise ValueError(f"{label!r} is not an H1 label")
    return xof(label, data, max(out_bits, RHO_BITS))


def h2(data: bytes, label: str = "tag") -> bytes:
    """Tag derivation, always 32 bytes."""
    if label not in H2_LABELS:
        raise ValueError(f"{label!r} is not an H2 label")
    return xof(label, data, TAG_BITS)


def kdf(data: bytes, kappa: int) -> bytes:
    return xof("key", data, kappa)


def sample_below(label: str, data: bytes, count: int, bound: int) -> list[int]:
    """``count`` integers uniform in [0, bound) by rejection sampling the XOF stream.

    Candidates are big-endian words of ceil(bits(bound-1)/8) bytes masked to
    bits(bound-1) bits; out-of-range candidates are skipped.  The stream is
    lengthened (SHAKE output is prefix-stable) until enough values survive.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if count == 0:
        return []
    if bound == 1:
        return [0] * count
    width = (bound - 1).bit_length()
    nbytes = (width + 7) // 8
    mask = (1 << width) - 1
    f = frame(label, data)
    want = 2 * count * nbytes + 16
    out: list[int] = []
    pos = 0
    buf = b""
    while len(out) < count:
        if pos + nbytes > len(buf):
            buf = hashlib.shake_256(f).digest(want)
            want *= 2
            continue
        v = int.from_bytes(buf[pos:pos + nbytes], "big") & mask
        pos += nbytes
        if v < bound:
            out.append(v)
    return out


def u32(i: int) -> bytes:
    return i.to_bytes(4, "big")
