"""Bit-exact wire formats.

Field elements are fixed-width big-endian integers of ceil(bits(p)/8) bytes,
matrices are row-major, and multi-round objects are concatenated in round
order.  Layouts:

    pk  = pid(1) || A || B || W || TB_1 .. TB_R
    sk  = pid(1) || seed(32) || z(32)
    ct  = TA_1 .. TA_R || c_mask(kappa/8) || tag(32)
    sig = len(sigma0)(4) || sigma0 || t(32)

    ds_pk = height(1) || root(32)
    ds_sk = height(1) || seed(32) || z(32)

Every decoder checks the total length and raises :class:`FramingError` on a
mismatch.  Ciphertext matrices with out-of-range entries are *not* a framing
error: :func:`decode_matrices` returns a validity flag instead so the KEM can
reject implicitly.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Sequence

from .params import Params, profile_by_id

if TYPE_CHECKING:
    from .dsa import DsPublicKey, DsSecretKey, Signature
    from .kem import Ciphertext, KemPublicKey, KemSecretKey

SEED_BYTES = 32
Z_BYTES = 32
TAG_BYTES = 32


class FramingError(ValueError):
    """Wrong length or header on a serialized object."""


def matrix_bytes(params: Params, count: int = 1) -> int:
    return count * params.n * params.n * params.entry_bytes


def encode_matrices(ms: Iterable[Sequence[Sequence[int]]], params: Params) -> bytes:
    eb = params.entry_bytes
    out = bytearray()
    for m in ms:
        if len(m) != params.n or any(len(row) != params.n for row in m):
            raise ValueError(f"expected {params.n}x{params.n} matrix")
        for row in m:
            for e in row:
                out += e.to_bytes(eb, "big")
    return bytes(out)


def _entries(b: bytes, params: Params, count: int) -> list[list[list[int]]]:
    if len(b) != matrix_bytes(params, count):
        raise FramingError(f"expected {matrix_bytes(params, count)} bytes, got {len(b)}")
    n, eb = params.n, params.entry_bytes
    vals = [int.from_bytes(b[k:k + eb], "big") for k in range(0, len(b), eb)]
    return [[vals[(c * n + i) * n:(c * n + i + 1) * n] for i in range(n)] for c in range(count)]


def decode_matrices(b: bytes, params: Params, count: int | None = None):
    """Decode ``count`` (default R) group matrices.

    Returns ``(matrices, valid)``.  Entries outside [1, p-1] are reduced mod p
    (0 maps to 1) and clear ``valid``.
    """
    if count is None:
        count = params.R
    p = params.p
    valid = True
    out = []
    for m in _entries(b, params, count):
        rows = []
        for row in m:
            fixed = []
            for e in row:
                ok = 1 <= e < p
                valid &= ok
                r = e % p
                fixed.append(r if r else 1)
            rows.append(tuple(fixed))
        out.append(tuple(rows))
    return out, valid


def _decode_exponents(b: bytes, params: Params):
    (m,) = _entries(b, params, 1)
    if any(not 0 <= e <= params.p - 2 for row in m for e in row):
        raise FramingError("exponent entry out of range")
    return tuple(tuple(row) for row in m)


def _params_for(pid: int, params: Params | None) -> Params:
    if params is not None:
        if pid != params.pid:
            raise FramingError(f"params-id {pid} does not match profile {params.name}")
        return params
    try:
        return profile_by_id(pid)
    except ValueError as exc:
        raise FramingError(str(exc)) from None


# -- KEM keys and ciphertexts ---------------------------------------------------

def pk_bytes(params: Params) -> int:
    return 1 + matrix_bytes(params, 3 + params.R)


def sk_bytes(params: Params) -> int:
    return 1 + SEED_BYTES + Z_BYTES


def ct_bytes(params: Params) -> int:
    return matrix_bytes(params, params.R) + params.kappa_bytes + TAG_BYTES


def encode_pk(pk: KemPublicKey) -> bytes:
    prm = pk.params
    return (bytes([prm.pid]) + encode_matrices([pk.A, pk.B, pk.W], prm)
            + encode_matrices(pk.TB, prm))


def decode_pk(b: bytes, params: Params | None = None) -> KemPublicKey:
    from .kem import KemPublicKey

    if not b:
        raise FramingError("empty public key")
    prm = _params_for(b[0], params)
    if len(b) != pk_bytes(prm):
        raise FramingError(f"public key must be {pk_bytes(prm)} bytes, got {len(b)}")
    mb = matrix_bytes(prm)
    body = b[1:]
    A = _decode_exponents(body[:mb], prm)
    B = _decode_exponents(body[mb:2 * mb], prm)
    (W,), w_ok = decode_matrices(body[2 * mb:3 * mb], prm, 1)
    TB, tb_ok = decode_matrices(body[3 * mb:], prm, prm.R)
    if not (w_ok and tb_ok):
        raise FramingError("group matrix entry out of range")
    return KemPublicKey(prm, A, B, W, tuple(TB))


def encode_sk(sk: KemSecretKey) -> bytes:
    return bytes([sk.pk.params.pid]) + sk.seed + sk.z


def decode_sk(b: bytes, params: Params | None = None) -> KemSecretKey:
    """Rebuild the secret key by re-expanding its seed; the stored z is kept."""
    from .kem import expand_secret

    if not b:
        raise FramingError("empty secret key")
    prm = _params_for(b[0], params)
    if len(b) != sk_bytes(prm):
        raise FramingError(f"secret key must be {sk_bytes(prm)} bytes, got {len(b)}")
    seed, z = b[1:1 + SEED_BYTES], b[1 + SEED_BYTES:]
    return expand_secret(seed, prm, z=z)


def encode_ct(ct: Ciphertext) -> bytes:
    return ct.ta_enc + ct.c_mask + ct.tag


def decode_ct(b: bytes, params: Params) -> Ciphertext:
    from .kem import Ciphertext

    if len(b) != ct_bytes(params):
        raise FramingError(f"ciphertext must be {ct_bytes(params)} bytes, got {len(b)}")
    mb = matrix_bytes(params, params.R)
    kb = params.kappa_bytes
    return Ciphertext(b[:mb], b[mb:mb + kb], b[mb + kb:])


# -- signatures --------------------------------------------------------------------

def encode_sig(sig: Signature) -> bytes:
    return len(sig.sigma0).to_bytes(4, "big") + sig.sigma0 + sig.t


def decode_sig(b: bytes, sigma0_len: int) -> Signature:
    from .dsa import Signature

    if len(b) != 4 + sigma0_len + TAG_BYTES:
        raise FramingError(f"signature must be {4 + sigma0_len + TAG_BYTES} bytes, got {len(b)}")
    if int.from_bytes(b[:4], "big") != sigma0_len:
        raise FramingError("inner signature length prefix mismatch")
    return Signature(b[4:4 + sigma0_len], b[4 + sigma0_len:])


def encode_ds_pk(pk: DsPublicKey) -> bytes:
    return pk.encoded


def decode_ds_pk(b: bytes) -> DsPublicKey:
    """Merkle-Lamport public key; the height byte selects the tree size."""
    from .dsa import DsPublicKey, MerkleLamport

    if len(b) != 1 + 32:
        raise FramingError(f"signature public key must be 33 bytes, got {len(b)}")
    try:
        scheme = MerkleLamport(b[0])
    except ValueError as exc:
        raise FramingError(str(exc)) from None
    return DsPublicKey(scheme, b[1:])


def encode_ds_sk(sk: DsSecretKey) -> bytes:
    return bytes([sk.pk.height]) + sk.seed + sk.z


def decode_ds_sk(b: bytes) -> DsSecretKey:
    from .dsa import keygen_ds

    if len(b) != 1 + SEED_BYTES + Z_BYTES:
        raise FramingError(f"signature secret key must be {1 + SEED_BYTES + Z_BYTES} bytes")
    try:
        _, sk = keygen_ds(b[1:1 + SEED_BYTES], height=b[0])
    except ValueError as exc:
        raise FramingError(str(exc)) from None
    if sk.z != b[1 + SEED_BYTES:]:
        sk = sk.with_z(b[1 + SEED_BYTES:])
    return sk


# -- KAT files ---------------------------------------------------------------------

KAT_FIELDS = ("count", "seed", "pk", "sk", "msg", "ct", "ss", "sig")


def format_kat(header: dict[str, str], records: Iterable[dict[str, object]]) -> str:
    """NIST-style ``name = value`` blocks; bytes are upper-case hex, LF line ends."""
    lines = [f"# {k} = {v}" for k, v in header.items()]
    for rec in records:
        lines.append("")
        for key in KAT_FIELDS:
            if key not in rec:
                continue
            v = rec[key]
            lines.append(f"{key} = {v.hex().upper() if isinstance(v, bytes) else v}")
    return "\n".join(lines) + "\n"


def parse_kat(text: str) -> tuple[dict[str, str], list[dict[str, object]]]:
    header: dict[str, str] = {}
    records: list[dict[str, object]] = []
    cur: dict[str, object] | None = None
    for raw in text.split("\n"):
        line = raw.strip()
        if not line:
            cur = None
            continue
        if line.startswith("#"):
            k, _, v = line[1:].partition("=")
            header[k.strip()] = v.strip()
            continue
        k, sep, v = line.partition("=")
        k, v = k.strip(), v.strip()
        if not sep or k not in KAT_FIELDS:
            raise FramingError(f"bad KAT line: {raw!r}")
        if cur is None:
            cur = {}
            records.append(cur)
        try:
            cur[k] = int(v) if k == "count" else bytes.fromhex(v)
        except ValueError:
            raise FramingError(f"bad KAT value for {k}") from None
    return header, records
