"""Known-answer test files for the KEM and the signature wrapper.

Per-record seeds are derived from a master seed with SHAKE256 so a single
pinned value regenerates the whole file.  Signature records use message
lengths 33 * (count + 1) as in the NIST PQC KAT convention.
"""

from __future__ import annotations

import hashlib

from .. import codec, dsa, kem
from ..params import Params, get_profile

KAT_DSA_HEIGHT = 4


def _derive(master: bytes, what: bytes, i: int, nbytes: int) -> bytes:
    return hashlib.shake_256(b"rdmpf-kat/" + what + b"/" + master + i.to_bytes(4, "big")).digest(nbytes)


def kem_record(params: Params, master: bytes, i: int) -> dict:
    seed = _derive(master, b"seed", i, 32)
    msg = _derive(master, b"msg", i, params.kappa_bytes)
    pk, sk = kem.keygen(seed, params)
    ct, ss = kem.encaps(pk, msg)
    return {"count": i, "seed": seed, "pk": pk.to_bytes(), "sk": sk.to_bytes(),
            "msg": msg, "ct": ct.to_bytes(), "ss": ss}


def dsa_record(master: bytes, i: int, height: int) -> dict:
    seed = _derive(master, b"seed", i, 32)
    msg = _derive(master, b"msg", i, 33 * (i + 1))
    pk, sk = dsa.keygen_ds(seed, height=height)
    sig = dsa.sign_ds(sk, msg)
    return {"count": i, "seed": seed, "pk": pk.to_bytes(), "sk": sk.to_bytes(),
            "msg": msg, "sig": sig.to_bytes()}


def gen_kem_kat(params: Params, master: bytes, count: int) -> str:
    header = {"scheme": "kem", "profile": params.name, "master": master.hex().upper()}
    return codec.format_kat(header, (kem_record(params, master, i) for i in range(count)))


def gen_dsa_kat(master: bytes, count: int, height: int = KAT_DSA_HEIGHT) -> str:
    header = {"scheme": "dsa", "height": str(height), "master": master.hex().upper()}
    return codec.format_kat(header, (dsa_record(master, i, height) for i in range(count)))


def check_kat(text: str) -> list[str]:
    """Regenerate every record from its seed; return mismatch descriptions."""
    header, records = codec.parse_kat(text)
    master = bytes.fromhex(header.get("master", ""))
    scheme = header.get("scheme", "kem")
    problems = []
    for rec in records:
        i = rec["count"]
        if scheme == "kem":
            params = get_profile(header["profile"])
            want = kem_record(params, master, i)
            sk = codec.decode_sk(rec["sk"], params)
            if kem.decaps(sk, rec["ct"]) != rec["ss"]:
                problems.append(f"count {i}: decaps does not reproduce ss")
        elif scheme == "dsa":
            want = dsa_record(master, i, int(header["height"]))
            pk = codec.decode_ds_pk(rec["pk"])
            sk = codec.decode_ds_sk(rec["sk"])
            if not dsa.verify_ds(pk, rec["msg"], rec["sig"], z=sk.z).accepted:
                problems.append(f"count {i}: signature does not verify")
        else:
            return [f"unknown scheme {scheme!r}"]
        for key, val in want.items():
            if rec.get(key) != val:
                problems.append(f"count {i}: field {key} differs")
    return problems
