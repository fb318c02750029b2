import os

import pytest

from rdmpf import codec, dsa, hashing
from rdmpf.dsa import MerkleLamport, Signature, keygen_ds, sign_ds, verify_ds

MSG = b" Hello PQC! with FO & IR "


@pytest.fixture(scope="module")
def keys():
    return keygen_ds(bytes(range(32)), height=4)


def test_keygen_deterministic(keys):
    pk, sk = keygen_ds(bytes(range(32)), height=4)
    assert pk == keys[0] and sk == keys[1]
    assert len(sk.z) == 32 and sk.z == hashing.xof("zsec", sk.seed, 256)


def test_distinct_seeds_distinct_keys():
    roots = {keygen_ds(os.urandom(32), height=2)[0].root for _ in range(20)}
    assert len(roots) == 20


def test_sign_deterministic(keys):
    _, sk = keys
    assert sign_ds(sk, MSG) == sign_ds(sk, MSG)


def test_honest_signature_accepted(keys):
    pk, sk = keys
    sig = sign_ds(sk, MSG)
    out = verify_ds(pk, MSG, sig, z=sk.z)
    assert out.accepted and bool(out) and out.value == sig.t
    assert str(out) == "accept"
    assert verify_ds(pk, MSG, sig.to_bytes()).accepted


def test_tampered_message_rejected(keys):
    pk, sk = keys
    sig = sign_ds(sk, MSG)
    out = verify_ds(pk, MSG + b"!", sig, z=sk.z)
    assert not out.accepted and len(out.value) == 32
    assert str(out).startswith("reject* ")
    assert verify_ds(pk, MSG + b"!", sig, z=sk.z) == out


def test_placeholder_formula(keys):
    pk, sk = keys
    sig = sign_ds(sk, MSG)
    bad_t = Signature(sig.sigma0, bytes(32))
    out = verify_ds(pk, MSG, bad_t, z=sk.z)
    assert out.value == hashing.h2(sk.z + sig.sigma0 + MSG, "z")


def test_one_bit_message_change_moves_randomness(keys):
    _, sk = keys
    s1, s2 = sign_ds(sk, b"message-0"), sign_ds(sk, b"message-1")
    r1 = hashing.h1(b"message-0" + sk.pk.encoded, "r")
    r2 = hashing.h1(b"message-1" + sk.pk.encoded, "r")
    assert r1 != r2 and s1.sigma0 != s2.sigma0


def test_placeholders_differ_across_sigma0(keys):
    pk, sk = keys
    sig = sign_ds(sk, MSG)
    vals = set()
    for k in range(20):
        s0 = bytearray(sig.sigma0)
        s0[100 + k] ^= 1
        vals.add(verify_ds(pk, MSG, Signature(bytes(s0), sig.t), z=sk.z).value)
    assert len(vals) == 20


def test_placeholder_bit_balance(keys):
    pk, sk = keys
    sig = sign_ds(sk, MSG)
    ones = total = 0
    for k in range(200):
        v = verify_ds(pk, MSG + k.to_bytes(2, "big"), sig, z=sk.z).value
        ones += sum(bin(b).count("1") for b in v)
        total += 8 * len(v)
    assert abs(ones / total - 0.5) < 0.02


def test_default_z_is_process_local(keys):
    pk, sk = keys
    sig = sign_ds(sk, MSG)
    a = verify_ds(pk, b"x", sig)
    assert not a.accepted and a == verify_ds(pk, b"x", sig)
    assert a.value != verify_ds(pk, b"x", sig, z=sk.z).value


def test_framing_error_on_wrong_length(keys):
    pk, sk = keys
    sig = sign_ds(sk, MSG)
    with pytest.raises(codec.FramingError):
        verify_ds(pk, MSG, Signature(sig.sigma0[:-1], sig.t))
    with pytest.raises(codec.FramingError):
        verify_ds(pk, MSG, sig.to_bytes()[:-1])


def test_both_checks_always_run(keys, monkeypatch):
    pk, sk = keys
    sig = sign_ds(sk, MSG)
    calls = {"inner": 0, "h2": []}
    orig_verify = MerkleLamport.verify
    orig_h2 = hashing.h2

    def inner(self, *a):
        calls["inner"] += 1
        return orig_verify(self, *a)

    def h2(data, label="tag"):
        calls["h2"].append(label)
        return orig_h2(data, label)

    monkeypatch.setattr(MerkleLamport, "verify", inner)
    monkeypatch.setattr(hashing, "h2", h2)
    cases = [(MSG, sig), (MSG + b"?", sig), (MSG, Signature(sig.sigma0, bytes(32))),
             (MSG, Signature(bytes(len(sig.sigma0)), sig.t))]
    for msg, s in cases:
        calls["inner"], calls["h2"] = 0, []
        verify_ds(pk, msg, s, z=sk.z)
        assert calls["inner"] == 1
        assert calls["h2"] == ["t", "z"]


# -- Merkle-Lamport inner scheme ------------------------------------------------------

def test_inner_round_trip():
    sch = MerkleLamport(3)
    ipk, isk = sch.keygen(b"\x05" * 32)
    for i in range(8):
        r = i.to_bytes(32, "big")
        s0 = sch.sign(isk, b"msg", r)
        assert len(s0) == sch.sig_len == 4 + 2 * 256 * 32 + 3 * 32
        assert int.from_bytes(s0[:4], "big") == i
        assert sch.verify(ipk, b"msg", s0)
        assert not sch.verify(ipk, b"msh", s0)


def test_inner_flipped_preimage_rejected():
    sch = MerkleLamport(2)
    ipk, isk = sch.keygen(bytes(32))
    s0 = bytearray(sch.sign(isk, b"m", bytes(32)))
    s0[4] ^= 1
    assert not sch.verify(ipk, b"m", bytes(s0))


def test_inner_index_out_of_range_rejected():
    sch = MerkleLamport(2)
    ipk, isk = sch.keygen(bytes(32))
    s0 = bytearray(sch.sign(isk, b"m", bytes(32)))
    s0[0] ^= 0x80
    assert not sch.verify(ipk, b"m", bytes(s0))
    assert not sch.verify(ipk, b"m", bytes(s0[:-1]))


def test_inner_height_bounds():
    with pytest.raises(ValueError):
        MerkleLamport(0)
    assert MerkleLamport(10).sig_len == 4 + 16384 + 320
    assert dsa.DEFAULT_HEIGHT == 10
