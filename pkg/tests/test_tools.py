import hashlib
import math
import time

import pytest

from rdmpf import cli, kem
from rdmpf.params import L5_N7, MICRO, TOY_997, Params
from rdmpf.tools import benchmark, bruteforce, kat, security, timing
from rdmpf.tools.benchmark import BenchRecord

# sha256 of KAT files regenerated from an all-zero master seed
KEM_TOY_KAT_SHA256 = "90058ab7cd2832591460c9074155028ce3c011103921854d88bb7809aa2f6144"
KEM_L5_KAT_SHA256 = "8b634a559a69c708e3860795fb7abcafbbb17101b38281057b2e94b4d7eb751a"
DSA_KAT_SHA256 = "37d296ff31f78adfff7bdc2b758509ad273942d7a1916bae7dae7618ac189a21"

TABLE = {3: (17, 544), 5: (57, 1824), 7: (121, 3872), 10: (262, 8384),
         15: (617, 19744), 20: (1122, 35904)}


# -- security estimate -----------------------------------------------------------------

@pytest.mark.parametrize("n", sorted(TABLE))
def test_security_estimate_table(n):
    e = security.security_estimate(n)
    assert (e.unknowns, e.bits_classical) == TABLE[n]
    assert e.nist_level == 5
    assert e.bits_quantum * 2 == e.bits_classical


def test_security_estimate_brackets():
    assert security.security_estimate(2, 32).unknowns == 6
    assert security.security_estimate(2, 32).nist_level == 0      # 192 bits
    assert security.security_estimate(2, 48).nist_level == 1      # 288 bits
    assert security.security_estimate(2, 64).nist_level == 3      # 384 bits
    with pytest.raises(ValueError):
        security.security_estimate(1)


def test_security_table_rows():
    rows = security.security_table().splitlines()[1:]
    assert [tuple(map(int, r.split("\t")[:5])) for r in rows] == \
        [(n, u, 32, b, 5) for n, (u, b) in sorted(TABLE.items())]


# -- brute force -------------------------------------------------------------------------

def test_brute_force_micro_recovers_equivalent_key():
    pk, sk = kem.keygen(b"\x42" * 32, MICRO)
    res = bruteforce.brute_force_recover(pk, MICRO)
    assert res.found and res.space == 4 and 1 <= res.tried <= 4
    from rdmpf import algebra
    for (U, V), tb in zip(res.uv, pk.TB):
        assert algebra.rdmpf(U, pk.W, V, MICRO) == tb
    for i in range(10):
        ct, k = kem.encaps(pk, i.to_bytes(8, "big"))
        assert kem.decapsulate_with(pk, res.uv, bytes(32), ct) == k


def test_brute_force_guard():
    pk, _ = kem.keygen(bytes(32), L5_N7)
    with pytest.raises(bruteforce.SearchSpaceError):
        bruteforce.brute_force_recover(pk)
    pk, _ = kem.keygen(bytes(32), MICRO)
    with pytest.raises(bruteforce.SearchSpaceError):
        bruteforce.brute_force_recover(pk, limit=3)
    with pytest.raises(ValueError):
        bruteforce.brute_force_recover(pk, TOY_997)


def test_zero_exp_max_rejected():
    with pytest.raises(ValueError):
        Params(p=11, n=2, sigma=3, R=1, kappa=64, d=1, exp_max=0)


# -- benchmarks -------------------------------------------------------------------------

def test_bench_shape():
    recs = benchmark.bench(TOY_997, 10)
    assert len(recs) == 10 * len(benchmark.KEM_OPS)
    assert all(r.seconds >= 0 and r.profile == "toy-997" for r in recs)
    table = benchmark.format_table(recs).splitlines()
    assert len(table) == 1 + 10 + 2
    assert table[-2].startswith("Mean") and table[-1].startswith("Standard error")
    csv_lines = benchmark.to_csv(recs).splitlines()
    assert csv_lines[0] == "run,op,seconds,profile"
    assert len(csv_lines) == 1 + 10 * 5 + 2 * 5


def test_bench_dsa_shape():
    recs = benchmark.bench(TOY_997, 2, "dsa", height=2)
    assert [r.op for r in recs[:4]] == list(benchmark.DSA_OPS)
    assert len(benchmark.format_table(recs).splitlines()) == 1 + 2 + 2


def test_bench_bad_args():
    with pytest.raises(ValueError):
        benchmark.bench(TOY_997, 0)
    with pytest.raises(ValueError):
        benchmark.bench(TOY_997, 1, "tls")


def test_mean_and_standard_error():
    recs = [BenchRecord(i + 1, "Encaps", v, "x") for i, v in enumerate([0.5, 1.0, 2.0])]
    mean, se = benchmark.summarize(recs)["Encaps"]
    assert mean == pytest.approx(7 / 6)
    # squared deviations 4/9 + 1/36 + 25/36 = 7/6, variance 7/12, se sqrt(7/36)
    assert se == pytest.approx(math.sqrt(7) / 6)
    assert benchmark.summarize(recs[:1])["Encaps"] == (0.5, 0.0)


# -- timing probe ------------------------------------------------------------------------

def test_op_trace_parity(toy_keys):
    pk, sk = toy_keys
    ct, _ = kem.encaps(pk, bytes(8))
    good = ct.to_bytes()
    for pos in (0, 50, 60, 89):
        bad = bytearray(good)
        bad[pos] ^= 0x10
        assert timing.op_counts(kem.decaps, sk, good) == timing.op_counts(kem.decaps, sk, bytes(bad))
    counts = timing.op_counts(kem.decaps, sk, good)
    assert counts["rdmpf"] == 2 and counts["xof"] == 6


def test_timing_probe_report():
    rep = timing.timing_probe(MICRO, 100, seed=bytes(32))
    assert rep.trials == 100 and 0 < rep.ratio < math.inf
    assert isinstance(rep.flagged, bool)
    with pytest.raises(ValueError):
        timing.timing_probe(MICRO, 99)


def test_timing_probe_flags_injected_delay():
    rep = timing.timing_probe(MICRO, 100, seed=bytes(32), delay_reject=0.002)
    assert rep.flagged and rep.ratio > 1.2


# -- KAT ----------------------------------------------------------------------------------

def test_kat_regenerates_identically():
    a = kat.gen_kem_kat(TOY_997, bytes(32), 5)
    assert a == kat.gen_kem_kat(TOY_997, bytes(32), 5)
    assert hashlib.sha256(a.encode()).hexdigest() == KEM_TOY_KAT_SHA256
    assert kat.check_kat(a) == []


def test_kat_pinned_l5_and_dsa():
    assert hashlib.sha256(kat.gen_kem_kat(L5_N7, bytes(32), 2).encode()).hexdigest() == KEM_L5_KAT_SHA256
    d = kat.gen_dsa_kat(bytes(32), 2)
    assert hashlib.sha256(d.encode()).hexdigest() == DSA_KAT_SHA256
    assert kat.check_kat(d) == []


def test_kat_check_detects_edit():
    text = kat.gen_kem_kat(MICRO, b"\x01" * 32, 2)
    lines = text.splitlines()
    i = next(k for k, ln in enumerate(lines) if ln.startswith("ss = "))
    v = lines[i][5:]
    lines[i] = "ss = " + ("0" if v[0] != "0" else "1") + v[1:]
    problems = kat.check_kat("\n".join(lines) + "\n")
    assert any("ss" in p for p in problems)


# -- CLI ----------------------------------------------------------------------------------

def test_cli_security_table(capsys):
    assert cli.main(["security-table"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 7 and out[1].startswith("3\t17\t32\t544\t5")


def test_cli_kem_flow(tmp_path, capsys):
    key = tmp_path / "k"
    assert cli.main(["keygen", "--seed", "11" * 32, "--out", str(key)]) == 0
    ct = tmp_path / "ct"
    assert cli.main(["encaps", "--in", f"{key}.pk", "--out", str(ct), "--seed", "00" * 8]) == 0
    capsys.readouterr()
    assert cli.main(["encaps", "--in", f"{key}.pk", "--out", str(ct), "--seed", "00" * 8]) == 0
    k = capsys.readouterr().out.strip()
    assert len(k) == 16
    assert cli.main(["decaps", "--in", f"{key}.sk", "--ct", str(ct), "--expect", k]) == 0
    bad = bytearray(ct.read_bytes())
    bad[-1] ^= 1
    ct.write_bytes(bytes(bad))
    assert cli.main(["decaps", "--in", f"{key}.sk", "--ct", str(ct), "--expect", k]) == 1
    ct.write_bytes(bytes(bad[:-1]))
    assert cli.main(["decaps", "--in", f"{key}.sk", "--ct", str(ct)]) == 2


def test_cli_sign_verify(tmp_path):
    key, msg, sig = tmp_path / "d", tmp_path / "m", tmp_path / "s"
    msg.write_bytes(b"Hello PQC!")
    assert cli.main(["keygen", "--scheme", "dsa", "--height", "3", "--seed", "22" * 32,
                     "--out", str(key)]) == 0
    assert cli.main(["sign", "--in", f"{key}.sk", "--msg", str(msg), "--out", str(sig)]) == 0
    assert cli.main(["verify", "--in", f"{key}.pk", "--msg", str(msg), "--sig", str(sig)]) == 0
    msg.write_bytes(b"Hello PQC?")
    assert cli.main(["verify", "--in", f"{key}.pk", "--msg", str(msg), "--sig", str(sig),
                     "--sk", f"{key}.sk"]) == 1
    sig.write_bytes(sig.read_bytes()[:-3])
    assert cli.main(["verify", "--in", f"{key}.pk", "--msg", str(msg), "--sig", str(sig)]) == 2


def test_cli_kat_gen_check(tmp_path):
    f = tmp_path / "kem.kat"
    assert cli.main(["kat", "gen", "--profile", "micro", "--count", "3", "--out", str(f)]) == 0
    assert cli.main(["kat", "check", "--in", str(f)]) == 0
    f.write_text(f.read_text().replace("ss = ", "ss = 00", 1))
    assert cli.main(["kat", "check", "--in", str(f)]) == 1


def test_cli_usage_errors(tmp_path, capsys):
    assert cli.main(["keygen", "--seed", "zz", "--out", str(tmp_path / "x")]) == 2
    assert cli.main(["encaps", "--in", str(tmp_path / "missing")]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 2
    assert "rdmpf" in capsys.readouterr().err


def test_cli_bruteforce_and_timing(capsys):
    assert cli.main(["bruteforce", "--seed", "33" * 32, "--runs", "5"]) == 0
    assert "5/5" in capsys.readouterr().out
    assert cli.main(["timing", "--profile", "micro", "--runs", "100"]) == 0
    assert "ratio" in capsys.readouterr().out


def test_cli_bench(tmp_path, capsys):
    out = tmp_path / "b"
    assert cli.main(["bench", "--runs", "2", "--height", "2", "--out", str(out)]) == 0
    assert (tmp_path / "b.kem.csv").read_text().startswith("run,op,seconds,profile\n")
    assert (tmp_path / "b.dsa.csv").exists()


def test_timing_clock_monotonic():
    assert time.get_clock_info("perf_counter").monotonic
