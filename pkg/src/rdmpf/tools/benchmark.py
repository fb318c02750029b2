"""Per-operation wall-clock benchmarks.

Runs are strictly sequential.  Each run times every operation of one protocol
once with ``time.perf_counter`` and checks the protocol outcome (keys match,
tampering is rejected).
"""

from __future__ import annotations

import csv
import io
import os
import statistics
import time
from dataclasses import dataclass

from .. import dsa, kem
from ..params import Params

KEM_OPS = ("Setup", "KeyGen", "Encaps", "Decaps", "ImplicitReject")
DSA_OPS = ("Setup", "Sign", "Verify", "ImplicitReject")
BENCH_MESSAGE = b" Hello PQC! with FO & IR "


@dataclass(frozen=True)
class BenchRecord:
    run: int
    op: str
    seconds: float
    profile: str


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def _kem_run(params: Params):
    t0 = time.perf_counter()
    params.validate()
    seed = os.urandom(32)
    coins = os.urandom(params.kappa_bytes)
    setup = time.perf_counter() - t0
    (pk, sk), t_kg = _timed(kem.keygen, seed, params)
    (ct, k), t_enc = _timed(kem.encaps, pk, coins)
    k2, t_dec = _timed(kem.decaps, sk, ct)
    bad = bytearray(ct.to_bytes())
    bad[-1] ^= 0x01
    k3, t_rej = _timed(kem.decaps, sk, bytes(bad))
    if k2 != k or k3 == k:
        raise RuntimeError("KEM correctness check failed during benchmark")
    return dict(zip(KEM_OPS, (setup, t_kg, t_enc, t_dec, t_rej)))


def _dsa_run(height: int):
    (pk, sk), setup = _timed(dsa.keygen_ds, os.urandom(32), None, height)
    sig, t_sign = _timed(dsa.sign_ds, sk, BENCH_MESSAGE)
    ok, t_ver = _timed(dsa.verify_ds, pk, BENCH_MESSAGE, sig, sk.z)
    bad, t_rej = _timed(dsa.verify_ds, pk, BENCH_MESSAGE + b"!", sig, sk.z)
    if not ok.accepted or bad.accepted:
        raise RuntimeError("signature check failed during benchmark")
    return dict(zip(DSA_OPS, (setup, t_sign, t_ver, t_rej)))


def bench(params: Params, runs: int, protocol: str = "kem",
          height: int = dsa.DEFAULT_HEIGHT) -> list[BenchRecord]:
    """``runs`` x ops records for ``protocol`` ('kem' or 'dsa')."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if protocol not in ("kem", "dsa"):
        raise ValueError("protocol must be 'kem' or 'dsa'")
    records = []
    for run in range(1, runs + 1):
        times = _kem_run(params) if protocol == "kem" else _dsa_run(height)
        records += [BenchRecord(run, op, sec, params.name) for op, sec in times.items()]
    return records


def summarize(records: list[BenchRecord]) -> dict[str, tuple[float, float]]:
    """op -> (mean, standard error); the standard error is stdev / sqrt(runs)."""
    cols: dict[str, list[float]] = {}
    for rec in records:
        cols.setdefault(rec.op, []).append(rec.seconds)
    out = {}
    for op, xs in cols.items():
        se = statistics.stdev(xs) / len(xs) ** 0.5 if len(xs) > 1 else 0.0
        out[op] = (statistics.fmean(xs), se)
    return out


def to_csv(records: list[BenchRecord]) -> str:
    """Long-format CSV; data rows followed by ``mean`` and ``stderr`` rows per op."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["run", "op", "seconds", "profile"])
    for rec in records:
        w.writerow([rec.run, rec.op, f"{rec.seconds:.7f}", rec.profile])
    profile = records[0].profile if records else ""
    stats = summarize(records)
    for label, k in (("mean", 0), ("stderr", 1)):
        for op, vals in stats.items():
            w.writerow([label, op, f"{vals[k]:.7f}", profile])
    return buf.getvalue()


def format_table(records: list[BenchRecord]) -> str:
    """One row per run, one column per op, then Mean and Standard error rows."""
    ops = list(dict.fromkeys(rec.op for rec in records))
    by_run: dict[int, dict[str, float]] = {}
    for rec in records:
        by_run.setdefault(rec.run, {})[rec.op] = rec.seconds
    lines = ["\t".join(["RUN #"] + ops)]
    for run in sorted(by_run):
        lines.append("\t".join([str(run)] + [f"{by_run[run][op]:.7f}" for op in ops]))
    stats = summarize(records)
    lines.append("\t".join(["Mean"] + [f"{stats[op][0]:.7f}" for op in ops]))
    lines.append("\t".join(["Standard error"] + [f"{stats[op][1]:.7f}" for op in ops]))
    return "\n".join(lines)
