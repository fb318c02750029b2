"""Accept-path vs reject-path decapsulation timing.

CPython cannot promise constant time, so the probe is informative: it reports
medians and spread and raises a soft flag when the medians differ by more than
20%.  The structural guarantee (both paths run the same operations) is checked
separately with :func:`op_counts`.
"""

from __future__ import annotations

import os
import statistics
import time
from collections import Counter
from contextlib import ExitStack
from dataclasses import dataclass
from unittest import mock

from .. import algebra, hashing, kem
from ..params import Params

FLAG_THRESHOLD = 0.20

# functions whose call counts make up the operation trace
_COUNTED = (
    (algebra, "rdmpf"),
    (algebra, "mod_pow"),
    (algebra, "poly_eval_matrix"),
    (hashing, "xof"),
    (hashing, "sample_below"),
)


@dataclass(frozen=True)
class TimingReport:
    trials: int
    accept_median: float
    reject_median: float
    accept_iqr: float
    reject_iqr: float
    ratio: float
    flagged: bool
    same_ops: bool


def op_counts(fn, *args, **kwargs) -> Counter:
    """Run ``fn`` and count calls into the arithmetic and hashing primitives."""
    counts: Counter = Counter()

    def wrap(name, orig):
        def inner(*a, **kw):
            counts[name] += 1
            return orig(*a, **kw)
        return inner

    with ExitStack() as stack:
        for mod, name in _COUNTED:
            orig = getattr(mod, name)
            stack.enter_context(mock.patch.object(mod, name, wrap(name, orig)))
        fn(*args, **kwargs)
    return counts


def _iqr(xs: list[float]) -> float:
    q = statistics.quantiles(xs, n=4)
    return q[2] - q[0]


def timing_probe(params: Params, trials: int, seed: bytes | None = None,
                 delay_reject: float = 0.0) -> TimingReport:
    """Time ``trials`` honest and ``trials`` tampered decapsulations, interleaved.

    ``delay_reject`` sleeps inside each reject-path measurement; it exists to
    self-test the flag.
    """
    if trials < 100:
        raise ValueError("trials must be >= 100")
    pk, sk = kem.keygen(seed or os.urandom(32), params)
    ct, _ = kem.encaps(pk, os.urandom(params.kappa_bytes))
    good = ct.to_bytes()
    bad = bytearray(good)
    bad[len(ct.ta_enc)] ^= 0x01
    bad = bytes(bad)

    acc, rej = [], []
    for _ in range(trials):
        t0 = time.perf_counter()
        kem.decaps(sk, good)
        acc.append(time.perf_counter() - t0)
        t0 = time.perf_counter()
        kem.decaps(sk, bad)
        if delay_reject:
            time.sleep(delay_reject)
        rej.append(time.perf_counter() - t0)

    am, rm = statistics.median(acc), statistics.median(rej)
    ratio = rm / am
    same = op_counts(kem.decaps, sk, good) == op_counts(kem.decaps, sk, bad)
    return TimingReport(trials, am, rm, _iqr(acc), _iqr(rej), ratio,
                        abs(ratio - 1.0) > FLAG_THRESHOLD, same)
