"""Operational tooling: estimator, brute-force oracle, benchmarks, timing probe, KATs."""

from .benchmark import BenchRecord, bench, format_table, summarize, to_csv
from .bruteforce import BruteForceResult, SearchSpaceError, brute_force_recover
from .kat import check_kat, gen_dsa_kat, gen_kem_kat
from .security import SecurityEstimate, security_estimate, security_table
from .timing import TimingReport, op_counts, timing_probe

__all__ = [
    "BenchRecord", "bench", "format_table", "summarize", "to_csv",
    "BruteForceResult", "SearchSpaceError", "brute_force_recover",
    "check_kat", "gen_dsa_kat", "gen_kem_kat",
    "SecurityEstimate", "security_estimate", "security_table",
    "TimingReport", "op_counts", "timing_probe",
]
