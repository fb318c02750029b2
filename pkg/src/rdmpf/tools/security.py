"""Brute-force security estimate for the core matrix power function.

An attacker facing dimension n must guess n^2 entries of W and (n-1)^2 free
entries of each of the two rank-deficient exponent matrices:
n^2 + 2(n-1)^2 = 3n^2 - 4n + 2 unknowns of ``bits_per_entry`` bits each.
Grover search halves the exponent.
"""

from __future__ import annotations

from dataclasses import dataclass

TABLE_DIMENSIONS = (3, 5, 7, 10, 15, 20)

# classical bits needed per level, twice the AES key size of the level
_LEVEL_FLOORS = ((512, 5), (384, 3), (256, 1))


@dataclass(frozen=True)
class SecurityEstimate:
    n: int
    unknowns: int
    bits_per_entry: int
    bits_classical: int
    bits_quantum: int
    nist_level: int


def security_estimate(n: int, bits_per_entry: int = 32) -> SecurityEstimate:
    if n < 2:
        raise ValueError("n must be >= 2")
    unknowns = 3 * n * n - 4 * n + 2
    classical = bits_per_entry * unknowns
    level = next((lv for floor, lv in _LEVEL_FLOORS if classical >= floor), 0)
    return SecurityEstimate(n, unknowns, bits_per_entry, classical, classical // 2, level)


def security_table(dims=TABLE_DIMENSIONS, bits_per_entry: int = 32) -> str:
    """Tab-separated table, one row per dimension."""
    lines = ["n\tunknowns\tbits/unknown\ttotal bits\tNIST level\tquantum bits"]
    for n in dims:
        e = security_estimate(n, bits_per_entry)
        lines.append(f"{e.n}\t{e.unknowns}\t{e.bits_per_entry}\t{e.bits_classical}"
                     f"\t{e.nist_level}\t{e.bits_quantum}")
    return "\n".join(lines)
