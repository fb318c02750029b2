"""Public parameter profiles.

A profile fixes the prime field GF(p), the matrix dimension n, the public
exponent multiplier sigma, the number of parallel rounds R, the message /
shared-secret length kappa (bits), and the shape of the commuting-matrix
sampler (polynomial degree d, coefficient bound exp_max).
"""

from __future__ import annotations

from dataclasses import dataclass


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, exact for m < 3.3e24."""
    if m < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Params:
    p: int
    n: int
    sigma: int
    R: int
    kappa: int
    d: int
    exp_max: int
    name: str = "custom"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not (self.p >= 5 and is_prime(self.p)):
            raise ValueError(f"p={self.p} must be a prime >= 5")
        if self.p >= 1 << 32:
            raise ValueError("p must fit in 32 bits")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.R < 1:
            raise ValueError("R must be >= 1")
        if not 1 <= self.sigma <= self.p - 2:
            raise ValueError(f"sigma must lie in [1, {self.p - 2}]")
        if self.kappa <= 0 or self.kappa % 8:
            raise ValueError("kappa must be a positive multiple of 8")
        if not 1 <= self.d <= self.n:
            raise ValueError(f"d must lie in [1, n={self.n}]")
        if not 1 <= self.exp_max <= self.p - 2:
            raise ValueError(f"exp_max must lie in [1, {self.p - 2}]")

    @property
    def order(self) -> int:
        """Modulus of the exponent ring, p - 1."""
        return self.p - 1

    @property
    def entry_bytes(self) -> int:
        return (self.p.bit_length() + 7) // 8

    @property
    def kappa_bytes(self) -> int:
        return self.kappa // 8

    @property
    def pid(self) -> int:
        """One-byte wire identifier; 0 for unnamed profiles."""
        if PROFILES.get(self.name) == self:
            return PROFILE_IDS[self.name]
        return 0


TOY_997 = Params(p=997, n=5, sigma=3, R=1, kappa=64, d=3, exp_max=9, name="toy-997")
L5_N7 = Params(p=2**32 - 5, n=7, sigma=3, R=1, kappa=256, d=3, exp_max=2**16 - 1,
               name="l5-n7")
# brute-force oracle only
MICRO = Params(p=11, n=2, sigma=3, R=1, kappa=64, d=1, exp_max=2, name="micro")

PROFILES = {prof.name: prof for prof in (TOY_997, L5_N7, MICRO)}
PROFILE_IDS = {"toy-997": 1, "l5-n7": 2, "micro": 3}


def get_profile(name: str) -> Params:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}") from None


def profile_by_id(pid: int) -> Params:
    for name, i in PROFILE_IDS.items():
        if i == pid:
            return PROFILES[name]
    raise ValueError(f"unknown params-id {pid}")
