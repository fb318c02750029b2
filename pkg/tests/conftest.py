import random

import pytest

from rdmpf import kem
from rdmpf.params import TOY_997, Params


def small_params(p: int, n: int, sigma: int = 3, d: int | None = None) -> Params:
    return Params(p=p, n=n, sigma=sigma, R=1, kappa=64, d=d or min(n, 3),
                  exp_max=min(9, p - 2))


def rand_exp(rng: random.Random, n: int, p: int):
    return tuple(tuple(rng.randrange(p - 1) for _ in range(n)) for _ in range(n))


def rand_group(rng: random.Random, n: int, p: int):
    return tuple(tuple(rng.randrange(1, p) for _ in range(n)) for _ in range(n))


def naive_rdmpf(x, w, y, p, sigma):
    """Literal quadruple loop with Python's built-in pow (test oracle)."""
    n = len(w)
    return tuple(
        tuple(
            _prod([pow(w[K][L], sigma * x[i][K] * y[L][j] % (p - 1), p)
                   for K in range(n) for L in range(n)], p)
            for j in range(n))
        for i in range(n))


def _prod(xs, p):
    acc = 1
    for v in xs:
        acc = acc * v % p
    return acc


def naive_matmul(a, b, mod):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s += a[i][k] * b[k][j]
            out[i][j] = s % mod
    return tuple(tuple(r) for r in out)


@pytest.fixture(scope="session")
def toy_keys():
    return kem.keygen(bytes(range(32)), TOY_997)


@pytest.fixture
def rng():
    return random.Random(20261015)
