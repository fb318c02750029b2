"""Exhaustive key recovery at micro parameters.

The secret exponents are U_r = q_u(A), V_r = q_v(B) for coefficient vectors in
[0, exp_max]^d.  Enumerating every nonzero pair and testing
RDMPF(U', W, V') == TB_r recovers an equivalent key: any such U', V' commute
with the sender's X_r, Y_r, so they decapsulate exactly like the real key.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .. import algebra
from ..kem import KemPublicKey
from ..params import Params

DEFAULT_LIMIT = 1 << 24


class SearchSpaceError(ValueError):
    """The requested brute force exceeds the allowed search space."""


@dataclass(frozen=True)
class BruteForceResult:
    found: bool
    uv: tuple | None
    tried: int
    space: int


def search_space(params: Params) -> int:
    per_matrix = (params.exp_max + 1) ** params.d - 1
    return params.R * per_matrix * per_matrix


def _nonzero_vectors(params: Params):
    for cs in itertools.product(range(params.exp_max + 1), repeat=params.d):
        if any(cs):
            yield cs


def brute_force_recover(pk: KemPublicKey, params: Params | None = None,
                        limit: int = DEFAULT_LIMIT) -> BruteForceResult:
    if params is None:
        params = pk.params
    elif params != pk.params:
        raise ValueError("params do not match the public key")
    space = search_space(params)
    if space > limit:
        raise SearchSpaceError(f"search space {space} exceeds limit {limit}")

    p = params.p
    us = [algebra.poly_eval_matrix(c, pk.A, p) for c in _nonzero_vectors(params)]
    vs = [algebra.poly_eval_matrix(c, pk.B, p) for c in _nonzero_vectors(params)]
    tried = 0
    found = []
    for tb in pk.TB:
        hit = None
        for U in us:
            for V in vs:
                tried += 1
                if algebra.rdmpf(U, pk.W, V, params) == tb:
                    hit = (U, V)
                    break
            if hit:
                break
        if hit is None:
            return BruteForceResult(False, None, tried, space)
        found.append(hit)
    return BruteForceResult(True, tuple(found), tried, space)
