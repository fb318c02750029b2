"""Arithmetic over GF(p) and Z_{p-1}, and the rank-deficient matrix power function.

Matrices are tuples of row tuples of Python ints.  Two kinds are in play:

* exponent matrices, entries in Z_{p-1} = [0, p-2] (X, Y, U, V, bases A, B);
* group matrices, entries in GF(p)* = [1, p-1] (W, TA, TB, S).

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

from typing import Sequence

from .hashing import sample_below
from .params import Params

Matrix = tuple[tuple[int, ...], ...]
ExponentMatrix = Matrix
GroupMatrix = Matrix

LEFT = "left"
RIGHT = "right"


def mod_pow(base: int, exp: int, p: int, bits: int | None = None) -> int:
    """base**exp mod p by a Montgomery ladder.

    With ``bits`` given, the ladder always runs exactly ``bits`` steps (one
    square and one multiply each) so the operation sequence does not depend
    on the exponent value.  0**0 is 1.
    """
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    if bits is None:
        bits = exp.bit_length()
    elif exp >> bits:
        raise ValueError(f"exponent exceeds {bits} bits")
    r0, r1 = 1, base % p
    for k in range(bits - 1, -1, -1):
        if (exp >> k) & 1:
            r0, r1 = r0 * r1 % p, r1 * r1 % p
        else:
            r0, r1 = r0 * r0 % p, r0 * r1 % p
    return r0


def _dims(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    return rows, cols


def _check_square(n: int, *ms: Matrix) -> None:
    for m in ms:
        if _dims(m) != (n, n):
            raise ValueError(f"expected {n}x{n} matrix, got {_dims(m)}")


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(n: int) -> Matrix:
    return tuple((0,) * n for _ in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_mul_exp(a: ExponentMatrix, b: ExponentMatrix, p: int) -> ExponentMatrix:
    """Matrix product with entries reduced mod p - 1."""
    n = len(a)
    _check_square(n, a, b)
    order = p - 1
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % order for col in bt)
        for row in a
    )


def mat_add_exp(a: ExponentMatrix, b: ExponentMatrix, p: int) -> ExponentMatrix:
    order = p - 1
    return tuple(tuple((x + y) % order for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale_exp(c: int, a: ExponentMatrix, p: int) -> ExponentMatrix:
    order = p - 1
    return tuple(tuple(c * x % order for x in row) for row in a)


def rdmpf(x: ExponentMatrix, w: GroupMatrix, y: ExponentMatrix, params: Params) -> GroupMatrix:
    """Rank-deficient matrix power function with the sigma multiplier.

        Q[i][j] = prod_{K,L} w[K][L] ** (sigma * x[i][K] * y[L][j] mod (p-1))  mod p

    For unit ``w`` this is evaluated in two stages,
    T[i][L] = prod_K w[K][L]**x[i][K] and Q[i][j] = prod_L T[i][L]**(sigma*y[L][j]),
    which gives the same values because every unit has order dividing p - 1.
    Costs 2n^3 exponentiations instead of n^4.
    """
    n = params.n
    _check_square(n, x, w, y)
    p, order, sigma = params.p, params.order, params.sigma
    bits = order.bit_length()
    if any(e % p == 0 for row in w for e in row):
        return _rdmpf_loops(x, w, y, params)

    t = [[1] * n for _ in range(n)]
    for i in range(n):
        xi = x[i]
        ti = t[i]
        for L in range(n):
            acc = 1
            for K in range(n):
                acc = acc * mod_pow(w[K][L], xi[K] % order, p, bits) % p
            ti[L] = acc
    q = []
    for i in range(n):
        ti = t[i]
        row = []
        for j in range(n):
            acc = 1
            for L in range(n):
                acc = acc * mod_pow(ti[L], sigma * y[L][j] % order, p, bits) % p
            row.append(acc)
        q.append(tuple(row))
    return tuple(q)


def _rdmpf_loops(x, w, y, params: Params) -> GroupMatrix:
    # literal quadruple loop; only needed when w has a zero entry (0**0 = 1)
    n, p, order, sigma = params.n, params.p, params.order, params.sigma
    bits = order.bit_length()
    q = []
    for i in range(n):
        row = []
        for j in range(n):
            pr = 1
            for K in range(n):
                for L in range(n):
                    ex = sigma * x[i][K] * y[L][j] % order
                    pr = pr * mod_pow(w[K][L], ex, p, bits) % p
            row.append(pr)
        q.append(tuple(row))
    return tuple(q)


def poly_eval_matrix(coeffs: Sequence[int], base: ExponentMatrix, p: int) -> ExponentMatrix:
    """c_1*B + c_2*B^2 + ... + c_d*B^d mod p - 1 (no constant term).

    The missing constant term keeps every null vector of ``base``.
    """
    if not coeffs or not any(c % (p - 1) for c in coeffs):
        raise ValueError("coefficient vector is all zero")
    n = len(base)
    _check_square(n, base)
    # Horner: B(c_1 I + B(c_2 I + ... + B(c_d I)))
    acc = zeros(n)
    eye = identity(n)
    for c in reversed(coeffs):
        acc = mat_add_exp(acc, mat_scale_exp(c, eye, p), p)
        acc = mat_mul_exp(base, acc, p)
    return acc


def gen_singular_base(seed: bytes, side: str, params: Params) -> ExponentMatrix:
    """Deterministic singular exponent matrix with a public all-ones null vector.

    ``left``: the first n-1 rows are uniform in Z_{p-1} and the last row is minus
    their sum, so ones @ A == 0.  ``right``: the same construction on columns,
    so A @ ones^T == 0.
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be {LEFT!r} or {RIGHT!r}")
    n, order = params.n, params.order
    label = "Agen" if side == LEFT else "Bgen"
    flat = sample_below(label, seed, (n - 1) * n, order)
    rows = [flat[k * n:(k + 1) * n] for k in range(n - 1)]
    rows.append([-sum(col) % order for col in zip(*rows)] if rows else [0] * n)
    m = tuple(tuple(r) for r in rows)
    return m if side == LEFT else transpose(m)


def left_null_ok(m: ExponentMatrix, p: int) -> bool:
    """ones @ m == 0 mod p - 1."""
    return all(sum(col) % (p - 1) == 0 for col in zip(*m))


def right_null_ok(m: ExponentMatrix, p: int) -> bool:
    """m @ ones^T == 0 mod p - 1."""
    return all(sum(row) % (p - 1) == 0 for row in m)


def is_exponent_matrix(m: Matrix, params: Params) -> bool:
    return _dims(m) == (params.n, params.n) and all(
        0 <= e <= params.p - 2 for row in m for e in row)


def is_group_matrix(m: Matrix, params: Params) -> bool:
    return _dims(m) == (params.n, params.n) and all(
        1 <= e <= params.p - 1 for row in m for e in row)
